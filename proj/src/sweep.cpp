#include "bellchain/sweep.hpp"

namespace bellchain::sweep {

std::vector<exact::CorrelatorPoint> evaluate_series(const ChainSpec& spec, const TimeGrid& grid,
                                                    exact::EngineBackend backend) {
    std::vector<exact::CorrelatorPoint> out(grid.steps);
    // first point runs serially so spec/backend errors surface as exceptions
    // instead of aborting inside the parallel region
    out[0] = exact::correlator(spec, grid.tau(0), backend);
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 1; i < grid.steps; ++i) out[i] = exact::correlator(spec, grid.tau(i), backend);
    return out;
}

std::vector<exact::CorrelatorPoint> evaluate_series_serial(const ChainSpec& spec,
                                                           const TimeGrid& grid,
                                                           exact::EngineBackend backend) {
    std::vector<exact::CorrelatorPoint> out(grid.steps);
    for (int i = 0; i < grid.steps; ++i) out[i] = exact::correlator(spec, grid.tau(i), backend);
    return out;
}

}  // namespace bellchain::sweep
