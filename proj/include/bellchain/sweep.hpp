#pragma once

#include <vector>

#include "bellchain/chain.hpp"
#include "bellchain/exact.hpp"

namespace bellchain::sweep {

/// Grid evaluation of the correlator, one point per grid index. The parallel
/// kernel partitions grid points across OpenMP threads; every point is an
/// independent pure evaluation and results land at their own index, so the
/// output is identical to the serial reference for any thread count.
std::vector<exact::CorrelatorPoint> evaluate_series(
    const ChainSpec& spec, const TimeGrid& grid,
    exact::EngineBackend backend = exact::EngineBackend::automatic);

/// Serial reference implementation kept for testing and benchmarking.
std::vector<exact::CorrelatorPoint> evaluate_series_serial(
    const ChainSpec& spec, const TimeGrid& grid,
    exact::EngineBackend backend = exact::EngineBackend::automatic);

}  // namespace bellchain::sweep
