#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tripwell {

struct SweepPoint {
    double x = 0.0;
    double y = 0.0;
    bool ok = false;
    std::string error;
};

/// Table mapping a swept control to a scalar outcome, with per-point
/// failure notes. Point order follows the input order.
struct SweepResult {
    std::string control;
    std::string outcome;
    std::vector<SweepPoint> points;
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). fn must capture its own failures; results are index-addressed
/// so assembly is deterministic.
void parallel_map(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace tripwell
