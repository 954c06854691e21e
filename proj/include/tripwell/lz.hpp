#pragma once

#include <vector>

#include "tripwell/dynamics.hpp"
#include "tripwell/stationary.hpp"
#include "tripwell/sweep.hpp"

namespace tripwell {

/// Equal-slope sweep configuration: epsilon = alpha * t, everything else
/// constant. alpha > 0 ramps upward from -epsilon_span; alpha < 0 runs the
/// mirrored downward ramp starting at +epsilon_span.
struct LZConfig {
    double delta = -0.4;
    double v = 0.1;
    double w = 0.2;
    double g = 0.0;
    double alpha = 1e-2;
    double epsilon_span = 0.0;  ///< 0 = default 40 * max(|v|, |w|, |g|, |delta|)
    int branch = 0;             ///< mu-sorted linear branch index: 0 lowest, 2 highest
    double tol = 1e-10;
    int samples = 2000;
    double g_homotopy_step = 0.05;
};

double default_epsilon_span(const LZConfig& cfg);

/// Two-level Landau-Zener transition probability exp(-2 pi v^2 / alpha).
double lz_formula(double v, double alpha);

struct LZResult {
    /// Survival probability in the initially populated diabatic state:
    /// |a|^2 averaged over the trailing 5% of the ramp, which extracts the
    /// asymptotic value. The raw endpoint |a|^2 oscillates with an envelope
    /// ~ 2 sqrt(P) v / epsilon_span from interference with the residual
    /// first-well content of the other adiabatic states.
    double P = 0.0;
    double P_endpoint = 0.0;  ///< plain |a|^2 at the end of the ramp
    Trajectory trajectory;
    Eigen::Vector3d final_populations = Eigen::Vector3d::Zero();
    double norm_drift = 0.0;
    StationaryState initial_state;
};

/// Stationary state on the selected branch at the start of the ramp,
/// continued from the linear eigenstate by a homotopy in g.
StationaryState lz_initial_state(const LZConfig& cfg);

ParameterSchedule lz_schedule(const LZConfig& cfg);

LZResult run_equal_slope(const LZConfig& cfg);

/// Adiabatic branch continued from the initial state across the whole ramp.
EigenBranch lz_branch(const LZConfig& cfg, const ContinuationOptions& opts = {});

/// P(alpha) table; points run independently (optionally in parallel) and
/// keep the input order.
SweepResult sweep_alpha(const LZConfig& cfg, const std::vector<double>& alphas, int threads = 0);

/// The exactly mirrored configuration: flips the signs of g, alpha and delta
/// and swaps the lowest branch for the highest. Equal P by symmetry.
LZConfig mirrored_config(const LZConfig& cfg);

}  // namespace tripwell
