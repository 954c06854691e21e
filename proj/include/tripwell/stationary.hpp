#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tripwell/model.hpp"

namespace tripwell {

/// Critical-point type of the classical energy: definite Hessian
/// (extremum, elliptic fixed point) or indefinite (saddle, hyperbolic).
enum class Stability { Elliptic, Hyperbolic };

const char* to_string(Stability s);

struct StationaryState {
    RealState state = RealState::Zero();  ///< real amplitudes, sign gauge b > 0
    double mu = 0.0;                      ///< chemical potential
    Stability classification = Stability::Elliptic;
    double residual = 0.0;                ///< max-norm of H(psi)psi - mu psi

    State complex_state() const { return state.cast<Complex>(); }
};

/// Nonzero amplitude ratios x = b/a, y = c/b of a real-sector state.
struct ReducedCoords {
    double x = 0.0;
    double y = 0.0;
};

/// Left-hand sides of the two reduced stationary equations in (x, y).
/// Both vanish exactly at a stationary state with all amplitudes nonzero.
Eigen::Vector2d reduced_residuals(const ReducedCoords& coords, const ModelParams& p);

/// Real nonzero roots y of the second reduced equation at fixed x
/// (a quadratic after multiplying through by y). Up to two roots.
/// Throws std::domain_error for x = 0 and when the equation degenerates.
std::vector<double> solve_y_given_x(double x, const ModelParams& p);

struct SearchConfig {
    double x_min = 1e-4;       ///< log grid over |x| in [x_min, x_max], both signs
    double x_max = 1e4;
    int x_points = 4000;
    int simplex_points = 24;   ///< seed grid resolution for the critical-point search
    double newton_tol = 1e-11;
    int newton_max_iter = 60;
    double dedup_overlap = 1.0 - 1e-8;
    bool use_x_scan = true;
    bool use_critical_points = true;
};

struct SearchDiagnostics {
    int x_scan_candidates = 0;
    int critical_point_candidates = 0;
    int convergence_failures = 0;
    std::vector<std::string> notes;
};

/// All real-amplitude stationary states at fixed parameters, found by the
/// x-scan route and an independent critical-point search of the classical
/// energy, merged, deduplicated by state overlap and sorted by mu.
std::vector<StationaryState> find_stationary_states(const ModelParams& p,
                                                    const SearchConfig& cfg = {},
                                                    SearchDiagnostics* diag = nullptr);

/// The three eigenpairs of the g = 0 matrix, sorted by eigenvalue.
std::array<StationaryState, 3> linear_eigensystem(const ModelParams& p);

/// Newton iteration on the stationary equation in (state, mu), starting
/// from a guess. Returns nullopt when it does not converge.
std::optional<StationaryState> polish_state(const RealState& guess, double mu_guess,
                                            const ModelParams& p, double tol = 1e-11,
                                            int max_iter = 60);

/// Classification through the gauge-reduced Hessian of the classical energy;
/// agrees with the 4x4 canonical Hessian at interior points and remains
/// finite at the chart boundary b = 0.
Stability classify_state(const RealState& u, double mu, const ModelParams& p);

/// Closed-form quantities of the two linear avoided crossings and the
/// loop-onset estimates gc = 2|v_i|.
struct LinearCrossingData {
    double lambda1 = 0.0, lambda2 = 0.0;  ///< crossing locations
    double n1 = 0.0, n2 = 0.0;            ///< normalization factors
    double v1 = 0.0, v2 = 0.0;            ///< signed gap parameters
    double gc1 = 0.0, gc2 = 0.0;          ///< critical nonlinearity estimates
};

LinearCrossingData linear_crossing_data(const ModelParams& p);

enum class SweepParameter { Epsilon, Delta, V, W, G };

const char* to_string(SweepParameter p);
double get_param(const ModelParams& p, SweepParameter which);
void set_param(ModelParams& p, SweepParameter which, double value);

struct BranchPoint {
    double param = 0.0;
    StationaryState state;
};

/// One continued solution curve in (parameter, state, mu) space.
struct EigenBranch {
    SweepParameter parameter = SweepParameter::Epsilon;
    std::vector<BranchPoint> points;
    std::vector<double> folds;              ///< parameter values at turning points
    std::vector<std::size_t> fold_indices;  ///< indices into points
    bool truncated = false;
    double truncation_param = 0.0;
    std::string truncation_reason;
};

struct ContinuationOptions {
    double initial_step = 1e-3;
    double min_step = 1e-6;
    double max_step = 1e-2;
    double corrector_tol = 1e-11;
    int corrector_max_iter = 10;
    int max_steps = 400000;
    double min_neighbor_overlap = 0.999;
};

/// Pseudo-arclength continuation of a stationary state as one model
/// parameter sweeps from `from` to `to`. Follows the branch through folds
/// and records fold markers where the tangent turns in the parameter.
EigenBranch continue_branch(const StationaryState& seed, const ModelParams& params,
                            SweepParameter parameter, double from, double to,
                            const ContinuationOptions& opts = {});

/// Stationary state on the segment of the branch before its first fold,
/// Newton-polished at the requested parameter value. nullopt outside.
std::optional<StationaryState> branch_state_at(const EigenBranch& branch, double param,
                                               const ModelParams& base);

/// Continues a stationary state from g = 0 to p.g by stepping the
/// nonlinearity and re-polishing. Throws std::runtime_error on failure.
StationaryState homotopy_in_g(const StationaryState& seed, const ModelParams& p,
                              double g_step = 0.05);

}  // namespace tripwell
