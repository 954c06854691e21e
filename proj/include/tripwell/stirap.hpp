#pragma once

#include <utility>
#include <vector>

#include "tripwell/dynamics.hpp"
#include "tripwell/stationary.hpp"
#include "tripwell/sweep.hpp"

namespace tripwell {

/// Counterintuitive Gaussian pulse pair: the 2-3 coupling w peaks at -tau,
/// the 1-2 coupling v at +tau.
struct PulseConfig {
    double peak = 0.35;
    double sigma = 220.0;
    double tau = 130.0;
    double t0 = -1350.0;
    double t1 = 1350.0;
};

/// (v, w) at time t.
std::pair<double, double> pulse_pair(double t, const PulseConfig& pulses);

/// Enforces the window invariant: both pulse amplitudes below 1e-6 * peak
/// at the window edges. Throws std::invalid_argument otherwise.
void validate(const PulseConfig& pulses);

struct StirapConfig {
    double Delta = 0.1;  ///< detuning; epsilon = delta = -Delta internally
    double g = 0.0;
    PulseConfig pulses;
    double tol = 1e-10;
    int samples = 2000;

    ModelParams params_at(double t) const;
};

ParameterSchedule stirap_schedule(const StirapConfig& cfg);

enum class HornScenario { NoHorn, SameSignHorn, OppositeSignHorn };

const char* to_string(HornScenario s);

/// Existence of the extra nonlinear eigenstate that absorbs the transport
/// state. Same-sign horn for g*Delta >= 0 with |Delta| <= |g| (g != 0);
/// the opposite-sign horn exists for any g with g*Delta < 0.
HornScenario horn_scenario(double g, double Delta);

/// Complete adiabatic transfer is possible iff g*Delta >= 0 and |g| < |Delta|.
bool stirap_feasible(double g, double Delta);

struct StirapResult {
    double efficiency = 0.0;  ///< final |c|^2
    Trajectory trajectory;
    double norm_drift = 0.0;
};

/// Propagates (1, 0, 0) through the pulse sequence at two-photon resonance.
StirapResult run_stirap(const StirapConfig& cfg);

/// Transfer efficiency versus nonlinearity at fixed detuning and pulses.
SweepResult sweep_g(const StirapConfig& base, const std::vector<double>& gs, int threads = 0);

/// Stationary states of the instantaneous Hamiltonian at each time.
/// A nullptr search config selects a default widened for the tiny couplings
/// far out in the pulse tails.
std::vector<std::vector<StationaryState>> stirap_levels(const StirapConfig& cfg,
                                                        const std::vector<double>& times,
                                                        const SearchConfig* search = nullptr,
                                                        int threads = 0);

/// Search config with the x-grid widened to cover amplitude ratios up to
/// the scale set by the smallest coupling over the requested times.
SearchConfig stirap_levels_search_config(const StirapConfig& cfg,
                                         const std::vector<double>& times);

}  // namespace tripwell
