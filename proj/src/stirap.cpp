#include "tripwell/stirap.hpp"

#include <algorithm>
#include <cmath>

namespace tripwell {

std::pair<double, double> pulse_pair(double t, const PulseConfig& pulses) {
    const double zv = (t - pulses.tau) / pulses.sigma;
    const double zw = (t + pulses.tau) / pulses.sigma;
    return {pulses.peak * std::exp(-0.5 * zv * zv), pulses.peak * std::exp(-0.5 * zw * zw)};
}

void validate(const PulseConfig& pulses) {
    if (!(pulses.t1 > pulses.t0)) throw std::invalid_argument("PulseConfig: empty window");
    if (!(pulses.peak > 0.0) || !(pulses.sigma > 0.0) || !(pulses.tau > 0.0))
        throw std::invalid_argument("PulseConfig: peak, sigma and tau must be positive");
    for (double edge : {pulses.t0, pulses.t1}) {
        const auto [v, w] = pulse_pair(edge, pulses);
        if (std::max(v, w) >= 1e-6 * pulses.peak)
            throw std::invalid_argument("PulseConfig: pulse amplitude at the window edge exceeds 1e-6 of the peak");
    }
}

ModelParams StirapConfig::params_at(double t) const {
    const auto [v, w] = pulse_pair(t, pulses);
    return {-Delta, -Delta, v, w, g};
}

ParameterSchedule stirap_schedule(const StirapConfig& cfg) {
    ParameterSchedule s;
    s.epsilon = Schedule::constant(-cfg.Delta);
    s.delta = Schedule::constant(-cfg.Delta);
    s.v = Schedule::gaussian_pulse(cfg.pulses.peak, cfg.pulses.tau, cfg.pulses.sigma);
    s.w = Schedule::gaussian_pulse(cfg.pulses.peak, -cfg.pulses.tau, cfg.pulses.sigma);
    s.g = cfg.g;
    return s;
}

const char* to_string(HornScenario s) {
    switch (s) {
        case HornScenario::NoHorn: return "NoHorn";
        case HornScenario::SameSignHorn: return "SameSignHorn";
        case HornScenario::OppositeSignHorn: return "OppositeSignHorn";
    }
    return "?";
}

HornScenario horn_scenario(double g, double Delta) {
    if (g == 0.0) return HornScenario::NoHorn;
    if (g * Delta < 0.0) return HornScenario::OppositeSignHorn;
    // same-sign side (Delta = 0 counts: the population balance is always solvable)
    return std::abs(Delta) <= std::abs(g) ? HornScenario::SameSignHorn : HornScenario::NoHorn;
}

bool stirap_feasible(double g, double Delta) {
    return g * Delta >= 0.0 && std::abs(g) < std::abs(Delta);
}

StirapResult run_stirap(const StirapConfig& cfg) {
    validate(cfg.pulses);
    StirapResult result;
    PropagateOptions opts;
    opts.samples = cfg.samples;
    opts.tol = drift_safe_tol(cfg.tol, cfg.pulses.t1 - cfg.pulses.t0, opts.norm_bound);
    const State initial(1.0, 0.0, 0.0);
    result.trajectory =
        propagate_with_retry(initial, stirap_schedule(cfg), cfg.pulses.t0, cfg.pulses.t1, opts);
    result.efficiency = std::norm(result.trajectory.states.back()[2]);
    result.norm_drift = result.trajectory.max_norm_dev;
    return result;
}

SweepResult sweep_g(const StirapConfig& base, const std::vector<double>& gs, int threads) {
    if (gs.empty()) throw std::domain_error("sweep_g: empty g list");
    SweepResult result;
    result.control = "g";
    result.outcome = "efficiency";
    result.points.resize(gs.size());
    parallel_map(gs.size(), threads, [&](std::size_t i) {
        SweepPoint& pt = result.points[i];
        pt.x = gs[i];
        try {
            StirapConfig c = base;
            c.g = gs[i];
            c.samples = 2;
            pt.y = run_stirap(c).efficiency;
            pt.ok = true;
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.error = e.what();
        }
    });
    return result;
}

SearchConfig stirap_levels_search_config(const StirapConfig& cfg,
                                         const std::vector<double>& times) {
    SearchConfig sc;
    double vw_min = cfg.pulses.peak;
    for (double t : times) {
        const auto [v, w] = pulse_pair(t, cfg.pulses);
        vw_min = std::min({vw_min, v, w});
    }
    const double scale = std::max({1.0, std::abs(cfg.Delta), std::abs(cfg.g)});
    const double ratio = 100.0 * scale / std::max(vw_min, 1e-12);
    if (ratio > sc.x_max) {
        sc.x_max = ratio;
        sc.x_min = 1.0 / ratio;
        sc.x_points = int(sc.x_points * std::log(ratio) / std::log(1e4));
    }
    return sc;
}

std::vector<std::vector<StationaryState>> stirap_levels(const StirapConfig& cfg,
                                                        const std::vector<double>& times,
                                                        const SearchConfig* search,
                                                        int threads) {
    for (double t : times)
        if (t < cfg.pulses.t0 || t > cfg.pulses.t1)
            throw std::domain_error("stirap_levels: time outside the pulse window");
    const SearchConfig sc = search ? *search : stirap_levels_search_config(cfg, times);
    std::vector<std::vector<StationaryState>> out(times.size());
    parallel_map(times.size(), threads, [&](std::size_t i) {
        out[i] = find_stationary_states(cfg.params_at(times[i]), sc);
    });
    return out;
}

}  // namespace tripwell
