#include "tripwell/lz.hpp"

#include <cmath>

namespace tripwell {

double default_epsilon_span(const LZConfig& cfg) {
    return 40.0 * std::max({std::abs(cfg.v), std::abs(cfg.w), std::abs(cfg.g), std::abs(cfg.delta)});
}

double lz_formula(double v, double alpha) {
    if (alpha <= 0.0) throw std::domain_error("lz_formula: alpha must be positive");
    return std::exp(-2.0 * M_PI * v * v / alpha);
}

namespace {

double span_of(const LZConfig& cfg) {
    return cfg.epsilon_span > 0.0 ? cfg.epsilon_span : default_epsilon_span(cfg);
}

ModelParams start_params(const LZConfig& cfg) {
    const double eps0 = cfg.alpha > 0.0 ? -span_of(cfg) : span_of(cfg);
    return {eps0, cfg.delta, cfg.v, cfg.w, cfg.g};
}

}  // namespace

StationaryState lz_initial_state(const LZConfig& cfg) {
    if (cfg.alpha == 0.0) throw std::domain_error("lz_initial_state: alpha must be nonzero");
    if (cfg.branch < 0 || cfg.branch > 2)
        throw std::domain_error("lz_initial_state: branch index must be 0, 1 or 2");
    const ModelParams p = start_params(cfg);
    const auto linear = linear_eigensystem(p);
    return homotopy_in_g(linear[std::size_t(cfg.branch)], p, cfg.g_homotopy_step);
}

ParameterSchedule lz_schedule(const LZConfig& cfg) {
    ParameterSchedule s;
    s.epsilon = Schedule::linear_ramp(cfg.alpha);
    s.delta = Schedule::constant(cfg.delta);
    s.v = Schedule::constant(cfg.v);
    s.w = Schedule::constant(cfg.w);
    s.g = cfg.g;
    return s;
}

LZResult run_equal_slope(const LZConfig& cfg) {
    const double span = span_of(cfg);
    const double T = span / std::abs(cfg.alpha);
    const double t_tail = T * 0.9;  // trailing 5% of the ramp

    LZResult result;
    result.initial_state = lz_initial_state(cfg);

    PropagateOptions opts;
    opts.samples = std::max(cfg.samples, 2);
    opts.tol = drift_safe_tol(cfg.tol, 2.0 * T, opts.norm_bound);
    const ParameterSchedule sched = lz_schedule(cfg);
    Trajectory main =
        propagate_with_retry(result.initial_state.complex_state(), sched, -T, t_tail, opts);

    PropagateOptions tail_opts = opts;
    tail_opts.samples = 8001;
    const Trajectory tail = propagate_with_retry(main.states.back(), sched, t_tail, T, tail_opts);

    // trapezoidal average of |a|^2 over the tail window
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < tail.t.size(); ++i) {
        const double pa = std::norm(tail.states[i][0]);
        const double pb = std::norm(tail.states[i + 1][0]);
        acc += 0.5 * (pa + pb) * (tail.t[i + 1] - tail.t[i]);
    }
    result.P = acc / (tail.t.back() - tail.t.front());
    result.P_endpoint = std::norm(tail.states.back()[0]);
    result.final_populations = tail.states.back().cwiseAbs2();
    result.norm_drift = std::max(main.max_norm_dev, tail.max_norm_dev);

    // thin the tail into the reported trajectory
    const std::size_t stride = 160;
    for (std::size_t i = stride; i < tail.t.size(); i += stride) {
        main.t.push_back(tail.t[i]);
        main.states.push_back(tail.states[i]);
        main.params.push_back(tail.params[i]);
        main.norm_dev.push_back(tail.norm_dev[i]);
    }
    main.max_norm_dev = result.norm_drift;
    main.steps_accepted += tail.steps_accepted;
    main.steps_rejected += tail.steps_rejected;
    result.trajectory = std::move(main);
    return result;
}

EigenBranch lz_branch(const LZConfig& cfg, const ContinuationOptions& opts) {
    const double span = span_of(cfg);
    const double from = cfg.alpha > 0.0 ? -span : span;
    const double to = -from;
    const StationaryState seed = lz_initial_state(cfg);
    ModelParams p = start_params(cfg);
    return continue_branch(seed, p, SweepParameter::Epsilon, from, to, opts);
}

SweepResult sweep_alpha(const LZConfig& cfg, const std::vector<double>& alphas, int threads) {
    if (alphas.empty()) throw std::domain_error("sweep_alpha: empty alpha list");
    SweepResult result;
    result.control = "alpha";
    result.outcome = "P";
    result.points.resize(alphas.size());
    parallel_map(alphas.size(), threads, [&](std::size_t i) {
        SweepPoint& pt = result.points[i];
        pt.x = alphas[i];
        try {
            LZConfig c = cfg;
            c.alpha = alphas[i];
            c.samples = 2;  // only the endpoint matters for P
            pt.y = run_equal_slope(c).P;
            pt.ok = true;
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.error = e.what();
        }
    });
    return result;
}

LZConfig mirrored_config(const LZConfig& cfg) {
    LZConfig m = cfg;
    m.g = -cfg.g;
    m.alpha = -cfg.alpha;
    m.delta = -cfg.delta;
    m.branch = 2 - cfg.branch;
    return m;
}

}  // namespace tripwell
