#include "tripwell/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace tripwell {

Schedule Schedule::tabulated(std::vector<double> t, std::vector<double> value) {
    if (t.size() != value.size() || t.size() < 2)
        throw std::invalid_argument("Schedule::tabulated: need matching grids with >= 2 nodes");
    if (!std::is_sorted(t.begin(), t.end()))
        throw std::invalid_argument("Schedule::tabulated: time grid must be monotone");
    Schedule s;
    s.kind_ = Kind::Tabulated;
    s.table_ = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(
        std::move(t), std::move(value));
    return s;
}

double Schedule::interpolate(double t) const {
    const auto& ts = table_->first;
    const auto& vs = table_->second;
    if (t <= ts.front()) return vs.front();
    if (t >= ts.back()) return vs.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t k = std::size_t(it - ts.begin()) - 1;
    const double s = (t - ts[k]) / (ts[k + 1] - ts[k]);
    return (1.0 - s) * vs[k] + s * vs[k + 1];
}

namespace {

inline State nlse_rhs(double t, const State& y, const ParameterSchedule& sched) {
    const double eps = sched.epsilon(t);
    const double del = sched.delta(t);
    const double v = sched.v(t);
    const double w = sched.w(t);
    const double g = sched.g;
    const Complex a = y[0], b = y[1], c = y[2];
    const Complex mi(0.0, -1.0);
    return State(mi * ((eps + g * std::norm(a)) * a + v * b),
                 mi * (v * a + g * std::norm(b) * b + w * c),
                 mi * (w * b + (del + g * std::norm(c)) * c));
}

// Dormand-Prince 5(4) tableau
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct DenseSegment {
    State r1, r2, r3, r4, r5;
    double t0, h;
    State eval(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
    }
};

}  // namespace

Trajectory propagate(const State& initial, const ParameterSchedule& schedule,
                     double t0, double t1, const PropagateOptions& opts) {
    if (!(t1 > t0)) throw std::invalid_argument("propagate: t1 must exceed t0");
    if (norm_error(initial) > 1e-8)
        throw std::invalid_argument("propagate: initial state not normalized");

    const int n_samples = std::max(opts.samples, 2);
    Trajectory traj;
    traj.t.reserve(n_samples);
    traj.states.reserve(n_samples);
    traj.params.reserve(n_samples);
    traj.norm_dev.reserve(n_samples);

    auto record = [&](double ts, const State& ys) {
        traj.t.push_back(ts);
        traj.states.push_back(ys);
        traj.params.push_back(schedule.at(ts));
        traj.norm_dev.push_back(norm_error(ys));
    };

    int next_sample = 0;
    auto sample_time = [&](int i) { return t0 + (t1 - t0) * double(i) / (n_samples - 1); };
    record(sample_time(0), initial);
    ++next_sample;

    State y = initial;
    double t = t0;
    State k1 = nlse_rhs(t, y, schedule);
    double h = std::min((t1 - t0) / 10.0, 0.05 / (1e-12 + k1.norm()));

    while (t < t1) {
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw IntegrationAccuracyError("propagate: step size underflow; tighten tol", traj.max_norm_dev);
        bool last = false;
        if (t + h >= t1) {
            h = t1 - t;
            last = true;
        }

        const State k2 = nlse_rhs(t + h * a21, y + h * (a21 * k1), schedule);
        const State k3 = nlse_rhs(t + h * 0.3, y + h * (a31 * k1 + a32 * k2), schedule);
        const State k4 = nlse_rhs(t + h * 0.8, y + h * (a41 * k1 + a42 * k2 + a43 * k3), schedule);
        const State k5 = nlse_rhs(t + h * (8.0 / 9.0),
                                  y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), schedule);
        const State k6 = nlse_rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5),
                                  schedule);
        const State ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const State k7 = nlse_rhs(t + h, ynew, schedule);
        const State ediff = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double sc = 1.0 + std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double q = std::abs(ediff[i]) / sc;
            err += q * q;
        }
        err = std::sqrt(err / 3.0);
        const double tol_step = opts.tol * h;

        if (!ynew.allFinite())
            throw BlowUpError("propagate: state became non-finite", t);

        if (err <= tol_step) {
            ++traj.steps_accepted;
            const double dev = norm_error(ynew);
            traj.max_norm_dev = std::max(traj.max_norm_dev, dev);
            if (dev > opts.norm_bound) {
                char msg[96];
                std::snprintf(msg, sizeof msg,
                              "propagate: norm drift %.3e exceeds bound %.3e; tighten tol", dev,
                              opts.norm_bound);
                throw IntegrationAccuracyError(msg, dev);
            }

            if (next_sample < n_samples && sample_time(next_sample) <= t + h + 1e-30) {
                DenseSegment seg;
                seg.t0 = t;
                seg.h = h;
                seg.r1 = y;
                seg.r2 = ynew - y;
                seg.r3 = h * k1 - seg.r2;
                seg.r4 = seg.r2 - h * k7 - seg.r3;
                seg.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                while (next_sample < n_samples) {
                    const double ts = sample_time(next_sample);
                    if (ts > t + h && !(last && next_sample == n_samples - 1)) break;
                    record(ts, next_sample == n_samples - 1 && last ? ynew : seg.eval(ts));
                    ++next_sample;
                }
            }

            t += h;
            y = ynew;
            k1 = k7;  // first-same-as-last
            const double fac = err > 0.0 ? 0.9 * std::pow(tol_step / err, 0.25) : 5.0;
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            ++traj.steps_rejected;
            const double fac = 0.9 * std::pow(tol_step / err, 0.25);
            h *= std::clamp(fac, 0.1, 0.9);
        }
    }

    while (next_sample < n_samples) {  // guard against roundoff at the very end
        record(sample_time(next_sample), y);
        ++next_sample;
    }
    return traj;
}

double drift_safe_tol(double user_tol, double duration, double norm_bound) {
    const double target = 0.3 * norm_bound;
    const double tol = std::pow(target / (20.0 * std::max(duration, 1.0)), 0.8);
    return std::min(user_tol, tol);
}

Trajectory propagate_with_retry(const State& initial, const ParameterSchedule& schedule,
                                double t0, double t1, PropagateOptions opts, int retries) {
    for (int attempt = 0;; ++attempt) {
        try {
            return propagate(initial, schedule, t0, t1, opts);
        } catch (const IntegrationAccuracyError&) {
            if (attempt >= retries) throw;
            opts.tol /= 8.0;
        }
    }
}

std::vector<double> project_on_branch(const Trajectory& traj, const EigenBranch& branch) {
    std::vector<double> out(traj.t.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const double lam = get_param(traj.params[i], branch.parameter);
        const auto st = branch_state_at(branch, lam, traj.params[i]);
        if (!st) continue;
        const Complex ov = traj.states[i].dot(st->complex_state());
        out[i] = std::norm(ov) / traj.states[i].squaredNorm();
    }
    return out;
}

}  // namespace tripwell
