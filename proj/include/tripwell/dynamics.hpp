#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tripwell/model.hpp"
#include "tripwell/stationary.hpp"

namespace tripwell {

/// Tagged time-dependent parameter: constant, linear ramp, Gaussian pulse
/// or a tabulated function with linear interpolation.
class Schedule {
  public:
    Schedule() = default;

    static Schedule constant(double value) {
        Schedule s;
        s.kind_ = Kind::Constant;
        s.a_ = value;
        return s;
    }
    static Schedule linear_ramp(double slope, double offset = 0.0) {
        Schedule s;
        s.kind_ = Kind::LinearRamp;
        s.a_ = slope;
        s.b_ = offset;
        return s;
    }
    static Schedule gaussian_pulse(double peak, double center, double width) {
        Schedule s;
        s.kind_ = Kind::GaussianPulse;
        s.a_ = peak;
        s.b_ = center;
        s.c_ = width;
        return s;
    }
    /// Monotone time grid, linearly interpolated, clamped outside.
    static Schedule tabulated(std::vector<double> t, std::vector<double> value);

    double operator()(double t) const {
        switch (kind_) {
            case Kind::Constant: return a_;
            case Kind::LinearRamp: return a_ * t + b_;
            case Kind::GaussianPulse: {
                const double z = (t - b_) / c_;
                return a_ * std::exp(-0.5 * z * z);
            }
            case Kind::Tabulated: return interpolate(t);
        }
        return 0.0;
    }

    bool is_constant() const { return kind_ == Kind::Constant; }

  private:
    enum class Kind { Constant, LinearRamp, GaussianPulse, Tabulated };
    double interpolate(double t) const;

    Kind kind_ = Kind::Constant;
    double a_ = 0.0, b_ = 0.0, c_ = 1.0;
    std::shared_ptr<const std::pair<std::vector<double>, std::vector<double>>> table_;
};

struct ParameterSchedule {
    Schedule epsilon = Schedule::constant(0.0);
    Schedule delta = Schedule::constant(0.0);
    Schedule v = Schedule::constant(0.0);
    Schedule w = Schedule::constant(0.0);
    double g = 0.0;

    ModelParams at(double t) const { return {epsilon(t), delta(t), v(t), w(t), g}; }

    static ParameterSchedule constant_params(const ModelParams& p) {
        ParameterSchedule s;
        s.epsilon = Schedule::constant(p.epsilon);
        s.delta = Schedule::constant(p.delta);
        s.v = Schedule::constant(p.v);
        s.w = Schedule::constant(p.w);
        s.g = p.g;
        return s;
    }
};

struct PropagateOptions {
    double tol = 1e-10;        ///< local error per unit time
    double norm_bound = 1e-9;  ///< largest tolerated |norm^2 - 1|
    int samples = 2000;        ///< dense-output samples, decoupled from steps
};

struct Trajectory {
    std::vector<double> t;
    std::vector<State> states;
    std::vector<ModelParams> params;  ///< instantaneous parameters per sample
    std::vector<double> norm_dev;
    double max_norm_dev = 0.0;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;

    Eigen::Vector3d populations(std::size_t i) const {
        return states[i].cwiseAbs2();
    }
};

/// Norm drift exceeded the configured bound; retry with a tighter tol.
struct IntegrationAccuracyError : std::runtime_error {
    IntegrationAccuracyError(const std::string& msg, double dev)
        : std::runtime_error(msg), norm_dev(dev) {}
    double norm_dev;
};

/// The state left the unit sphere and became non-finite.
struct BlowUpError : std::runtime_error {
    BlowUpError(const std::string& msg, double t)
        : std::runtime_error(msg), last_good_time(t) {}
    double last_good_time;
};

/// Integrates the time-dependent discrete NLSE with an adaptive embedded
/// Runge-Kutta 5(4) pair and 4th-order dense output. Norm drift is measured,
/// never silently repaired.
Trajectory propagate(const State& initial, const ParameterSchedule& schedule,
                     double t0, double t1, const PropagateOptions& opts = {});

/// Local tolerance that keeps the secular norm drift of the 5(4) pair within
/// norm_bound over a run of the given duration (drift grows like
/// 20 * duration * tol^(5/4), measured). Never looser than user_tol.
double drift_safe_tol(double user_tol, double duration, double norm_bound);

/// propagate, retrying with an 8x tighter tolerance each time the norm
/// bound trips. The dynamics-dependent drift coefficient occasionally beats
/// the drift_safe_tol estimate; the retry follows the error's advice.
Trajectory propagate_with_retry(const State& initial, const ParameterSchedule& schedule,
                                double t0, double t1, PropagateOptions opts, int retries = 2);

/// Squared overlap of each trajectory sample with the branch state at the
/// instantaneous swept-parameter value. NaN where the parameter lies outside
/// the segment of the branch before its first fold.
std::vector<double> project_on_branch(const Trajectory& traj, const EigenBranch& branch);

}  // namespace tripwell
