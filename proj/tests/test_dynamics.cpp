#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tripwell/dynamics.hpp"
#include "tripwell/stationary.hpp"

using namespace tripwell;

namespace {

std::mt19937_64 rng(98441);

State random_state() {
    std::normal_distribution<double> n;
    State psi(Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng)));
    return renormalized(psi);
}

// eigendecomposition propagator for constant parameters at g = 0
State linear_oracle(const State& psi0, const ModelParams& p, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(linear_matrix(p));
    State out = State::Zero();
    for (int k = 0; k < 3; ++k) {
        const State vk = es.eigenvectors().col(k).cast<Complex>();
        out += vk * (vk.dot(psi0) * std::exp(Complex(0.0, -es.eigenvalues()[k] * t)));
    }
    return out;
}

}  // namespace

TEST_CASE("schedules evaluate their tagged forms") {
    CHECK(Schedule::constant(0.3)(17.0) == 0.3);
    CHECK(Schedule::linear_ramp(0.5, -1.0)(4.0) == doctest::Approx(1.0));
    const Schedule gp = Schedule::gaussian_pulse(2.0, 1.0, 3.0);
    CHECK(gp(1.0) == doctest::Approx(2.0));
    CHECK(gp(4.0) == doctest::Approx(2.0 * std::exp(-0.5)));
    const Schedule tab = Schedule::tabulated({0.0, 1.0, 2.0}, {0.0, 2.0, 0.0});
    CHECK(tab(0.5) == doctest::Approx(1.0));
    CHECK(tab(-5.0) == doctest::Approx(0.0));
    CHECK(tab(9.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(Schedule::tabulated({1.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("a stationary state stays put and only rotates its phase") {
    const ModelParams p{-0.25, -0.4, 0.1, 0.2, -0.4};
    const auto states = find_stationary_states(p);
    REQUIRE(!states.empty());
    const auto& s = states.front();

    PropagateOptions opts;
    opts.samples = 200;
    const auto traj = propagate(s.complex_state(), ParameterSchedule::constant_params(p), 0.0,
                                1000.0, opts);
    for (std::size_t i = 0; i < traj.t.size(); i += 20) {
        CHECK((traj.populations(i) - s.state.cwiseAbs2()).cwiseAbs().maxCoeff() < 1e-8);
        const State expected = s.complex_state() * std::exp(Complex(0.0, -s.mu * traj.t[i]));
        CHECK((traj.states[i] - expected).norm() < 1e-6);
    }
    CHECK(traj.max_norm_dev <= 1e-9);
}

TEST_CASE("g = 0 propagation matches the eigendecomposition oracle") {
    for (int k = 0; k < 5; ++k) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        ModelParams p{u(rng), u(rng), u(rng), u(rng), 0.0};
        const State psi0 = random_state();
        const auto traj = propagate(psi0, ParameterSchedule::constant_params(p), 0.0, 50.0);
        const State expected = linear_oracle(psi0, p, 50.0);
        CHECK((traj.states.back() - expected).norm() < 1e-8);
    }
}

TEST_CASE("energy is conserved under constant parameters") {
    const ModelParams p{0.1, -0.3, 0.25, 0.4, -0.6};
    State psi0 = renormalized(State(0.6, Complex(0.5, 0.2), Complex(-0.3, 0.4)));
    PropagateOptions opts;
    opts.samples = 500;
    const auto traj = propagate(psi0, ParameterSchedule::constant_params(p), 0.0, 1000.0, opts);
    const double e0 = classical_hamiltonian(to_canonical(traj.states.front()), p);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        if (std::abs(traj.states[i][1]) < 1e-6) continue;
        const double e = classical_hamiltonian(to_canonical(traj.states[i]), p);
        worst = std::max(worst, std::abs(e - e0));
    }
    CHECK(worst < 1e-8);
    CHECK(traj.max_norm_dev <= 1e-9);
}

TEST_CASE("time reversal returns the initial state") {
    ParameterSchedule sched;
    sched.epsilon = Schedule::linear_ramp(0.05, -0.5);
    sched.delta = Schedule::constant(-0.4);
    sched.v = Schedule::constant(0.1);
    sched.w = Schedule::constant(0.2);
    sched.g = -0.4;
    const State psi0 = renormalized(State(1.0, 0.5, Complex(0.0, 0.25)));
    const auto fwd = propagate(psi0, sched, 0.0, 40.0);

    ParameterSchedule rev = sched;
    rev.epsilon = Schedule::linear_ramp(-0.05, sched.epsilon(40.0));
    // backward evolution of the reversed-time state is forward evolution of
    // its conjugate under the same real Hamiltonian
    const State back_start = fwd.states.back().conjugate();
    const auto bwd = propagate(back_start, rev, 0.0, 40.0);
    CHECK((bwd.states.back().conjugate() - psi0).norm() < 1e-7);
}

TEST_CASE("halving tol reduces the error against a tight reference") {
    ParameterSchedule sched;
    sched.epsilon = Schedule::linear_ramp(0.01);
    sched.delta = Schedule::constant(-0.4);
    sched.v = Schedule::constant(0.1);
    sched.w = Schedule::constant(0.2);
    sched.g = -0.4;
    const State psi0 = renormalized(State(1.0, -0.5, 0.25));

    PropagateOptions tight;
    tight.tol = 1e-13;
    const State ref = propagate(psi0, sched, -20.0, 20.0, tight).states.back();

    double prev_err = -1.0;
    for (double tol : {1e-6, 5e-7, 2.5e-7}) {
        PropagateOptions o;
        o.tol = tol;
        o.norm_bound = 1e-3;  // sloppy tolerances drift accordingly
        const double err = (propagate(psi0, sched, -20.0, 20.0, o).states.back() - ref).norm();
        if (prev_err > 0.0) CHECK(err < prev_err);
        prev_err = err;
    }
}

TEST_CASE("norm drift beyond the bound raises an accuracy error") {
    const ModelParams p{0.1, -0.3, 0.25, 0.4, -0.6};
    PropagateOptions opts;
    opts.tol = 1e-4;      // sloppy on purpose
    opts.norm_bound = 1e-13;
    CHECK_THROWS_AS(
        propagate(random_state(), ParameterSchedule::constant_params(p), 0.0, 100.0, opts),
        IntegrationAccuracyError);
}

TEST_CASE("invalid inputs are rejected") {
    const ModelParams p{};
    CHECK_THROWS_AS(propagate(State(1.0, 1.0, 0.0), ParameterSchedule::constant_params(p), 0.0,
                              1.0, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(propagate(State(1.0, 0.0, 0.0), ParameterSchedule::constant_params(p), 1.0,
                              0.0, {}),
                    std::invalid_argument);
}

TEST_CASE("projection on a branch tracks the adiabatic state in the linear regime") {
    ModelParams p{-0.8, -0.4, 0.1, 0.2, 0.0};
    const auto lin = linear_eigensystem(p);
    const EigenBranch branch = continue_branch(lin[0], p, SweepParameter::Epsilon, -0.8, 0.8);

    ParameterSchedule sched;
    sched.epsilon = Schedule::linear_ramp(1e-4);
    sched.delta = Schedule::constant(p.delta);
    sched.v = Schedule::constant(p.v);
    sched.w = Schedule::constant(p.w);
    sched.g = 0.0;
    PropagateOptions opts;
    opts.samples = 400;
    opts.tol = drift_safe_tol(1e-10, 1.6 / 1e-4, opts.norm_bound);
    const auto traj = propagate(lin[0].complex_state(), sched, -0.8 / 1e-4, 0.8 / 1e-4, opts);
    const auto ov = project_on_branch(traj, branch);
    for (double o : ov) {
        REQUIRE(std::isfinite(o));
        CHECK(o > 0.99);
    }

    // an initial state orthogonal to the branch seed starts at overlap ~ 0
    const auto traj2 = propagate(lin[2].complex_state(), sched, -0.8 / 1e-4, -0.79 / 1e-4, opts);
    const auto ov2 = project_on_branch(traj2, branch);
    CHECK(ov2.front() < 1e-6);
}
