#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace tripwell {

using Complex = std::complex<double>;

/// Complex amplitudes (a, b, c) of the three wells, normalized to
/// |a|^2 + |b|^2 + |c|^2 = 1.
using State = Eigen::Vector3cd;

/// Real-sector state used by the stationary-state machinery.
using RealState = Eigen::Vector3d;

/// The five parameters of the nonlinear three-level Hamiltonian.
struct ModelParams {
    double epsilon = 0.0;  ///< on-site energy of well 1
    double delta = 0.0;    ///< on-site energy of well 3
    double v = 0.0;        ///< tunneling coupling, wells 1-2
    double w = 0.0;        ///< tunneling coupling, wells 2-3
    double g = 0.0;        ///< mean-field interaction strength
};

/// Thrown by to_canonical when b = 0 and the relative phases are undefined.
struct DegeneratePhaseError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Thrown by classical_gradient on the boundary of the population simplex,
/// where the square-root terms are not differentiable.
struct SingularDerivativeError : std::domain_error {
    using std::domain_error::domain_error;
};

inline constexpr double kNormTol = 1e-12;

inline double norm_error(const State& psi) { return std::abs(psi.squaredNorm() - 1.0); }

/// Validating constructor for a normalized state.
State make_state(Complex a, Complex b, Complex c, double tol = kNormTol);

State renormalized(const State& psi);

/// Multiplies by a global phase so that arg(b) = 0 (b real positive).
/// Falls back to a, then c, as phase reference when b = 0.
State gauge_fixed(const State& psi);

/// Sign convention for real states: b > 0, falling back to a > 0, then c > 0.
RealState gauge_fixed(const RealState& u);

/// The constant matrix obtained for g = 0.
Eigen::Matrix3d linear_matrix(const ModelParams& p);

/// The density-dependent Hamiltonian matrix H(|a|^2, |b|^2, |c|^2).
Eigen::Matrix3cd hamiltonian_matrix(const State& psi, const ModelParams& p);

/// H(|a|^2,|b|^2,|c|^2) (a,b,c)^T.
State apply_hamiltonian(const State& psi, const ModelParams& p);
RealState apply_hamiltonian(const RealState& u, const ModelParams& p);

/// mu = Re <psi| H(|a|^2,|b|^2,|c|^2) |psi> for a normalized state.
double chemical_potential(const State& psi, const ModelParams& p);
double chemical_potential(const RealState& u, const ModelParams& p);

/// Canonical coordinates of the equivalent classical Hamiltonian system:
/// populations p1 = |a|^2, p3 = |c|^2 and relative phases
/// q1 = arg(b) - arg(a), q3 = arg(b) - arg(c). |b|^2 = 1 - p1 - p3.
struct CanonicalCoords {
    double p1 = 0.0;
    double p3 = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
};

CanonicalCoords to_canonical(const State& psi);
State from_canonical(const CanonicalCoords& coords);

double classical_hamiltonian(const CanonicalCoords& coords, const ModelParams& p);

/// Hamiltonian flow (p1dot, p3dot, q1dot, q3dot) with
/// pdot = -dH/dq, qdot = +dH/dp, from analytic partial derivatives.
/// Requires an interior point: p1, p3, 1-p1-p3 > 0.
Eigen::Vector4d classical_gradient(const CanonicalCoords& coords, const ModelParams& p);

}  // namespace tripwell
