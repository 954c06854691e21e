#include "tripwell/model.hpp"

#include <cmath>

namespace tripwell {

State make_state(Complex a, Complex b, Complex c, double tol) {
    State psi(a, b, c);
    if (!psi.allFinite()) throw std::invalid_argument("make_state: non-finite amplitude");
    if (norm_error(psi) > tol) throw std::invalid_argument("make_state: state not normalized");
    return psi;
}

State renormalized(const State& psi) { return psi / psi.norm(); }

State gauge_fixed(const State& psi) {
    double phase = 0.0;
    if (std::abs(psi[1]) > 0.0)
        phase = std::arg(psi[1]);
    else if (std::abs(psi[0]) > 0.0)
        phase = std::arg(psi[0]);
    else
        phase = std::arg(psi[2]);
    return psi * std::exp(Complex(0.0, -phase));
}

RealState gauge_fixed(const RealState& u) {
    double ref = u[1] != 0.0 ? u[1] : (u[0] != 0.0 ? u[0] : u[2]);
    return ref < 0.0 ? RealState(-u) : u;
}

Eigen::Matrix3d linear_matrix(const ModelParams& p) {
    Eigen::Matrix3d m;
    m << p.epsilon, p.v, 0.0,
         p.v, 0.0, p.w,
         0.0, p.w, p.delta;
    return m;
}

Eigen::Matrix3cd hamiltonian_matrix(const State& psi, const ModelParams& p) {
    Eigen::Matrix3cd m = linear_matrix(p).cast<Complex>();
    m(0, 0) += p.g * std::norm(psi[0]);
    m(1, 1) += p.g * std::norm(psi[1]);
    m(2, 2) += p.g * std::norm(psi[2]);
    return m;
}

State apply_hamiltonian(const State& psi, const ModelParams& p) {
    const Complex a = psi[0], b = psi[1], c = psi[2];
    return State((p.epsilon + p.g * std::norm(a)) * a + p.v * b,
                 p.v * a + p.g * std::norm(b) * b + p.w * c,
                 p.w * b + (p.delta + p.g * std::norm(c)) * c);
}

RealState apply_hamiltonian(const RealState& u, const ModelParams& p) {
    const double a = u[0], b = u[1], c = u[2];
    return RealState((p.epsilon + p.g * a * a) * a + p.v * b,
                     p.v * a + p.g * b * b * b + p.w * c,
                     p.w * b + (p.delta + p.g * c * c) * c);
}

double chemical_potential(const State& psi, const ModelParams& p) {
    return psi.dot(apply_hamiltonian(psi, p)).real();
}

double chemical_potential(const RealState& u, const ModelParams& p) {
    return u.dot(apply_hamiltonian(u, p));
}

CanonicalCoords to_canonical(const State& psi) {
    if (std::abs(psi[1]) == 0.0)
        throw DegeneratePhaseError("to_canonical: b = 0, relative phases undefined");
    CanonicalCoords c;
    c.p1 = std::norm(psi[0]);
    c.p3 = std::norm(psi[2]);
    const double arg_b = std::arg(psi[1]);
    // zero-amplitude components report phase 0
    c.q1 = std::abs(psi[0]) > 0.0 ? std::remainder(arg_b - std::arg(psi[0]), 2.0 * M_PI) : 0.0;
    c.q3 = std::abs(psi[2]) > 0.0 ? std::remainder(arg_b - std::arg(psi[2]), 2.0 * M_PI) : 0.0;
    return c;
}

State from_canonical(const CanonicalCoords& coords) {
    if (coords.p1 < 0.0 || coords.p3 < 0.0 || coords.p1 + coords.p3 > 1.0)
        throw std::invalid_argument("from_canonical: populations outside the simplex");
    const double b = std::sqrt(1.0 - coords.p1 - coords.p3);
    const Complex a = std::sqrt(coords.p1) * std::exp(Complex(0.0, -coords.q1));
    const Complex c = std::sqrt(coords.p3) * std::exp(Complex(0.0, -coords.q3));
    return State(a, b, c);
}

double classical_hamiltonian(const CanonicalCoords& coords, const ModelParams& p) {
    const double p1 = coords.p1, p3 = coords.p3;
    const double p2 = 1.0 - p1 - p3;
    return p.epsilon * p1 + p.delta * p3 +
           0.5 * p.g * (p1 * p1 + p3 * p3 + p2 * p2) +
           2.0 * std::sqrt(p2) *
               (p.v * std::sqrt(p1) * std::cos(coords.q1) +
                p.w * std::sqrt(p3) * std::cos(coords.q3));
}

Eigen::Vector4d classical_gradient(const CanonicalCoords& coords, const ModelParams& p) {
    const double p1 = coords.p1, p3 = coords.p3;
    const double p2 = 1.0 - p1 - p3;
    if (p1 <= 0.0 || p3 <= 0.0 || p2 <= 0.0)
        throw SingularDerivativeError("classical_gradient: boundary of the population simplex");
    const double s1 = std::sqrt(p1), s2 = std::sqrt(p2), s3 = std::sqrt(p3);
    const double cq1 = std::cos(coords.q1), cq3 = std::cos(coords.q3);
    const double coupling = p.v * s1 * cq1 + p.w * s3 * cq3;

    Eigen::Vector4d f;
    // pdot_j = -dH/dq_j
    f[0] = 2.0 * s2 * p.v * s1 * std::sin(coords.q1);
    f[1] = 2.0 * s2 * p.w * s3 * std::sin(coords.q3);
    // qdot_j = +dH/dp_j
    f[2] = p.epsilon + p.g * (p1 - p2) - coupling / s2 + p.v * cq1 * s2 / s1;
    f[3] = p.delta + p.g * (p3 - p2) - coupling / s2 + p.w * cq3 * s2 / s3;
    return f;
}

}  // namespace tripwell
