#include "tripwell/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tripwell {

namespace {

double param_scale(const ModelParams& p) {
    return std::max({1.0, std::abs(p.epsilon), std::abs(p.delta), std::abs(p.v),
                     std::abs(p.w), std::abs(p.g)});
}

double overlap(const RealState& a, const RealState& b) {
    return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

double eq4_residual(const RealState& u, double mu, const ModelParams& p) {
    return (apply_hamiltonian(u, p) - mu * u).cwiseAbs().maxCoeff();
}

// Jacobian of [H(p)u - mu u; (u.u - 1)/2] with respect to (u, mu).
Eigen::Matrix4d stationarity_jacobian(const RealState& u, double mu, const ModelParams& p) {
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    J.topLeftCorner<3, 3>() = linear_matrix(p) +
                              3.0 * p.g * u.cwiseProduct(u).asDiagonal().toDenseMatrix() -
                              mu * Eigen::Matrix3d::Identity();
    J.topRightCorner<3, 1>() = -u;
    J.bottomLeftCorner<1, 3>() = u.transpose();
    return J;
}

}  // namespace

const char* to_string(Stability s) {
    return s == Stability::Elliptic ? "elliptic" : "hyperbolic";
}

Eigen::Vector2d reduced_residuals(const ReducedCoords& coords, const ModelParams& p) {
    const double x = coords.x, y = coords.y;
    if (x == 0.0 || y == 0.0)
        throw std::domain_error("reduced_residuals: x and y must be nonzero");
    const double s = p.g + p.delta + p.epsilon + p.v * (x + 1.0 / x) + p.w * (y + 1.0 / y);
    const double x2 = x * x, y2 = y * y;
    Eigen::Vector2d r;
    r[0] = (1.0 - x2 * y2) * s - 3.0 * p.delta - 3.0 * p.w / y + 3.0 * x2 * y2 * (p.epsilon + p.v * x);
    r[1] = (1.0 - x2) * s - 3.0 * p.v / x - 3.0 * p.w * y + 3.0 * x2 * (p.epsilon + p.v * x);
    return r;
}

std::vector<double> solve_y_given_x(double x, const ModelParams& p) {
    if (x == 0.0) throw std::domain_error("solve_y_given_x: x must be nonzero");
    const double x2 = x * x;
    // y * (second reduced equation) is quadratic in y
    const double c2 = p.w * (1.0 - x2) - 3.0 * p.w;
    const double c1 = (1.0 - x2) * (p.g + p.delta + p.epsilon + p.v * (x + 1.0 / x)) -
                      3.0 * p.v / x + 3.0 * x2 * (p.epsilon + p.v * x);
    const double c0 = p.w * (1.0 - x2);

    std::vector<double> roots;
    if (c2 == 0.0) {
        if (c1 == 0.0)
            throw std::domain_error("solve_y_given_x: degenerate equation (zero leading and linear coefficients)");
        const double y = -c0 / c1;
        if (y != 0.0 && std::isfinite(y)) roots.push_back(y);
        return roots;
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return roots;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (c1 + std::copysign(sq, c1));
    double y1, y2;
    if (q != 0.0) {
        y1 = q / c2;
        y2 = c0 / q;
    } else {
        y1 = 0.0;
        y2 = 0.0;
    }
    for (double y : {y1, y2})
        if (y != 0.0 && std::isfinite(y)) roots.push_back(y);
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::optional<StationaryState> polish_state(const RealState& guess, double mu_guess,
                                            const ModelParams& p, double tol, int max_iter) {
    RealState u = guess;
    double mu = mu_guess;
    const double scale = param_scale(p);
    for (int it = 0; it < max_iter; ++it) {
        Eigen::Vector4d F;
        F.head<3>() = apply_hamiltonian(u, p) - mu * u;
        F[3] = 0.5 * (u.squaredNorm() - 1.0);
        if (F.cwiseAbs().maxCoeff() <= tol * scale) {
            StationaryState s;
            s.state = gauge_fixed(RealState(u / u.norm()));
            s.mu = chemical_potential(s.state, p);
            s.residual = eq4_residual(s.state, s.mu, p);
            if (s.residual > 10.0 * tol * scale) return std::nullopt;
            s.classification = classify_state(s.state, s.mu, p);
            return s;
        }
        Eigen::Matrix4d J = stationarity_jacobian(u, mu, p);
        Eigen::Vector4d dz = J.fullPivLu().solve(-F);
        if (!dz.allFinite()) return std::nullopt;
        u += dz.head<3>();
        mu += dz[3];
        if (!u.allFinite() || !std::isfinite(mu)) return std::nullopt;
    }
    return std::nullopt;
}

Stability classify_state(const RealState& u, double mu, const ModelParams& p) {
    const RealState un = u / u.norm();
    const Eigen::Vector3d pops = un.cwiseProduct(un);
    const Eigen::Matrix3d H0 = linear_matrix(p);
    const Eigen::Matrix3d MR = 2.0 * H0 + 6.0 * p.g * pops.asDiagonal().toDenseMatrix() -
                               2.0 * mu * Eigen::Matrix3d::Identity();
    const Eigen::Matrix3d MI = 2.0 * H0 + 2.0 * p.g * pops.asDiagonal().toDenseMatrix() -
                               2.0 * mu * Eigen::Matrix3d::Identity();

    // orthonormal basis of the plane orthogonal to un
    int k = 0;
    un.cwiseAbs().minCoeff(&k);
    RealState q1 = RealState::Unit(k) - un[k] * un;
    q1.normalize();
    const RealState q2 = un.cross(q1);
    Eigen::Matrix<double, 3, 2> Q;
    Q.col(0) = q1;
    Q.col(1) = q2;

    Eigen::Vector4d eigs;
    const Eigen::Matrix2d BR = Q.transpose() * MR * Q;
    const Eigen::Matrix2d BI = Q.transpose() * MI * Q;
    eigs.head<2>() = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(BR).eigenvalues();
    eigs.tail<2>() = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(BI).eigenvalues();

    const bool all_pos = (eigs.array() > 0.0).all();
    const bool all_neg = (eigs.array() < 0.0).all();
    return (all_pos || all_neg) ? Stability::Elliptic : Stability::Hyperbolic;
}

std::array<StationaryState, 3> linear_eigensystem(const ModelParams& p) {
    ModelParams lin = p;
    lin.g = 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(linear_matrix(lin));
    std::array<StationaryState, 3> out;
    for (int i = 0; i < 3; ++i) {
        StationaryState s;
        s.state = gauge_fixed(RealState(es.eigenvectors().col(i)));
        s.mu = es.eigenvalues()[i];
        s.residual = eq4_residual(s.state, s.mu, lin);
        s.classification = classify_state(s.state, s.mu, lin);
        out[i] = s;
    }
    return out;
}

LinearCrossingData linear_crossing_data(const ModelParams& p) {
    LinearCrossingData d;
    const double disc = std::sqrt(0.25 * p.delta * p.delta + p.w * p.w);
    d.lambda1 = 0.5 * p.delta + disc;
    d.lambda2 = 0.5 * p.delta - disc;
    d.n1 = std::sqrt(d.lambda2 * d.lambda2 + p.w * p.w);
    d.n2 = std::sqrt(d.lambda1 * d.lambda1 + p.w * p.w);
    d.v1 = -d.lambda1 * p.v / d.n2;
    d.v2 = -d.lambda2 * p.v / d.n1;
    d.gc1 = 2.0 * std::abs(d.v1);
    d.gc2 = 2.0 * std::abs(d.v2);
    return d;
}

namespace {

// ---- x-scan route --------------------------------------------------------

double composed_residual(double x, double y, const ModelParams& p) {
    return reduced_residuals({x, y}, p)[0];
}

RealState state_from_ratios(double x, double y) {
    const double d = 1.0 + x * x + x * x * y * y;
    const double a = std::copysign(1.0 / std::sqrt(d), x);  // b = x*a > 0
    return RealState(a, x * a, y * x * a);
}

struct ScanCandidate {
    double x, y;
};

std::optional<double> root_near(double x, double y_ref, const ModelParams& p) {
    std::vector<double> roots;
    try {
        roots = solve_y_given_x(x, p);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    if (roots.empty()) return std::nullopt;
    double best = roots[0];
    for (double r : roots)
        if (std::abs(r - y_ref) < std::abs(best - y_ref)) best = r;
    return best;
}

void bisect_candidate(double xa, double fa, double ya, double xb, double /*fb*/,
                      const ModelParams& p, std::vector<ScanCandidate>& out) {
    double y_ref = ya;
    double xm = 0.5 * (xa + xb), ym = ya;
    for (int it = 0; it < 80; ++it) {
        xm = 0.5 * (xa + xb);
        auto r = root_near(xm, y_ref, p);
        if (!r) break;
        ym = *r;
        const double fm = composed_residual(xm, ym, p);
        if (fa * fm <= 0.0) {
            xb = xm;
        } else {
            xa = xm;
            fa = fm;
        }
        y_ref = ym;
        if (std::abs(xb - xa) <= 1e-14 * std::max(1.0, std::abs(xm))) break;
    }
    out.push_back({xm, ym});
}

std::vector<ScanCandidate> x_scan_candidates(const ModelParams& p, const SearchConfig& cfg) {
    std::vector<ScanCandidate> cands;
    const int n = std::max(cfg.x_points, 16);
    const double lmin = std::log(cfg.x_min), lmax = std::log(cfg.x_max);

    for (double sign : {1.0, -1.0}) {
        // two y-branches tracked in sorted order across the grid
        std::array<double, 2> prev_y{0.0, 0.0};
        std::array<double, 2> prev_f{0.0, 0.0};
        std::array<bool, 2> prev_ok{false, false};
        double prev_x = 0.0;

        for (int i = 0; i < n; ++i) {
            const double x = sign * std::exp(lmin + (lmax - lmin) * i / (n - 1.0));
            std::vector<double> roots;
            try {
                roots = solve_y_given_x(x, p);
            } catch (const std::domain_error&) {
                prev_ok = {false, false};
                continue;
            }

            std::array<double, 2> cur_y{0.0, 0.0};
            std::array<double, 2> cur_f{0.0, 0.0};
            std::array<bool, 2> cur_ok{false, false};
            for (std::size_t k = 0; k < roots.size() && k < 2; ++k) {
                cur_y[k] = roots[k];
                cur_f[k] = composed_residual(x, roots[k], p);
                cur_ok[k] = std::isfinite(cur_f[k]);
            }

            // pair with the previous node's branches by proximity in y
            for (int k = 0; k < 2; ++k) {
                if (!prev_ok[k]) continue;
                int match = -1;
                double best = std::numeric_limits<double>::infinity();
                for (int m = 0; m < 2; ++m) {
                    if (!cur_ok[m]) continue;
                    const double d = std::abs(cur_y[m] - prev_y[k]);
                    if (d < best) {
                        best = d;
                        match = m;
                    }
                }
                if (match < 0) continue;
                if (best > 0.75 * std::max(1.0, std::abs(prev_y[k]))) continue;
                if (prev_f[k] * cur_f[match] < 0.0)
                    bisect_candidate(prev_x, prev_f[k], prev_y[k], x, cur_f[match], p, cands);
                else if (std::abs(cur_f[match]) < 1e-12 * param_scale(p))
                    cands.push_back({x, cur_y[match]});
            }

            prev_x = x;
            prev_y = cur_y;
            prev_f = cur_f;
            prev_ok = cur_ok;
        }
    }
    return cands;
}

// ---- critical-point route ------------------------------------------------

// dH/dp1, dH/dp3 of the classical energy at fixed phase signs cq1, cq3.
Eigen::Vector2d energy_gradient_p(double p1, double p3, double cq1, double cq3,
                                  const ModelParams& p) {
    const double p2 = 1.0 - p1 - p3;
    const double s1 = std::sqrt(p1), s2 = std::sqrt(p2), s3 = std::sqrt(p3);
    const double R = p.v * s1 * cq1 + p.w * s3 * cq3;
    Eigen::Vector2d grad;
    grad[0] = p.epsilon + p.g * (p1 - p2) - R / s2 + p.v * cq1 * s2 / s1;
    grad[1] = p.delta + p.g * (p3 - p2) - R / s2 + p.w * cq3 * s2 / s3;
    return grad;
}

Eigen::Matrix2d energy_hessian_p(double p1, double p3, double cq1, double cq3,
                                 const ModelParams& p) {
    const double p2 = 1.0 - p1 - p3;
    const double s1 = std::sqrt(p1), s2 = std::sqrt(p2), s3 = std::sqrt(p3);
    const double R = p.v * s1 * cq1 + p.w * s3 * cq3;
    const double a = p.v * cq1, b = p.w * cq3;
    Eigen::Matrix2d h;
    h(0, 0) = 2.0 * p.g - R / (2.0 * s2 * s2 * s2) - a * (1.0 / (s1 * s2) + s2 / (2.0 * s1 * s1 * s1));
    h(1, 1) = 2.0 * p.g - R / (2.0 * s2 * s2 * s2) - b * (1.0 / (s3 * s2) + s2 / (2.0 * s3 * s3 * s3));
    h(0, 1) = p.g - R / (2.0 * s2 * s2 * s2) - a / (2.0 * s1 * s2) - b / (2.0 * s2 * s3);
    h(1, 0) = h(0, 1);
    return h;
}

struct PopCandidate {
    double p1, p3, cq1, cq3;
};

bool newton_critical_point(double& p1, double& p3, double cq1, double cq3,
                           const ModelParams& p, double tol) {
    constexpr double margin = 1e-12;
    for (int it = 0; it < 80; ++it) {
        const Eigen::Vector2d grad = energy_gradient_p(p1, p3, cq1, cq3, p);
        if (!grad.allFinite()) return false;
        if (grad.cwiseAbs().maxCoeff() <= tol) return true;
        const Eigen::Matrix2d hess = energy_hessian_p(p1, p3, cq1, cq3, p);
        Eigen::Vector2d step = hess.fullPivLu().solve(-grad);
        if (!step.allFinite()) return false;
        double lam = 1.0;
        int halvings = 0;
        while (halvings < 50) {
            const double n1 = p1 + lam * step[0];
            const double n3 = p3 + lam * step[1];
            if (n1 > margin && n3 > margin && 1.0 - n1 - n3 > margin) {
                p1 = n1;
                p3 = n3;
                break;
            }
            lam *= 0.5;
            ++halvings;
        }
        if (halvings >= 50) return false;
    }
    return false;
}

std::vector<PopCandidate> critical_point_candidates(const ModelParams& p, const SearchConfig& cfg) {
    std::vector<PopCandidate> found;
    const double tol = 1e-11 * param_scale(p);
    const int n = std::max(cfg.simplex_points, 6);

    std::vector<std::pair<double, double>> seeds;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n - i; ++j)
            seeds.emplace_back(double(i) / n, double(j) / n);
    // extra seeds hugging the simplex boundary where basins get thin
    for (double m : {1e-3, 1e-2, 5e-2}) {
        for (int i = 1; i < n; ++i) {
            const double t = double(i) / n;
            if (t + m < 1.0) {
                seeds.emplace_back(m, t);
                seeds.emplace_back(t, m);
                seeds.emplace_back(t, 1.0 - t - m);
            }
        }
    }

    for (double cq1 : {1.0, -1.0}) {
        for (double cq3 : {1.0, -1.0}) {
            for (auto [s1, s3] : seeds) {
                double p1 = s1, p3 = s3;
                if (newton_critical_point(p1, p3, cq1, cq3, p, tol))
                    found.push_back({p1, p3, cq1, cq3});
            }
        }
    }
    return found;
}

// ---- closed-form candidates in degenerate sectors -------------------------

// States with b = 0 exist when the 1-3 populations balance the on-site
// mismatch; checked directly against the stationary equation.
void append_b_zero_candidates(const ModelParams& p, std::vector<StationaryState>& out,
                              double tol) {
    const double hyp = std::hypot(p.v, p.w);
    if (hyp == 0.0) return;
    const RealState u(p.w / hyp, 0.0, -p.v / hyp);
    const double mu = chemical_potential(u, p);
    const double res = eq4_residual(u, mu, p);
    if (res <= tol) {
        StationaryState s;
        s.state = gauge_fixed(u);
        s.mu = mu;
        s.residual = res;
        s.classification = classify_state(s.state, s.mu, p);
        out.push_back(s);
    }
}

// Fully uncoupled wells: populations are pinned by the on-site balance.
void append_uncoupled_states(const ModelParams& p, std::vector<StationaryState>& out,
                             double tol) {
    auto push = [&](const RealState& u) {
        const RealState un = u / u.norm();
        const double mu = chemical_potential(un, p);
        const double res = eq4_residual(un, mu, p);
        if (res <= tol) {
            StationaryState s;
            s.state = gauge_fixed(un);
            s.mu = mu;
            s.residual = res;
            s.classification = classify_state(s.state, s.mu, p);
            out.push_back(s);
        }
    };
    push(RealState(1, 0, 0));
    push(RealState(0, 1, 0));
    push(RealState(0, 0, 1));
    if (p.g == 0.0) return;
    auto balanced = [&](double diff) {  // populations (x, 1-x) with x - (1-x) = diff
        return 0.5 * (1.0 + diff);
    };
    const double pb_ab = balanced(-p.epsilon / p.g);  // g b^2 - g a^2 = epsilon
    if (pb_ab > 0.0 && pb_ab < 1.0)
        for (double sgn : {1.0, -1.0})
            push(RealState(sgn * std::sqrt(1.0 - pb_ab), std::sqrt(pb_ab), 0.0));
    const double pc_ac = balanced((p.epsilon - p.delta) / p.g);
    if (pc_ac > 0.0 && pc_ac < 1.0)
        for (double sgn : {1.0, -1.0})
            push(RealState(std::sqrt(pc_ac), 0.0, sgn * std::sqrt(1.0 - pc_ac)));
    const double pb_bc = balanced(p.delta / p.g);
    if (pb_bc > 0.0 && pb_bc < 1.0)
        for (double sgn : {1.0, -1.0})
            push(RealState(0.0, std::sqrt(pb_bc), sgn * std::sqrt(1.0 - pb_bc)));
    const double b2 = (1.0 + (p.epsilon + p.delta) / p.g) / 3.0;
    const double a2 = b2 - p.epsilon / p.g, c2 = b2 - p.delta / p.g;
    if (a2 > 0.0 && b2 > 0.0 && c2 > 0.0)
        for (double sa : {1.0, -1.0})
            for (double sc : {1.0, -1.0})
                push(RealState(sa * std::sqrt(a2), std::sqrt(b2), sc * std::sqrt(c2)));
}

}  // namespace

std::vector<StationaryState> find_stationary_states(const ModelParams& p,
                                                    const SearchConfig& cfg,
                                                    SearchDiagnostics* diag) {
    const double scale = param_scale(p);
    std::vector<StationaryState> states;

    auto add_candidate = [&](const RealState& guess, double mu_guess) {
        auto polished = polish_state(guess, mu_guess, p, cfg.newton_tol, cfg.newton_max_iter);
        if (!polished) {
            if (diag) ++diag->convergence_failures;
            return;
        }
        for (const auto& s : states)
            if (overlap(s.state, polished->state) > cfg.dedup_overlap) return;
        states.push_back(*polished);
    };

    if (p.v == 0.0 && p.w == 0.0) {
        append_uncoupled_states(p, states, 10.0 * cfg.newton_tol * scale);
    } else {
        if (cfg.use_x_scan) {
            const auto cands = x_scan_candidates(p, cfg);
            if (diag) diag->x_scan_candidates = int(cands.size());
            for (const auto& c : cands) {
                const RealState u = state_from_ratios(c.x, c.y);
                add_candidate(u, chemical_potential(u, p));
            }
        }
        if (cfg.use_critical_points) {
            const auto cands = critical_point_candidates(p, cfg);
            if (diag) diag->critical_point_candidates = int(cands.size());
            for (const auto& c : cands) {
                const double p2 = 1.0 - c.p1 - c.p3;
                const RealState u(c.cq1 * std::sqrt(c.p1), std::sqrt(p2), c.cq3 * std::sqrt(c.p3));
                add_candidate(u, chemical_potential(u, p));
            }
        }
        std::vector<StationaryState> special;
        append_b_zero_candidates(p, special, 10.0 * cfg.newton_tol * scale);
        for (const auto& s : special) {
            bool dup = false;
            for (const auto& t : states)
                if (overlap(s.state, t.state) > cfg.dedup_overlap) dup = true;
            if (!dup) states.push_back(s);
        }
    }

    std::sort(states.begin(), states.end(), [](const StationaryState& a, const StationaryState& b) {
        if (a.mu != b.mu) return a.mu < b.mu;
        for (int i = 0; i < 3; ++i)
            if (a.state[i] != b.state[i]) return a.state[i] < b.state[i];
        return false;
    });
    return states;
}

// ---- continuation ---------------------------------------------------------

const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::Epsilon: return "epsilon";
        case SweepParameter::Delta: return "delta";
        case SweepParameter::V: return "v";
        case SweepParameter::W: return "w";
        case SweepParameter::G: return "g";
    }
    return "?";
}

double get_param(const ModelParams& p, SweepParameter which) {
    switch (which) {
        case SweepParameter::Epsilon: return p.epsilon;
        case SweepParameter::Delta: return p.delta;
        case SweepParameter::V: return p.v;
        case SweepParameter::W: return p.w;
        case SweepParameter::G: return p.g;
    }
    return 0.0;
}

void set_param(ModelParams& p, SweepParameter which, double value) {
    switch (which) {
        case SweepParameter::Epsilon: p.epsilon = value; break;
        case SweepParameter::Delta: p.delta = value; break;
        case SweepParameter::V: p.v = value; break;
        case SweepParameter::W: p.w = value; break;
        case SweepParameter::G: p.g = value; break;
    }
}

namespace {

// d(H(p)u - mu u)/d(lambda) for the swept parameter.
RealState stationarity_param_derivative(const RealState& u, SweepParameter which,
                                        const ModelParams&) {
    switch (which) {
        case SweepParameter::Epsilon: return RealState(u[0], 0, 0);
        case SweepParameter::Delta: return RealState(0, 0, u[2]);
        case SweepParameter::V: return RealState(u[1], u[0], 0);
        case SweepParameter::W: return RealState(0, u[2], u[1]);
        case SweepParameter::G: return u.array().cube();
    }
    return RealState::Zero();
}

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

Vec5 pack(const RealState& u, double mu, double lam) {
    Vec5 z;
    z << u[0], u[1], u[2], mu, lam;
    return z;
}

Eigen::Vector4d stationarity_residual_ext(const Vec5& z, SweepParameter which, ModelParams p) {
    set_param(p, which, z[4]);
    const RealState u = z.head<3>();
    Eigen::Vector4d F;
    F.head<3>() = apply_hamiltonian(u, p) - z[3] * u;
    F[3] = 0.5 * (u.squaredNorm() - 1.0);
    return F;
}

Eigen::Matrix<double, 4, 5> extended_jacobian(const Vec5& z, SweepParameter which, ModelParams p) {
    set_param(p, which, z[4]);
    const RealState u = z.head<3>();
    Eigen::Matrix<double, 4, 5> J = Eigen::Matrix<double, 4, 5>::Zero();
    J.topLeftCorner<4, 4>() = stationarity_jacobian(u, z[3], p);
    J.topRightCorner<3, 1>() = stationarity_param_derivative(u, which, p);
    return J;
}

// Null-direction of the extended Jacobian, oriented along the previous tangent.
std::optional<Vec5> branch_tangent(const Vec5& z, const Vec5& t_prev, SweepParameter which,
                                   const ModelParams& p) {
    Mat5 M;
    M.topRows<4>() = extended_jacobian(z, which, p);
    M.bottomRows<1>() = t_prev.transpose();
    Vec5 rhs = Vec5::Zero();
    rhs[4] = 1.0;
    Vec5 t = M.fullPivLu().solve(rhs);
    if (!t.allFinite() || t.norm() == 0.0) return std::nullopt;
    t.normalize();
    return t;
}

}  // namespace

EigenBranch continue_branch(const StationaryState& seed, const ModelParams& params,
                            SweepParameter parameter, double from, double to,
                            const ContinuationOptions& opts) {
    EigenBranch branch;
    branch.parameter = parameter;

    ModelParams p0 = params;
    set_param(p0, parameter, from);
    auto start = polish_state(seed.state, seed.mu, p0, opts.corrector_tol, 60);
    if (!start) {
        branch.truncated = true;
        branch.truncation_param = from;
        branch.truncation_reason = "seed did not converge at the sweep start";
        return branch;
    }
    branch.points.push_back({from, *start});

    const double dir = to >= from ? 1.0 : -1.0;
    const double lo = std::min(from, to), hi = std::max(from, to);
    const double scale = param_scale(p0);

    Vec5 z = pack(start->state, start->mu, from);
    Vec5 t_prev = Vec5::Zero();
    t_prev[4] = dir;
    auto t0 = branch_tangent(z, t_prev, parameter, params);
    if (!t0) {
        branch.truncated = true;
        branch.truncation_param = from;
        branch.truncation_reason = "singular Jacobian at the seed";
        return branch;
    }
    Vec5 t = *t0;
    if (t[4] * dir < 0.0) t = -t;

    double ds = opts.initial_step;
    auto classify_point = [&](const Vec5& zz) {
        ModelParams pl = params;
        set_param(pl, parameter, zz[4]);
        StationaryState s;
        s.state = zz.head<3>();
        s.state /= s.state.norm();
        s.mu = zz[3];
        s.residual = eq4_residual(s.state, s.mu, pl);
        s.classification = classify_state(s.state, s.mu, pl);
        return s;
    };

    for (int step = 0; step < opts.max_steps; ++step) {
        // predictor + corrector with the arclength constraint
        Vec5 zp = z + ds * t;
        Vec5 zn = zp;
        bool converged = false;
        int used = 0;
        for (int it = 0; it < opts.corrector_max_iter; ++it) {
            Vec5 G5;
            const Eigen::Vector4d F = stationarity_residual_ext(zn, parameter, params);
            G5.head<4>() = F;
            G5[4] = t.dot(zn - z) - ds;
            if (G5.cwiseAbs().maxCoeff() <= opts.corrector_tol * scale) {
                converged = true;
                used = it;
                break;
            }
            Mat5 M;
            M.topRows<4>() = extended_jacobian(zn, parameter, params);
            M.bottomRows<1>() = t.transpose();
            const Vec5 dz = M.fullPivLu().solve(-G5);
            if (!dz.allFinite()) break;
            zn += dz;
        }

        bool accepted = converged;
        if (accepted) {
            const RealState u_prev = z.head<3>();
            const RealState u_new = zn.head<3>();
            if (overlap(u_prev, u_new) < opts.min_neighbor_overlap) accepted = false;
        }
        if (!accepted) {
            ds *= 0.5;
            if (ds < opts.min_step) {
                branch.truncated = true;
                branch.truncation_param = z[4];
                branch.truncation_reason = "step size underflow without convergence";
                return branch;
            }
            continue;
        }

        auto tn = branch_tangent(zn, t, parameter, params);
        if (!tn) {
            ds *= 0.5;
            if (ds < opts.min_step) {
                branch.truncated = true;
                branch.truncation_param = z[4];
                branch.truncation_reason = "singular tangent system";
                return branch;
            }
            continue;
        }

        branch.points.push_back({zn[4], classify_point(zn)});

        if (t[4] * (*tn)[4] < 0.0) {
            // turning point between the last two accepted states
            const double w0 = std::abs(t[4]), w1 = std::abs((*tn)[4]);
            const double lam = z[4] + (zn[4] - z[4]) * (w0 / std::max(w0 + w1, 1e-300));
            branch.folds.push_back(lam);
            branch.fold_indices.push_back(branch.points.size() - 1);
        }

        z = zn;
        t = *tn;

        // done when the sweep target is reached, or the branch leaves the window
        if ((dir > 0.0 && z[4] >= hi) || (dir < 0.0 && z[4] <= lo) ||
            z[4] > hi + 1e-12 || z[4] < lo - 1e-12) {
            const double end = std::clamp(z[4], lo, hi);
            ModelParams pe = params;
            set_param(pe, parameter, end);
            auto last = polish_state(z.head<3>(), z[3], pe, opts.corrector_tol, 60);
            if (last && overlap(last->state, RealState(z.head<3>())) > 0.99)
                branch.points.back() = {end, *last};
            return branch;
        }

        if (used <= 3)
            ds = std::min(ds * 1.4, opts.max_step);
        else if (used >= 6)
            ds = std::max(ds * 0.7, opts.min_step);
    }
    branch.truncated = true;
    branch.truncation_param = z[4];
    branch.truncation_reason = "maximum continuation steps reached";
    return branch;
}

std::optional<StationaryState> branch_state_at(const EigenBranch& branch, double param,
                                               const ModelParams& base) {
    if (branch.points.empty()) return std::nullopt;
    const std::size_t end = branch.fold_indices.empty() ? branch.points.size() - 1
                                                        : branch.fold_indices.front();
    if (end == 0) return std::nullopt;
    const double a = branch.points.front().param, b = branch.points[end].param;
    const double lo = std::min(a, b), hi = std::max(a, b);
    if (param < lo || param > hi) return std::nullopt;

    std::size_t k = 0;
    for (std::size_t i = 0; i + 1 <= end; ++i) {
        const double x0 = branch.points[i].param, x1 = branch.points[i + 1].param;
        if ((param >= std::min(x0, x1)) && (param <= std::max(x0, x1))) {
            k = i;
            break;
        }
    }
    const auto& P0 = branch.points[k];
    const auto& P1 = branch.points[k + 1];
    const double span = P1.param - P0.param;
    const double s = span != 0.0 ? (param - P0.param) / span : 0.0;
    RealState u = (1.0 - s) * P0.state.state + s * P1.state.state;
    u /= u.norm();
    const double mu = (1.0 - s) * P0.state.mu + s * P1.state.mu;

    ModelParams p = base;
    set_param(p, branch.parameter, param);
    auto polished = polish_state(u, mu, p, 1e-11, 40);
    if (polished && overlap(polished->state, u) > 0.99) return polished;

    StationaryState s_out;
    s_out.state = u;
    s_out.mu = chemical_potential(u, p);
    s_out.residual = eq4_residual(u, s_out.mu, p);
    s_out.classification = classify_state(u, s_out.mu, p);
    return s_out;
}

StationaryState homotopy_in_g(const StationaryState& seed, const ModelParams& p, double g_step) {
    int n = std::max(1, int(std::ceil(std::abs(p.g) / std::max(g_step, 1e-6))));
    for (int attempt = 0; attempt < 4; ++attempt) {
        StationaryState cur = seed;
        bool ok = true;
        for (int k = 1; k <= n; ++k) {
            ModelParams pk = p;
            pk.g = p.g * double(k) / n;
            auto polished = polish_state(cur.state, cur.mu, pk, 1e-12, 80);
            if (!polished || overlap(polished->state, cur.state) < 0.9) {
                ok = false;
                break;
            }
            cur = *polished;
        }
        if (ok) return cur;
        n *= 2;
    }
    throw std::runtime_error("homotopy_in_g: continuation in g failed");
}

}  // namespace tripwell
