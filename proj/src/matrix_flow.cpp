#include "ouflow/matrix_flow.hpp"

#include "ouflow/errors.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>
#include <vector>

namespace ouflow {

namespace {

// 4-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNode[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
constexpr double kGlWeight[4] = {0.3478548451374538, 0.6521451548625461,
                                 0.6521451548625461, 0.3478548451374538};

constexpr int kMaxStepDoublings = 22;
constexpr int kMaxPanelDoublings = 14;

void check_time_range(const MatrixSignal& M, double s, double t) {
    if (s < 0.0 || t < 0.0)
        throw ConfigError("times must be non-negative");
    const double hi = M.horizon() * (1.0 + 1e-12);
    if (s > hi || t > hi)
        throw ConfigError("time beyond signal horizon " +
                          std::to_string(M.horizon()));
}

// One classical RK4 step of U' = rhs(tau, U).
template <typename Rhs>
Eigen::MatrixXd rk4_step(const Rhs& rhs, double tau, double h,
                         const Eigen::MatrixXd& u) {
    const Eigen::MatrixXd k1 = rhs(tau, u);
    const Eigen::MatrixXd k2 = rhs(tau + 0.5 * h, u + 0.5 * h * k1);
    const Eigen::MatrixXd k3 = rhs(tau + 0.5 * h, u + 0.5 * h * k2);
    const Eigen::MatrixXd k4 = rhs(tau + h, u + h * k3);
    return u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename Rhs>
Eigen::MatrixXd integrate_fixed(const Rhs& rhs, double a, double b,
                                const Eigen::MatrixXd& u0, int n) {
    const double h = (b - a) / n;
    Eigen::MatrixXd u = u0;
    for (int i = 0; i < n; ++i) u = rk4_step(rhs, a + i * h, h, u);
    return u;
}

// Fixed-step RK4 with Richardson step-doubling control: accept the 2n-step
// result once it agrees with the n-step one to tol (relative).
template <typename Rhs>
Eigen::MatrixXd integrate_controlled(const Rhs& rhs, double a, double b,
                                     const Eigen::MatrixXd& u0, double tol,
                                     int n0 = 8) {
    if (a == b) return u0;
    int n = std::max(2, n0);
    Eigen::MatrixXd coarse = integrate_fixed(rhs, a, b, u0, n);
    for (int iter = 0; iter < kMaxStepDoublings; ++iter) {
        n *= 2;
        Eigen::MatrixXd fine = integrate_fixed(rhs, a, b, u0, n);
        const double scale = std::max(1.0, fine.norm());
        if ((fine - coarse).norm() <= tol * scale) return fine;
        coarse = std::move(fine);
    }
    throw ConvergenceError("propagator integration did not reach tol=" +
                           std::to_string(tol) + " on [" + std::to_string(a) +
                           ", " + std::to_string(b) + "]");
}

// Trajectory of V(r) = U(s,r) (dV/dr = V M(r), V(s) = Id) at sorted nodes
// r >= s. Per-leg step doubling with tolerance prorated by leg length.
std::vector<Eigen::MatrixXd>
second_arg_trajectory(const MatrixSignal& M, double s,
                      const std::vector<double>& nodes, double tol) {
    auto rhs = [&M](double r, const Eigen::MatrixXd& v) {
        return Eigen::MatrixXd(v * M(r));
    };
    const double total =
        nodes.empty() ? 0.0 : std::max(nodes.back() - s, 1e-300);
    std::vector<Eigen::MatrixXd> out;
    out.reserve(nodes.size());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(M.dimension(), M.dimension());
    double r = s;
    for (double node : nodes) {
        if (node > r) {
            const double leg_tol = tol * std::max((node - r) / total, 1e-3);
            v = integrate_controlled(rhs, r, node, v, leg_tol, 2);
            r = node;
        }
        out.push_back(v);
    }
    return out;
}

bool near_coincident(const MatrixSignal& M, double s, double t) {
    return std::abs(t - s) < kNearCoincidentFraction * M.horizon();
}

GramMatrix finish_gram(Eigen::MatrixXd q, double s, double t) {
    GramMatrix g;
    g.matrix = std::move(q);
    g.s = s;
    g.t = t;
    Eigen::LLT<Eigen::MatrixXd> llt(g.matrix);
    if (llt.info() != Eigen::Success) {
        Eigen::MatrixXd fallback =
            (t - s) * Eigen::MatrixXd::Identity(g.matrix.rows(), g.matrix.cols());
        throw NearSingularGramError(
            "Gram matrix not SPD at t-s=" + std::to_string(t - s) +
                "; leading-order fallback (t-s)*Id attached",
            fallback);
    }
    g.chol = llt.matrixL();
    g.log_det = 0.0;
    for (int i = 0; i < g.chol.rows(); ++i)
        g.log_det += 2.0 * std::log(g.chol(i, i));
    return g;
}

} // namespace

Eigen::VectorXd GramMatrix::solve(const Eigen::VectorXd& b) const {
    Eigen::VectorXd y = chol.triangularView<Eigen::Lower>().solve(b);
    return chol.transpose().triangularView<Eigen::Upper>().solve(y);
}

double GramMatrix::inv_sqrt_norm() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix);
    return 1.0 / std::sqrt(es.eigenvalues().minCoeff());
}

Propagator propagate(const MatrixSignal& M, double s, double t, double tol) {
    check_time_range(M, s, t);
    const int d = M.dimension();
    Propagator p;
    p.s = s;
    p.t = t;
    p.tol = tol;
    if (near_coincident(M, s, t)) {
        p.matrix = Eigen::MatrixXd::Identity(d, d) - (t - s) * M(s);
        return p;
    }
    auto rhs = [&M](double tau, const Eigen::MatrixXd& u) {
        return Eigen::MatrixXd(-M(tau) * u);
    };
    const int n0 = std::max(8, static_cast<int>(std::ceil(std::abs(t - s) * 8)));
    p.matrix = integrate_controlled(rhs, s, t, Eigen::MatrixXd::Identity(d, d),
                                    tol, n0);
    return p;
}

std::pair<GramMatrix, Eigen::VectorXd>
gram_and_drift(const MatrixSignal& M, const VectorSignal& f, double s,
               double t, double tol) {
    check_time_range(M, s, t);
    if (!(t > s))
        throw ConfigError("gram requires t > s");
    const int d = M.dimension();
    if (f.dimension() != d)
        throw ConfigError("signal dimensions disagree");

    if (near_coincident(M, s, t)) {
        const double tau = t - s;
        GramMatrix g =
            finish_gram(tau * Eigen::MatrixXd::Identity(d, d), s, t);
        return {std::move(g), Eigen::VectorXd(tau * f(s))};
    }

    const double traj_tol = 0.1 * tol;
    Eigen::MatrixXd q_prev;
    Eigen::VectorXd g_prev;
    int panels = 2;
    for (int level = 0; level <= kMaxPanelDoublings; ++level, panels *= 2) {
        std::vector<double> nodes;
        nodes.reserve(4 * panels);
        const double width = (t - s) / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = s + (p + 0.5) * width;
            for (double xi : kGlNode) nodes.push_back(mid + 0.5 * width * xi);
        }
        const auto traj = second_arg_trajectory(M, s, nodes, traj_tol);

        Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, d);
        Eigen::VectorXd gv = Eigen::VectorXd::Zero(d);
        for (int p = 0; p < panels; ++p)
            for (int k = 0; k < 4; ++k) {
                const int idx = 4 * p + k;
                const double w = 0.5 * width * kGlWeight[k];
                const Eigen::MatrixXd& v = traj[idx];
                q.noalias() += w * (v * v.transpose());
                gv.noalias() += w * (v * f(nodes[idx]));
            }

        if (level > 0) {
            const double qd = (q - q_prev).norm() / std::max(1e-300, q.norm());
            const double gd =
                (gv - g_prev).norm() / std::max(1.0, gv.norm());
            if (qd <= tol && gd <= tol)
                return {finish_gram(std::move(q), s, t), std::move(gv)};
        }
        q_prev = std::move(q);
        g_prev = std::move(gv);
    }
    throw ConvergenceError("Gram/drift quadrature did not converge to tol=" +
                           std::to_string(tol));
}

GramMatrix gram(const MatrixSignal& M, double s, double t, double tol) {
    return gram_and_drift(M, VectorSignal::zero(M.dimension(), M.horizon()), s,
                          t, tol)
        .first;
}

Eigen::VectorXd drift_offset(const MatrixSignal& M, const VectorSignal& f,
                             double s, double t, double tol) {
    check_time_range(M, s, t);
    if (t == s) return Eigen::VectorXd::Zero(M.dimension());
    if (!(t > s))
        throw ConfigError("drift_offset requires t >= s");
    return gram_and_drift(M, f, s, t, tol).second;
}

BoundConstants bound_constant(const MatrixSignal& M, double T0,
                              int n_samples) {
    if (!(T0 > 0.0))
        throw ConfigError("bound_constant requires T0 > 0");
    if (n_samples < 2)
        throw ConfigError("bound_constant requires n_samples >= 2");
    check_time_range(M, 0.0, T0);

    // U(t,s) = U(t,0) U(0,s): one forward first-argument trajectory W and one
    // forward second-argument trajectory V cover the whole grid with no
    // matrix inversion.
    const int d = M.dimension();
    const double tol = 1e-10;
    std::vector<double> grid(n_samples);
    for (int i = 0; i < n_samples; ++i)
        grid[i] = T0 * static_cast<double>(i) / (n_samples - 1);

    const auto v_traj = second_arg_trajectory(M, 0.0, grid, 0.1 * tol);
    std::vector<Eigen::MatrixXd> w_traj;
    w_traj.reserve(n_samples);
    auto rhs = [&M](double tau, const Eigen::MatrixXd& u) {
        return Eigen::MatrixXd(-M(tau) * u);
    };
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(d, d);
    double cur = 0.0;
    for (double g : grid) {
        if (g > cur) {
            w = integrate_controlled(rhs, cur, g, w, 0.1 * tol, 2);
            cur = g;
        }
        w_traj.push_back(w);
    }

    double sup = 1.0;
    for (int i = 0; i < n_samples; ++i)
        for (int j = 0; j < n_samples; ++j) {
            const Eigen::MatrixXd u = w_traj[i] * v_traj[j];
            const double norm =
                u.jacobiSvd().singularValues().maxCoeff();
            sup = std::max(sup, norm);
        }
    return BoundConstants{sup, T0};
}

} // namespace ouflow
