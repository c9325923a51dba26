#include "ouflow/kernel.hpp"

#include "ouflow/errors.hpp"

#include <cmath>

namespace ouflow {

KernelParams make_params(const MatrixSignal& M, const VectorSignal& f,
                         double s, double t, double tol) {
    if (!(t > s))
        throw ConfigError("make_params requires t > s");
    KernelParams p;
    p.s = s;
    p.t = t;
    p.U_ts = propagate(M, s, t, tol).matrix;
    p.U_st = propagate(M, t, s, tol).matrix; // reverse-time integration
    auto [q, g] = gram_and_drift(M, f, s, t, tol);
    p.Q = std::move(q);
    p.g = std::move(g);
    return p;
}

double kernel_scalar(const KernelParams& p, const Eigen::VectorXd& x) {
    if (!x.allFinite())
        throw CoefficientError("kernel_eval at non-finite point");
    const int d = p.dim();
    const double quad = x.dot(p.Q.solve(x));
    const double log_pref =
        -0.5 * d * std::log(4.0 * M_PI) - 0.5 * p.Q.log_det;
    return std::exp(log_pref - 0.25 * quad);
}

Eigen::MatrixXd kernel_eval(const KernelParams& p, const Eigen::VectorXd& x) {
    return kernel_scalar(p, x) * p.U_ts;
}

Eigen::MatrixXcd fourier_symbol(const KernelParams& p,
                                const Eigen::VectorXd& xi) {
    const double decay = std::exp(-xi.dot(p.Q.matrix * xi));
    return (decay * p.U_ts).cast<std::complex<double>>();
}

std::vector<GramScalingRow>
gram_scaling_report(const MatrixSignal& M, double s,
                    const std::vector<double>& tau_list, double tol) {
    std::vector<GramScalingRow> rows;
    rows.reserve(tau_list.size());
    const int d = M.dimension();
    for (double tau : tau_list) {
        if (!(tau > 0.0))
            throw ConfigError("gram_scaling_report requires tau > 0");
        const GramMatrix q = gram(M, s, s + tau, tol);
        GramScalingRow row;
        row.tau = tau;
        row.inv_sqrt_scaled = q.inv_sqrt_norm() * std::sqrt(tau);
        // exp-log form keeps tiny/huge tau out of under/overflow.
        row.det_sqrt_scaled =
            std::exp(0.5 * q.log_det - 0.5 * d * std::log(tau));
        rows.push_back(row);
    }
    return rows;
}

} // namespace ouflow
