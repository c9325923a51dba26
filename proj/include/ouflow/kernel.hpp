#ifndef OUFLOW_KERNEL_HPP
#define OUFLOW_KERNEL_HPP

#include "ouflow/matrix_flow.hpp"
#include "ouflow/signals.hpp"

#include <Eigen/Dense>
#include <vector>

namespace ouflow {

/// Everything the evolution operator needs for one (s, t) pair: the forward
/// and backward propagators, the Gram matrix of the Gaussian, and the drift
/// offset. U_st comes from its own reverse integration, never from inverting
/// U_ts, so U_ts * U_st ~ Id is a real consistency check.
struct KernelParams {
    Eigen::MatrixXd U_ts; // U(t,s)
    Eigen::MatrixXd U_st; // U(s,t)
    GramMatrix Q;         // Q_{t,s}
    Eigen::VectorXd g;    // g(t,s)
    double s = 0.0;
    double t = 0.0;

    int dim() const { return static_cast<int>(U_ts.rows()); }
};

KernelParams make_params(const MatrixSignal& M, const VectorSignal& f,
                         double s, double t, double tol);

/// k(t,s,x) = (4 pi)^{-d/2} (det Q)^{-1/2} exp(-<Q^{-1} x, x>/4) U(t,s).
/// Scalar factor goes through the Cholesky solve and the log-determinant.
Eigen::MatrixXd kernel_eval(const KernelParams& p, const Eigen::VectorXd& x);

/// Fourier multiplier of the evolution operator's convolution part:
/// U(t,s) * exp(-<Q xi, xi>). Real-valued, returned complex for callers that
/// combine it with phase factors.
Eigen::MatrixXcd fourier_symbol(const KernelParams& p,
                                const Eigen::VectorXd& xi);

/// Scalar Gaussian prefactor (4 pi)^{-d/2} (det Q)^{-1/2} exp(-<Q^{-1}x,x>/4).
double kernel_scalar(const KernelParams& p, const Eigen::VectorXd& x);

struct GramScalingRow {
    double tau = 0.0;
    double inv_sqrt_scaled = 0.0; // ||Q^{-1/2}|| * tau^{1/2}
    double det_sqrt_scaled = 0.0; // (det Q)^{1/2} * tau^{-d/2}
};

/// One row per gap in tau_list, sampled at fixed start time s. The columns
/// are the scale-free combinations that stay bounded above/below.
std::vector<GramScalingRow>
gram_scaling_report(const MatrixSignal& M, double s,
                    const std::vector<double>& tau_list, double tol = 1e-10);

} // namespace ouflow

#endif
