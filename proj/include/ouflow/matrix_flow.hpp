#ifndef OUFLOW_MATRIX_FLOW_HPP
#define OUFLOW_MATRIX_FLOW_HPP

#include "ouflow/signals.hpp"

#include <Eigen/Dense>
#include <utility>

namespace ouflow {

/// Matrix solution U(t,s) of dU/dt = -M(t) U, U(s,s) = Id. Also usable for
/// t < s (reverse-time integration; equals U(s,t)^{-1} without inverting).
struct Propagator {
    double s = 0.0;
    double t = 0.0;
    Eigen::MatrixXd matrix;
    double tol = 0.0;
};

/// Q_{t,s} = int_s^t U(s,r) U(s,r)^T dr with its Cholesky factor and
/// log-determinant (the only forms downstream code should consume).
struct GramMatrix {
    Eigen::MatrixXd matrix;
    Eigen::MatrixXd chol; // lower-triangular L, Q = L L^T
    double log_det = 0.0;
    double s = 0.0;
    double t = 0.0;

    int dim() const { return static_cast<int>(matrix.rows()); }
    /// Solve Q x = b through the stored factor.
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
    /// ||Q^{-1/2}||_2 = lambda_min(Q)^{-1/2}.
    double inv_sqrt_norm() const;
};

/// M_{T0} = sup ||U(t,s)|| over a sample grid of [0,T0]^2; >= 1 always
/// (attained at t = s).
struct BoundConstants {
    double value = 1.0;
    double horizon = 0.0;
};

Propagator propagate(const MatrixSignal& M, double s, double t, double tol);

GramMatrix gram(const MatrixSignal& M, double s, double t, double tol);

Eigen::VectorXd drift_offset(const MatrixSignal& M, const VectorSignal& f,
                             double s, double t, double tol);

/// Q_{t,s} and g(t,s) from one shared trajectory of r -> U(s,r); cheaper and
/// guarantees the two are consistent to the same quadrature.
std::pair<GramMatrix, Eigen::VectorXd>
gram_and_drift(const MatrixSignal& M, const VectorSignal& f, double s,
               double t, double tol);

BoundConstants bound_constant(const MatrixSignal& M, double T0, int n_samples);

/// Relative gap below which (U, Q, g) switch to analytic leading-order
/// values: U ~ Id - M(s)(t-s), Q ~ (t-s) Id, g ~ f(s)(t-s).
inline constexpr double kNearCoincidentFraction = 1e-8;

} // namespace ouflow

#endif
