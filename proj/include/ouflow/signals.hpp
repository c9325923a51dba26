#ifndef OUFLOW_SIGNALS_HPP
#define OUFLOW_SIGNALS_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

namespace ouflow {

/// Clamped cubic spline through (t_i, y_i); endpoint slopes taken from
/// one-sided three-point differences so evaluation stays C^1 for the ODE
/// integrator.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> t, std::vector<double> y);
    double operator()(double t) const;

private:
    std::vector<double> t_, y_, m_; // m_: nodal first derivatives
};

/// Time-dependent coefficient matrix M(t). Immutable after construction;
/// evaluation is pure and thread-safe.
class MatrixSignal {
public:
    static constexpr double kDefaultHorizon = 16.0;

    static MatrixSignal zero(int dim, double horizon = kDefaultHorizon);
    static MatrixSignal constant(const Eigen::MatrixXd& value,
                                 double horizon = kDefaultHorizon);
    /// d=2, M(t) = omega(t) * [[0,-1],[1,0]].
    static MatrixSignal rotation2d(std::function<double(double)> omega,
                                   double horizon = kDefaultHorizon);
    /// d=3, M(t) = speed(t) * cross(axis(t)); axis is normalized internally.
    static MatrixSignal rotation3d(std::function<Eigen::Vector3d(double)> axis,
                                   std::function<double(double)> speed,
                                   double horizon = kDefaultHorizon);
    /// Entrywise interpolation of samples; order 1 (linear) or 3 (clamped
    /// cubic). Horizon is the last sample time.
    static MatrixSignal sampled(const std::vector<double>& times,
                                const std::vector<Eigen::MatrixXd>& values,
                                int interp_order = 3);

    /// Evaluate M(t). Throws CoefficientError on non-finite entries.
    Eigen::MatrixXd operator()(double t) const;

    int dimension() const { return dim_; }
    double horizon() const { return horizon_; }
    /// True if ||M(t)+M(t)^T||_inf stayed below tolerance on a sample grid
    /// over [0, horizon]; decided once at construction.
    bool skew() const { return skew_; }

private:
    MatrixSignal(int dim, double horizon,
                 std::function<Eigen::MatrixXd(double)> eval);

    int dim_ = 0;
    double horizon_ = kDefaultHorizon;
    bool skew_ = false;
    std::function<Eigen::MatrixXd(double)> eval_;
};

/// Time-dependent vector f(t) (outflow velocity seen from the moving frame).
class VectorSignal {
public:
    static constexpr double kDefaultHorizon = MatrixSignal::kDefaultHorizon;

    static VectorSignal zero(int dim, double horizon = kDefaultHorizon);
    static VectorSignal constant(const Eigen::VectorXd& value,
                                 double horizon = kDefaultHorizon);
    /// f(t) = amplitude * sin(frequency * t).
    static VectorSignal sinusoidal(const Eigen::VectorXd& amplitude,
                                   double frequency,
                                   double horizon = kDefaultHorizon);
    static VectorSignal sampled(const std::vector<double>& times,
                                const std::vector<Eigen::VectorXd>& values,
                                int interp_order = 3);

    Eigen::VectorXd operator()(double t) const;
    int dimension() const { return dim_; }
    double horizon() const { return horizon_; }

private:
    VectorSignal(int dim, double horizon,
                 std::function<Eigen::VectorXd(double)> eval);

    int dim_ = 0;
    double horizon_ = kDefaultHorizon;
    std::function<Eigen::VectorXd(double)> eval_;
};

} // namespace ouflow

#endif
