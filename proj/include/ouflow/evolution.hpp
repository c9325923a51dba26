#ifndef OUFLOW_EVOLUTION_HPP
#define OUFLOW_EVOLUTION_HPP

#include "ouflow/grid.hpp"
#include "ouflow/kernel.hpp"
#include "ouflow/signals.hpp"

#include <functional>

namespace ouflow {

/// Trigonometric test function a * trig(<xi, x>) with xi on the box lattice
/// (integer multiples of pi/L). Solenoidal iff <a, xi> = 0.
struct PlaneWave {
    enum class Phase { kSin, kCos };

    Eigen::VectorXd amplitude;
    Eigen::VectorXd wavevector;
    Phase phase = Phase::kSin;

    static PlaneWave from_mode(const Grid& grid, const Eigen::VectorXd& a,
                               const Eigen::VectorXi& mode,
                               Phase phase = Phase::kSin);
    bool solenoidal() const;
};

Field plane_wave_field(const Grid& grid, const PlaneWave& w);

struct ApplyOptions {
    enum class Path { kReference, kFast };

    double tol = 1e-10;          // propagator + quadrature tolerance
    Path path = Path::kReference;
    int oversample = 4;          // fast path: spectral zero-padding factor
    int interp_points = 12;      // fast path: Lagrange taps per axis
    bool check_truncation = true;
    double truncation_tol = 1e-6;
    double truncation_fraction = 0.95;
    bool force_pointwise_reference = false; // cross-check hook for d=2
};

struct ApplyReport {
    double fast_path_error = 0.0; // audited vs. direct summation
};

/// T(t,s) phi through the representation formula: forward transform, Gaussian
/// symbol multiply, then evaluation of the band-limited result at the mapped
/// points U(s,t) x + g(t,s), and the U(t,s) matrix factor. t = s returns phi.
Field apply_T(const MatrixSignal& M, const VectorSignal& f, double s, double t,
              const Field& phi, const ApplyOptions& opts = {},
              ApplyReport* report = nullptr);

/// Exact image of a plane wave: x -> U(t,s) a trig(<xi, U(s,t)x + g>)
/// exp(-<Q xi, xi>), as a closure over arbitrary points.
std::function<Eigen::VectorXd(const Eigen::VectorXd&)>
apply_T_planewave(const MatrixSignal& M, const VectorSignal& f, double s,
                  double t, const PlaneWave& w, double tol = 1e-10);

/// Spectral gradient of apply_T output; component i*d+j is d(Tu)_i/dx_j.
Field apply_grad_T(const MatrixSignal& M, const VectorSignal& f, double s,
                   double t, const Field& phi, const ApplyOptions& opts = {});

/// ||T(t,s)phi - T(t,r) T(r,s) phi||_2 / ||phi||_2 for s <= r <= t.
double evolution_law_check(const MatrixSignal& M, const VectorSignal& f,
                           double s, double r, double t, const Field& phi,
                           const ApplyOptions& opts = {});

/// Max-norm residual of d_t u - [Lap u + <M(t)x + f(t), grad u> - M(t) u]
/// on the inner half-box, time derivative by central difference of apply_T.
double pde_residual(const MatrixSignal& M, const VectorSignal& f, double s,
                    double t, const Field& phi, double dt,
                    const ApplyOptions& opts = {});

} // namespace ouflow

#endif
