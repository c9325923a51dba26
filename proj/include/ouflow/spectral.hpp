#ifndef OUFLOW_SPECTRAL_HPP
#define OUFLOW_SPECTRAL_HPP

#include "ouflow/grid.hpp"

#include <complex>
#include <vector>

namespace ouflow {

using Complex = std::complex<double>;

/// Signed lattice mode for FFT bin idx on an n-point axis: 0..n/2-1 map to
/// themselves, n/2..n-1 to idx-n (the Nyquist bin lands at -n/2).
inline int signed_mode(int idx, int n) { return idx < n / 2 ? idx : idx - n; }

/// Unnormalized forward DFT of one field component (FFTW sign convention,
/// exp(-i 2 pi j k / n)).
std::vector<Complex> to_spectral(const Field& f, int comp);

/// Inverse DFT including the 1/n^d normalization; imaginary parts dropped.
void from_spectral(const Grid& grid, std::vector<Complex> spec,
                   std::span<double> out);

/// Helmholtz projection: multiplier Id - xi xi^T / |xi|^2 modewise; the zero
/// mode passes through unchanged. Output has the solenoidal flag set.
Field helmholtz_project(const Field& u);

/// Spectral divergence (1 component out).
Field divergence(const Field& u);

/// Spectral gradient: component i*d+j holds d u_i / d x_j.
Field gradient(const Field& u);

/// Spectral Laplacian, componentwise.
Field laplacian(const Field& u);

/// Convective term (u . grad) u with 2/3-rule dealiasing.
Field convective(const Field& u);

/// Discrete L^p norm: (sum |u(x)|^p h^d)^{1/p} with |.| Euclidean across
/// components; p = inf gives the max over nodes. Requires p > 1.
double lp_norm(const Field& u, double p);

/// Grid-side and spectral-side energies for the Parseval identity
/// (sum |u|^2 h^d vs. sum |u_hat|^2 (2L)^d / n^{2d}).
double grid_energy(const Field& u);
double spectral_energy(const Field& u);

} // namespace ouflow

#endif
