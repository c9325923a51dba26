#include "ouflow/spectral.hpp"

#include "ouflow/errors.hpp"
#include "ouflow/parallel.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace ouflow {

namespace {

// ---------------------------------------------------------------------------
// FFTW plumbing: one cached in-place c2c plan per (dim, n, sign); execution
// happens on per-call fftw_malloc'd buffers (same alignment class), which
// keeps everything thread-safe and deterministic.

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n)
        : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {}
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    fftw_complex* ptr;
};

fftw_plan plan_for(int dim, int n, int sign) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_tuple(dim, n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    FftwBuffer buf(total);
    fftw_plan p = dim == 2
                      ? fftw_plan_dft_2d(n, n, buf.ptr, buf.ptr, sign,
                                         FFTW_ESTIMATE)
                      : fftw_plan_dft_3d(n, n, n, buf.ptr, buf.ptr, sign,
                                         FFTW_ESTIMATE);
    cache.emplace(key, p);
    return p;
}

void execute(const Grid& g, int sign, Complex* data) {
    fftw_plan p = plan_for(g.dim, g.n, sign);
    FftwBuffer buf(static_cast<std::size_t>(g.points()));
    std::memcpy(buf.ptr, data, sizeof(fftw_complex) * g.points());
    fftw_execute_dft(p, buf.ptr, buf.ptr);
    std::memcpy(data, buf.ptr, sizeof(fftw_complex) * g.points());
}

// Visit all spectral bins; fn(flat, k) with k the signed integer mode.
template <typename Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
    const int n = g.n;
    int k[3] = {0, 0, 0};
    if (g.dim == 2) {
        std::int64_t flat = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            k[0] = signed_mode(i0, n);
            for (int i1 = 0; i1 < n; ++i1, ++flat) {
                k[1] = signed_mode(i1, n);
                fn(flat, k);
            }
        }
    } else {
        std::int64_t flat = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            k[0] = signed_mode(i0, n);
            for (int i1 = 0; i1 < n; ++i1) {
                k[1] = signed_mode(i1, n);
                for (int i2 = 0; i2 < n; ++i2, ++flat) {
                    k[2] = signed_mode(i2, n);
                    fn(flat, k);
                }
            }
        }
    }
}

std::vector<std::vector<Complex>> all_spectral(const Field& f) {
    std::vector<std::vector<Complex>> out;
    out.reserve(f.components());
    for (int c = 0; c < f.components(); ++c) out.push_back(to_spectral(f, c));
    return out;
}

} // namespace

std::vector<Complex> to_spectral(const Field& f, int comp) {
    const Grid& g = f.grid();
    std::vector<Complex> spec(static_cast<std::size_t>(g.points()));
    const auto src = f.comp(comp);
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] = src[i];
    execute(g, FFTW_FORWARD, spec.data());
    return spec;
}

void from_spectral(const Grid& grid, std::vector<Complex> spec,
                   std::span<double> out) {
    execute(grid, FFTW_BACKWARD, spec.data());
    const double scale = 1.0 / static_cast<double>(grid.points());
    for (std::size_t i = 0; i < spec.size(); ++i)
        out[i] = spec[i].real() * scale;
}

Field helmholtz_project(const Field& u) {
    const Grid& g = u.grid();
    const int d = g.dim;
    if (u.components() != d)
        throw ConfigError("helmholtz_project needs a d-component field");

    auto spec = all_spectral(u);
    for_each_mode(g, [&](std::int64_t flat, const int* k) {
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) k2 += static_cast<double>(k[a]) * k[a];
        if (k2 == 0.0) return; // zero mode passes through
        Complex dot(0.0, 0.0);
        for (int a = 0; a < d; ++a) dot += static_cast<double>(k[a]) * spec[a][flat];
        dot /= k2;
        for (int a = 0; a < d; ++a) spec[a][flat] -= static_cast<double>(k[a]) * dot;
    });

    Field out(g, d);
    for (int c = 0; c < d; ++c) from_spectral(g, std::move(spec[c]), out.comp(c));
    out.solenoidal_flag = true;
    out.time_stamp = u.time_stamp;
    return out;
}

namespace {

// Derivative multiplier i*xi_a with the Nyquist plane zeroed (odd symbol on
// an even grid has no faithful representative there).
void apply_derivative(const Grid& g, std::vector<Complex>& spec, int axis) {
    const double alpha = M_PI / g.half_width;
    const int nyq = -g.n / 2;
    for_each_mode(g, [&](std::int64_t flat, const int* k) {
        bool has_nyquist = false;
        for (int a = 0; a < g.dim; ++a) has_nyquist |= (k[a] == nyq);
        if (has_nyquist) {
            spec[flat] = 0.0;
            return;
        }
        spec[flat] *= Complex(0.0, alpha * k[axis]);
    });
}

} // namespace

Field divergence(const Field& u) {
    const Grid& g = u.grid();
    const int d = g.dim;
    if (u.components() != d)
        throw ConfigError("divergence needs a d-component field");
    std::vector<Complex> acc(static_cast<std::size_t>(g.points()),
                             Complex(0.0, 0.0));
    for (int a = 0; a < d; ++a) {
        auto spec = to_spectral(u, a);
        apply_derivative(g, spec, a);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += spec[i];
    }
    Field out(g, 1);
    from_spectral(g, std::move(acc), out.comp(0));
    out.time_stamp = u.time_stamp;
    return out;
}

Field gradient(const Field& u) {
    const Grid& g = u.grid();
    const int d = g.dim;
    Field out(g, u.components() * d);
    for (int c = 0; c < u.components(); ++c) {
        const auto base = to_spectral(u, c);
        for (int a = 0; a < d; ++a) {
            auto spec = base;
            apply_derivative(g, spec, a);
            from_spectral(g, std::move(spec), out.comp(c * d + a));
        }
    }
    out.time_stamp = u.time_stamp;
    return out;
}

Field laplacian(const Field& u) {
    const Grid& g = u.grid();
    const double alpha = M_PI / g.half_width;
    Field out(g, u.components());
    for (int c = 0; c < u.components(); ++c) {
        auto spec = to_spectral(u, c);
        for_each_mode(g, [&](std::int64_t flat, const int* k) {
            double k2 = 0.0;
            for (int a = 0; a < g.dim; ++a) k2 += static_cast<double>(k[a]) * k[a];
            spec[flat] *= -alpha * alpha * k2;
        });
        from_spectral(g, std::move(spec), out.comp(c));
    }
    out.time_stamp = u.time_stamp;
    return out;
}

Field convective(const Field& u) {
    const Grid& g = u.grid();
    const int d = g.dim;
    if (u.components() != d)
        throw ConfigError("convective needs a d-component field");
    const int cutoff = g.n / 3;

    auto masked = [&](std::vector<Complex>& spec) {
        for_each_mode(g, [&](std::int64_t flat, const int* k) {
            for (int a = 0; a < d; ++a)
                if (std::abs(k[a]) > cutoff) {
                    spec[flat] = 0.0;
                    return;
                }
        });
    };

    // Dealiased velocity and velocity gradient in real space.
    Field v(g, d);
    Field dv(g, d * d);
    for (int c = 0; c < d; ++c) {
        auto spec = to_spectral(u, c);
        masked(spec);
        auto tmp = spec;
        from_spectral(g, std::move(tmp), v.comp(c));
        for (int a = 0; a < d; ++a) {
            auto ds = spec;
            apply_derivative(g, ds, a);
            from_spectral(g, std::move(ds), dv.comp(c * d + a));
        }
    }

    Field out(g, d);
    const std::int64_t total = g.points();
    for (int i = 0; i < d; ++i) {
        auto dst = out.comp(i);
        for (std::int64_t p = 0; p < total; ++p) {
            double s = 0.0;
            for (int j = 0; j < d; ++j)
                s += v.comp(j)[p] * dv.comp(i * d + j)[p];
            dst[p] = s;
        }
    }
    // Products live on a wider band; mask the result back.
    for (int c = 0; c < d; ++c) {
        auto spec = to_spectral(out, c);
        masked(spec);
        from_spectral(g, std::move(spec), out.comp(c));
    }
    out.time_stamp = u.time_stamp;
    return out;
}

double lp_norm(const Field& u, double p) {
    if (!(p > 1.0))
        throw ConfigError("lp_norm requires p > 1 (or infinity)");
    const Grid& g = u.grid();
    const std::int64_t total = g.points();

    if (std::isinf(p)) return u.max_abs();

    std::vector<double> terms(static_cast<std::size_t>(total));
    const double hd = std::pow(g.spacing(), g.dim);
    for (std::int64_t i = 0; i < total; ++i) {
        double m2 = 0.0;
        for (int c = 0; c < u.components(); ++c) {
            const double v = u.comp(c)[i];
            m2 += v * v;
        }
        terms[i] = std::pow(m2, 0.5 * p) * hd;
    }
    return std::pow(pairwise_sum(terms), 1.0 / p);
}

double grid_energy(const Field& u) {
    const Grid& g = u.grid();
    const std::int64_t total = g.points();
    std::vector<double> terms(static_cast<std::size_t>(total), 0.0);
    for (std::int64_t i = 0; i < total; ++i)
        for (int c = 0; c < u.components(); ++c)
            terms[i] += u.comp(c)[i] * u.comp(c)[i];
    return pairwise_sum(terms) * std::pow(g.spacing(), g.dim);
}

double spectral_energy(const Field& u) {
    const Grid& g = u.grid();
    const double scale = std::pow(2.0 * g.half_width, g.dim) /
                         std::pow(static_cast<double>(g.points()), 2);
    std::vector<double> terms(static_cast<std::size_t>(g.points()), 0.0);
    for (int c = 0; c < u.components(); ++c) {
        const auto spec = to_spectral(u, c);
        for (std::size_t i = 0; i < spec.size(); ++i)
            terms[i] += std::norm(spec[i]);
    }
    return pairwise_sum(terms) * scale;
}

} // namespace ouflow
