#ifndef OUFLOW_GRID_HPP
#define OUFLOW_GRID_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ouflow {

/// Uniform periodic box [-L, L)^d with n points per axis, n a power of two.
/// Node j along an axis sits at -L + j * spacing().
struct Grid {
    int dim = 2;
    int n = 0;
    double half_width = 0.0;

    Grid() = default;
    Grid(int dim_, int n_, double half_width_);

    double spacing() const { return 2.0 * half_width / n; }
    std::int64_t points() const;
    double coordinate(int index) const {
        return -half_width + index * spacing();
    }
    /// Node coordinates from the flat C-order index (last axis fastest).
    Eigen::VectorXd node(std::int64_t flat) const;

    bool operator==(const Grid& o) const {
        return dim == o.dim && n == o.n && half_width == o.half_width;
    }
};

/// Multi-component scalar data on a Grid: d components for velocity fields,
/// 1 for scalars, d*d for gradients. Components are stored contiguously in
/// C order (axis 0 slowest). Treat as immutable once built.
class Field {
public:
    Field() = default;
    Field(const Grid& grid, int components);

    static Field sample(const Grid& grid, int components,
                        const std::function<Eigen::VectorXd(
                            const Eigen::VectorXd&)>& fn);

    const Grid& grid() const { return grid_; }
    int components() const { return ncomp_; }

    std::span<double> comp(int c) { return data_[c]; }
    std::span<const double> comp(int c) const { return data_[c]; }

    Eigen::VectorXd value(std::int64_t flat) const;

    /// max over nodes of the Euclidean magnitude across components.
    double max_abs() const;
    bool all_finite() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double a);
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double a, Field f) { return f *= a; }

    bool solenoidal_flag = false;
    double time_stamp = 0.0;

private:
    Grid grid_;
    int ncomp_ = 0;
    std::vector<std::vector<double>> data_;
};

/// True when the field magnitude on the region max_a |x_a| >= fraction * L
/// is below tol times the global maximum: the periodic seam then carries no
/// information and the box truncation of R^d is measured, not assumed.
bool truncation_adequate(const Field& f, double tol, double fraction = 0.95);

} // namespace ouflow

#endif
