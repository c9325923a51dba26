#include "ouflow/grid.hpp"

#include "ouflow/errors.hpp"

#include <cmath>

namespace ouflow {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

Grid::Grid(int dim_, int n_, double half_width_)
    : dim(dim_), n(n_), half_width(half_width_) {
    if (dim != 2 && dim != 3)
        throw ConfigError("grid dimension must be 2 or 3");
    if (n < 8 || !power_of_two(n))
        throw ConfigError("grid points per axis must be a power of two >= 8");
    if (!(half_width > 0.0))
        throw ConfigError("grid half-width must be positive");
}

std::int64_t Grid::points() const {
    std::int64_t p = 1;
    for (int a = 0; a < dim; ++a) p *= n;
    return p;
}

Eigen::VectorXd Grid::node(std::int64_t flat) const {
    Eigen::VectorXd x(dim);
    for (int a = dim - 1; a >= 0; --a) {
        x(a) = coordinate(static_cast<int>(flat % n));
        flat /= n;
    }
    return x;
}

Field::Field(const Grid& grid, int components)
    : grid_(grid), ncomp_(components),
      data_(components,
            std::vector<double>(static_cast<std::size_t>(grid.points()), 0.0)) {
    if (components < 1) throw ConfigError("field needs >= 1 component");
}

Field Field::sample(const Grid& grid, int components,
                    const std::function<Eigen::VectorXd(
                        const Eigen::VectorXd&)>& fn) {
    Field f(grid, components);
    const std::int64_t total = grid.points();
    for (std::int64_t i = 0; i < total; ++i) {
        const Eigen::VectorXd v = fn(grid.node(i));
        for (int c = 0; c < components; ++c) f.data_[c][i] = v(c);
    }
    return f;
}

Eigen::VectorXd Field::value(std::int64_t flat) const {
    Eigen::VectorXd v(ncomp_);
    for (int c = 0; c < ncomp_; ++c) v(c) = data_[c][flat];
    return v;
}

double Field::max_abs() const {
    const std::int64_t total = grid_.points();
    double best = 0.0;
    for (std::int64_t i = 0; i < total; ++i) {
        double m = 0.0;
        for (int c = 0; c < ncomp_; ++c) m += data_[c][i] * data_[c][i];
        best = std::max(best, m);
    }
    return std::sqrt(best);
}

bool Field::all_finite() const {
    for (const auto& comp : data_)
        for (double v : comp)
            if (!std::isfinite(v)) return false;
    return true;
}

Field& Field::operator+=(const Field& o) {
    for (int c = 0; c < ncomp_; ++c)
        for (std::size_t i = 0; i < data_[c].size(); ++i)
            data_[c][i] += o.data_[c][i];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    for (int c = 0; c < ncomp_; ++c)
        for (std::size_t i = 0; i < data_[c].size(); ++i)
            data_[c][i] -= o.data_[c][i];
    return *this;
}

Field& Field::operator*=(double a) {
    for (int c = 0; c < ncomp_; ++c)
        for (double& v : data_[c]) v *= a;
    return *this;
}

bool truncation_adequate(const Field& f, double tol, double fraction) {
    const Grid& g = f.grid();
    const double cut = fraction * g.half_width;
    const std::int64_t total = g.points();
    double inner_max = 0.0, shell_max = 0.0;
    for (std::int64_t i = 0; i < total; ++i) {
        const Eigen::VectorXd x = g.node(i);
        double m = 0.0;
        for (int c = 0; c < f.components(); ++c) {
            const double v = f.comp(c)[i];
            m += v * v;
        }
        if (x.cwiseAbs().maxCoeff() >= cut)
            shell_max = std::max(shell_max, m);
        inner_max = std::max(inner_max, m);
    }
    return std::sqrt(shell_max) <= tol * std::sqrt(inner_max);
}

} // namespace ouflow
