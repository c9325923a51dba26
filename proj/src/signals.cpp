#include "ouflow/signals.hpp"

#include "ouflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ouflow {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw ConfigError(msg);
}

Eigen::Matrix3d cross_matrix(const Eigen::Vector3d& a) {
    Eigen::Matrix3d m;
    m << 0.0, -a.z(), a.y(),
         a.z(), 0.0, -a.x(),
        -a.y(), a.x(), 0.0;
    return m;
}

bool detect_skew(const std::function<Eigen::MatrixXd(double)>& eval,
                 double horizon) {
    constexpr int kSamples = 65;
    double scale = 0.0;
    double defect = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double t = horizon * static_cast<double>(i) / (kSamples - 1);
        const Eigen::MatrixXd m = eval(t);
        scale = std::max(scale, m.cwiseAbs().maxCoeff());
        defect = std::max(defect, (m + m.transpose()).cwiseAbs().maxCoeff());
    }
    return defect <= 1e-12 * std::max(1.0, scale);
}

} // namespace

// ---------------------------------------------------------------------------
// CubicSpline

CubicSpline::CubicSpline(std::vector<double> t, std::vector<double> y)
    : t_(std::move(t)), y_(std::move(y)) {
    const std::size_t n = t_.size();
    require(n >= 2 && y_.size() == n, "spline needs >= 2 nodes");
    for (std::size_t i = 1; i < n; ++i)
        require(t_[i] > t_[i - 1], "spline times must increase");

    m_.assign(n, 0.0);
    if (n == 2) {
        m_[0] = m_[1] = (y_[1] - y_[0]) / (t_[1] - t_[0]);
        return;
    }

    // Clamped end slopes from one-sided 3-point differences.
    const double h0 = t_[1] - t_[0], h1 = t_[2] - t_[1];
    const double d0 = (y_[1] - y_[0]) / h0, d1 = (y_[2] - y_[1]) / h1;
    const double slope_lo = d0 - h0 * (d1 - d0) / (h0 + h1);
    const double hm = t_[n - 1] - t_[n - 2], hp = t_[n - 2] - t_[n - 3];
    const double dm = (y_[n - 1] - y_[n - 2]) / hm;
    const double dp = (y_[n - 2] - y_[n - 3]) / hp;
    const double slope_hi = dm + hm * (dm - dp) / (hm + hp);

    // Tridiagonal system for nodal slopes of the clamped C^2 spline.
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    b[0] = 1.0;
    r[0] = slope_lo;
    b[n - 1] = 1.0;
    r[n - 1] = slope_hi;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = t_[i] - t_[i - 1], hr = t_[i + 1] - t_[i];
        a[i] = 1.0 / hl;
        b[i] = 2.0 * (1.0 / hl + 1.0 / hr);
        c[i] = 1.0 / hr;
        r[i] = 3.0 * ((y_[i] - y_[i - 1]) / (hl * hl) +
                      (y_[i + 1] - y_[i]) / (hr * hr));
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    m_[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
}

double CubicSpline::operator()(double t) const {
    const std::size_t n = t_.size();
    // Clamp outside the sample range (constant extension of the end value).
    if (t <= t_.front()) t = t_.front();
    if (t >= t_.back()) t = t_.back();
    std::size_t i =
        std::upper_bound(t_.begin(), t_.end(), t) - t_.begin();
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    const double h = t_[i + 1] - t_[i];
    const double u = (t - t_[i]) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

// ---------------------------------------------------------------------------
// MatrixSignal

MatrixSignal::MatrixSignal(int dim, double horizon,
                           std::function<Eigen::MatrixXd(double)> eval)
    : dim_(dim), horizon_(horizon), eval_(std::move(eval)) {
    require(dim_ == 2 || dim_ == 3, "matrix signal dimension must be 2 or 3");
    require(horizon_ > 0.0, "signal horizon must be positive");
    skew_ = detect_skew(eval_, horizon_);
}

MatrixSignal MatrixSignal::zero(int dim, double horizon) {
    return constant(Eigen::MatrixXd::Zero(dim, dim), horizon);
}

MatrixSignal MatrixSignal::constant(const Eigen::MatrixXd& value,
                                    double horizon) {
    require(value.rows() == value.cols(), "constant matrix must be square");
    Eigen::MatrixXd v = value;
    return MatrixSignal(static_cast<int>(v.rows()), horizon,
                        [v](double) { return v; });
}

MatrixSignal MatrixSignal::rotation2d(std::function<double(double)> omega,
                                      double horizon) {
    auto fn = [omega = std::move(omega)](double t) {
        Eigen::Matrix2d m;
        const double w = omega(t);
        m << 0.0, -w, w, 0.0;
        return Eigen::MatrixXd(m);
    };
    return MatrixSignal(2, horizon, std::move(fn));
}

MatrixSignal MatrixSignal::rotation3d(
    std::function<Eigen::Vector3d(double)> axis,
    std::function<double(double)> speed, double horizon) {
    auto fn = [axis = std::move(axis), speed = std::move(speed)](double t) {
        Eigen::Vector3d a = axis(t);
        const double len = a.norm();
        if (!(len > 0.0))
            throw CoefficientError("rotation3d axis vanished at t=" +
                                   std::to_string(t));
        return Eigen::MatrixXd(cross_matrix((speed(t) / len) * a));
    };
    return MatrixSignal(3, horizon, std::move(fn));
}

MatrixSignal MatrixSignal::sampled(const std::vector<double>& times,
                                   const std::vector<Eigen::MatrixXd>& values,
                                   int interp_order) {
    require(!times.empty() && times.size() == values.size(),
            "sampled signal needs matching times/values");
    require(interp_order == 1 || interp_order == 3,
            "interp order must be 1 or 3");
    const int d = static_cast<int>(values.front().rows());
    for (const auto& v : values)
        require(v.rows() == d && v.cols() == d, "inconsistent sample shapes");

    if (interp_order == 1 || times.size() == 2) {
        auto ts = std::make_shared<std::vector<double>>(times);
        auto vs = std::make_shared<std::vector<Eigen::MatrixXd>>(values);
        auto fn = [ts, vs, d](double t) {
            const auto& tt = *ts;
            if (t <= tt.front()) return (*vs).front();
            if (t >= tt.back()) return (*vs).back();
            std::size_t i =
                std::upper_bound(tt.begin(), tt.end(), t) - tt.begin() - 1;
            const double u = (t - tt[i]) / (tt[i + 1] - tt[i]);
            return Eigen::MatrixXd((1 - u) * (*vs)[i] + u * (*vs)[i + 1]);
        };
        return MatrixSignal(d, times.back(), std::move(fn));
    }

    auto splines = std::make_shared<std::vector<CubicSpline>>();
    splines->reserve(d * d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            std::vector<double> y(times.size());
            for (std::size_t k = 0; k < times.size(); ++k) y[k] = values[k](r, c);
            splines->emplace_back(times, std::move(y));
        }
    auto fn = [splines, d](double t) {
        Eigen::MatrixXd m(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) m(r, c) = (*splines)[r * d + c](t);
        return m;
    };
    return MatrixSignal(d, times.back(), std::move(fn));
}

Eigen::MatrixXd MatrixSignal::operator()(double t) const {
    Eigen::MatrixXd m = eval_(t);
    if (!m.allFinite())
        throw CoefficientError("matrix signal non-finite at t=" +
                               std::to_string(t));
    return m;
}

// ---------------------------------------------------------------------------
// VectorSignal

VectorSignal::VectorSignal(int dim, double horizon,
                           std::function<Eigen::VectorXd(double)> eval)
    : dim_(dim), horizon_(horizon), eval_(std::move(eval)) {
    require(dim_ == 2 || dim_ == 3, "vector signal dimension must be 2 or 3");
    require(horizon_ > 0.0, "signal horizon must be positive");
}

VectorSignal VectorSignal::zero(int dim, double horizon) {
    return constant(Eigen::VectorXd::Zero(dim), horizon);
}

VectorSignal VectorSignal::constant(const Eigen::VectorXd& value,
                                    double horizon) {
    Eigen::VectorXd v = value;
    return VectorSignal(static_cast<int>(v.size()), horizon,
                        [v](double) { return v; });
}

VectorSignal VectorSignal::sinusoidal(const Eigen::VectorXd& amplitude,
                                      double frequency, double horizon) {
    Eigen::VectorXd a = amplitude;
    return VectorSignal(static_cast<int>(a.size()), horizon,
                        [a, frequency](double t) {
                            return Eigen::VectorXd(a * std::sin(frequency * t));
                        });
}

VectorSignal VectorSignal::sampled(const std::vector<double>& times,
                                   const std::vector<Eigen::VectorXd>& values,
                                   int interp_order) {
    require(!times.empty() && times.size() == values.size(),
            "sampled signal needs matching times/values");
    require(interp_order == 1 || interp_order == 3,
            "interp order must be 1 or 3");
    const int d = static_cast<int>(values.front().size());

    if (interp_order == 1 || times.size() == 2) {
        auto ts = std::make_shared<std::vector<double>>(times);
        auto vs = std::make_shared<std::vector<Eigen::VectorXd>>(values);
        auto fn = [ts, vs](double t) {
            const auto& tt = *ts;
            if (t <= tt.front()) return (*vs).front();
            if (t >= tt.back()) return (*vs).back();
            std::size_t i =
                std::upper_bound(tt.begin(), tt.end(), t) - tt.begin() - 1;
            const double u = (t - tt[i]) / (tt[i + 1] - tt[i]);
            return Eigen::VectorXd((1 - u) * (*vs)[i] + u * (*vs)[i + 1]);
        };
        return VectorSignal(d, times.back(), std::move(fn));
    }

    auto splines = std::make_shared<std::vector<CubicSpline>>();
    splines->reserve(d);
    for (int c = 0; c < d; ++c) {
        std::vector<double> y(times.size());
        for (std::size_t k = 0; k < times.size(); ++k) y[k] = values[k](c);
        splines->emplace_back(times, std::move(y));
    }
    auto fn = [splines, d](double t) {
        Eigen::VectorXd v(d);
        for (int c = 0; c < d; ++c) v(c) = (*splines)[c](t);
        return v;
    };
    return VectorSignal(d, times.back(), std::move(fn));
}

Eigen::VectorXd VectorSignal::operator()(double t) const {
    Eigen::VectorXd v = eval_(t);
    if (!v.allFinite())
        throw CoefficientError("vector signal non-finite at t=" +
                               std::to_string(t));
    return v;
}

} // namespace ouflow
