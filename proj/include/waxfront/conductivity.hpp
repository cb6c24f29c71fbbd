#pragma once

// Conductivity models D(u) on the working interval [0, 1] together with the
// Kirchhoff transform F(X) = int_0^X D and its inverse.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "waxfront/errors.hpp"
#include "waxfront/quadrature.hpp"

namespace waxfront {

/// Arguments within this distance of [0, 1] are clamped instead of rejected.
inline constexpr double kRangeTolerance = 1e-9;
/// Target residual |F(X) - y| for the inverse transform.
inline constexpr double kInverseTolerance = 1e-12;
/// Quadrature target for tabulated models.
inline constexpr double kTabulatedQuadTolerance = 1e-10;

/// D(u) = 1 + c u (1 - u); positive on [0, 1] iff c > -4.
class QuadraticConductivity {
 public:
  explicit QuadraticConductivity(double c) : c_(c) {
    if (!(c > -4.0) || !std::isfinite(c)) {
      throw InvalidConfig("quadratic conductivity needs c > -4 (D(1/2) = 1 + c/4 must be "
                          "positive), got c = " + std::to_string(c));
    }
  }

  double c() const noexcept { return c_; }

  double D(double u) const noexcept { return 1.0 + c_ * u * (1.0 - u); }
  double dD(double u) const noexcept { return c_ * (1.0 - 2.0 * u); }
  double F(double x) const noexcept {
    return x + c_ * (x * x / 2.0 - x * x * x / 3.0);
  }

  double d_min() const noexcept { return std::min(1.0, 1.0 + 0.25 * c_); }
  double d_max() const noexcept { return std::max(1.0, 1.0 + 0.25 * c_); }

  /// sup of D over [lo, 1].
  double sup_D(double lo) const noexcept {
    if (c_ > 0.0 && lo <= 0.5) return 1.0 + 0.25 * c_;
    return std::max(D(lo), 1.0);
  }
  /// sup of D' over [lo, 1].
  double sup_dD(double lo) const noexcept { return std::max(dD(lo), dD(1.0)); }

 private:
  double c_;
};

/// Piecewise monotone cubic (Fritsch-Carlson) interpolant of sampled (u, D).
class TabulatedConductivity {
 public:
  explicit TabulatedConductivity(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) throw InvalidConfig("tabulated conductivity needs at least 2 points");
    std::sort(points.begin(), points.end());
    for (const auto& [u, d] : points) {
      if (!std::isfinite(u) || !std::isfinite(d)) {
        throw InvalidConfig("tabulated conductivity has a non-finite sample");
      }
      if (!(d > 0.0)) throw InvalidConfig("tabulated conductivity must be positive");
      u_.push_back(u);
      d_.push_back(d);
    }
    for (std::size_t i = 1; i < u_.size(); ++i) {
      if (!(u_[i] > u_[i - 1])) throw InvalidConfig("tabulated u samples must be distinct");
    }
    if (u_.front() > 0.0 || u_.back() < 1.0) {
      throw InvalidConfig("tabulated samples must cover the interval [0, 1]");
    }
    build_slopes();
    if (std::abs(D(1.0) - 1.0) > 1e-12) {
      throw InvalidConfig("tabulated conductivity must satisfy D(1) = 1");
    }
    cum_.assign(u_.size(), 0.0);
    for (std::size_t i = 1; i < u_.size(); ++i) {
      cum_[i] = cum_[i - 1] + segment_integral(i - 1, u_[i]);
    }
    f_origin_ = raw_integral(0.0);
    d_min_ = d_max_ = D(0.0);
    constexpr int kScan = 4000;
    for (int j = 0; j <= kScan; ++j) {
      const double v = D(static_cast<double>(j) / kScan);
      d_min_ = std::min(d_min_, v);
      d_max_ = std::max(d_max_, v);
    }
    for (std::size_t i = 0; i < u_.size(); ++i) {
      if (u_[i] >= 0.0 && u_[i] <= 1.0) {
        d_min_ = std::min(d_min_, d_[i]);
        d_max_ = std::max(d_max_, d_[i]);
      }
    }
  }

  const std::vector<double>& u_samples() const noexcept { return u_; }
  const std::vector<double>& d_samples() const noexcept { return d_; }

  double D(double u) const noexcept {
    const std::size_t i = segment(u);
    const double h = u_[i + 1] - u_[i];
    const double t = (u - u_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * d_[i] + (t3 - 2 * t2 + t) * h * m_[i] +
           (-2 * t3 + 3 * t2) * d_[i + 1] + (t3 - t2) * h * m_[i + 1];
  }

  double dD(double u) const noexcept {
    const std::size_t i = segment(u);
    const double h = u_[i + 1] - u_[i];
    const double t = (u - u_[i]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * d_[i] + (-6 * t2 + 6 * t) * d_[i + 1]) / h +
           (3 * t2 - 4 * t + 1) * m_[i] + (3 * t2 - 2 * t) * m_[i + 1];
  }

  double F(double x) const { return raw_integral(x) - f_origin_; }

  double d_min() const noexcept { return d_min_; }
  double d_max() const noexcept { return d_max_; }

  double sup_D(double lo) const noexcept { return scan_max(lo, [this](double u) { return D(u); }); }
  double sup_dD(double lo) const noexcept { return scan_max(lo, [this](double u) { return dD(u); }); }

 private:
  std::size_t segment(double u) const noexcept {
    auto it = std::upper_bound(u_.begin(), u_.end(), u);
    std::size_t i = it == u_.begin() ? 0 : static_cast<std::size_t>(it - u_.begin()) - 1;
    return std::min(i, u_.size() - 2);
  }

  void build_slopes() {
    const std::size_t n = u_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = u_[i + 1] - u_[i];
      delta[i] = (d_[i + 1] - d_[i]) / h[i];
    }
    m_.assign(n, 0.0);
    m_.front() = delta.front();
    m_.back() = delta.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) continue;
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
    // Endpoint slopes must not exceed three secants or monotonicity is lost.
    if (n > 2) {
      for (std::size_t e : {std::size_t{0}, n - 1}) {
        const double s = delta[e == 0 ? 0 : n - 2];
        if (m_[e] * s <= 0.0) m_[e] = 0.0;
        else if (std::abs(m_[e]) > 3.0 * std::abs(s)) m_[e] = 3.0 * s;
      }
    }
  }

  double segment_integral(std::size_t i, double x) const {
    return quad::adaptive_simpson([this](double u) { return D(u); }, u_[i], x,
                                  kTabulatedQuadTolerance * 1e-3);
  }

  double raw_integral(double x) const {
    const std::size_t i = segment(x);
    return cum_[i] + segment_integral(i, x);
  }

  template <class Fn>
  double scan_max(double lo, Fn f) const noexcept {
    double best = f(1.0);
    constexpr int kScan = 2000;
    for (int j = 0; j <= kScan; ++j) best = std::max(best, f(lo + (1.0 - lo) * j / kScan));
    for (double u : u_) {
      if (u >= lo && u <= 1.0) best = std::max(best, f(u));
    }
    return best;
  }

  std::vector<double> u_, d_, m_, cum_;
  double f_origin_ = 0.0;
  double d_min_ = 0.0;
  double d_max_ = 0.0;
};

/// The conductivity D with its Kirchhoff transform. Immutable once built.
class ConductivityModel {
 public:
  using Kind = std::variant<QuadraticConductivity, TabulatedConductivity>;

  explicit ConductivityModel(Kind kind) : kind_(std::move(kind)) {}

  static ConductivityModel quadratic(double c) {
    return ConductivityModel(QuadraticConductivity(c));
  }
  static ConductivityModel tabulated(std::vector<std::pair<double, double>> points) {
    return ConductivityModel(TabulatedConductivity(std::move(points)));
  }

  const Kind& kind() const noexcept { return kind_; }
  bool is_quadratic() const noexcept { return std::holds_alternative<QuadraticConductivity>(kind_); }

  template <class Fn>
  decltype(auto) visit(Fn&& fn) const {
    return std::visit(std::forward<Fn>(fn), kind_);
  }

  /// Unchecked evaluation; callers own the argument range.
  double D(double u) const {
    return visit([u](const auto& m) { return m.D(u); });
  }
  double dD(double u) const {
    return visit([u](const auto& m) { return m.dD(u); });
  }
  double F(double x) const {
    return visit([x](const auto& m) { return m.F(x); });
  }

  double d_min() const {
    return visit([](const auto& m) { return m.d_min(); });
  }
  double d_max() const {
    return visit([](const auto& m) { return m.d_max(); });
  }
  double sup_D(double lo) const {
    return visit([lo](const auto& m) { return m.sup_D(lo); });
  }
  double sup_dD(double lo) const {
    return visit([lo](const auto& m) { return m.sup_dD(lo); });
  }
  double F_max() const { return F(1.0); }

 private:
  Kind kind_;
};

namespace detail {

inline double clamp_unit(double u, const char* what) {
  if (!(u >= -kRangeTolerance && u <= 1.0 + kRangeTolerance)) {
    throw OutOfRange(std::string(what) + ": argument " + std::to_string(u) +
                     " outside the working interval [0, 1]");
  }
  return std::clamp(u, 0.0, 1.0);
}

}  // namespace detail

inline double eval_D(const ConductivityModel& model, double u) {
  return model.D(detail::clamp_unit(u, "eval_D"));
}

inline double eval_dD(const ConductivityModel& model, double u) {
  return model.dD(detail::clamp_unit(u, "eval_dD"));
}

inline double eval_F(const ConductivityModel& model, double x) {
  return model.F(detail::clamp_unit(x, "eval_F"));
}

/// F^{-1}(y) on [0, F(1)] by Newton's method safeguarded with bisection.
inline double invert_F(const ConductivityModel& model, double y) {
  const double f_top = model.F_max();
  if (!(y >= -kRangeTolerance && y <= f_top + kRangeTolerance)) {
    throw OutOfRange("invert_F: value " + std::to_string(y) + " outside [0, F(1)]");
  }
  y = std::clamp(y, 0.0, f_top);
  double lo = 0.0;
  double hi = 1.0;
  // F' = D >= d_min, so y / D(0) is a decent start.
  double x = std::clamp(y / model.D(0.0), 0.0, 1.0);
  for (int iter = 0; iter < 200; ++iter) {
    const double r = model.F(x) - y;
    if (std::abs(r) <= 0.25 * kInverseTolerance) return x;
    if (r > 0.0) hi = x; else lo = x;
    double next = x - r / model.D(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || hi - lo <= 4e-16) return next;
    x = next;
  }
  return x;
}

}  // namespace waxfront
