#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mapgeo/common.hpp"

namespace mapgeo {

/// Angle values along an edge of length d, parameterized by the arc
/// position x ∈ [0, d] measured from the first endpoint.
///
/// Two forms exist: the linear interpolation between the endpoint half-angles
/// ρ(u)μ(u)/2 and ρ(v)μ(v)/2, and a uniformly sampled table (piecewise linear
/// between samples) for angle functions that are not linear.
class AngleFunction {
 public:
  static AngleFunction linear(double f_start, double f_end, double length) {
    if (!(length > 0.0) || !std::isfinite(length)) {
      fail(ErrorCode::InvalidArgument, "angle function length must be positive");
    }
    if (!(f_start > 0.0) || !(f_end > 0.0)) {
      fail(ErrorCode::ValueOutOfRange, "angle function values must be positive");
    }
    AngleFunction fn;
    fn.length_ = length;
    fn.values_ = {f_start, f_end};
    fn.linear_ = true;
    return fn;
  }

  /// `values` are taken at x = k·d/(n-1), k = 0..n-1.
  static AngleFunction sampled(double length, std::vector<double> values) {
    if (!(length > 0.0) || !std::isfinite(length)) {
      fail(ErrorCode::InvalidArgument, "angle function length must be positive");
    }
    if (values.size() < 2) {
      fail(ErrorCode::InvalidArgument, "sampled angle function needs >= 2 samples");
    }
    for (double v : values) {
      if (!(v > 0.0)) fail(ErrorCode::ValueOutOfRange, "angle function values must be positive");
    }
    AngleFunction fn;
    fn.length_ = length;
    fn.values_ = std::move(values);
    fn.linear_ = fn.values_.size() == 2;
    return fn;
  }

  double length() const { return length_; }
  bool is_linear() const { return linear_; }
  double start_value() const { return values_.front(); }
  double end_value() const { return values_.back(); }
  const std::vector<double>& samples() const { return values_; }

  double at(double x) const {
    check_range(x);
    x = std::clamp(x, 0.0, length_);
    const std::size_t segments = values_.size() - 1;
    const double pos = x / length_ * static_cast<double>(segments);
    std::size_t k = static_cast<std::size_t>(pos);
    if (k >= segments) k = segments - 1;
    const double a = values_[k];
    const double b = values_[k + 1];
    if (a == b) return a;
    const double t = pos - static_cast<double>(k);
    return (1.0 - t) * a + t * b;
  }

  /// One-sided derivative df/dx|₊. At x = d the left derivative is returned.
  double right_derivative(double x) const {
    check_range(x);
    const std::size_t segments = values_.size() - 1;
    const double h = length_ / static_cast<double>(segments);
    std::size_t k = static_cast<std::size_t>(std::clamp(x, 0.0, length_) / h);
    if (k >= segments) k = segments - 1;
    return (values_[k + 1] - values_[k]) / h;
  }

  /// Mean value over [0, d] (exact for the piecewise-linear forms).
  double mean() const {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < values_.size(); ++k) {
      acc += 0.5 * (values_[k] + values_[k + 1]);
    }
    return acc / static_cast<double>(values_.size() - 1);
  }

 private:
  AngleFunction() = default;

  void check_range(double x) const {
    const double slack = 1e-12 * std::max(1.0, length_);
    if (!(x >= -slack && x <= length_ + slack)) {
      fail(ErrorCode::OutOfRange,
           "arc position " + std::to_string(x) + " outside [0, " +
               std::to_string(length_) + "]");
    }
  }

  double length_ = 1.0;
  std::vector<double> values_;
  bool linear_ = true;
};

/// Pointwise class of an edge point with angle value f (π is flat).
inline PointClass classify_angle(double f, double tol = kTolAngle) {
  return classify_against(f, kPi, tol);
}

}  // namespace mapgeo
