#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "entropy/exponent.hpp"

namespace entropy {

/// Distance evaluation in a monotone transform of ||a - b||_q: the power sum
/// sum |a_i - b_i|^q for finite q, the max for q = inf. Comparing transformed
/// values avoids the final root and allows early exit once a bound is passed.
class MetricKernel {
 public:
  explicit MetricKernel(Exponent q) noexcept
      : q_(q.value()), kind_(q.is_infinite() ? Kind::max : q.value() == 1.0 ? Kind::one
                                                      : q.value() == 2.0   ? Kind::two
                                                                           : Kind::general) {}

  double transform(double r) const noexcept {
    switch (kind_) {
      case Kind::max:
      case Kind::one:
        return r;
      case Kind::two:
        return r * r;
      case Kind::general:
        return std::pow(r, q_);
    }
    return r;
  }

  double untransform(double t) const noexcept {
    switch (kind_) {
      case Kind::max:
      case Kind::one:
        return t;
      case Kind::two:
        return std::sqrt(t);
      case Kind::general:
        return std::pow(t, 1.0 / q_);
    }
    return t;
  }

  /// Transformed distance, or any value > bound once it is known to exceed bound.
  /// `order`, when given, permutes the coordinate visiting sequence.
  double distance(const double* a, const double* b, std::size_t n,
                  double bound = std::numeric_limits<double>::infinity(),
                  const std::size_t* order = nullptr) const noexcept {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t i = order ? order[j] : j;
      const double d = std::abs(a[i] - b[i]);
      switch (kind_) {
        case Kind::max:
          if (d > acc) acc = d;
          break;
        case Kind::one:
          acc += d;
          break;
        case Kind::two:
          acc += d * d;
          break;
        case Kind::general:
          acc += std::pow(d, q_);
          break;
      }
      if (acc > bound) return acc;
    }
    return acc;
  }

 private:
  enum class Kind { max, one, two, general };
  double q_;
  Kind kind_;
};

}  // namespace entropy
