#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace entropy {

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a construction would exceed its explicit size budget. Budgets
/// refuse; they never degrade a witness silently.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exponent p in (0, inf]. Infinity is a distinct state, not a large double.
class Exponent {
 public:
  explicit Exponent(double p);

  static Exponent infinity() noexcept { return Exponent{}; }

  /// Accepts a decimal literal, a fraction "a/b", or "inf".
  static Exponent parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }

  /// The exponent as a double; +inf when infinite.
  double value() const noexcept;

  /// 1/p, with 1/inf := 0.
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }

  /// min(1, p): the exponent that makes l_p a p-Banach space.
  double bar() const noexcept { return infinite_ ? 1.0 : (value_ < 1.0 ? value_ : 1.0); }

  /// "inf" or the shortest round-tripping decimal.
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const Exponent& a, const Exponent& b) noexcept {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Exponent& a, const Exponent& b) noexcept { return !(b < a); }

 private:
  Exponent() noexcept : value_(0.0), infinite_(true) {}

  double value_;
  bool infinite_;
};

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);

}  // namespace entropy
