#pragma once

#include <cstdint>
#include <string_view>

#include "entropy/exponent.hpp"

namespace entropy {

/// Which branch of the three-regime rate formula governs a given (k, n, p, q).
enum class RateRegime { small_k, middle_k, large_k, q_le_p };

std::string_view to_string(RateRegime regime) noexcept;

struct Rate {
  double value;
  RateRegime regime;
};

/// ln Gamma(t) for t > 0. Stirling series for t >= 10, upward recurrence below.
double log_gamma(double t);

/// ln C(n, m).
double log_binomial(std::int64_t n, std::int64_t m);

/// ln vol(B_p^n) = n ln 2 + n ln Gamma(1 + 1/p) - ln Gamma(1 + n/p), with 1/inf = 0.
double log_volume_lp_ball(std::int64_t n, Exponent p);

/// vol(B_p^n) itself. Uses tgamma directly while it cannot overflow, so small
/// cases such as vol(B_1^2) = 2 come out exact; +inf or 0 on under/overflow.
double volume_lp_ball(std::int64_t n, Exponent p);

/// Gamma(1 + x/p)^{1/x} / x^{1/p}, evaluated in log domain. Requires x >= 1, p finite.
double gamma_growth_ratio(double x, Exponent p);

/// Constant-free rate of e_k(id: l_p^n -> l_q^n).
///
/// q <= p (including p == q): 2^{-(k-1)/n} n^{1/q-1/p}.
/// p < q: 1 for 2^k <= n, (log2(1 + n/k)/k)^{1/p-1/q} for log2 n < k <= n,
/// and 2^{-(k-1)/n} n^{1/q-1/p} for k > n.
Rate theoretical_rate(std::int64_t k, std::int64_t n, Exponent p, Exponent q);

/// log2 of x for positive integers, exact for powers of two.
double log2_int(std::uint64_t x) noexcept;

/// True iff count > 2^{k-1}; no overflow for large k.
bool exceeds_power_of_two(std::uint64_t count, std::int64_t k) noexcept;

/// True iff count <= 2^{k-1}.
inline bool fits_power_of_two(std::uint64_t count, std::int64_t k) noexcept {
  return !exceeds_power_of_two(count, k);
}

}  // namespace entropy
