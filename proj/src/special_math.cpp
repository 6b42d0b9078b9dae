#include "entropy/special_math.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace entropy {

namespace {

constexpr double kStirlingThreshold = 10.0;

// Stirling series B_{2j} / (2j (2j - 1)) for j = 1..8.
constexpr std::array<double, 8> kStirlingCoefficients = {
    1.0 / 12.0,         -1.0 / 360.0, 1.0 / 1260.0,         -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0,  1.0 / 156.0, -3617.0 / 122400.0,
};

double stirling_log_gamma(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (double c : kStirlingCoefficients) {
    series += c * power;
    power *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

std::string_view to_string(RateRegime regime) noexcept {
  switch (regime) {
    case RateRegime::small_k:
      return "small_k";
    case RateRegime::middle_k:
      return "middle_k";
    case RateRegime::large_k:
      return "large_k";
    case RateRegime::q_le_p:
      return "q_le_p";
  }
  return "unknown";
}

double log_gamma(double t) {
  if (!(t > 0.0) || std::isinf(t)) {
    throw DomainError("log_gamma requires a positive finite argument");
  }
  if (t == 1.0 || t == 2.0) return 0.0;
  if (t >= kStirlingThreshold) return stirling_log_gamma(t);

  // Gamma(t) = Gamma(t + s) / (t (t+1) ... (t+s-1))
  double shifted = t;
  double product = 1.0;
  while (shifted < kStirlingThreshold) {
    product *= shifted;
    shifted += 1.0;
  }
  return stirling_log_gamma(shifted) - std::log(product);
}

double log_binomial(std::int64_t n, std::int64_t m) {
  if (n < 0 || m < 0 || m > n) {
    throw DomainError("log_binomial requires 0 <= m <= n");
  }
  const std::int64_t small = std::min(m, n - m);
  if (small == 0) return 0.0;
  if (small <= 2000) {
    double sum = 0.0;
    for (std::int64_t i = 1; i <= small; ++i) {
      sum += std::log(static_cast<double>(n - small + i) / static_cast<double>(i));
    }
    return sum;
  }
  const auto dn = static_cast<double>(n);
  const auto dm = static_cast<double>(m);
  return log_gamma(dn + 1.0) - log_gamma(dm + 1.0) - log_gamma(dn - dm + 1.0);
}

double log_volume_lp_ball(std::int64_t n, Exponent p) {
  if (n <= 0) throw DomainError("log_volume_lp_ball requires n >= 1");
  const auto dn = static_cast<double>(n);
  if (p.is_infinite()) return dn * std::numbers::ln2;
  const double inv_p = p.reciprocal();
  return dn * std::numbers::ln2 + dn * log_gamma(1.0 + inv_p) - log_gamma(1.0 + dn * inv_p);
}

double volume_lp_ball(std::int64_t n, Exponent p) {
  const double log_vol = log_volume_lp_ball(n, p);
  const auto dn = static_cast<double>(n);
  if (p.is_infinite()) return std::exp2(dn);
  const double top = 1.0 + dn * p.reciprocal();
  if (top < 150.0 && dn < 500.0) {
    return std::exp2(dn) * std::pow(std::tgamma(1.0 + p.reciprocal()), dn) / std::tgamma(top);
  }
  return std::exp(log_vol);
}

double gamma_growth_ratio(double x, Exponent p) {
  if (!(x >= 1.0) || std::isinf(x) || p.is_infinite()) {
    throw DomainError("gamma_growth_ratio requires x >= 1 and finite p");
  }
  const double inv_p = p.reciprocal();
  return std::exp(log_gamma(1.0 + x * inv_p) / x - inv_p * std::log(x));
}

Rate theoretical_rate(std::int64_t k, std::int64_t n, Exponent p, Exponent q) {
  if (k <= 0 || n <= 0) throw DomainError("theoretical_rate requires k >= 1 and n >= 1");
  const auto dk = static_cast<double>(k);
  const auto dn = static_cast<double>(n);
  const double gap = p.reciprocal() - q.reciprocal();  // 1/p - 1/q

  auto volume_rate = [&] { return std::exp2(-(dk - 1.0) / dn) * std::pow(dn, -gap); };

  if (q <= p) return {volume_rate(), RateRegime::q_le_p};

  // k <= log2 n  <=>  2^k <= n, exact on integers.
  if (k < 63 && (std::int64_t{1} << k) <= n) return {1.0, RateRegime::small_k};
  if (k <= n) {
    return {std::pow(std::log2(1.0 + dn / dk) / dk, gap), RateRegime::middle_k};
  }
  return {volume_rate(), RateRegime::large_k};
}

double log2_int(std::uint64_t x) noexcept { return std::log2(static_cast<double>(x)); }

bool exceeds_power_of_two(std::uint64_t count, std::int64_t k) noexcept {
  if (k <= 0) return count >= 1;
  const std::int64_t e = k - 1;
  if (e >= 64) return false;
  return count > (std::uint64_t{1} << e);
}

}  // namespace entropy
