#include "entropy/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entropy {

namespace {

// Scaled by the largest magnitude so that |x_i|^p neither overflows nor underflows.
template <typename Magnitudes>
double norm_of_magnitudes(std::size_t size, Magnitudes magnitude, Exponent p) {
  double largest = 0.0;
  for (std::size_t i = 0; i < size; ++i) largest = std::max(largest, magnitude(i));
  if (largest == 0.0 || p.is_infinite()) return largest;
  const double exponent = p.value();
  double sum = 0.0;
  for (std::size_t i = 0; i < size; ++i) sum += std::pow(magnitude(i) / largest, exponent);
  return largest * std::pow(sum, 1.0 / exponent);
}

}  // namespace

SpaceDescriptor::SpaceDescriptor(std::int64_t n, Exponent p) : n_(n), p_(p) {
  if (n < 1) throw DomainError("space dimension must be at least 1");
}

double lp_norm(std::span<const double> x, Exponent p) {
  return norm_of_magnitudes(x.size(), [&](std::size_t i) { return std::abs(x[i]); }, p);
}

double lp_norm(std::span<const std::complex<double>> z, Exponent p) {
  return norm_of_magnitudes(z.size(), [&](std::size_t i) { return std::abs(z[i]); }, p);
}

double lp_distance(std::span<const double> x, std::span<const double> y, Exponent p) {
  if (x.size() != y.size()) throw DomainError("lp_distance: dimension mismatch");
  return norm_of_magnitudes(x.size(), [&](std::size_t i) { return std::abs(x[i] - y[i]); }, p);
}

double identity_op_norm(std::int64_t n, Exponent p, Exponent q) {
  if (n < 1) throw DomainError("identity_op_norm requires n >= 1");
  const double exponent = q.reciprocal() - p.reciprocal();
  return std::max(1.0, std::pow(static_cast<double>(n), exponent));
}

Vector best_m_term(std::span<const double> x, std::int64_t m) {
  const auto n = static_cast<std::int64_t>(x.size());
  if (m < 0 || m > n) throw DomainError("best_m_term requires 0 <= m <= n");
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(x[a]) > std::abs(x[b]); });
  Vector out(x.size(), 0.0);
  for (std::int64_t i = 0; i < m; ++i) out[order[i]] = x[order[i]];
  return out;
}

Vector interleave(std::span<const std::complex<double>> z) {
  Vector out;
  out.reserve(2 * z.size());
  for (const auto& c : z) {
    out.push_back(c.real());
    out.push_back(c.imag());
  }
  return out;
}

ComplexVector deinterleave(std::span<const double> x) {
  if (x.size() % 2 != 0) throw DomainError("deinterleave requires even length");
  ComplexVector out;
  out.reserve(x.size() / 2);
  for (std::size_t i = 0; i < x.size(); i += 2) out.emplace_back(x[i], x[i + 1]);
  return out;
}

std::pair<double, double> interleave_distortion(Exponent p) {
  const double factor = std::exp2(p.reciprocal() - 0.5);
  return {std::min(1.0, factor), std::max(1.0, factor)};
}

}  // namespace entropy
