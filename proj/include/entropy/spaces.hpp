#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "entropy/exponent.hpp"

namespace entropy {

using Vector = std::vector<double>;
using ComplexVector = std::vector<std::complex<double>>;

/// The space l_p^n, or its unit ball B_p^n.
class SpaceDescriptor {
 public:
  SpaceDescriptor(std::int64_t n, Exponent p);

  std::int64_t n() const noexcept { return n_; }
  Exponent p() const noexcept { return p_; }
  double p_bar() const noexcept { return p_.bar(); }

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;

 private:
  std::int64_t n_;
  Exponent p_;
};

/// (Quasi-)norm ||x||_p; max |x_i| for p = inf.
double lp_norm(std::span<const double> x, Exponent p);

/// ||x||_p over C^n with modulus |z_i| = sqrt(re^2 + im^2).
double lp_norm(std::span<const std::complex<double>> z, Exponent p);

/// ||x - y||_p without materializing the difference.
double lp_distance(std::span<const double> x, std::span<const double> y, Exponent p);

/// ||id: l_p^n -> l_q^n|| = max(1, n^{1/q - 1/p}).
double identity_op_norm(std::int64_t n, Exponent p, Exponent q);

/// Keeps the m largest-magnitude entries of x (ties: smaller index first), zeroes the rest.
Vector best_m_term(std::span<const double> x, std::int64_t m);

/// (z_1, ..., z_n) -> (Re z_1, Im z_1, ..., Re z_n, Im z_n).
Vector interleave(std::span<const std::complex<double>> z);

/// Inverse of interleave. Odd length is a domain error.
ComplexVector deinterleave(std::span<const double> x);

/// Range [lo, hi] of ||interleave(z)||_p / ||z||_p over nonzero z:
/// [min(1, 2^{1/p-1/2}), max(1, 2^{1/p-1/2})].
std::pair<double, double> interleave_distortion(Exponent p);

}  // namespace entropy
