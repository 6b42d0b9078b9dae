#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entropy/exponent.hpp"
#include "entropy/special_math.hpp"
#include "entropy/witness.hpp"

namespace entropy {

enum class LowerMethod { volume, canonical, code_packing, oracle };
enum class UpperMethod { op_norm, self_cover, sparse_cover, interpolation, packing_cover, oracle };

std::string_view to_string(LowerMethod method) noexcept;
std::string_view to_string(UpperMethod method) noexcept;

struct LowerBound {
  double value = 0.0;
  LowerMethod method = LowerMethod::volume;
};

struct UpperBound {
  double value = 0.0;
  UpperMethod method = UpperMethod::op_norm;
};

/// Upper bound certified by a sample-checked witness rather than a proof.
struct SampledUpper {
  double value = 0.0;
  UpperMethod method = UpperMethod::sparse_cover;
  Verification verified;
  std::int64_t centers = 0;
};

/// Two-sided bracket on e_k(id: l_p^n -> l_q^n) plus the constant-free rate.
/// `lower` and `upper` are analytic or proven; sampled witnesses are kept apart.
struct BoundCertificate {
  std::int64_t k = 1;
  std::int64_t n = 1;
  Exponent p{1.0};
  Exponent q{1.0};
  LowerBound lower;
  UpperBound upper;
  double rate = 1.0;
  RateRegime regime = RateRegime::q_le_p;
  std::optional<SampledUpper> sampled_upper;
  /// Budget refusals downgraded to analytic values, one entry per event.
  std::vector<std::string> fallbacks;
};

struct AnalyticEffort {};

struct ConstructiveEffort {
  std::uint64_t seed = 0;
  std::int64_t samples = 100000;
  /// Largest #H_m enumerated when building codes.
  std::int64_t code_budget = 1000000;
  /// Largest number of centers a sampled witness may have.
  std::int64_t cover_budget = 20000;
  /// Grid steps per axis for greedy grid packings (dimension <= 4 only).
  int grid_steps = 16;
  /// When false, a budget refusal throws BudgetExceeded instead of falling back.
  bool allow_fallback = true;
};

using Effort = std::variant<AnalyticEffort, ConstructiveEffort>;

// Individual bound generators ------------------------------------------------

/// 2^{-(k-1)/n} (vol B_p^n / vol B_q^n)^{1/n}, from the volume of 2^{k-1} covering balls.
double lower_bound_volume(std::int64_t k, std::int64_t n, Exponent p, Exponent q);

/// For p <= q: 2^{-(k-1)/n} / ||id: l_q^n -> l_p^n||, via e_k(id: X -> X) >= 2^{-(k-1)/n}.
double lower_bound_self_volume(std::int64_t k, std::int64_t n, Exponent p, Exponent q);

/// Pigeonhole on a packing with more than 2^{k-1} points: separation / 2^{1/q_bar}.
std::optional<double> lower_bound_from_packing(const PackingWitness& w, std::int64_t k);

/// Best code packing bound using only the guaranteed code size (n/(2m))^m.
std::optional<double> lower_bound_code_analytic(std::int64_t k, std::int64_t n, Exponent p, Exponent q);

/// The m values tried for code packings at (k, n).
std::vector<std::int64_t> code_weight_range(std::int64_t k, std::int64_t n);

struct CoverBound {
  double value = 0.0;
  Verification verified;
};

/// A cover with at most 2^{k-1} centers bounds e_k by its radius.
std::optional<CoverBound> upper_bound_from_cover(const CoveringWitness& w, std::int64_t k);

/// min(1, 4^{1/p_bar} 2^{-(k-1)/n}).
double self_cover_upper(std::int64_t k, std::int64_t n, Exponent p);

/// Separation of the self-packing whose size the volume argument caps at 2^{k-1}:
/// [2 / (2^{(k-1) p_bar / n} - 1)]^{1/p_bar}. Empty for k = 1.
std::optional<double> self_cover_tau(std::int64_t k, std::int64_t n, Exponent p);

/// For p <= q, the separation tau at which any tau-separated subset of B_p^n in l_q
/// has at most 2^{k-1} points. Empty when the volume inequality cannot be met.
std::optional<double> volume_packing_tau(std::int64_t k, std::int64_t n, Exponent p, Exponent q);

/// Sparse-support bound on e_k(id: l_p^n -> l_q^n), p < q: a cover of the m largest
/// entries on every support, with the tail (m+1)^{1/q-1/p} added on disjoint support.
std::optional<double> sparse_cover_upper(std::int64_t k, std::int64_t n, Exponent p,
                                         Exponent q = Exponent::infinity());

/// Analytic bound on e_k(id: l_p^n -> l_q^n), p < q < inf, by splitting k = k1 + k2 - 1.
std::optional<double> interpolation_upper(std::int64_t k, std::int64_t n, Exponent p, Exponent q);

// Assembly -------------------------------------------------------------------

BoundCertificate certified_bounds(std::int64_t k, std::int64_t n, Exponent p, Exponent q,
                                  const Effort& effort = AnalyticEffort{});

struct CoverReport {
  std::int64_t samples = 0;
  std::int64_t failures = 0;
  double max_distance = 0.0;
  double confidence = 0.0;
  bool passed() const noexcept { return failures == 0; }
};

/// Samples the target ball uniformly and measures the nearest-center distance.
/// A sample fails iff its distance exceeds radius * (1 + 1e-6). A clean run
/// upgrades an unverified witness to sampled; a failing run marks it unverified.
CoverReport verify_cover(CoveringWitness& w, std::int64_t samples, std::uint64_t seed);

struct PackingReport {
  std::int64_t outside_ball = 0;
  std::int64_t close_pairs = 0;
  double min_distance = 0.0;
  double max_norm = 0.0;
  bool passed() const noexcept { return outside_ball == 0 && close_pairs == 0; }
};

/// Exhaustive re-check of membership and pairwise separation.
PackingReport verify_packing(const PackingWitness& w);

struct OracleValue {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

/// Ground truth where it is known: n = 1 (2^{-(k-1)}), p = q = inf
/// (1 / floor(2^{(k-1)/n})), else a grid bracket for n <= 3 and small k.
std::optional<OracleValue> oracle_entropy(std::int64_t k, std::int64_t n, Exponent p, Exponent q);

/// log2 of a certified covering count: the smallest k - 1 such that the analytic
/// upper bound on e_k is at most r.
std::int64_t covering_number_upper(std::int64_t n, Exponent p, Exponent q, double r);

struct KRule {
  /// k runs over 1..per_dimension * n.
  std::int64_t per_dimension = 4;
};

struct RatioRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  RateRegime regime = RateRegime::q_le_p;
  double lower = 0.0;
  LowerMethod lower_method = LowerMethod::volume;
  double upper = 0.0;
  UpperMethod upper_method = UpperMethod::op_norm;
  double rate = 0.0;
  double lower_over_rate = 0.0;
  double upper_over_rate = 0.0;
};

/// Analytic certificates over the (n, k) grid, rows sorted by (n, k). Uppers are
/// replaced by their running minimum in k.
std::vector<RatioRow> ratio_table(Exponent p, Exponent q, const std::vector<std::int64_t>& n_list,
                                  KRule rule = {});

// Complex spaces ---------------------------------------------------------------

struct ComplexCertificate {
  BoundCertificate real;  ///< certificate for l_p^{2n}(R) -> l_q^{2n}(R)
  double lower = 0.0;
  double upper = 0.0;
  /// ||J: l_p^n(C) -> l_p^{2n}(R)|| * ||J': l_q^{2n}(R) -> l_q^n(C)||
  double upper_factor = 1.0;
  /// ||J': l_p^{2n}(R) -> l_p^n(C)|| * ||J: l_q^n(C) -> l_q^{2n}(R)||
  double lower_factor = 1.0;
};

/// Bounds for e_k(id: l_p^n(C) -> l_q^n(C)) transported through the interleaving map.
ComplexCertificate complex_certified_bounds(std::int64_t k, std::int64_t n, Exponent p, Exponent q,
                                            const Effort& effort = AnalyticEffort{});

}  // namespace entropy
