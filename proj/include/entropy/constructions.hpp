#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "entropy/spaces.hpp"
#include "entropy/witness.hpp"

namespace entropy {

/// Per-axis grid {-1, -1 + h, ..., 1} with h = 2/steps, restricted to the ball.
struct ExhaustiveGrid {
  int steps = 32;
};

/// `count` seeded uniform samples of the ball.
struct RandomCandidates {
  std::int64_t count = 0;
};

using CandidateSource = std::variant<ExhaustiveGrid, RandomCandidates>;

/// Exhaustive grids are capped at this dimension (33^4 candidates at the default step).
inline constexpr std::int64_t kMaxGridDimension = 4;

/// Materializes the candidate points of `ball` in scan order.
std::vector<Vector> candidate_points(const SpaceDescriptor& ball, const CandidateSource& source,
                                     std::uint64_t seed);

/// Words over {-1, 0, 1}^n, each with exactly 2m nonzeros, pairwise Hamming distance > m.
struct TernaryCode {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::vector<std::vector<std::int8_t>> words;
};

/// k-subsets of {0, ..., n-1} (stored sorted) with pairwise intersections < k/2.
struct SupportSystem {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::vector<std::vector<std::int32_t>> sets;
};

/// Greedy maximal tau-separated subset of the candidates in the metric_q distance.
/// Accepts a candidate iff it lies strictly farther than tau from every point
/// accepted so far; the result is maximal with respect to the candidate set.
PackingWitness greedy_maximal_packing(const SpaceDescriptor& host, Exponent metric_q, double tau,
                                      const CandidateSource& candidates, std::uint64_t seed);

/// The ball-covering slack of an exhaustive grid: every point of B_p^n is within
/// this metric_q distance of a grid point that itself lies in B_p^n.
double grid_slack(const SpaceDescriptor& host, Exponent metric_q, double grid_step);

/// A maximal tau-separated set is a tau-net of its candidates. For an exhaustive
/// grid the radius is widened by the grid slack and the cover is proven; for
/// random candidates the radius is tau and the cover is sampled.
CoveringWitness packing_to_cover(const PackingWitness& packing);

/// Greedy code over a fixed enumeration of H_m (supports in lexicographic order,
/// then sign patterns in binary order). Maximal, so #code >= (n/(2m))^m.
/// Refuses when #H_m = C(n, 2m) 4^m exceeds `budget`.
TernaryCode hamming_code(std::int64_t n, std::int64_t m, std::int64_t budget);

/// Number of words differing between two code words.
std::int64_t hamming_distance(const std::vector<std::int8_t>& a, const std::vector<std::int8_t>& b);

/// (2m)^{-1/p} * words inside B_p^n, separated by 2^{-1/p} m^{1/q-1/p} in l_q.
PackingWitness code_packing(const TernaryCode& code, Exponent p, Exponent q);

/// Greedy over lexicographic k-subsets; #sets >= (n/(4k))^{k/2} whenever that is >= 1.
SupportSystem support_system(std::int64_t n, std::int64_t k, std::int64_t budget);

/// Unit vectors e^1..e^n of B_p^n, pairwise l_q distance 2^{1/q}.
PackingWitness canonical_packing(std::int64_t n, Exponent q, Exponent host_p = Exponent(1.0));

/// Sup-norm cubes of side 2/cells tiling [-1, 1]^m, keeping only those that meet B_p^m.
/// Proven cover of B_p^m in l_inf with radius 1/cells.
CoveringWitness cube_grid_cover(std::int64_t m, Exponent p, std::int64_t cells, std::int64_t budget);

/// Number of cubes cube_grid_cover would keep, without materializing them.
std::uint64_t cube_grid_count(std::int64_t m, Exponent p, std::int64_t cells);

/// Embeds every center of `inner` (a cover of B_p^m in l_inf) on every m-element
/// support of {1..n}. Covers B_p^n in l_inf with radius m^{-1/p} + inner.radius.
CoveringWitness sparse_support_cover(std::int64_t n, std::int64_t m, const CoveringWitness& inner,
                                     Exponent p, std::int64_t budget);

/// Combines a cover of B_p^n in l_p and one in l_inf into a cover in l_q.
/// Candidates are assigned to the first ball containing them in each input; one
/// representative per nonempty intersection cell becomes a center. Radius is
/// 2^{1/p_bar} r_p^{p/q} r_inf^{1-p/q}.
CoveringWitness interpolation_cover(const CoveringWitness& cover_p, const CoveringWitness& cover_inf,
                                    Exponent q, const CandidateSource& representatives,
                                    std::uint64_t seed);

}  // namespace entropy
