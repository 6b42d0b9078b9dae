#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entropy/exponent.hpp"
#include "entropy/spaces.hpp"

namespace entropy {

enum class VerificationState { proven, sampled, unverified };

std::string_view to_string(VerificationState state) noexcept;
VerificationState parse_verification_state(std::string_view text);

struct Verification {
  VerificationState state = VerificationState::unverified;
  /// Only meaningful for sampled: 1 - 1/samples.
  double confidence = 0.0;

  static Verification proven() { return {VerificationState::proven, 1.0}; }
  static Verification sampled(double confidence) { return {VerificationState::sampled, confidence}; }
  static Verification unverified() { return {}; }

  friend bool operator==(const Verification&, const Verification&) = default;
};

/// Records what a greedy packing is maximal with respect to.
struct Maximality {
  /// Exhaustive grid (true) or a finite random sample of the ball (false).
  bool exhaustive_grid = false;
  /// Grid spacing per axis; 0 for random candidates.
  double grid_step = 0.0;
  std::int64_t candidate_count = 0;

  friend bool operator==(const Maximality&, const Maximality&) = default;
};

/// Points of B_p^n (host) with pairwise metric_q distance at least `separation`.
/// Certifies a lower bound on e_k once the count exceeds 2^{k-1}.
struct PackingWitness {
  std::vector<Vector> points;
  SpaceDescriptor host;
  Exponent metric_q;
  double separation = 0.0;
  std::string provenance;
  std::uint64_t seed = 0;
  std::optional<Maximality> maximal;

  friend bool operator==(const PackingWitness&, const PackingWitness&) = default;
};

/// Centers whose metric_q balls of `radius` cover the target ball B_p^n.
/// Certifies e_k <= radius once the count is at most 2^{k-1}.
struct CoveringWitness {
  std::vector<Vector> centers;
  double radius = 0.0;
  SpaceDescriptor target;
  Exponent metric_q;
  Verification verified;
  std::string provenance;
  std::uint64_t seed = 0;

  friend bool operator==(const CoveringWitness&, const CoveringWitness&) = default;
};

}  // namespace entropy
