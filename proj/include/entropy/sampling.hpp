#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "entropy/spaces.hpp"

namespace entropy {

/// Uniform samples from B_p^n.
///
/// Draws n i.i.d. variates with density proportional to exp(-|t|^p), normalizes
/// to the unit sphere of l_p, and scales by U^{1/n}. For p = inf it samples the
/// cube directly. Sequences are fully determined by the seed.
class BallSampler {
 public:
  BallSampler(SpaceDescriptor ball, std::uint64_t seed);

  Vector operator()();
  void fill(std::span<double> out);

  const SpaceDescriptor& ball() const noexcept { return ball_; }

 private:
  SpaceDescriptor ball_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::gamma_distribution<double> radial_;
};

}  // namespace entropy
