#include "entropy/sampling.hpp"

#include <cmath>

namespace entropy {

BallSampler::BallSampler(SpaceDescriptor ball, std::uint64_t seed)
    : ball_(ball),
      engine_(seed),
      radial_(ball.p().is_infinite() ? 1.0 : ball.p().reciprocal(), 1.0) {}

Vector BallSampler::operator()() {
  Vector x(static_cast<std::size_t>(ball_.n()));
  fill(x);
  return x;
}

void BallSampler::fill(std::span<double> out) {
  const Exponent p = ball_.p();
  if (p.is_infinite()) {
    for (double& v : out) v = 2.0 * unit_(engine_) - 1.0;
    return;
  }
  // |t| = G^{1/p} with G ~ Gamma(1/p, 1) has density proportional to exp(-|t|^p).
  const double inv_p = p.reciprocal();
  double sum = 0.0;
  for (double& v : out) {
    const double g = radial_(engine_);
    const double magnitude = std::pow(g, inv_p);
    v = unit_(engine_) < 0.5 ? -magnitude : magnitude;
    sum += g;  // |t|^p == g
  }
  if (sum == 0.0) return;
  const double scale =
      std::pow(unit_(engine_), 1.0 / static_cast<double>(out.size())) / std::pow(sum, inv_p);
  for (double& v : out) v *= scale;
}

}  // namespace entropy
