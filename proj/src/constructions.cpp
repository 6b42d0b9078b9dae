#include "entropy/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <utility>

#include "entropy/metric_kernel.hpp"
#include "entropy/sampling.hpp"
#include "entropy/special_math.hpp"

namespace entropy {

namespace {

constexpr double kMembershipSlack = 1e-12;

bool in_ball(std::span<const double> x, Exponent p) {
  return lp_norm(x, p) <= 1.0 + kMembershipSlack;
}

// Calls visit(index_tuple) for every k-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_subset(std::int64_t n, std::int64_t k, Visit&& visit) {
  std::vector<std::int32_t> idx(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) idx[i] = static_cast<std::int32_t>(i);
  if (k > n) return;
  while (true) {
    visit(idx);
    std::int64_t i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (std::int64_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// exp(log_count) <= budget, with an exact integer check near the boundary.
void check_budget(double log_count, std::int64_t budget, const char* what) {
  if (budget < 0 || log_count > std::log(static_cast<double>(budget)) + 1e-9) {
    throw BudgetExceeded(std::string(what) + " exceeds budget of " + std::to_string(budget));
  }
}

std::uint64_t checked_count(double log_count) {
  return static_cast<std::uint64_t>(std::llround(std::exp(log_count)));
}

// Rows of a witness as one contiguous block for distance scans.
struct FlatPoints {
  std::size_t dim = 0;
  std::vector<double> data;

  explicit FlatPoints(std::size_t d) : dim(d) {}
  std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }
  const double* row(std::size_t i) const { return data.data() + i * dim; }
  void push(std::span<const double> x) { data.insert(data.end(), x.begin(), x.end()); }
};

}  // namespace

std::vector<Vector> candidate_points(const SpaceDescriptor& ball, const CandidateSource& source,
                                     std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(ball.n());
  std::vector<Vector> out;
  if (const auto* grid = std::get_if<ExhaustiveGrid>(&source)) {
    if (ball.n() > kMaxGridDimension) {
      throw BudgetExceeded("exhaustive grid candidates are capped at dimension " +
                           std::to_string(kMaxGridDimension));
    }
    if (grid->steps < 2 || grid->steps % 2 != 0) {
      throw DomainError("grid steps must be a positive even number");
    }
    const int steps = grid->steps;
    std::vector<int> odometer(n, 0);
    Vector x(n);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<double>(2 * odometer[i] - steps) / static_cast<double>(steps);
      }
      if (in_ball(x, ball.p())) out.push_back(x);
      std::size_t i = n;
      while (i > 0 && odometer[i - 1] == steps) odometer[--i] = 0;
      if (i == 0) break;
      ++odometer[i - 1];
    }
    return out;
  }
  const auto& random = std::get<RandomCandidates>(source);
  if (random.count < 0) throw DomainError("candidate count must be non-negative");
  BallSampler sampler(ball, seed);
  out.reserve(static_cast<std::size_t>(random.count));
  for (std::int64_t i = 0; i < random.count; ++i) out.push_back(sampler());
  return out;
}

PackingWitness greedy_maximal_packing(const SpaceDescriptor& host, Exponent metric_q, double tau,
                                      const CandidateSource& candidates, std::uint64_t seed) {
  if (!(tau > 0.0) || std::isinf(tau)) throw DomainError("tau must be positive and finite");
  const auto pool = candidate_points(host, candidates, seed);
  if (pool.empty()) throw DomainError("empty candidate set");

  const MetricKernel kernel(metric_q);
  const double threshold = kernel.transform(tau);
  const auto dim = static_cast<std::size_t>(host.n());
  FlatPoints accepted(dim);
  std::vector<Vector> points;

  for (const auto& x : pool) {
    bool separated = true;
    // Newest first: lexicographic and seeded neighbours collide most often with recent picks.
    for (std::size_t j = accepted.size(); j-- > 0;) {
      if (kernel.distance(x.data(), accepted.row(j), dim, threshold) <= threshold) {
        separated = false;
        break;
      }
    }
    if (separated) {
      accepted.push(x);
      points.push_back(x);
    }
  }

  Maximality maximal;
  maximal.candidate_count = static_cast<std::int64_t>(pool.size());
  std::string provenance = "greedy_random";
  if (const auto* grid = std::get_if<ExhaustiveGrid>(&candidates)) {
    maximal.exhaustive_grid = true;
    maximal.grid_step = 2.0 / grid->steps;
    provenance = "greedy_grid";
  }
  return PackingWitness{std::move(points), host, metric_q, tau, std::move(provenance), seed, maximal};
}

double grid_slack(const SpaceDescriptor& host, Exponent metric_q, double grid_step) {
  // Rounding to the nearest grid point stays in the cube; for p < inf rounding
  // toward zero stays in the ball at the cost of a full step per axis.
  const double per_axis = host.p().is_infinite() ? grid_step / 2.0 : grid_step;
  return per_axis * std::pow(static_cast<double>(host.n()), metric_q.reciprocal());
}

CoveringWitness packing_to_cover(const PackingWitness& packing) {
  if (!packing.maximal) {
    throw DomainError("packing_to_cover requires a greedy maximal packing");
  }
  const auto& maximal = *packing.maximal;
  CoveringWitness cover{packing.points,
                        packing.separation,
                        packing.host,
                        packing.metric_q,
                        Verification::unverified(),
                        "packing_cover(" + packing.provenance + ")",
                        packing.seed};
  if (maximal.exhaustive_grid) {
    const double q_bar = packing.metric_q.bar();
    const double slack = grid_slack(packing.host, packing.metric_q, maximal.grid_step);
    cover.radius =
        std::pow(std::pow(packing.separation, q_bar) + std::pow(slack, q_bar), 1.0 / q_bar);
    cover.verified = Verification::proven();
  } else {
    const auto count = static_cast<double>(std::max<std::int64_t>(maximal.candidate_count, 1));
    cover.verified = Verification::sampled(1.0 - 1.0 / count);
  }
  return cover;
}

std::int64_t hamming_distance(const std::vector<std::int8_t>& a, const std::vector<std::int8_t>& b) {
  if (a.size() != b.size()) throw DomainError("hamming_distance: length mismatch");
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

TernaryCode hamming_code(std::int64_t n, std::int64_t m, std::int64_t budget) {
  if (m < 1 || 4 * m > n) throw DomainError("hamming_code requires 1 <= m <= n/4");
  if (n > 64) throw DomainError("hamming_code supports n <= 64");
  const std::int64_t weight = 2 * m;
  check_budget(log_binomial(n, weight) + static_cast<double>(weight) * std::log(2.0), budget,
               "#H_m");

  // Each word as (positive mask, negative mask); h(x, y) = popcount of the union of differences.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> accepted;
  const std::uint64_t sign_patterns = std::uint64_t{1} << weight;
  for_each_subset(n, weight, [&](const std::vector<std::int32_t>& support) {
    for (std::uint64_t signs = 0; signs < sign_patterns; ++signs) {
      std::uint64_t pos = 0;
      std::uint64_t neg = 0;
      for (std::int64_t j = 0; j < weight; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << support[j];
        // Most significant sign bit belongs to the first support index; 0 -> +1.
        if ((signs >> (weight - 1 - j)) & 1U) {
          neg |= bit;
        } else {
          pos |= bit;
        }
      }
      bool far = true;
      for (std::size_t i = accepted.size(); i-- > 0;) {
        const auto& [p2, n2] = accepted[i];
        if (std::popcount((pos ^ p2) | (neg ^ n2)) <= m) {
          far = false;
          break;
        }
      }
      if (far) accepted.emplace_back(pos, neg);
    }
  });

  TernaryCode code{n, m, {}};
  code.words.reserve(accepted.size());
  for (const auto& [pos, neg] : accepted) {
    std::vector<std::int8_t> word(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < n; ++i) {
      if ((pos >> i) & 1U) word[i] = 1;
      if ((neg >> i) & 1U) word[i] = -1;
    }
    code.words.push_back(std::move(word));
  }
  return code;
}

PackingWitness code_packing(const TernaryCode& code, Exponent p, Exponent q) {
  if (code.m < 1 || code.words.empty()) throw DomainError("code_packing requires a nonempty code");
  const auto dm = static_cast<double>(code.m);
  const double scale = std::pow(2.0 * dm, -p.reciprocal());
  std::vector<Vector> points;
  points.reserve(code.words.size());
  for (const auto& word : code.words) {
    Vector x(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) x[i] = scale * word[i];
    points.push_back(std::move(x));
  }
  const double separation =
      std::pow(2.0, -p.reciprocal()) * std::pow(dm, q.reciprocal() - p.reciprocal());
  return PackingWitness{std::move(points), SpaceDescriptor(code.n, p), q, separation,
                        "code_packing", 0, std::nullopt};
}

SupportSystem support_system(std::int64_t n, std::int64_t k, std::int64_t budget) {
  if (k < 1 || k > n) throw DomainError("support_system requires 1 <= k <= n");
  if (n > 64) throw DomainError("support_system supports n <= 64");
  check_budget(log_binomial(n, k), budget, "C(n, k)");

  std::vector<std::uint64_t> accepted;
  SupportSystem system{n, k, {}};
  for_each_subset(n, k, [&](const std::vector<std::int32_t>& subset) {
    std::uint64_t mask = 0;
    for (auto i : subset) mask |= std::uint64_t{1} << i;
    for (std::size_t i = accepted.size(); i-- > 0;) {
      if (2 * std::popcount(mask & accepted[i]) >= k) return;
    }
    accepted.push_back(mask);
    system.sets.push_back(subset);
  });
  return system;
}

PackingWitness canonical_packing(std::int64_t n, Exponent q, Exponent host_p) {
  if (n < 2) throw DomainError("canonical_packing requires n >= 2");
  std::vector<Vector> points;
  for (std::int64_t i = 0; i < n; ++i) {
    Vector e(static_cast<std::size_t>(n), 0.0);
    e[i] = 1.0;
    points.push_back(std::move(e));
  }
  return PackingWitness{std::move(points), SpaceDescriptor(n, host_p), q,
                        std::exp2(q.reciprocal()), "canonical", 0, std::nullopt};
}

namespace {

// Calls visit(center) for every cube of the grid that meets B_p^m.
template <typename Visit>
void for_each_cube(std::int64_t m, Exponent p, std::int64_t cells, Visit&& visit) {
  const auto dim = static_cast<std::size_t>(m);
  const double half = 1.0 / static_cast<double>(cells);
  std::vector<std::int64_t> odometer(dim, 0);
  Vector center(dim);
  Vector nearest(dim);
  while (true) {
    for (std::size_t i = 0; i < dim; ++i) {
      center[i] = static_cast<double>(2 * odometer[i] + 1 - cells) / static_cast<double>(cells);
      nearest[i] = std::max(std::abs(center[i]) - half, 0.0);
    }
    if (in_ball(nearest, p)) visit(center);
    std::size_t i = dim;
    while (i > 0 && odometer[i - 1] == cells - 1) odometer[--i] = 0;
    if (i == 0) return;
    ++odometer[i - 1];
  }
}

}  // namespace

std::uint64_t cube_grid_count(std::int64_t m, Exponent p, std::int64_t cells) {
  if (m < 1 || cells < 1) throw DomainError("cube_grid_count requires m, cells >= 1");
  std::uint64_t count = 0;
  for_each_cube(m, p, cells, [&](const Vector&) { ++count; });
  return count;
}

CoveringWitness cube_grid_cover(std::int64_t m, Exponent p, std::int64_t cells, std::int64_t budget) {
  if (m < 1 || cells < 1) throw DomainError("cube_grid_cover requires m, cells >= 1");
  check_budget(static_cast<double>(m) * std::log(static_cast<double>(cells)), budget, "cube grid");
  std::vector<Vector> centers;
  for_each_cube(m, p, cells, [&](const Vector& c) { centers.push_back(c); });
  return CoveringWitness{std::move(centers),   1.0 / static_cast<double>(cells),
                         SpaceDescriptor(m, p), Exponent::infinity(),
                         Verification::proven(), "cube_grid",
                         0};
}

CoveringWitness sparse_support_cover(std::int64_t n, std::int64_t m, const CoveringWitness& inner,
                                     Exponent p, std::int64_t budget) {
  if (m < 1 || m > n) throw DomainError("sparse_support_cover requires 1 <= m <= n");
  if (inner.target.n() != m || !(inner.target.p() == p) || !inner.metric_q.is_infinite()) {
    throw DomainError("inner cover must cover B_p^m in l_inf");
  }
  if (inner.centers.empty()) throw DomainError("inner cover has no centers");
  const double log_count =
      log_binomial(n, m) + std::log(static_cast<double>(inner.centers.size()));
  check_budget(log_count, budget, "sparse support cover");

  std::vector<Vector> centers;
  centers.reserve(checked_count(log_count));
  for_each_subset(n, m, [&](const std::vector<std::int32_t>& support) {
    for (const auto& c : inner.centers) {
      Vector x(static_cast<std::size_t>(n), 0.0);
      for (std::size_t j = 0; j < support.size(); ++j) x[support[j]] = c[j];
      centers.push_back(std::move(x));
    }
  });
  const double radius = std::pow(static_cast<double>(m), -p.reciprocal()) + inner.radius;
  return CoveringWitness{std::move(centers),        radius,
                         SpaceDescriptor(n, p),     Exponent::infinity(),
                         Verification::unverified(), "sparse_support(" + inner.provenance + ")",
                         inner.seed};
}

CoveringWitness interpolation_cover(const CoveringWitness& cover_p, const CoveringWitness& cover_inf,
                                    Exponent q, const CandidateSource& representatives,
                                    std::uint64_t seed) {
  if (!(cover_p.target == cover_inf.target)) {
    throw DomainError("interpolation_cover: inputs cover different balls");
  }
  const SpaceDescriptor& ball = cover_p.target;
  const Exponent p = ball.p();
  if (!(cover_p.metric_q == p) || !cover_inf.metric_q.is_infinite()) {
    throw DomainError("interpolation_cover: expects covers in l_p and l_inf");
  }
  if (!(p < q) || q.is_infinite()) throw DomainError("interpolation_cover requires p < q < inf");

  const auto dim = static_cast<std::size_t>(ball.n());
  auto first_ball = [dim](const CoveringWitness& cover, const Vector& x) -> std::ptrdiff_t {
    const MetricKernel kernel(cover.metric_q);
    const double threshold = kernel.transform(cover.radius * (1.0 + 1e-12));
    for (std::size_t i = 0; i < cover.centers.size(); ++i) {
      if (kernel.distance(x.data(), cover.centers[i].data(), dim, threshold) <= threshold) {
        return static_cast<std::ptrdiff_t>(i);
      }
    }
    return -1;
  };

  std::map<std::pair<std::ptrdiff_t, std::ptrdiff_t>, bool> seen;
  std::vector<Vector> centers;
  for (const auto& x : candidate_points(ball, representatives, seed)) {
    const auto i = first_ball(cover_p, x);
    const auto j = first_ball(cover_inf, x);
    if (i < 0 || j < 0) continue;
    if (seen.emplace(std::make_pair(i, j), true).second) centers.push_back(x);
  }
  if (centers.empty()) throw DomainError("interpolation_cover: no candidate fell in any cell");

  const double theta = p.value() / q.value();
  const double radius = std::exp2(1.0 / p.bar()) * std::pow(cover_p.radius, theta) *
                        std::pow(cover_inf.radius, 1.0 - theta);
  return CoveringWitness{std::move(centers),        radius,
                         ball,                      q,
                         Verification::unverified(), "interpolation",
                         seed};
}

}  // namespace entropy
