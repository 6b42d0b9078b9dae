#include "entropy/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "entropy/constructions.hpp"
#include "entropy/metric_kernel.hpp"
#include "entropy/sampling.hpp"
#include "entropy/spaces.hpp"

namespace entropy {

namespace {

constexpr double kLogMargin = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kMaxGreedyCenters = 4096;

void require_positive(std::int64_t k, std::int64_t n) {
  if (k < 1 || n < 1) throw DomainError("bounds require k >= 1 and n >= 1");
}

// log2 C(n, m) for m = 0..n.
std::vector<double> log2_binomial_row(std::int64_t n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::int64_t m = 0; m < n; ++m) {
    row[m + 1] = row[m] + std::log2(static_cast<double>(n - m) / static_cast<double>(m + 1));
  }
  return row;
}

// floor(2^{e/n}) exactly: the largest s with s^n <= 2^e. Requires e < 62 n.
std::uint64_t floor_root_of_power_of_two(std::int64_t e, std::int64_t n) {
  using boost::multiprecision::cpp_int;
  const cpp_int limit = cpp_int(1) << static_cast<unsigned>(e);
  auto fits = [&](std::uint64_t s) {
    cpp_int value = 1;
    for (std::int64_t i = 0; i < n; ++i) {
      value *= s;
      if (value > limit) return false;
    }
    return true;
  };
  auto s = static_cast<std::uint64_t>(std::floor(std::exp2(static_cast<double>(e) / n)));
  s = std::max<std::uint64_t>(s, 1);
  while (s > 1 && !fits(s)) --s;
  while (fits(s + 1)) ++s;
  return s;
}

// Largest s with s^dim <= 2^bits, at least 1. Exact for integral bits; for
// fractional bits the root is shaded down before flooring.
double largest_root_of_budget(double bits, std::int64_t dim) {
  if (bits == std::floor(bits) && bits < 62.0 * static_cast<double>(dim)) {
    return static_cast<double>(floor_root_of_power_of_two(static_cast<std::int64_t>(bits), dim));
  }
  const double root = std::exp2(bits / static_cast<double>(dim));
  return std::max(1.0, std::floor(root * (1.0 - 1e-12)));
}

// Best analytic e_j(id: l_p^n -> l_p^n).
// For p = inf the cube grid is the optimal self cover.
double self_upper(std::int64_t j, std::int64_t n, Exponent p) {
  double best = self_cover_upper(j, n, p);
  if (p.is_infinite()) best = std::min(best, 1.0 / largest_root_of_budget(static_cast<double>(j - 1), n));
  if (auto tau = self_cover_tau(j, n, p)) best = std::min(best, *tau);
  return best;
}

// Radius for covering B_p^m in l_q^m (p < q) with at most 2^{bits} centers.
double head_cover_radius(double bits, std::int64_t m, Exponent p, Exponent q) {
  const auto l = static_cast<std::int64_t>(std::floor(bits)) + 1;
  double best = std::min(1.0, self_upper(l, m, p));
  best = std::min(best, std::pow(static_cast<double>(m), q.reciprocal()) /
                            largest_root_of_budget(bits, m));
  if (auto tau = volume_packing_tau(l, m, p, q)) best = std::min(best, *tau);
  return best;
}

// Head of x (its m largest entries) covered in l_q^m on each of the C(n, m)
// supports. The tail has ||.||_q <= (m+1)^{1/q-1/p} and a disjoint support, so
// the two errors combine in l_q without the quasi-triangle loss.
std::optional<double> sparse_cover_radius(std::int64_t k, std::int64_t n, Exponent p, Exponent q) {
  if (!(p < q)) return std::nullopt;
  const auto log2_row = log2_binomial_row(n);
  std::optional<double> best;
  for (std::int64_t m = 1; m <= n; ++m) {
    const double bits = m == n ? static_cast<double>(k - 1)
                               : static_cast<double>(k - 1) - log2_row[m] - kLogMargin;
    if (bits < 0.0) continue;
    const double tail =
        m == n ? 0.0 : std::pow(static_cast<double>(m + 1), q.reciprocal() - p.reciprocal());
    const double head = head_cover_radius(bits, m, p, q);
    const double radius = q.is_infinite()
                              ? std::max(tail, head)
                              : std::pow(std::pow(tail, q.value()) + std::pow(head, q.value()),
                                         q.reciprocal());
    if (!best || radius < *best) best = radius;
  }
  return best;
}

// Best analytic e_l(id: l_p^n -> l_inf^n).
double sup_upper(std::int64_t l, std::int64_t n, Exponent p) {
  if (p.is_infinite()) return 1.0 / largest_root_of_budget(static_cast<double>(l - 1), n);
  return sparse_cover_radius(l, n, p, Exponent::infinity()).value_or(1.0);
}

double q_bar_root_two(Exponent q) { return std::exp2(1.0 / q.bar()); }

}  // namespace

std::string_view to_string(LowerMethod method) noexcept {
  switch (method) {
    case LowerMethod::volume:
      return "volume";
    case LowerMethod::canonical:
      return "canonical";
    case LowerMethod::code_packing:
      return "code_packing";
    case LowerMethod::oracle:
      return "oracle";
  }
  return "unknown";
}

std::string_view to_string(UpperMethod method) noexcept {
  switch (method) {
    case UpperMethod::op_norm:
      return "op_norm";
    case UpperMethod::self_cover:
      return "self_cover";
    case UpperMethod::sparse_cover:
      return "sparse_cover";
    case UpperMethod::interpolation:
      return "interpolation";
    case UpperMethod::packing_cover:
      return "packing_cover";
    case UpperMethod::oracle:
      return "oracle";
  }
  return "unknown";
}

double lower_bound_volume(std::int64_t k, std::int64_t n, Exponent p, Exponent q) {
  require_positive(k, n);
  const auto dn = static_cast<double>(n);
  const double log_ratio = log_volume_lp_ball(n, p) - log_volume_lp_ball(n, q);
  return std::exp2(-static_cast<double>(k - 1) / dn) * std::exp(log_ratio / dn);
}

double lower_bound_self_volume(std::int64_t k, std::int64_t n, Exponent p, Exponent q) {
  require_positive(k, n);
  return std::exp2(-static_cast<double>(k - 1) / static_cast<double>(n)) /
         identity_op_norm(n, q, p);
}

std::optional<double> lower_bound_from_packing(const PackingWitness& w, std::int64_t k) {
  if (!exceeds_power_of_two(w.points.size(), k)) return std::nullopt;
  return w.separation / q_bar_root_two(w.metric_q);
}

std::vector<std::int64_t> code_weight_range(std::int64_t k, std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 4) return out;
  const double scale = std::log2(static_cast<double>(n) / static_cast<double>(k) + 1.0);
  const auto first = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(k / scale)));
  for (std::int64_t m = first; 4 * m <= n; ++m) out.push_back(m);
  return out;
}

std::optional<double> lower_bound_code_analytic(std::int64_t k, std::int64_t n, Exponent p,
                                                Exponent q) {
  require_positive(k, n);
  std::optional<double> best;
  for (std::int64_t m : code_weight_range(k, n)) {
    const auto dm = static_cast<double>(m);
    // #A_m >= (n/(2m))^m > 2^{k-1}
    if (dm * std::log2(static_cast<double>(n) / (2.0 * dm)) <= static_cast<double>(k - 1) + kLogMargin) {
      continue;
    }
    const double separation =
        std::exp2(-p.reciprocal()) * std::pow(dm, q.reciprocal() - p.reciprocal());
    const double value = separation / q_bar_root_two(q);
    if (!best || value > *best) best = value;
  }
  return best;
}

std::optional<CoverBound> upper_bound_from_cover(const CoveringWitness& w, std::int64_t k) {
  if (w.centers.empty() || !fits_power_of_two(w.centers.size(), k)) return std::nullopt;
  return CoverBound{w.radius, w.verified};
}

double self_cover_upper(std::int64_t k, std::int64_t n, Exponent p) {
  require_positive(k, n);
  const double value = std::pow(4.0, 1.0 / p.bar()) *
                       std::exp2(-static_cast<double>(k - 1) / static_cast<double>(n));
  return std::min(1.0, value);
}

std::optional<double> self_cover_tau(std::int64_t k, std::int64_t n, Exponent p) {
  require_positive(k, n);
  if (k == 1) return std::nullopt;
  const double p_bar = p.bar();
  const double denominator =
      std::expm1(static_cast<double>(k - 1) * p_bar * std::numbers::ln2 / static_cast<double>(n));
  return std::pow(2.0 / denominator, 1.0 / p_bar);
}

std::optional<double> volume_packing_tau(std::int64_t k, std::int64_t n, Exponent p, Exponent q) {
  require_positive(k, n);
  if (q < p) throw DomainError("volume_packing_tau requires p <= q");
  const auto dn = static_cast<double>(n);
  const double p_bar = p.bar();
  const double log_volume_ratio = log_volume_lp_ball(n, p) - log_volume_lp_ball(n, q);
  const double log_a =
      (static_cast<double>(k - 1) * p_bar * std::numbers::ln2 - p_bar * log_volume_ratio) / dn;
  const double log_nu = p_bar * (p.reciprocal() - q.reciprocal()) * std::log(dn);
  if (log_a <= log_nu) return std::nullopt;
  const double log_denominator = log_nu + std::log(std::expm1(log_a - log_nu));
  return q_bar_root_two(q) * std::exp(-log_denominator / p_bar);
}

std::optional<double> sparse_cover_upper(std::int64_t k, std::int64_t n, Exponent p, Exponent q) {
  require_positive(k, n);
  return sparse_cover_radius(k, n, p, q);
}

std::optional<double> interpolation_upper(std::int64_t k, std::int64_t n, Exponent p, Exponent q) {
  require_positive(k, n);
  if (!(p < q) || q.is_infinite()) return std::nullopt;
  const double theta = p.value() / q.value();
  const double lead = std::exp2(1.0 / p.bar());
  std::optional<double> best;
  for (std::int64_t k1 = 1; k1 <= k; ++k1) {
    const double a = self_upper(k1, n, p);
    const double b = sup_upper(k - k1 + 1, n, p);
    const double value = lead * std::pow(a, theta) * std::pow(b, 1.0 - theta);
    if (!best || value < *best) best = value;
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

struct Candidates {
  LowerBound lower{0.0, LowerMethod::volume};
  UpperBound upper{kInf, UpperMethod::op_norm};

  void offer(double value, LowerMethod method) {
    if (value > lower.value) lower = {value, method};
  }
  void offer(double value, UpperMethod method) {
    if (value < upper.value) upper = {value, method};
  }
};

void analytic_candidates(std::int64_t k, std::int64_t n, Exponent p, Exponent q, Candidates& c) {
  c.offer(std::max(lower_bound_volume(k, n, p, q), lower_bound_self_volume(k, n, p, q)),
          LowerMethod::volume);
  if (n >= 2 && exceeds_power_of_two(static_cast<std::uint64_t>(n), k)) {
    c.offer(std::exp2(q.reciprocal()) / q_bar_root_two(q), LowerMethod::canonical);
  }
  if (p <= q) {
    if (auto code = lower_bound_code_analytic(k, n, p, q)) c.offer(*code, LowerMethod::code_packing);
  }

  const double op_norm = identity_op_norm(n, p, q);
  c.offer(op_norm, UpperMethod::op_norm);
  c.offer(self_upper(k, n, p) * op_norm, UpperMethod::self_cover);
  if (p < q) {
    if (auto tau = volume_packing_tau(k, n, p, q)) c.offer(*tau, UpperMethod::packing_cover);
    if (auto sparse = sparse_cover_upper(k, n, p, q)) c.offer(*sparse, UpperMethod::sparse_cover);
    if (auto interp = interpolation_upper(k, n, p, q)) c.offer(*interp, UpperMethod::interpolation);
  }
}

class Fallbacks {
 public:
  Fallbacks(BoundCertificate& cert, bool allowed) : cert_(cert), allowed_(allowed) {}
  void refuse(const std::string& what) {
    if (!allowed_) throw BudgetExceeded(what);
    cert_.fallbacks.push_back(what);
  }

 private:
  BoundCertificate& cert_;
  bool allowed_;
};

void constructive_code_lower(std::int64_t k, std::int64_t n, Exponent p, Exponent q,
                             const ConstructiveEffort& opts, Candidates& c, Fallbacks& fb) {
  if (n >= 2) {
    if (auto v = lower_bound_from_packing(canonical_packing(n, q, p), k)) {
      c.offer(*v, LowerMethod::canonical);
    }
  }
  if (!(p <= q)) return;
  for (std::int64_t m : code_weight_range(k, n)) {
    try {
      const auto packing = code_packing(hamming_code(n, m, opts.code_budget), p, q);
      if (auto v = lower_bound_from_packing(packing, k)) c.offer(*v, LowerMethod::code_packing);
    } catch (const BudgetExceeded& e) {
      fb.refuse("code_packing(m=" + std::to_string(m) + "): " + e.what() +
                "; analytic code size used");
    }
  }
}

std::optional<SampledUpper> finish_sampled(CoveringWitness cover, std::int64_t k, UpperMethod method,
                                           const ConstructiveEffort& opts) {
  if (!fits_power_of_two(cover.centers.size(), k)) return std::nullopt;
  const auto report = verify_cover(cover, opts.samples, opts.seed + 1);
  if (!report.passed()) return std::nullopt;
  return SampledUpper{cover.radius, method, cover.verified,
                      static_cast<std::int64_t>(cover.centers.size())};
}

std::optional<SampledUpper> constructive_sparse(std::int64_t k, std::int64_t n, Exponent p,
                                                const ConstructiveEffort& opts, Fallbacks& fb) {
  struct Choice {
    std::int64_t m;
    std::int64_t cells;
    double radius;
  };
  std::optional<Choice> best;
  bool budget_blocked = false;
  const auto row = log2_binomial_row(n);
  for (std::int64_t m = 1; m <= n; ++m) {
    const double bits = static_cast<double>(k - 1) - row[m] - kLogMargin;
    if (bits < 0.0) continue;
    for (std::int64_t cells = 1;; ++cells) {
      const double log2_raw = row[m] + static_cast<double>(m) * std::log2(static_cast<double>(cells));
      if (log2_raw > std::log2(static_cast<double>(opts.cover_budget)) + 1.0) {
        budget_blocked = budget_blocked || cells == 1;
        break;
      }
      const double count =
          std::exp2(row[m]) * static_cast<double>(cube_grid_count(m, p, cells));
      if (count > static_cast<double>(opts.cover_budget)) {
        budget_blocked = budget_blocked || cells == 1;
        break;
      }
      if (std::log2(count) > static_cast<double>(k - 1) + kLogMargin) break;
      const double radius = std::pow(static_cast<double>(m), -p.reciprocal()) + 1.0 / cells;
      if (!best || radius < best->radius) best = Choice{m, cells, radius};
    }
  }
  if (!best) {
    if (budget_blocked) fb.refuse("sparse_cover: witness exceeds cover budget; analytic value kept");
    return std::nullopt;
  }
  const auto inner = cube_grid_cover(best->m, p, best->cells, opts.cover_budget);
  auto cover = sparse_support_cover(n, best->m, inner, p, opts.cover_budget);
  cover.seed = opts.seed;
  return finish_sampled(std::move(cover), k, UpperMethod::sparse_cover, opts);
}

std::optional<SampledUpper> constructive_interpolation(std::int64_t k, std::int64_t n, Exponent p,
                                                       Exponent q, const ConstructiveEffort& opts,
                                                       Fallbacks& fb) {
  if (n > kMaxGridDimension) {
    fb.refuse("interpolation: grid witnesses need n <= 4; analytic value kept");
    return std::nullopt;
  }
  const SpaceDescriptor ball(n, p);
  const double p_bar = p.bar();
  const double theta = p.value() / q.value();
  const double slack = grid_slack(ball, p, 2.0 / opts.grid_steps);

  struct Choice {
    std::int64_t k1;
    double cells;
    double radius;
  };
  std::optional<Choice> best;
  for (std::int64_t k1 = 1; k1 <= k; ++k1) {
    if (!exceeds_power_of_two(kMaxGreedyCenters, k1)) break;
    double r0 = 1.0;
    if (auto tau = self_cover_tau(k1, n, p)) {
      r0 = std::pow(std::pow(*tau, p_bar) + std::pow(slack, p_bar), 1.0 / p_bar);
    }
    const double cells = largest_root_of_budget(static_cast<double>(k - k1), n);
    const double radius = std::exp2(1.0 / p_bar) * std::pow(r0, theta) * std::pow(1.0 / cells, 1.0 - theta);
    if (!best || radius < best->radius) best = Choice{k1, cells, radius};
  }
  if (!best) return std::nullopt;

  CoveringWitness cover_p{{Vector(static_cast<std::size_t>(n), 0.0)},
                          1.0,
                          ball,
                          p,
                          Verification::proven(),
                          "op_norm",
                          opts.seed};
  if (auto tau = self_cover_tau(best->k1, n, p)) {
    cover_p = packing_to_cover(
        greedy_maximal_packing(ball, p, *tau, ExhaustiveGrid{opts.grid_steps}, opts.seed));
  }
  const auto cells = static_cast<std::int64_t>(best->cells);
  if (std::pow(best->cells, static_cast<double>(n)) * static_cast<double>(cover_p.centers.size()) >
      static_cast<double>(opts.cover_budget)) {
    fb.refuse("interpolation: witness exceeds cover budget; analytic value kept");
    return std::nullopt;
  }
  const auto cover_inf = cube_grid_cover(n, p, cells, opts.cover_budget);
  auto cover = interpolation_cover(cover_p, cover_inf, q, RandomCandidates{opts.samples}, opts.seed);
  return finish_sampled(std::move(cover), k, UpperMethod::interpolation, opts);
}

void constructive_packing_cover(std::int64_t k, std::int64_t n, Exponent p, Exponent q,
                                const ConstructiveEffort& opts, Candidates& c, Fallbacks& fb) {
  if (!(p <= q)) return;
  const auto tau = volume_packing_tau(k, n, p, q);
  if (!tau) return;
  // The greedy scan costs candidates x accepted points; accepted <= 2^{k-1}.
  if (n > kMaxGridDimension || !exceeds_power_of_two(kMaxGreedyCenters, k)) {
    fb.refuse("packing_cover: grid witness out of budget; analytic value kept");
    return;
  }
  const auto cover = packing_to_cover(
      greedy_maximal_packing(SpaceDescriptor(n, p), q, *tau, ExhaustiveGrid{opts.grid_steps}, opts.seed));
  if (auto bound = upper_bound_from_cover(cover, k)) c.offer(bound->value, UpperMethod::packing_cover);
}

}  // namespace

BoundCertificate certified_bounds(std::int64_t k, std::int64_t n, Exponent p, Exponent q,
                                  const Effort& effort) {
  require_positive(k, n);
  BoundCertificate cert;
  cert.k = k;
  cert.n = n;
  cert.p = p;
  cert.q = q;
  const auto rate = theoretical_rate(k, n, p, q);
  cert.rate = rate.value;
  cert.regime = rate.regime;

  Candidates c;
  analytic_candidates(k, n, p, q, c);

  if (const auto* opts = std::get_if<ConstructiveEffort>(&effort)) {
    Fallbacks fb(cert, opts->allow_fallback);
    constructive_code_lower(k, n, p, q, *opts, c, fb);
    constructive_packing_cover(k, n, p, q, *opts, c, fb);
    if (p < q) {
      cert.sampled_upper = q.is_infinite() ? constructive_sparse(k, n, p, *opts, fb)
                                           : constructive_interpolation(k, n, p, q, *opts, fb);
    }
  }

  c.upper.value = std::min(c.upper.value, identity_op_norm(n, p, q));
  c.lower.value = std::max(c.lower.value, 0.0);
  cert.lower = c.lower;
  cert.upper = c.upper;
  return cert;
}

// ---------------------------------------------------------------------------

CoverReport verify_cover(CoveringWitness& w, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("verify_cover requires at least one sample");
  if (w.centers.empty()) throw DomainError("verify_cover: witness has no centers");
  const auto dim = static_cast<std::size_t>(w.target.n());
  std::vector<double> flat;
  flat.reserve(w.centers.size() * dim);
  for (const auto& c : w.centers) {
    if (c.size() != dim) throw DomainError("verify_cover: center dimension mismatch");
    flat.insert(flat.end(), c.begin(), c.end());
  }

  const MetricKernel kernel(w.metric_q);
  const double fail_threshold = kernel.transform(w.radius * (1.0 + 1e-6));
  BallSampler sampler(w.target, seed);
  Vector x(dim);
  std::vector<std::size_t> order(dim);
  CoverReport report;
  report.samples = samples;
  double worst = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    sampler.fill(x);
    // Large coordinates first: they decide most rejections.
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(x[a]) > std::abs(x[b]); });
    double nearest = kInf;
    for (std::size_t c = 0; c < w.centers.size(); ++c) {
      const double d = kernel.distance(x.data(), flat.data() + c * dim, dim, nearest, order.data());
      if (d < nearest) nearest = d;
    }
    worst = std::max(worst, nearest);
    if (nearest > fail_threshold) ++report.failures;
  }
  report.max_distance = kernel.untransform(worst);
  report.confidence = 1.0 - 1.0 / static_cast<double>(samples);
  if (report.failures > 0) {
    w.verified = Verification::unverified();
  } else if (w.verified.state != VerificationState::proven) {
    w.verified = Verification::sampled(report.confidence);
  }
  return report;
}

PackingReport verify_packing(const PackingWitness& w) {
  PackingReport report;
  report.min_distance = kInf;
  for (const auto& x : w.points) {
    const double norm = lp_norm(x, w.host.p());
    report.max_norm = std::max(report.max_norm, norm);
    if (norm > 1.0 + 1e-9) ++report.outside_ball;
  }
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    for (std::size_t j = i + 1; j < w.points.size(); ++j) {
      const double d = lp_distance(w.points[i], w.points[j], w.metric_q);
      report.min_distance = std::min(report.min_distance, d);
      if (d <= w.separation - 1e-9) ++report.close_pairs;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<OracleValue> grid_bracket(std::int64_t k, std::int64_t n, Exponent p, Exponent q) {
  // At most 64 centers keeps the greedy scans small.
  if (n > 3 || k > 7) return std::nullopt;
  const SpaceDescriptor ball(n, p);
  const ExhaustiveGrid grid{n == 3 ? 16 : 32};
  const double op_norm = identity_op_norm(n, p, q);
  const double diameter = q_bar_root_two(q) * op_norm;

  auto card = [&](double tau) {
    return greedy_maximal_packing(ball, q, tau, grid, 0).points.size();
  };

  // Largest tau keeping more than 2^{k-1} points (lower) and smallest tau with at
  // most 2^{k-1} points (upper), by bisection on the greedy count.
  double lo = 1e-6;
  double hi = diameter * 1.01;
  OracleValue out;
  if (exceeds_power_of_two(card(lo), k)) {
    double a = lo;
    double b = hi;
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (a + b);
      (exceeds_power_of_two(card(mid), k) ? a : b) = mid;
    }
    out.lower = a / q_bar_root_two(q);
  }
  out.upper = op_norm;
  double a = lo;
  double b = hi;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (a + b);
    (fits_power_of_two(card(mid), k) ? b : a) = mid;
  }
  const auto cover = packing_to_cover(greedy_maximal_packing(ball, q, b, grid, 0));
  if (auto bound = upper_bound_from_cover(cover, k)) out.upper = std::min(out.upper, bound->value);
  out.exact = false;
  return out;
}

}  // namespace

std::optional<OracleValue> oracle_entropy(std::int64_t k, std::int64_t n, Exponent p, Exponent q) {
  require_positive(k, n);
  if (n == 1) {
    const double v = std::exp2(-static_cast<double>(k - 1));
    return OracleValue{v, v, true};
  }
  if (p.is_infinite() && q.is_infinite()) {
    if (k - 1 >= 62 * n) return std::nullopt;
    const double v = 1.0 / static_cast<double>(floor_root_of_power_of_two(k - 1, n));
    return OracleValue{v, v, true};
  }
  return grid_bracket(k, n, p, q);
}

std::int64_t covering_number_upper(std::int64_t n, Exponent p, Exponent q, double r) {
  if (!(r > 0.0)) throw DomainError("covering_number_upper requires r > 0");
  constexpr std::int64_t kMaxK = 1 << 20;
  for (std::int64_t k = 1; k <= kMaxK; ++k) {
    if (certified_bounds(k, n, p, q).upper.value <= r) return k - 1;
  }
  throw DomainError("covering_number_upper: radius too small for the search range");
}

std::vector<RatioRow> ratio_table(Exponent p, Exponent q, const std::vector<std::int64_t>& n_list,
                                  KRule rule) {
  if (rule.per_dimension < 1) throw DomainError("k rule must cover at least k = 1..n");
  std::vector<std::pair<std::int64_t, std::int64_t>> cells;
  auto sorted = n_list;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto n : sorted) {
    if (n < 1) throw DomainError("ratio_table: dimensions must be positive");
    for (std::int64_t k = 1; k <= rule.per_dimension * n; ++k) cells.emplace_back(n, k);
  }

  std::vector<RatioRow> rows(cells.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < cells.size(); i += stride) {
      const auto [n, k] = cells[i];
      const auto cert = certified_bounds(k, n, p, q);
      rows[i] = RatioRow{n, k, cert.regime, cert.lower.value, cert.lower.method,
                         cert.upper.value, cert.upper.method, cert.rate, 0.0, 0.0};
    }
  };
  const std::size_t threads = std::max(1U, std::min(8U, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work, t, threads);
  work(0, threads);
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i - 1].n == rows[i].n && rows[i - 1].upper < rows[i].upper) {
      rows[i].upper = rows[i - 1].upper;
      rows[i].upper_method = rows[i - 1].upper_method;
    }
    rows[i].lower_over_rate = rows[i].lower / rows[i].rate;
    rows[i].upper_over_rate = rows[i].upper / rows[i].rate;
  }
  return rows;
}

ComplexCertificate complex_certified_bounds(std::int64_t k, std::int64_t n, Exponent p, Exponent q,
                                            const Effort& effort) {
  require_positive(k, n);
  ComplexCertificate out{certified_bounds(k, 2 * n, p, q, effort)};
  const auto [p_lo, p_hi] = interleave_distortion(p);
  const auto [q_lo, q_hi] = interleave_distortion(q);
  // ||J||_r = hi_r and ||J'||_r = 1 / lo_r.
  out.upper_factor = p_hi / q_lo;
  out.lower_factor = q_hi / p_lo;
  out.upper = out.real.upper.value * out.upper_factor;
  out.lower = out.real.lower.value / out.lower_factor;
  return out;
}

}  // namespace entropy
