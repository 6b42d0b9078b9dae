#include "entropy/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "entropy/bounds.hpp"
#include "entropy/constructions.hpp"
#include "entropy/special_math.hpp"
#include "entropy/witness_io.hpp"

namespace entropy::cli {

namespace {

using nlohmann::ordered_json;

ordered_json exponent_json(Exponent e) {
  return e.is_infinite() ? ordered_json("inf") : ordered_json(e.value());
}

ordered_json certificate_json(const BoundCertificate& c) {
  ordered_json sampled = nullptr;
  if (c.sampled_upper) {
    sampled = {{"value", c.sampled_upper->value},
               {"method", to_string(c.sampled_upper->method)},
               {"verified", to_string(c.sampled_upper->verified.state)},
               {"confidence", c.sampled_upper->verified.confidence},
               {"centers", c.sampled_upper->centers}};
  }
  return {{"k", c.k},
          {"n", c.n},
          {"p", exponent_json(c.p)},
          {"q", exponent_json(c.q)},
          {"lower", {{"value", c.lower.value}, {"method", to_string(c.lower.method)}}},
          {"upper", {{"value", c.upper.value}, {"method", to_string(c.upper.method)}}},
          {"rate", c.rate},
          {"regime", to_string(c.regime)},
          {"lower_over_rate", c.lower.value / c.rate},
          {"upper_over_rate", c.upper.value / c.rate},
          {"sampled_upper", sampled},
          {"fallbacks", c.fallbacks}};
}

void print_certificate(std::ostream& out, const BoundCertificate& c) {
  out << "k " << c.k << "  n " << c.n << "  p " << c.p.to_string() << "  q " << c.q.to_string()
      << "\n";
  out << "lower  " << format_double(c.lower.value) << "  " << to_string(c.lower.method) << "\n";
  out << "upper  " << format_double(c.upper.value) << "  " << to_string(c.upper.method) << "\n";
  out << "rate   " << format_double(c.rate) << "  " << to_string(c.regime) << "\n";
  out << "lower/rate " << format_double(c.lower.value / c.rate) << "  upper/rate "
      << format_double(c.upper.value / c.rate) << "\n";
  if (c.sampled_upper) {
    const auto& s = *c.sampled_upper;
    out << "sampled upper  " << format_double(s.value) << "  " << to_string(s.method) << "  "
        << to_string(s.verified.state) << " confidence " << format_double(s.verified.confidence)
        << "  centers " << s.centers << "\n";
  }
  for (const auto& f : c.fallbacks) out << "fallback: " << f << "\n";
}

void print_summary(std::ostream& out, const CoveringWitness& w) {
  out << "cover  centers " << w.centers.size() << "  radius " << format_double(w.radius)
      << "  metric " << w.metric_q.to_string() << "  verified " << to_string(w.verified.state)
      << "  provenance " << w.provenance << "\n";
}

void print_summary(std::ostream& out, const PackingWitness& w) {
  out << "packing  points " << w.points.size() << "  separation " << format_double(w.separation)
      << "  metric " << w.metric_q.to_string() << "  provenance " << w.provenance << "\n";
}

void print_report(std::ostream& out, const CoverReport& r, const CoveringWitness& w) {
  out << "verify  samples " << r.samples << "  failures " << r.failures << "  max_distance "
      << format_double(r.max_distance) << "  radius " << format_double(w.radius) << "  status "
      << to_string(w.verified.state) << "  confidence " << format_double(w.verified.confidence)
      << "\n";
}

// Self cover of B_p^n from a maximal packing at the volume-argument separation.
CoveringWitness self_cover(std::int64_t n, Exponent p, std::int64_t k, int grid_steps,
                           std::int64_t samples, std::uint64_t seed) {
  const SpaceDescriptor ball(n, p);
  const auto tau = self_cover_tau(k, n, p);
  if (!tau) {
    return CoveringWitness{{Vector(static_cast<std::size_t>(n), 0.0)}, 1.0, ball, p,
                           Verification::proven(), "unit_ball", seed};
  }
  const CandidateSource source = n <= kMaxGridDimension ? CandidateSource{ExhaustiveGrid{grid_steps}}
                                                        : CandidateSource{RandomCandidates{samples}};
  return packing_to_cover(greedy_maximal_packing(ball, p, *tau, source, seed));
}

struct Options {
  std::int64_t k = 1;
  std::int64_t n = 1;
  std::int64_t m = 1;
  std::string p = "1";
  std::string q = "inf";
  std::uint64_t seed = 0;
  std::int64_t samples = 100000;
  std::int64_t budget = 1000000;
  int grid_steps = 32;
  std::string effort = "analytic";
  bool json = false;
  bool no_fallback = false;
  std::string out_path;
  std::string in_path;
  std::string csv_path;
  std::vector<std::int64_t> n_list{8, 16, 32, 64};
  std::int64_t k_rule = 4;
  std::int64_t cells = 2;
  std::int64_t k1 = 1;
  std::int64_t k2 = 1;
  double tau = 1.0;
  bool self = false, sparse = false, cube = false, interp = false;
  bool code = false, canonical = false, greedy = false;
  bool random = false;
};

int cmd_rate(const Options& o, std::ostream& out) {
  const auto r = theoretical_rate(o.k, o.n, Exponent::parse(o.p), Exponent::parse(o.q));
  out << format_double(r.value) << " " << to_string(r.regime) << "\n";
  return kOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  Effort effort = AnalyticEffort{};
  if (o.effort == "constructive") {
    ConstructiveEffort c;
    c.seed = o.seed;
    c.samples = o.samples;
    c.allow_fallback = !o.no_fallback;
    effort = c;
  }
  const auto cert = certified_bounds(o.k, o.n, Exponent::parse(o.p), Exponent::parse(o.q), effort);
  if (o.json) {
    out << certificate_json(cert).dump(2) << "\n";
  } else {
    print_certificate(out, cert);
  }
  return kOk;
}

int cmd_net(const Options& o, std::ostream& out) {
  const Exponent p = Exponent::parse(o.p);
  std::optional<CoveringWitness> cover;
  if (o.self) {
    cover = self_cover(o.n, p, o.k, o.grid_steps, o.samples, o.seed);
  } else if (o.cube) {
    cover = cube_grid_cover(o.n, p, o.cells, o.budget);
  } else if (o.sparse) {
    cover = sparse_support_cover(o.n, o.m, cube_grid_cover(o.m, p, o.cells, o.budget), p, o.budget);
    cover->seed = o.seed;
  } else {
    const Exponent q = Exponent::parse(o.q);
    const auto cover_p = self_cover(o.n, p, o.k1, o.grid_steps, o.samples, o.seed);
    const double cells = std::floor(std::exp2(static_cast<double>(o.k2 - 1) / o.n) * (1.0 - 1e-12));
    const auto cover_inf =
        cube_grid_cover(o.n, p, std::max<std::int64_t>(1, static_cast<std::int64_t>(cells)), o.budget);
    cover = interpolation_cover(cover_p, cover_inf, q, RandomCandidates{o.samples}, o.seed);
  }

  int code = kOk;
  std::optional<CoverReport> report;
  if (cover->verified.state != VerificationState::proven) {
    report = verify_cover(*cover, o.samples, o.seed + 1);
    if (!report->passed()) code = kVerifyFailed;
  }
  write_witness_file(o.out_path, *cover);
  print_summary(out, *cover);
  if (report) print_report(out, *report, *cover);
  return code;
}

int cmd_packing(const Options& o, std::ostream& out) {
  const Exponent p = Exponent::parse(o.p);
  const Exponent q = Exponent::parse(o.q);
  std::optional<PackingWitness> packing;
  if (o.code) {
    packing = code_packing(hamming_code(o.n, o.m, o.budget), p, q);
  } else if (o.canonical) {
    packing = canonical_packing(o.n, q, p);
  } else {
    const CandidateSource source = o.random ? CandidateSource{RandomCandidates{o.samples}}
                                            : CandidateSource{ExhaustiveGrid{o.grid_steps}};
    packing = greedy_maximal_packing(SpaceDescriptor(o.n, p), q, o.tau, source, o.seed);
  }
  write_witness_file(o.out_path, *packing);
  print_summary(out, *packing);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  auto witness = read_witness_file(o.in_path);
  if (auto* cover = std::get_if<CoveringWitness>(&witness)) {
    const auto report = verify_cover(*cover, o.samples, o.seed);
    print_summary(out, *cover);
    print_report(out, report, *cover);
    return report.passed() ? kOk : kVerifyFailed;
  }
  const auto& packing = std::get<PackingWitness>(witness);
  const auto report = verify_packing(packing);
  print_summary(out, packing);
  out << "verify  outside_ball " << report.outside_ball << "  close_pairs " << report.close_pairs
      << "  min_distance " << format_double(report.min_distance) << "  max_norm "
      << format_double(report.max_norm) << "\n";
  return report.passed() ? kOk : kVerifyFailed;
}

void write_table(std::ostream& out, const std::vector<RatioRow>& rows) {
  out << "n,k,regime,lower,lower_method,upper,upper_method,rate,lower_over_rate,upper_over_rate\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << to_string(r.regime) << ',' << format_double(r.lower) << ','
        << to_string(r.lower_method) << ',' << format_double(r.upper) << ','
        << to_string(r.upper_method) << ',' << format_double(r.rate) << ','
        << format_double(r.lower_over_rate) << ',' << format_double(r.upper_over_rate) << '\n';
  }
}

int cmd_table(const Options& o, std::ostream& out) {
  const auto rows =
      ratio_table(Exponent::parse(o.p), Exponent::parse(o.q), o.n_list, KRule{o.k_rule});
  if (o.csv_path.empty()) {
    write_table(out, rows);
    return kOk;
  }
  std::ofstream file(o.csv_path, std::ios::binary);
  if (!file) throw IoError("cannot open for writing: " + o.csv_path);
  write_table(file, rows);
  if (!file.flush()) throw IoError("write failed: " + o.csv_path);
  out << "wrote " << rows.size() << " rows to " << o.csv_path << "\n";
  return kOk;
}

int cmd_volume(const Options& o, std::ostream& out) {
  const Exponent p = Exponent::parse(o.p);
  const double log_vol = log_volume_lp_ball(o.n, p);
  out << "vol " << format_double(volume_lp_ball(o.n, p)) << "\n";
  out << "log_vol " << format_double(log_vol) << "\n";
  return kOk;
}

void add_exponent(CLI::App* app, const char* name, std::string& target, const char* what) {
  app->add_option(name, target, what)->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds on entropy numbers of l_p^n -> l_q^n identities", "entropy"};
  app.require_subcommand(1);
  Options o;
  const char* exponent_help = "exponent in (0, inf]: decimal, fraction a/b, or inf";

  auto* rate = app.add_subcommand("rate", "constant-free rate and its regime");
  rate->add_option("--k", o.k, "entropy index")->required()->check(CLI::PositiveNumber);
  rate->add_option("--n", o.n, "dimension")->required()->check(CLI::PositiveNumber);
  add_exponent(rate, "--p", o.p, exponent_help);
  add_exponent(rate, "--q", o.q, exponent_help);

  auto* bounds = app.add_subcommand("bounds", "two-sided certificate for e_k");
  bounds->add_option("--k", o.k, "entropy index")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--n", o.n, "dimension")->required()->check(CLI::PositiveNumber);
  add_exponent(bounds, "--p", o.p, exponent_help);
  add_exponent(bounds, "--q", o.q, exponent_help);
  bounds->add_option("--effort", o.effort, "analytic or constructive")
      ->check(CLI::IsMember({"analytic", "constructive"}))
      ->capture_default_str();
  bounds->add_option("--seed", o.seed, "seed for constructive witnesses")->capture_default_str();
  bounds->add_option("--samples", o.samples, "verification samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bounds->add_flag("--no-fallback", o.no_fallback, "fail with exit 3 instead of falling back");
  bounds->add_flag("--json", o.json, "emit one JSON object");

  auto* net = app.add_subcommand("net", "build a covering witness");
  auto* kinds = net->add_option_group("construction");
  kinds->add_flag("--self", o.self, "self cover of B_p^n from a maximal packing (uses --k)");
  kinds->add_flag("--cube", o.cube, "sup-norm cube grid over B_p^n (uses --cells)");
  kinds->add_flag("--sparse", o.sparse, "sparse-support cover in l_inf (uses --m, --cells)");
  kinds->add_flag("--interp", o.interp, "interpolated cover in l_q (uses --k1, --k2, --q)");
  kinds->require_option(1);
  net->add_option("--n", o.n, "dimension")->required()->check(CLI::PositiveNumber);
  add_exponent(net, "--p", o.p, exponent_help);
  add_exponent(net, "--q", o.q, exponent_help);
  net->add_option("--k", o.k, "entropy index for --self")->check(CLI::PositiveNumber)->capture_default_str();
  net->add_option("--m", o.m, "support size for --sparse")->check(CLI::PositiveNumber)->capture_default_str();
  net->add_option("--cells", o.cells, "cubes per axis")->check(CLI::PositiveNumber)->capture_default_str();
  net->add_option("--k1", o.k1, "l_p cover index for --interp")->check(CLI::PositiveNumber)->capture_default_str();
  net->add_option("--k2", o.k2, "l_inf cover index for --interp")->check(CLI::PositiveNumber)->capture_default_str();
  net->add_option("--grid-steps", o.grid_steps, "grid steps per axis (even)")->capture_default_str();
  net->add_option("--budget", o.budget, "largest allowed number of centers")->capture_default_str();
  net->add_option("--samples", o.samples, "candidate and verification samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  net->add_option("--seed", o.seed, "seed")->capture_default_str();
  net->add_option("--out", o.out_path, "witness file to write")->required();

  auto* packing = app.add_subcommand("packing", "build a packing witness");
  auto* pkinds = packing->add_option_group("construction");
  pkinds->add_flag("--code", o.code, "ternary code packing (uses --m)");
  pkinds->add_flag("--canonical", o.canonical, "unit vectors");
  pkinds->add_flag("--greedy", o.greedy, "greedy maximal tau-separated set (uses --tau)");
  pkinds->require_option(1);
  packing->add_option("--n", o.n, "dimension")->required()->check(CLI::PositiveNumber);
  add_exponent(packing, "--p", o.p, exponent_help);
  add_exponent(packing, "--q", o.q, exponent_help);
  packing->add_option("--m", o.m, "code weight parameter")->check(CLI::PositiveNumber)->capture_default_str();
  packing->add_option("--tau", o.tau, "separation for --greedy")->capture_default_str();
  packing->add_flag("--random", o.random, "random candidates instead of the exhaustive grid");
  packing->add_option("--grid-steps", o.grid_steps, "grid steps per axis (even)")->capture_default_str();
  packing->add_option("--budget", o.budget, "largest code search space")->capture_default_str();
  packing->add_option("--samples", o.samples, "random candidates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  packing->add_option("--seed", o.seed, "seed")->capture_default_str();
  packing->add_option("--out", o.out_path, "witness file to write")->required();

  auto* verify = app.add_subcommand("verify", "re-check a witness file");
  verify->add_option("--in", o.in_path, "witness file")->required();
  verify->add_option("--samples", o.samples, "uniform samples for covers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", o.seed, "sampling seed")->capture_default_str();

  auto* table = app.add_subcommand("table", "ratio table against the rate as CSV");
  add_exponent(table, "--p", o.p, exponent_help);
  add_exponent(table, "--q", o.q, exponent_help);
  table->add_option("--n-list", o.n_list, "comma separated dimensions")
      ->delimiter(',')
      ->capture_default_str();
  table->add_option("--k-rule", o.k_rule, "k runs over 1..R*n")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table->add_option("--csv", o.csv_path, "output file (stdout when omitted)");

  auto* volume = app.add_subcommand("volume", "volume of B_p^n");
  volume->add_option("--n", o.n, "dimension")->required()->check(CLI::PositiveNumber);
  add_exponent(volume, "--p", o.p, exponent_help);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (rate->parsed()) return cmd_rate(o, out);
    if (bounds->parsed()) return cmd_bounds(o, out);
    if (net->parsed()) return cmd_net(o, out);
    if (packing->parsed()) return cmd_packing(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (table->parsed()) return cmd_table(o, out);
    return cmd_volume(o, out);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget refused: " << e.what() << "\n";
    return kBudget;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kIo;
  }
}

}  // namespace entropy::cli
