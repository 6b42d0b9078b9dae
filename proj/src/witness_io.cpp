#include "entropy/witness_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace entropy {

using nlohmann::json;

std::string_view to_string(VerificationState state) noexcept {
  switch (state) {
    case VerificationState::proven:
      return "proven";
    case VerificationState::sampled:
      return "sampled";
    case VerificationState::unverified:
      return "unverified";
  }
  return "unverified";
}

VerificationState parse_verification_state(std::string_view text) {
  if (text == "proven") return VerificationState::proven;
  if (text == "sampled") return VerificationState::sampled;
  if (text == "unverified") return VerificationState::unverified;
  throw DomainError("unknown verification state: " + std::string(text));
}

namespace {

json exponent_json(Exponent e) { return e.is_infinite() ? json("inf") : json(e.value()); }

Exponent exponent_from(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Exponent::infinity();
  if (j.is_number()) return Exponent(j.get<double>());
  throw DomainError("exponent must be a number or \"inf\"");
}

json points_json(const std::vector<Vector>& points) {
  json out = json::array();
  for (const auto& x : points) out.push_back(x);
  return out;
}

std::vector<Vector> points_from(const json& j, std::int64_t n) {
  if (!j.is_array()) throw DomainError("points must be an array");
  std::vector<Vector> out;
  out.reserve(j.size());
  for (const auto& row : j) {
    auto x = row.get<Vector>();
    if (static_cast<std::int64_t>(x.size()) != n) throw DomainError("point dimension differs from n");
    out.push_back(std::move(x));
  }
  return out;
}

struct Serializer {
  json operator()(const CoveringWitness& w) const {
    return {{"kind", "cover"},
            {"n", w.target.n()},
            {"p", exponent_json(w.target.p())},
            {"q", exponent_json(w.metric_q)},
            {"radius_or_separation", w.radius},
            {"verified", to_string(w.verified.state)},
            {"confidence", w.verified.confidence},
            {"provenance", w.provenance},
            {"seed", w.seed},
            {"points", points_json(w.centers)}};
  }
  json operator()(const PackingWitness& w) const {
    json out{{"kind", "packing"},
             {"n", w.host.n()},
             {"p", exponent_json(w.host.p())},
             {"q", exponent_json(w.metric_q)},
             {"radius_or_separation", w.separation},
             {"verified", "proven"},
             {"provenance", w.provenance},
             {"seed", w.seed},
             {"points", points_json(w.points)}};
    if (w.maximal) {
      out["maximality"] = {{"exhaustive_grid", w.maximal->exhaustive_grid},
                           {"grid_step", w.maximal->grid_step},
                           {"candidate_count", w.maximal->candidate_count}};
    }
    return out;
  }
};

Witness from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  const auto n = j.at("n").get<std::int64_t>();
  const SpaceDescriptor space(n, exponent_from(j.at("p")));
  const Exponent q = exponent_from(j.at("q"));
  const auto value = j.at("radius_or_separation").get<double>();
  const auto provenance = j.at("provenance").get<std::string>();
  const auto seed = j.at("seed").get<std::uint64_t>();
  auto points = points_from(j.at("points"), n);
  if (kind == "cover") {
    Verification v{parse_verification_state(j.at("verified").get<std::string>()),
                   j.value("confidence", 0.0)};
    return CoveringWitness{std::move(points), value, space, q, v, provenance, seed};
  }
  if (kind == "packing") {
    std::optional<Maximality> maximal;
    if (j.contains("maximality")) {
      const auto& m = j.at("maximality");
      maximal = Maximality{m.at("exhaustive_grid").get<bool>(), m.at("grid_step").get<double>(),
                           m.at("candidate_count").get<std::int64_t>()};
    }
    return PackingWitness{std::move(points), space, q, value, provenance, seed, maximal};
  }
  throw DomainError("unknown witness kind: " + kind);
}

}  // namespace

std::string serialize_witness(const Witness& w) { return std::visit(Serializer{}, w).dump(1) + "\n"; }

Witness parse_witness(std::string_view text) {
  try {
    return from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed witness: ") + e.what());
  }
}

void write_witness_file(const std::filesystem::path& path, const Witness& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << serialize_witness(w);
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

Witness read_witness_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_witness(buffer.str());
}

}  // namespace entropy
