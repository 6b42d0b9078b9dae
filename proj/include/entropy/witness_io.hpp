#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "entropy/witness.hpp"

namespace entropy {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Witness = std::variant<CoveringWitness, PackingWitness>;

/// JSON witness document. Infinite exponents are written as "inf"; doubles use
/// shortest round-trip form, so parse_witness(serialize_witness(w)) == w.
std::string serialize_witness(const Witness& w);

/// Throws DomainError on a malformed or inconsistent document.
Witness parse_witness(std::string_view text);

void write_witness_file(const std::filesystem::path& path, const Witness& w);
Witness read_witness_file(const std::filesystem::path& path);

}  // namespace entropy
