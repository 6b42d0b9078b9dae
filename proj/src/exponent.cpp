#include "entropy/exponent.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace entropy {

Exponent::Exponent(double p) : value_(p), infinite_(false) {
  if (std::isnan(p) || p <= 0.0) {
    throw DomainError("exponent must lie in (0, inf], got " + format_double(p));
  }
  if (std::isinf(p)) {
    value_ = 0.0;
    infinite_ = true;
  }
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "INF" || text == "Inf" || text == "infinity") {
    return infinity();
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = Exponent::parse(text.substr(0, slash)).value();
    const double den = Exponent::parse(text.substr(slash + 1)).value();
    if (std::isinf(num) || std::isinf(den)) {
      throw DomainError("cannot parse exponent '" + std::string(text) + "'");
    }
    return Exponent(num / den);
  }
  double p = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, p);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw DomainError("cannot parse exponent '" + std::string(text) + "'");
  }
  if (std::isinf(p)) {
    throw DomainError("write the infinite exponent as 'inf'");
  }
  return Exponent(p);
}

double Exponent::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string Exponent::to_string() const {
  return infinite_ ? std::string("inf") : format_double(value_);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace entropy
