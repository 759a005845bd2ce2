#include "primeshape/rational.h"

#include <charconv>

#include "primeshape/error.h"

namespace primeshape {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  Rational r;
  if (slash == std::string_view::npos) {
    r.num = parse_int(text, text);
    r.den = 1;
  } else {
    r.num = parse_int(text.substr(0, slash), text);
    r.den = parse_int(text.substr(slash + 1), text);
  }
  if (r.den <= 0) throw InvalidArgument("rational denominator must be positive");
  return r;
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace primeshape
