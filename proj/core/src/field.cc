#include "primeshape/field.h"

#include <string>

#include "primeshape/error.h"

namespace primeshape {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) {
    throw InvalidArgument(std::to_string(p) + " is not prime");
  }
}

void require_odd(Prime p) {
  if (!p.is_odd()) {
    throw InvalidArgument("an odd prime is required (p = 2 has no odd-ASK embedding)");
  }
}

FpSymbol::FpSymbol(Prime field, std::uint32_t value)
    : field_(field), value_(value) {
  if (value >= field.value()) {
    throw InvalidArgument("symbol " + std::to_string(value) +
                          " out of range for F_" +
                          std::to_string(field.value()));
  }
}

namespace {

Prime common_field(FpSymbol a, FpSymbol b) {
  if (a.field() != b.field()) {
    throw InvalidArgument("field mismatch: F_" +
                          std::to_string(a.field().value()) + " vs F_" +
                          std::to_string(b.field().value()));
  }
  return a.field();
}

}  // namespace

FpSymbol add(FpSymbol a, FpSymbol b) {
  const Prime f = common_field(a, b);
  return FpSymbol(f, add_mod(a.value(), b.value(), f.value()));
}

FpSymbol sub(FpSymbol a, FpSymbol b) {
  const Prime f = common_field(a, b);
  return FpSymbol(f, add_mod(a.value(), f.value() - b.value(), f.value()) % f.value());
}

FpSymbol mul(FpSymbol a, FpSymbol b) {
  const Prime f = common_field(a, b);
  return FpSymbol(f, mul_mod(a.value(), b.value(), f.value()));
}

FpSymbol neg(FpSymbol a) {
  const std::uint32_t p = a.field().value();
  return FpSymbol(a.field(), (p - a.value()) % p);
}

int ask_point(Prime p, std::uint32_t value) {
  require_odd(p);
  if (value >= p.value()) {
    throw InvalidArgument("symbol out of range");
  }
  const int half = static_cast<int>(p.value() - 1) / 2;
  const int v = static_cast<int>(value);
  return v <= half ? v : v - static_cast<int>(p.value());
}

int ask_point(FpSymbol s) { return ask_point(s.field(), s.value()); }

FpSymbol symbol_from_ask(Prime p, int x) {
  const int m = static_cast<int>(p.value());
  return FpSymbol(p, static_cast<std::uint32_t>(((x % m) + m) % m));
}

}  // namespace primeshape
