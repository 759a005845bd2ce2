#ifndef PRIMESHAPE_FIELD_H_
#define PRIMESHAPE_FIELD_H_

#include <compare>
#include <cstdint>

namespace primeshape {

bool is_prime(std::uint32_t n);

// A prime modulus p. Primality is verified on construction.
class Prime {
 public:
  explicit Prime(std::uint32_t p);

  std::uint32_t value() const { return p_; }
  bool is_odd() const { return p_ != 2; }

  friend bool operator==(Prime, Prime) = default;
  friend auto operator<=>(Prime, Prime) = default;

 private:
  std::uint32_t p_;
};

// Throws InvalidArgument unless p > 2. Every shaping construction needs an
// odd characteristic.
void require_odd(Prime p);

// An element of F_p that remembers its field.
class FpSymbol {
 public:
  FpSymbol(Prime field, std::uint32_t value);

  Prime field() const { return field_; }
  std::uint32_t value() const { return value_; }

  friend bool operator==(FpSymbol, FpSymbol) = default;

 private:
  Prime field_;
  std::uint32_t value_;
};

FpSymbol add(FpSymbol a, FpSymbol b);
FpSymbol sub(FpSymbol a, FpSymbol b);
FpSymbol mul(FpSymbol a, FpSymbol b);
FpSymbol neg(FpSymbol a);

// Raw residue helpers for hot loops over symbol vectors.
inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  const std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(a) * b) % p);
}

// The p-ASK embedding: the unique integer x in [-(p-1)/2, (p-1)/2] with
// x == s (mod p).
int ask_point(FpSymbol s);
int ask_point(Prime p, std::uint32_t value);

// Inverse of ask_point: x mod p.
FpSymbol symbol_from_ask(Prime p, int x);

}  // namespace primeshape

#endif  // PRIMESHAPE_FIELD_H_
