#ifndef PRIMESHAPE_RATIONAL_H_
#define PRIMESHAPE_RATIONAL_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace primeshape {

// Coding rate written as "a/b". Kept unreduced so table keys echo the input.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational parse(std::string_view text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace primeshape

#endif  // PRIMESHAPE_RATIONAL_H_
