#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mlsparse {

// Exact rational with 64-bit numerator and denominator. Always normalized
// (gcd(num, den) == 1, den > 0). Arithmetic that would overflow throws
// std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const;
  bool is_integer() const { return den_ == 1; }

  // Decimal text when the expansion terminates ("2.5"), otherwise "p/q".
  std::string to_string() const;

  // Accepts "7", "-3", "2.5", "1e-3", "3/4".
  static Rational parse(std::string_view text);
  // Shortest decimal representation that round-trips the double.
  static Rational from_double(double x);

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Floor of a rational as a 64-bit integer.
std::int64_t floor_to_int(const Rational& r);

std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

}  // namespace mlsparse

template <>
struct std::hash<mlsparse::Rational> {
  std::size_t operator()(const mlsparse::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 31u ^
           std::hash<std::int64_t>{}(r.den());
  }
};
