#include "mlsparse/rational.h"

#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include "mlsparse/error.h"

namespace mlsparse {
namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("rational division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational(narrow(n), narrow(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  i128 g = gcd128(nn, dd);
  if (g > 1) {
    nn /= g;
    dd /= g;
  }
  num_ = narrow(nn);
  den_ = narrow(dd);
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  // Terminating decimal iff den = 2^a 5^b.
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  int digits = std::max(twos, fives);
  if (d != 1 || digits > 18) {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  i128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  i128 scaled = static_cast<i128>(num_) * (scale / den_);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  i128 ip = scaled / scale;
  i128 fp = scaled % scale;
  std::string frac(digits, '0');
  for (int i = digits - 1; i >= 0; --i) {
    frac[i] = static_cast<char>('0' + static_cast<int>(fp % 10));
    fp /= 10;
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = neg ? "-" : "";
  out += std::to_string(static_cast<std::int64_t>(ip));
  if (!frac.empty()) out += "." + frac;
  return out;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw InputError("not a number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = 0, d = 0;
    auto a = text.substr(0, slash), b = text.substr(slash + 1);
    auto r1 = std::from_chars(a.data(), a.data() + a.size(), n);
    auto r2 = std::from_chars(b.data(), b.data() + b.size(), d);
    if (r1.ec != std::errc() || r1.ptr != a.data() + a.size() ||
        r2.ec != std::errc() || r2.ptr != b.data() + b.size() || d == 0) {
      return fail();
    }
    return Rational(n, d);
  }
  // [sign] digits [. digits] [e|E [sign] digits]
  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') neg = text[pos++] == '-';
  i128 mant = 0;
  int scale = 0;
  bool any = false, dot = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      mant = mant * 10 + (c - '0');
      if (mant > (i128(1) << 100)) return fail();
      if (dot) --scale;
      any = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) return fail();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    ++pos;
    int e = 0;
    auto rest = text.substr(pos);
    if (!rest.empty() && rest[0] == '+') rest.remove_prefix(1);
    auto r = std::from_chars(rest.data(), rest.data() + rest.size(), e);
    if (r.ec != std::errc() || r.ptr != rest.data() + rest.size()) return fail();
    scale += e;
  }
  if (neg) mant = -mant;
  i128 den = 1;
  while (scale > 0) {
    mant *= 10;
    --scale;
    if (mant > (i128(1) << 120) || mant < -(i128(1) << 120)) return fail();
  }
  while (scale < 0) {
    den *= 10;
    ++scale;
    if (den > (i128(1) << 120)) return fail();
  }
  try {
    return make(mant, den);
  } catch (const std::overflow_error&) {
    return fail();
  }
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value");
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return parse(std::string_view(buf, r.ptr - buf));
}

Rational Rational::operator-() const { return make(-i128(num_), den_); }

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    return *this = make(i128(num_) + o.num_, den_);
  }
  return *this = make(i128(num_) * o.den_ + i128(o.num_) * den_,
                      i128(den_) * o.den_);
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  return *this = make(i128(num_) * o.num_, i128(den_) * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return *this = make(i128(num_) * o.den_, i128(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  i128 l = i128(a.num_) * b.den_;
  i128 r = i128(b.num_) * a.den_;
  return l < r ? std::strong_ordering::less
               : (l > r ? std::strong_ordering::greater
                        : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

std::int64_t floor_to_int(const Rational& r) {
  std::int64_t q = r.num() / r.den();
  if (r.num() % r.den() != 0 && r.num() < 0) --q;
  return q;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  std::int64_t g = std::gcd(a, b);
  return narrow(i128(a / g) * b);
}

}  // namespace mlsparse
