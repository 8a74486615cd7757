#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mlsparse/rational.h"

namespace mlsparse {

// Distortion function f with f(x) >= x. Evaluation checks that inequality and
// throws InputError on violation; f need not be monotone or continuous.
class DistortionFn {
 public:
  enum class Kind { kMultiplicative, kAdditive, kLinear, kTable };

  // Identity (multiplicative with t = 1).
  DistortionFn() = default;

  static DistortionFn multiplicative(Rational t);
  static DistortionFn additive(Rational beta);
  static DistortionFn linear(Rational alpha, Rational beta);
  static DistortionFn table(std::map<Rational, Rational> values);

  // "id", "mult:2", "x2", "add:2", "+2", "linear:1.5,2". Table functions have
  // no inline syntax; use table().
  static DistortionFn parse(std::string_view text);

  Kind kind() const { return kind_; }
  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }
  // Stretch factor of a multiplicative function.
  const Rational& stretch() const { return alpha_; }
  bool is_multiplicative() const { return kind_ == Kind::kMultiplicative; }

  Rational operator()(const Rational& x) const;

  std::string to_string() const;

 private:
  Kind kind_ = Kind::kMultiplicative;
  Rational alpha_ = 1;
  Rational beta_ = 0;
  std::map<Rational, Rational> table_;
};

}  // namespace mlsparse
