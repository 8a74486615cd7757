#include "mlsparse/distortion.h"

#include "mlsparse/error.h"

namespace mlsparse {

DistortionFn DistortionFn::multiplicative(Rational t) {
  if (t < Rational(1)) throw InputError("multiplicative stretch must be >= 1");
  DistortionFn f;
  f.kind_ = Kind::kMultiplicative;
  f.alpha_ = t;
  return f;
}

DistortionFn DistortionFn::additive(Rational beta) {
  if (beta < Rational(0)) throw InputError("additive term must be >= 0");
  DistortionFn f;
  f.kind_ = Kind::kAdditive;
  f.beta_ = beta;
  return f;
}

DistortionFn DistortionFn::linear(Rational alpha, Rational beta) {
  if (alpha < Rational(1)) throw InputError("linear distortion needs alpha >= 1");
  if (beta < Rational(0)) throw InputError("linear distortion needs beta >= 0");
  DistortionFn f;
  f.kind_ = Kind::kLinear;
  f.alpha_ = alpha;
  f.beta_ = beta;
  return f;
}

DistortionFn DistortionFn::table(std::map<Rational, Rational> values) {
  DistortionFn f;
  f.kind_ = Kind::kTable;
  f.table_ = std::move(values);
  return f;
}

DistortionFn DistortionFn::parse(std::string_view text) {
  auto after = [&](std::string_view prefix) { return text.substr(prefix.size()); };
  if (text == "id") return multiplicative(1);
  if (text.starts_with("mult:")) return multiplicative(Rational::parse(after("mult:")));
  if (text.starts_with("x")) return multiplicative(Rational::parse(after("x")));
  if (text.starts_with("add:")) return additive(Rational::parse(after("add:")));
  if (text.starts_with("+")) return additive(Rational::parse(after("+")));
  if (text.starts_with("linear:")) {
    auto body = after("linear:");
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw InputError("linear distortion needs 'alpha,beta'");
    return linear(Rational::parse(body.substr(0, comma)), Rational::parse(body.substr(comma + 1)));
  }
  throw InputError("unknown distortion '" + std::string(text) + "'");
}

Rational DistortionFn::operator()(const Rational& x) const {
  Rational y;
  switch (kind_) {
    case Kind::kMultiplicative:
      y = alpha_ * x;
      break;
    case Kind::kAdditive:
      y = x + beta_;
      break;
    case Kind::kLinear:
      y = alpha_ * x + beta_;
      break;
    case Kind::kTable: {
      auto it = table_.find(x);
      if (it == table_.end()) {
        throw InputError("distortion table has no entry for " + x.to_string());
      }
      y = it->second;
      break;
    }
  }
  if (y < x) {
    throw InputError("distortion violates f(x) >= x at x = " + x.to_string());
  }
  return y;
}

std::string DistortionFn::to_string() const {
  switch (kind_) {
    case Kind::kMultiplicative:
      return alpha_ == Rational(1) ? "id" : "mult:" + alpha_.to_string();
    case Kind::kAdditive:
      return "add:" + beta_.to_string();
    case Kind::kLinear:
      return "linear:" + alpha_.to_string() + "," + beta_.to_string();
    case Kind::kTable:
      return "table";
  }
  return "?";
}

}  // namespace mlsparse
