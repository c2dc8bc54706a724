#include "fgt/valuation.hpp"

#include "fgt/error.hpp"

#include <algorithm>

namespace fgt {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, "not a rational: '" + s + "'");
  }
}

const Rational& Valuation::require_exact(const char* what) const {
  if (kind_ != Kind::kExact) {
    throw Error(ErrorCode::kIndeterminatePrecision,
                std::string(what) + ": valuation " + str() + " is not exact at this precision");
  }
  return value_;
}

std::string Valuation::str() const {
  switch (kind_) {
    case Kind::kExact: return to_string(value_);
    case Kind::kLowerBound: return ">=" + to_string(value_);
    case Kind::kInfinite: return "inf";
  }
  return "?";
}

std::string Valuation::kind_name() const {
  switch (kind_) {
    case Kind::kExact: return "exact";
    case Kind::kLowerBound: return "lower_bound";
    case Kind::kInfinite: return "infinite";
  }
  return "?";
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinity();
  if (a.is_exact() && b.is_exact()) return Valuation::exact(a.value() + b.value());
  return Valuation::lower_bound(a.value() + b.value());
}

Valuation operator+(const Valuation& a, const Rational& shift) {
  if (a.is_infinite()) return a;
  if (a.is_exact()) return Valuation::exact(a.value() + shift);
  return Valuation::lower_bound(a.value() + shift);
}

Valuation min_distinct(const Valuation& a, const Valuation& b) {
  if (a.is_infinite()) return b;
  if (b.is_infinite()) return a;
  if (a.is_exact() && b.is_exact()) return Valuation::exact(std::min(a.value(), b.value()));
  // An exact value strictly below a bound is the minimum.
  if (a.is_exact() && a.value() < b.value()) return a;
  if (b.is_exact() && b.value() < a.value()) return b;
  return Valuation::lower_bound(std::min(a.value(), b.value()));
}

bool surely_greater(const Valuation& a, const Valuation& b) {
  if (b.is_infinite()) return false;
  if (a.is_infinite()) return true;
  if (!b.is_exact()) return false;
  return a.value() > b.value();
}

bool surely_at_least(const Valuation& a, const Rational& bound) {
  return a.is_infinite() || a.value() >= bound;
}

}  // namespace fgt
