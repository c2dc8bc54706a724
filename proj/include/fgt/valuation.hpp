#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace fgt {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

/// A p-adic valuation normalized so that v(p) = 1.
///
/// Values computed from data known only modulo p^N can be exact (the
/// valuation is pinned down) or a lower bound (the datum vanished at the
/// precision floor). `kInfinite` is reserved for structural zeros, i.e.
/// values known to be exactly zero.
class Valuation {
 public:
  enum class Kind { kExact, kLowerBound, kInfinite };

  static Valuation exact(Rational v) { return {Kind::kExact, v}; }
  static Valuation exact(std::int64_t v) { return {Kind::kExact, Rational(v)}; }
  static Valuation lower_bound(Rational v) { return {Kind::kLowerBound, v}; }
  static Valuation infinity() { return {Kind::kInfinite, Rational(0)}; }

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::kExact; }
  bool is_lower_bound() const { return kind_ == Kind::kLowerBound; }
  bool is_infinite() const { return kind_ == Kind::kInfinite; }

  /// Exact value or the bound; meaningless for +inf.
  const Rational& value() const { return value_; }

  /// Throws IndeterminatePrecision unless the value is exact.
  const Rational& require_exact(const char* what) const;

  /// "1/2", ">=8", "inf".
  std::string str() const;
  std::string kind_name() const;

  bool operator==(const Valuation& o) const {
    return kind_ == o.kind_ && (kind_ == Kind::kInfinite || value_ == o.value_);
  }

 private:
  Valuation(Kind k, Rational v) : kind_(k), value_(v) {}

  Kind kind_;
  Rational value_;
};

/// v(a) + v(b): exact only when both are.
Valuation operator+(const Valuation& a, const Valuation& b);
Valuation operator+(const Valuation& a, const Rational& shift);

/// The valuation of a sum whose terms have valuations a and b, when the
/// terms are known not to cancel (e.g. distinct fractional parts).
Valuation min_distinct(const Valuation& a, const Valuation& b);

/// True when every value compatible with `a` is strictly / weakly larger
/// than every value compatible with `b`. Infinite compares above all.
bool surely_greater(const Valuation& a, const Valuation& b);
bool surely_at_least(const Valuation& a, const Rational& bound);

}  // namespace fgt
