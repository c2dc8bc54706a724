#pragma once

#include "fgt/polynomial.hpp"
#include "fgt/power_series.hpp"
#include "fgt/scalar.hpp"
#include "fgt/valuation.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fgt {

class RamifiedElement;

/// L = Frac(W)(pi) with pi a root of an Eisenstein polynomial E of degree e.
class EisensteinExtension : public std::enable_shared_from_this<EisensteinExtension> {
 public:
  /// Checks monic, v(E(0)) = 1 and v(E_i) >= 1 for 0 < i < e.
  static std::shared_ptr<const EisensteinExtension> make(Polynomial eisenstein);
  /// E(X) = X^e + c; c must have valuation exactly 1.
  static std::shared_ptr<const EisensteinExtension> pure(const ConfigPtr& ring, int e, std::int64_t c);

  const ConfigPtr& ring() const { return ring_; }
  int degree() const { return e_; }
  bool is_tame() const;
  const Polynomial& polynomial() const { return poly_; }
  bool same_as(const EisensteinExtension& o) const;

  RamifiedElement zero() const;
  RamifiedElement one() const;
  RamifiedElement uniformizer() const;
  RamifiedElement from_scalar(const WElem& c) const;
  RamifiedElement from_int(std::int64_t c) const;
  /// Element sum c_i pi^i; coefficient lists longer than e are reduced.
  RamifiedElement element(const std::vector<WElem>& coeffs) const;
  RamifiedElement element_from_ints(const std::vector<std::int64_t>& coeffs) const;

 private:
  EisensteinExtension(Polynomial poly);

  ConfigPtr ring_;
  Polynomial poly_;
  int e_;
};

using ExtensionPtr = std::shared_ptr<const EisensteinExtension>;

/// Element of O_L / p^N O_L in the basis 1, pi, ..., pi^{e-1}.
class RamifiedElement {
 public:
  RamifiedElement(ExtensionPtr ext, std::vector<WElem> coeffs);

  const ExtensionPtr& extension() const { return ext_; }
  const std::vector<WElem>& coeffs() const { return c_; }
  const ConfigPtr& ring() const { return ext_->ring(); }

  RamifiedElement operator+(const RamifiedElement& o) const;
  RamifiedElement operator-(const RamifiedElement& o) const;
  RamifiedElement operator-() const;
  RamifiedElement operator*(const RamifiedElement& o) const;
  RamifiedElement scaled(const WElem& c) const;
  RamifiedElement pow(unsigned k) const;
  bool operator==(const RamifiedElement& o) const;
  bool is_zero() const;

  /// min_i v(c_i) + i/e; a lower bound only when every coefficient is zero
  /// modulo p^N.
  Valuation valuation() const;

  /// Inverse of a unit (NonUnit otherwise).
  RamifiedElement invert_unit() const;
  /// a / b when the quotient lies in O_L. Dividing by an element of
  /// valuation k loses about k digits: the result is determined modulo
  /// p^{N - ceil(k)}.
  RamifiedElement divide(const RamifiedElement& b) const;
  /// Multiplication by pi^k.
  RamifiedElement shifted(int k) const;

  /// The polynomial sum c_i X^i with coefficients in W.
  Polynomial basis_polynomial() const;
  /// Text in the basis, e.g. "pi + 3*pi^2".
  std::string str() const;

 private:
  void require_same(const RamifiedElement& o) const;

  ExtensionPtr ext_;
  std::vector<WElem> c_;
};

/// f(x) by Horner's rule.
RamifiedElement evaluate(const Polynomial& f, const RamifiedElement& x);

struct SeriesValue {
  RamifiedElement value;
  /// Lower bound for the valuation of the omitted degree > D terms:
  /// (D + 1) * min_i v(x_i).
  Valuation tail_bound;
};

/// Evaluates a truncated series at a point of positive valuation.
SeriesValue evaluate(const MultiSeries& series, std::span<const RamifiedElement> point);

/// v(D_{L/K}) = v(E'(pi)). Throws IndeterminatePrecision if not exact.
Valuation different_valuation(const EisensteinExtension& ext);

struct DeltaReport {
  std::string element;
  std::string f;
  Valuation v_f_prime = Valuation::infinity();
  Valuation v_different = Valuation::infinity();
  Valuation delta = Valuation::infinity();
  bool in_O1 = false;
};

/// delta(a) = min(v(f'(pi)) - v(D_{L/K}), 0) with a = f(pi). The default f
/// is the basis polynomial of a; a supplied f must satisfy f(pi) = a.
DeltaReport delta(const RamifiedElement& a, const std::optional<Polynomial>& f = std::nullopt);

struct DeltaPropertyReport {
  Rational delta_a;
  Rational delta_b;
  Rational delta_sum;
  Rational delta_product;
  Rational delta_image;
  bool additive = false;        // (1) including the equality clause
  bool product = false;         // (2)
  bool polynomial_image = false;  // (3)
  bool annihilation = false;    // (4) x = a, y = b

  bool all() const { return additive && product && polynomial_image && annihilation; }
};

/// Checks the four delta properties on one pair, using `f` for the
/// polynomial-image property.
DeltaPropertyReport delta_properties_check(const RamifiedElement& a, const RamifiedElement& b, const Polynomial& f);

/// Re-expresses a in a larger extension given the image of pi there; the
/// image must be a root of E to valuation >= 3N/4.
RamifiedElement change_presentation(const RamifiedElement& a, const ExtensionPtr& larger,
                                    const RamifiedElement& image_of_pi);

}  // namespace fgt
