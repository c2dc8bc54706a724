#include "fgt/ramified.hpp"

#include <numeric>
#include <sstream>

namespace fgt {

EisensteinExtension::EisensteinExtension(Polynomial poly)
    : ring_(poly.ring()), poly_(std::move(poly)), e_(poly_.degree()) {}

std::shared_ptr<const EisensteinExtension> EisensteinExtension::make(Polynomial eisenstein) {
  const auto& ring = eisenstein.ring();
  const int e = eisenstein.degree();
  if (e < 1) throw Error(ErrorCode::kInvalidArgument, "Eisenstein polynomial must have degree >= 1");
  if (!(eisenstein.coefficient(e) == ring->from_int(1))) {
    throw Error(ErrorCode::kInvalidArgument, "Eisenstein polynomial must be monic");
  }
  if (!(ring->valuation(eisenstein.coefficient(0)) == Valuation::exact(1))) {
    throw Error(ErrorCode::kInvalidArgument, "constant term of an Eisenstein polynomial must have valuation 1");
  }
  for (int i = 1; i < e; ++i) {
    if (ring->is_unit(eisenstein.coefficient(i))) {
      throw Error(ErrorCode::kInvalidArgument, "Eisenstein polynomial has a unit middle coefficient");
    }
  }
  return std::shared_ptr<const EisensteinExtension>(new EisensteinExtension(std::move(eisenstein)));
}

std::shared_ptr<const EisensteinExtension> EisensteinExtension::pure(const ConfigPtr& ring, int e, std::int64_t c) {
  std::vector<std::int64_t> coeffs(static_cast<std::size_t>(e) + 1, 0);
  coeffs.front() = c;
  coeffs.back() = 1;
  return make(Polynomial::from_ints(ring, coeffs));
}

bool EisensteinExtension::is_tame() const { return std::gcd(e_, ring_->p()) == 1; }

bool EisensteinExtension::same_as(const EisensteinExtension& o) const {
  if (this == &o) return true;
  return *ring_ == *o.ring_ && poly_.coeffs() == o.poly_.coeffs();
}

RamifiedElement EisensteinExtension::zero() const { return element({}); }
RamifiedElement EisensteinExtension::one() const { return from_int(1); }
RamifiedElement EisensteinExtension::from_int(std::int64_t c) const { return from_scalar(ring_->from_int(c)); }
RamifiedElement EisensteinExtension::from_scalar(const WElem& c) const { return element({c}); }

RamifiedElement EisensteinExtension::uniformizer() const {
  return element({WElem{}, ring_->from_int(1)});
}

RamifiedElement EisensteinExtension::element(const std::vector<WElem>& coeffs) const {
  std::vector<WElem> c = coeffs;
  // Reduce X^k for k >= e with X^e = -sum_{i<e} E_i X^i.
  for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(e_);) {
    const WElem lead = c[k];
    if (ring_->is_zero(lead)) continue;
    for (int i = 0; i < e_; ++i) {
      auto& slot = c[k - static_cast<std::size_t>(e_) + static_cast<std::size_t>(i)];
      slot = ring_->sub(slot, ring_->mul(lead, poly_.coefficient(i)));
    }
  }
  c.resize(static_cast<std::size_t>(e_));
  return RamifiedElement(shared_from_this(), std::move(c));
}

RamifiedElement EisensteinExtension::element_from_ints(const std::vector<std::int64_t>& coeffs) const {
  std::vector<WElem> c;
  for (auto v : coeffs) c.push_back(ring_->from_int(v));
  return element(c);
}

RamifiedElement::RamifiedElement(ExtensionPtr ext, std::vector<WElem> coeffs)
    : ext_(std::move(ext)), c_(std::move(coeffs)) {
  c_.resize(static_cast<std::size_t>(ext_->degree()));
}

void RamifiedElement::require_same(const RamifiedElement& o) const {
  if (!ext_->same_as(*o.ext_)) throw Error(ErrorCode::kExtensionMismatch, "elements of different extensions");
}

RamifiedElement RamifiedElement::operator+(const RamifiedElement& o) const {
  require_same(o);
  std::vector<WElem> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ring()->add(c_[i], o.c_[i]);
  return {ext_, std::move(c)};
}

RamifiedElement RamifiedElement::operator-() const {
  std::vector<WElem> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ring()->neg(c_[i]);
  return {ext_, std::move(c)};
}

RamifiedElement RamifiedElement::operator-(const RamifiedElement& o) const { return *this + (-o); }

RamifiedElement RamifiedElement::operator*(const RamifiedElement& o) const {
  require_same(o);
  const auto& r = *ring();
  std::vector<WElem> prod(2 * c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (r.is_zero(c_[i])) continue;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (r.is_zero(o.c_[j])) continue;
      prod[i + j] = r.add(prod[i + j], r.mul(c_[i], o.c_[j]));
    }
  }
  return ext_->element(prod);
}

RamifiedElement RamifiedElement::scaled(const WElem& c) const {
  std::vector<WElem> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = ring()->mul(c_[i], c);
  return {ext_, std::move(out)};
}

RamifiedElement RamifiedElement::pow(unsigned k) const {
  RamifiedElement result = ext_->one();
  RamifiedElement base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    base = base * base;
    k >>= 1U;
  }
  return result;
}

bool RamifiedElement::operator==(const RamifiedElement& o) const {
  require_same(o);
  return c_ == o.c_;
}

bool RamifiedElement::is_zero() const {
  for (const auto& x : c_) {
    if (!ring()->is_zero(x)) return false;
  }
  return true;
}

Valuation RamifiedElement::valuation() const {
  const int e = ext_->degree();
  std::optional<Rational> best;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (ring()->is_zero(c_[i])) continue;
    Rational v = Rational(ring()->val_int(c_[i])) + Rational(static_cast<std::int64_t>(i), e);
    if (!best || v < *best) best = v;
  }
  // Nonzero coefficients have v < N, so any of them beats the floor.
  if (best) return Valuation::exact(*best);
  return Valuation::lower_bound(Rational(ring()->precision()));
}

RamifiedElement RamifiedElement::shifted(int k) const {
  std::vector<WElem> c(static_cast<std::size_t>(k), WElem{});
  c.insert(c.end(), c_.begin(), c_.end());
  return ext_->element(c);
}

RamifiedElement RamifiedElement::invert_unit() const {
  const auto v = valuation();
  if (!(v == Valuation::exact(0))) throw Error(ErrorCode::kNonUnit, "inverse of a non-unit in L (v = " + v.str() + ")");
  RamifiedElement y = ext_->from_scalar(ring()->inverse(c_[0]));
  const RamifiedElement two = ext_->from_int(2);
  const int target = ext_->degree() * ring()->precision();
  for (int known = 1; known < target; known *= 2) y = y * (two - *this * y);
  if (!(*this * y == ext_->one())) throw Error(ErrorCode::kNonUnit, "Newton inversion did not converge");
  return y;
}

RamifiedElement RamifiedElement::divide(const RamifiedElement& b) const {
  const auto vb = b.valuation();
  const Rational s_rat = vb.require_exact("divisor valuation") * ext_->degree();
  const std::int64_t s = s_rat.numerator();
  const int e = ext_->degree();
  const int r = static_cast<int>((e - s % e) % e);
  const int k = static_cast<int>((s + r) / e);
  const RamifiedElement bs = b.shifted(r);
  const RamifiedElement as = shifted(r);
  if (!surely_at_least(as.valuation(), Rational(k))) {
    throw Error(ErrorCode::kInvalidArgument, "quotient is not integral");
  }
  if (k >= ring()->precision()) {
    throw Error(ErrorCode::kIndeterminatePrecision, "divisor valuation at the precision floor");
  }
  std::vector<WElem> w;
  std::vector<WElem> num;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    w.push_back(ring()->divide_by_p_power(bs.c_[i], k));
    num.push_back(ring()->divide_by_p_power(as.c_[i], k));
  }
  return RamifiedElement(ext_, num) * RamifiedElement(ext_, w).invert_unit();
}

Polynomial RamifiedElement::basis_polynomial() const { return Polynomial(ring(), c_); }

std::string RamifiedElement::str() const { return basis_polynomial().to_string("pi"); }

RamifiedElement evaluate(const Polynomial& f, const RamifiedElement& x) {
  require_same_config(*f.ring(), *x.ring());
  RamifiedElement acc = x.extension()->zero();
  for (int i = f.degree(); i >= 0; --i) acc = acc * x + x.extension()->from_scalar(f.coefficient(i));
  return acc;
}

SeriesValue evaluate(const MultiSeries& series, std::span<const RamifiedElement> point) {
  if (point.size() != static_cast<std::size_t>(series.num_vars())) {
    throw Error(ErrorCode::kShapeMismatch, "point dimension does not match the series");
  }
  const auto& ext = point.front().extension();
  require_same_config(*series.ring(), *ext->ring());
  Rational min_v(ext->ring()->precision());
  for (const auto& x : point) {
    if (!x.extension()->same_as(*ext)) throw Error(ErrorCode::kExtensionMismatch, "point coordinates in different extensions");
    const auto v = x.valuation();
    if (v.is_exact() && v.value() <= Rational(0)) {
      throw Error(ErrorCode::kNonPositiveValuation, "evaluation point must have positive valuation");
    }
    min_v = std::min(min_v, v.value());
  }
  const int D = series.trunc_degree();
  std::vector<std::vector<RamifiedElement>> powers(point.size());
  for (std::size_t j = 0; j < point.size(); ++j) {
    powers[j].push_back(ext->one());
  }
  RamifiedElement acc = ext->zero();
  for (const auto& t : series.terms()) {
    RamifiedElement term = ext->from_scalar(t.coeff);
    for (std::size_t j = 0; j < point.size(); ++j) {
      const int e = t.mono.e[j];
      if (e == 0) continue;
      auto& pw = powers[j];
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * point[j]);
      term = term * pw[static_cast<std::size_t>(e)];
    }
    acc = acc + term;
  }
  return {acc, Valuation::lower_bound(min_v * (D + 1))};
}

Valuation different_valuation(const EisensteinExtension& ext) {
  const auto v = evaluate(ext.polynomial().derivative(), ext.uniformizer()).valuation();
  v.require_exact("different");
  return v;
}

DeltaReport delta(const RamifiedElement& a, const std::optional<Polynomial>& f) {
  Polynomial poly = f ? *f : a.basis_polynomial();
  if (f && !(evaluate(*f, a.extension()->uniformizer()) == a)) {
    throw Error(ErrorCode::kInvalidArgument, "supplied polynomial does not evaluate to the element at pi");
  }
  DeltaReport rep;
  rep.element = a.str();
  rep.f = poly.to_string("X");
  rep.v_f_prime = evaluate(poly.derivative(), a.extension()->uniformizer()).valuation();
  rep.v_different = different_valuation(*a.extension());
  const Rational vd = rep.v_different.value();
  if (rep.v_f_prime.is_exact()) {
    rep.delta = Valuation::exact(std::min(rep.v_f_prime.value() - vd, Rational(0)));
  } else if (rep.v_f_prime.value() - vd >= 0) {
    rep.delta = Valuation::exact(0);
  } else {
    throw Error(ErrorCode::kIndeterminatePrecision, "v(f'(pi)) below the different is not resolved at this precision");
  }
  rep.in_O1 = rep.delta.value() == Rational(0);
  return rep;
}

namespace {

// Tri-state v >= bound; nullopt when a lower bound leaves it open.
std::optional<bool> at_least(const Valuation& v, const Rational& bound) {
  if (v.is_infinite()) return true;
  if (v.is_exact()) return v.value() >= bound;
  if (v.value() >= bound) return true;
  return std::nullopt;
}

bool resolve(std::optional<bool> b, const char* what) {
  if (!b) throw Error(ErrorCode::kIndeterminatePrecision, what);
  return *b;
}

}  // namespace

DeltaPropertyReport delta_properties_check(const RamifiedElement& a, const RamifiedElement& b, const Polynomial& f) {
  DeltaPropertyReport r;
  const auto da = delta(a);
  const auto db = delta(b);
  r.delta_a = da.delta.value();
  r.delta_b = db.delta.value();

  r.delta_sum = delta(a + b).delta.value();
  r.additive = r.delta_sum >= std::min(r.delta_a, r.delta_b);
  if (r.delta_a != r.delta_b) r.additive = r.additive && r.delta_sum == std::min(r.delta_a, r.delta_b);

  // delta takes values in (-inf, 0], so the bound is read with a 0 cap.
  r.delta_product = delta(a * b).delta.value();
  const auto va = a.valuation();
  const auto vb = b.valuation();
  Rational rhs(0);
  if (!va.is_lower_bound() || r.delta_b + va.value() < Rational(0)) rhs = std::min(rhs, r.delta_b + va.value());
  if (!vb.is_lower_bound() || r.delta_a + vb.value() < Rational(0)) rhs = std::min(rhs, r.delta_a + vb.value());
  r.product = r.delta_product >= rhs;

  // delta(f(a)) = min(v(f'(a)) + delta(a), 0).
  r.delta_image = delta(evaluate(f, a)).delta.value();
  const auto vfa = evaluate(f.derivative(), a).valuation();
  Rational expected(0);
  if (vfa.is_exact()) {
    expected = std::min(vfa.value() + r.delta_a, Rational(0));
  } else if (vfa.value() + r.delta_a < Rational(0)) {
    throw Error(ErrorCode::kIndeterminatePrecision, "v(f'(a)) unresolved for the polynomial-image property");
  }
  r.polynomial_image = r.delta_image == expected;

  // x dy = 0 in the finite-level module iff v(x) + v(g'(pi)) >= v(D).
  const auto lhs = resolve(at_least(va + db.v_f_prime, db.v_different.value()), "annihilation test unresolved");
  const auto rhs_ann = resolve(at_least(va + Rational(r.delta_b), Rational(0)), "annihilation test unresolved");
  r.annihilation = lhs == rhs_ann;
  return r;
}

RamifiedElement change_presentation(const RamifiedElement& a, const ExtensionPtr& larger,
                                    const RamifiedElement& image_of_pi) {
  if (!image_of_pi.extension()->same_as(*larger)) {
    throw Error(ErrorCode::kExtensionMismatch, "embedding image must live in the larger extension");
  }
  require_same_config(*a.ring(), *larger->ring());
  const auto residual = evaluate(a.extension()->polynomial(), image_of_pi).valuation();
  const Rational threshold = Rational(3 * a.ring()->precision(), 4);
  if (!surely_at_least(residual, threshold)) {
    throw Error(ErrorCode::kEmbeddingResidual,
                "E(image) has valuation " + residual.str() + " < " + to_string(threshold));
  }
  return evaluate(a.basis_polynomial(), image_of_pi);
}

}  // namespace fgt
