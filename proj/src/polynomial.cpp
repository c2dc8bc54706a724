#include "fgt/polynomial.hpp"

#include <sstream>

namespace fgt {

Polynomial::Polynomial(ConfigPtr ring, std::vector<WElem> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::from_ints(ConfigPtr ring, const std::vector<std::int64_t>& coeffs) {
  std::vector<WElem> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(ring->from_int(v));
  return {std::move(ring), std::move(c)};
}

Polynomial Polynomial::from_series(const MultiSeries& s) {
  if (s.num_vars() != 1) throw Error(ErrorCode::kShapeMismatch, "polynomial needs a univariate series");
  std::vector<WElem> c(static_cast<std::size_t>(s.trunc_degree()) + 1);
  for (const auto& t : s.terms()) c[t.mono.e[0]] = t.coeff;
  return {s.ring(), std::move(c)};
}

void Polynomial::trim() {
  while (!c_.empty() && ring_->is_zero(c_.back())) c_.pop_back();
}

WElem Polynomial::coefficient(int i) const {
  if (i < 0 || i > degree()) return WElem{};
  return c_[static_cast<std::size_t>(i)];
}

Polynomial Polynomial::derivative() const {
  std::vector<WElem> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(ring_->mul_int(c_[i], static_cast<std::int64_t>(i)));
  return {ring_, std::move(d)};
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_config(*ring_, *o.ring_);
  std::vector<WElem> out(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ring_->add(i < c_.size() ? c_[i] : WElem{}, i < o.c_.size() ? o.c_[i] : WElem{});
  }
  return {ring_, std::move(out)};
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<WElem> neg;
  for (const auto& x : o.c_) neg.push_back(ring_->neg(x));
  return *this + Polynomial(o.ring_, std::move(neg));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_config(*ring_, *o.ring_);
  if (c_.empty() || o.c_.empty()) return {ring_, {}};
  std::vector<WElem> out(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] = ring_->add(out[i + j], ring_->mul(c_[i], o.c_[j]));
  }
  return {ring_, std::move(out)};
}

bool Polynomial::operator==(const Polynomial& o) const {
  require_same_config(*ring_, *o.ring_);
  return c_ == o.c_;
}

std::string Polynomial::to_string(const std::string& var) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < c_.size(); ++i) terms.push_back(Term{Monomial::var(0, static_cast<int>(i)), 0, c_[i]});
  const int deg = std::max(0, degree());
  return MultiSeries::from_terms(ring_, 1, std::min(deg, kMaxTruncation), terms).to_string({var});
}

}  // namespace fgt
