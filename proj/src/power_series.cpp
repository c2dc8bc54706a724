#include "fgt/power_series.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace fgt {

namespace {

constexpr int kBinomRows = 2 * kMaxTruncation + kMaxVars + 2;

struct BinomTable {
  std::uint64_t c[kBinomRows][kMaxVars + 1]{};
  BinomTable() {
    for (int n = 0; n < kBinomRows; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= kMaxVars; ++k) c[n][k] = n == 0 ? 0 : c[n - 1][k - 1] + c[n - 1][k];
    }
  }
};

const BinomTable& binom() {
  static const BinomTable table;
  return table;
}

void require_vars(int nvars) {
  if (nvars < 1 || nvars > kMaxVars) {
    throw Error(ErrorCode::kShapeMismatch, "number of variables must be in [1, " + std::to_string(kMaxVars) + "]");
  }
}

void gen_degree(int nvars, int idx, int remaining, Monomial& cur, std::vector<Monomial>& out) {
  if (idx == nvars - 1) {
    cur.e[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(remaining);
    out.push_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur.e[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(k);
    gen_degree(nvars, idx + 1, remaining - k, cur, out);
  }
  cur.e[static_cast<std::size_t>(idx)] = 0;
}

}  // namespace

std::uint64_t monomial_rank(const Monomial& m, int nvars) {
  const auto& b = binom();
  std::uint64_t rank = 0;
  int suffix = 0;
  // Walk from the last variable so suffix sums accumulate.
  for (int i = nvars; i >= 1; --i) {
    suffix += m.e[static_cast<std::size_t>(i - 1)];
    const int parts = nvars - i + 1;
    if (suffix > 0) rank += b.c[suffix - 1 + parts][parts];
  }
  return rank;
}

std::uint64_t monomial_count(int nvars, int max_degree) {
  return binom().c[max_degree + nvars][nvars];
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  require_vars(nvars);
  std::vector<Monomial> out;
  Monomial cur;
  gen_degree(nvars, 0, degree, cur, out);
  return out;
}

/// Collects scaled terms and products; dense by rank when the index space
/// is small relative to the expected work, hashed otherwise.
class SeriesAccumulator {
 public:
  SeriesAccumulator(const ConfigPtr& ring, int nvars, int trunc, std::uint64_t work_hint)
      : ring_(ring), nvars_(nvars), trunc_(trunc), one_(ring->from_int(1)) {
    const std::uint64_t space = monomial_count(nvars, trunc);
    dense_ = space <= 4 * work_hint && space <= (1U << 20);
    if (dense_) {
      vals_.resize(space);
      monos_.resize(space);
      touched_.assign(space, 0);
    }
  }

  void add(const Monomial& m, std::uint64_t rank, const WElem& c) {
    if (dense_) {
      if (!touched_[rank]) {
        touched_[rank] = 1;
        monos_[rank] = m;
        vals_[rank] = c;
        touched_list_.push_back(rank);
      } else {
        vals_[rank] = ring_->add(vals_[rank], c);
      }
      return;
    }
    auto [it, inserted] = sparse_.try_emplace(rank, Term{m, rank, c});
    if (!inserted) it->second.coeff = ring_->add(it->second.coeff, c);
  }

  void add_series(const MultiSeries& s, const WElem& scale) {
    const bool unit_scale = scale == one_;
    for (const auto& t : s.terms()) {
      if (t.mono.degree() > trunc_) break;
      add(t.mono, t.rank, unit_scale ? t.coeff : ring_->mul(t.coeff, scale));
    }
  }

  void add_product(const MultiSeries& a, const MultiSeries& b, const WElem& scale) {
    const bool unit_scale = scale == one_;
    for (const auto& ta : a.terms()) {
      const int da = ta.mono.degree();
      if (da > trunc_) break;
      const WElem ca = unit_scale ? ta.coeff : ring_->mul(ta.coeff, scale);
      for (const auto& tb : b.terms()) {
        if (da + tb.mono.degree() > trunc_) break;
        const Monomial m = ta.mono * tb.mono;
        add(m, monomial_rank(m, nvars_), ring_->mul(ca, tb.coeff));
      }
    }
  }

  MultiSeries finish() {
    std::vector<Term> terms;
    if (dense_) {
      std::sort(touched_list_.begin(), touched_list_.end());
      for (auto r : touched_list_) {
        if (!ring_->is_zero(vals_[r])) terms.push_back(Term{monos_[r], r, vals_[r]});
      }
    } else {
      for (auto& [r, t] : sparse_) {
        if (!ring_->is_zero(t.coeff)) terms.push_back(t);
      }
      std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.rank < y.rank; });
    }
    MultiSeries out(ring_, nvars_, trunc_);
    out.terms_ = std::move(terms);
    return out;
  }

 private:
  ConfigPtr ring_;
  int nvars_;
  int trunc_;
  WElem one_;
  bool dense_ = false;
  std::vector<WElem> vals_;
  std::vector<Monomial> monos_;
  std::vector<std::uint8_t> touched_;
  std::vector<std::uint64_t> touched_list_;
  std::unordered_map<std::uint64_t, Term> sparse_;
};

MultiSeries::MultiSeries(ConfigPtr ring, int num_vars, int trunc_degree)
    : ring_(std::move(ring)), nvars_(num_vars), trunc_(trunc_degree) {
  require_vars(num_vars);
  if (trunc_degree < 0 || trunc_degree > kMaxTruncation) {
    throw Error(ErrorCode::kTruncationExceeded,
                "truncation degree must be in [0, " + std::to_string(kMaxTruncation) + "]");
  }
}

MultiSeries MultiSeries::from_terms(ConfigPtr ring, int num_vars, int trunc_degree, std::vector<Term> terms) {
  SeriesAccumulator acc(ring, num_vars, trunc_degree, terms.size());
  for (auto& t : terms) {
    for (int i = num_vars; i < kMaxVars; ++i) {
      if (t.mono.e[static_cast<std::size_t>(i)] != 0) {
        throw Error(ErrorCode::kShapeMismatch, "monomial uses a variable outside the series");
      }
    }
    if (t.mono.degree() > trunc_degree) continue;
    acc.add(t.mono, monomial_rank(t.mono, num_vars), t.coeff);
  }
  return acc.finish();
}

MultiSeries MultiSeries::variable(ConfigPtr ring, int num_vars, int trunc_degree, int index) {
  if (index < 0 || index >= num_vars) throw Error(ErrorCode::kShapeMismatch, "variable index out of range");
  const WElem one = ring->from_int(1);
  return monomial(std::move(ring), num_vars, trunc_degree, Monomial::var(index), one);
}

MultiSeries MultiSeries::constant(ConfigPtr ring, int num_vars, int trunc_degree, std::int64_t value) {
  const WElem c = ring->from_int(value);
  return monomial(std::move(ring), num_vars, trunc_degree, Monomial{}, c);
}

MultiSeries MultiSeries::monomial(ConfigPtr ring, int num_vars, int trunc_degree, const Monomial& m, const WElem& c) {
  return from_terms(std::move(ring), num_vars, trunc_degree, {Term{m, 0, c}});
}

WElem MultiSeries::coefficient(const Monomial& m) const {
  const auto r = monomial_rank(m, nvars_);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), r, [](const Term& t, std::uint64_t x) { return t.rank < x; });
  if (it != terms_.end() && it->rank == r) return it->coeff;
  return WElem{};
}

int MultiSeries::order() const { return terms_.empty() ? trunc_ + 1 : terms_.front().mono.degree(); }

void MultiSeries::require_compatible(const MultiSeries& o) const {
  require_same_config(*ring_, *o.ring_);
  if (nvars_ != o.nvars_ || trunc_ != o.trunc_) {
    throw Error(ErrorCode::kShapeMismatch, "series shapes differ (vars " + std::to_string(nvars_) + "/" +
                                               std::to_string(o.nvars_) + ", D " + std::to_string(trunc_) + "/" +
                                               std::to_string(o.trunc_) + ")");
  }
}

MultiSeries MultiSeries::operator+(const MultiSeries& o) const {
  require_compatible(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].rank < o.terms_[j].rank)) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].rank < terms_[i].rank) {
      out.push_back(o.terms_[j++]);
    } else {
      Term t = terms_[i++];
      t.coeff = ring_->add(t.coeff, o.terms_[j++].coeff);
      if (!ring_->is_zero(t.coeff)) out.push_back(t);
    }
  }
  MultiSeries s(ring_, nvars_, trunc_);
  s.terms_ = std::move(out);
  return s;
}

MultiSeries MultiSeries::operator-() const {
  MultiSeries s = *this;
  for (auto& t : s.terms_) t.coeff = ring_->neg(t.coeff);
  return s;
}

MultiSeries MultiSeries::operator-(const MultiSeries& o) const { return *this + (-o); }

MultiSeries MultiSeries::operator*(const MultiSeries& o) const {
  require_compatible(o);
  SeriesAccumulator acc(ring_, nvars_, trunc_, terms_.size() * o.terms_.size());
  acc.add_product(*this, o, ring_->from_int(1));
  return acc.finish();
}

MultiSeries MultiSeries::scaled(const WElem& c) const {
  MultiSeries s(ring_, nvars_, trunc_);
  for (const auto& t : terms_) {
    WElem v = ring_->mul(t.coeff, c);
    if (!ring_->is_zero(v)) s.terms_.push_back(Term{t.mono, t.rank, v});
  }
  return s;
}

bool MultiSeries::operator==(const MultiSeries& o) const {
  require_compatible(o);
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].rank != o.terms_[i].rank || !(terms_[i].coeff == o.terms_[i].coeff)) return false;
  }
  return true;
}

MultiSeries MultiSeries::graded_part(int k) const {
  if (k < 0 || k > trunc_) {
    throw Error(ErrorCode::kTruncationExceeded,
                "graded part of degree " + std::to_string(k) + " beyond truncation " + std::to_string(trunc_));
  }
  MultiSeries s(ring_, nvars_, trunc_);
  for (const auto& t : terms_) {
    if (t.mono.degree() == k) s.terms_.push_back(t);
  }
  return s;
}

MultiSeries MultiSeries::partial_derivative(int var_index) const {
  if (var_index < 0 || var_index >= nvars_) throw Error(ErrorCode::kShapeMismatch, "variable index out of range");
  if (trunc_ < 1) throw Error(ErrorCode::kTruncationExceeded, "derivative of a degree-0 truncation");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const int ex = t.mono.e[static_cast<std::size_t>(var_index)];
    if (ex == 0) continue;
    Term d = t;
    d.mono.e[static_cast<std::size_t>(var_index)] = static_cast<std::uint8_t>(ex - 1);
    d.coeff = ring_->mul_int(t.coeff, ex);
    out.push_back(d);
  }
  return from_terms(ring_, nvars_, trunc_ - 1, std::move(out));
}

MultiSeries MultiSeries::truncated(int degree) const {
  if (degree > trunc_) {
    throw Error(ErrorCode::kTruncationExceeded,
                "cannot raise truncation from " + std::to_string(trunc_) + " to " + std::to_string(degree));
  }
  MultiSeries s(ring_, nvars_, degree);
  for (const auto& t : terms_) {
    if (t.mono.degree() <= degree) s.terms_.push_back(t);
  }
  return s;
}

MultiSeries MultiSeries::with_ring(const ConfigPtr& target) const {
  MultiSeries s(target, nvars_, trunc_);
  for (const auto& t : terms_) {
    WElem c = ring_->convert(t.coeff, *target);
    if (!target->is_zero(c)) s.terms_.push_back(Term{t.mono, t.rank, c});
  }
  return s;
}

MultiSeries MultiSeries::embedded(int num_vars, int offset) const {
  if (offset < 0 || offset + nvars_ > num_vars) throw Error(ErrorCode::kShapeMismatch, "embedding out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term n;
    for (int i = 0; i < nvars_; ++i) n.mono.e[static_cast<std::size_t>(i + offset)] = t.mono.e[static_cast<std::size_t>(i)];
    n.coeff = t.coeff;
    out.push_back(n);
  }
  return from_terms(ring_, num_vars, trunc_, std::move(out));
}

std::vector<std::string> default_variable_names(int num_vars) {
  if (num_vars == 1) return {"T"};
  std::vector<std::string> names;
  for (int i = 1; i <= num_vars; ++i) names.push_back("X" + std::to_string(i));
  return names;
}

std::string MultiSeries::to_string(const std::vector<std::string>& names) const {
  const auto vars = names.empty() ? default_variable_names(nvars_) : names;
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string coeff = ring_->to_string(t.coeff);
    bool negative = false;
    if (ring_->f() == 1 && coeff[0] == '-') {
      negative = true;
      coeff = coeff.substr(1);
    }
    if (first) {
      os << (negative ? "-" : "");
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      const int ex = t.mono.e[static_cast<std::size_t>(i)];
      if (ex == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[static_cast<std::size_t>(i)];
      if (ex > 1) mono += "^" + std::to_string(ex);
    }
    if (mono.empty()) {
      os << coeff;
    } else if (coeff == "1") {
      os << mono;
    } else {
      os << coeff << "*" << mono;
    }
  }
  return os.str();
}

void require_tuple_shape(std::span<const MultiSeries> tuple) {
  for (const auto& s : tuple) {
    require_same_config(*tuple.front().ring(), *s.ring());
    if (s.num_vars() != tuple.front().num_vars() || s.trunc_degree() != tuple.front().trunc_degree()) {
      throw Error(ErrorCode::kShapeMismatch, "tuple components have different shapes");
    }
  }
}

MultiSeries compose(const MultiSeries& outer, std::span<const MultiSeries> inner) {
  if (inner.size() != static_cast<std::size_t>(outer.num_vars())) {
    throw Error(ErrorCode::kShapeMismatch, "composition needs one inner series per outer variable");
  }
  require_tuple_shape(inner);
  const auto& ring = inner.front().ring();
  require_same_config(*outer.ring(), *ring);
  const int nvars = inner.front().num_vars();
  int min_order = kMaxTruncation + 1;
  for (std::size_t j = 0; j < inner.size(); ++j) {
    if (!ring->is_zero(inner[j].constant_term())) {
      throw Error(ErrorCode::kTruncationExceeded,
                  "inner series " + std::to_string(j + 1) + " has a nonzero constant term");
    }
    min_order = std::min(min_order, inner[j].order());
  }
  // Outer terms of degree k contribute from degree k * min_order on.
  int trunc = inner.front().trunc_degree();
  if (min_order <= kMaxTruncation) {
    trunc = std::min(trunc, (outer.trunc_degree() + 1) * min_order - 1);
  }

  const std::size_t k = inner.size();
  std::vector<std::vector<MultiSeries>> powers(k);
  auto power = [&](std::size_t j, int e) -> const MultiSeries& {
    auto& cache = powers[j];
    if (cache.empty()) {
      cache.push_back(MultiSeries::constant(ring, nvars, inner[j].trunc_degree(), 1));
      cache.push_back(inner[j]);
    }
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * inner[j]);
    return cache[static_cast<std::size_t>(e)];
  };

  SeriesAccumulator acc(ring, nvars, trunc, monomial_count(nvars, trunc));
  for (const auto& t : outer.terms()) {
    int lowest = 0;
    std::vector<std::pair<std::size_t, int>> factors;
    for (std::size_t j = 0; j < k; ++j) {
      const int e = t.mono.e[j];
      if (e == 0) continue;
      lowest += e * inner[j].order();
      factors.emplace_back(j, e);
    }
    if (lowest > trunc) continue;
    if (factors.empty()) {
      acc.add(Monomial{}, 0, t.coeff);
    } else if (factors.size() == 1) {
      acc.add_series(power(factors[0].first, factors[0].second), t.coeff);
    } else {
      MultiSeries left = power(factors[0].first, factors[0].second);
      for (std::size_t f = 1; f + 1 < factors.size(); ++f) left = left * power(factors[f].first, factors[f].second);
      acc.add_product(left, power(factors.back().first, factors.back().second), t.coeff);
    }
  }
  return acc.finish();
}

SeriesTuple compose(std::span<const MultiSeries> outer, std::span<const MultiSeries> inner) {
  SeriesTuple out;
  out.reserve(outer.size());
  for (const auto& s : outer) out.push_back(compose(s, inner));
  return out;
}

SeriesTuple identity_tuple(const ConfigPtr& ring, int num_vars, int trunc_degree) {
  SeriesTuple out;
  for (int i = 0; i < num_vars; ++i) out.push_back(MultiSeries::variable(ring, num_vars, trunc_degree, i));
  return out;
}

}  // namespace fgt
