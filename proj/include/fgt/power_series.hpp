#pragma once

#include "fgt/scalar.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fgt {

inline constexpr int kMaxVars = 9;
inline constexpr int kMaxTruncation = 127;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial out;
    for (int i = 0; i < kMaxVars; ++i) out.e[i] = static_cast<std::uint8_t>(e[i] + o.e[i]);
    return out;
  }
  bool operator==(const Monomial&) const = default;

  static Monomial var(int index, int power = 1) {
    Monomial m;
    m.e[static_cast<std::size_t>(index)] = static_cast<std::uint8_t>(power);
    return m;
  }
};

/// Position of a monomial in graded-lex order (X1 > X2 > ...), counted over
/// all monomials in `nvars` variables. Dense: ranks of degree <= D fill
/// [0, monomial_count(nvars, D)).
std::uint64_t monomial_rank(const Monomial& m, int nvars);
std::uint64_t monomial_count(int nvars, int max_degree);
/// All monomials of exactly `degree`, in graded-lex order.
std::vector<Monomial> monomials_of_degree(int nvars, int degree);

struct Term {
  Monomial mono;
  std::uint64_t rank = 0;
  WElem coeff;
};

/// Power series over W/p^N in `num_vars` variables, known through total
/// degree `trunc_degree`. Terms are stored sparsely in graded-lex order with
/// zero coefficients omitted.
class MultiSeries {
 public:
  MultiSeries(ConfigPtr ring, int num_vars, int trunc_degree);

  /// Builds from unordered terms; like terms are merged and terms above the
  /// truncation degree are dropped.
  static MultiSeries from_terms(ConfigPtr ring, int num_vars, int trunc_degree, std::vector<Term> terms);
  static MultiSeries variable(ConfigPtr ring, int num_vars, int trunc_degree, int index);
  static MultiSeries constant(ConfigPtr ring, int num_vars, int trunc_degree, std::int64_t value);
  static MultiSeries monomial(ConfigPtr ring, int num_vars, int trunc_degree, const Monomial& m, const WElem& c);

  const ConfigPtr& ring() const { return ring_; }
  int num_vars() const { return nvars_; }
  int trunc_degree() const { return trunc_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  WElem coefficient(const Monomial& m) const;
  WElem constant_term() const { return coefficient(Monomial{}); }
  /// Lowest degree of a nonzero term; trunc_degree + 1 for the zero series.
  int order() const;

  MultiSeries operator+(const MultiSeries& o) const;
  MultiSeries operator-(const MultiSeries& o) const;
  MultiSeries operator-() const;
  MultiSeries operator*(const MultiSeries& o) const;
  MultiSeries scaled(const WElem& c) const;
  bool operator==(const MultiSeries& o) const;

  /// Sum of the degree-k monomials. Throws TruncationExceeded for k > D.
  MultiSeries graded_part(int k) const;
  /// Formal partial derivative; known through degree D - 1, so the result
  /// carries truncation D - 1.
  MultiSeries partial_derivative(int var_index) const;
  /// Drop to a smaller truncation degree (TruncationExceeded if larger).
  MultiSeries truncated(int degree) const;
  /// Same series viewed in a ring of different precision.
  MultiSeries with_ring(const ConfigPtr& target) const;
  /// View in more variables (new variables absent); `offset` shifts indices.
  MultiSeries embedded(int num_vars, int offset = 0) const;

  /// Canonical text form: graded-lex monomials with symmetric integer
  /// coefficients, e.g. "3*T + 3*T^2 + T^3".
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  friend class SeriesAccumulator;
  void require_compatible(const MultiSeries& o) const;

  ConfigPtr ring_;
  int nvars_;
  int trunc_;
  std::vector<Term> terms_;
};

/// A g-tuple of series over a common variable set.
using SeriesTuple = std::vector<MultiSeries>;

void require_tuple_shape(std::span<const MultiSeries> tuple);

/// outer(inner_1, ..., inner_k). Every inner series must have zero constant
/// term; the result lives in the inner variables at the inner truncation.
MultiSeries compose(const MultiSeries& outer, std::span<const MultiSeries> inner);
SeriesTuple compose(std::span<const MultiSeries> outer, std::span<const MultiSeries> inner);

/// Identity tuple (X1, ..., Xn).
SeriesTuple identity_tuple(const ConfigPtr& ring, int num_vars, int trunc_degree);

std::vector<std::string> default_variable_names(int num_vars);

}  // namespace fgt
