#include "doctest.h"

#include "fgt/power_series.hpp"

#include <random>

using namespace fgt;

namespace {

struct Vars {
  ConfigPtr ring;
  int n;
  int d;
  MultiSeries var(int i) const { return MultiSeries::variable(ring, n, d, i); }
  MultiSeries c(std::int64_t v) const { return MultiSeries::constant(ring, n, d, v); }
};

MultiSeries random_series(const Vars& v, std::mt19937_64& rng, int min_degree, int count) {
  std::vector<Term> terms;
  std::uniform_int_distribution<int> deg(min_degree, v.d);
  for (int i = 0; i < count; ++i) {
    Monomial m;
    int total = deg(rng);
    for (int k = 0; k < total; ++k) m.e[static_cast<std::size_t>(rng() % static_cast<unsigned>(v.n))]++;
    terms.push_back(Term{m, 0, v.ring->from_int(static_cast<std::int64_t>(rng() % 1000) - 500)});
  }
  return MultiSeries::from_terms(v.ring, v.n, v.d, terms);
}

}  // namespace

TEST_CASE("products") {
  Vars v{PrimeConfig::make(3, 1, 6), 2, 4};
  auto X = v.var(0);
  auto Y = v.var(1);
  CHECK(((X + Y) * (X - Y)).to_string() == "X1^2 - X2^2");
  CHECK((X * v.c(0)).is_zero());
  CHECK(((X + Y) * (X + Y)).to_string() == "X1^2 + 2*X1*X2 + X2^2");
}

TEST_CASE("multiplication truncates at D") {
  Vars v{PrimeConfig::make(3, 1, 6), 1, 3};
  auto T = v.var(0);
  auto s = T * T * T * T;
  CHECK(s.is_zero());
  CHECK((T + T * T) * (T + T * T) == T * T + v.c(2) * T * T * T);
}

TEST_CASE("composition examples") {
  Vars one{PrimeConfig::make(3, 1, 6), 1, 3};
  Vars two{one.ring, 2, 3};
  auto T = one.var(0);
  auto outer_sum = two.var(0) + two.var(1);
  std::vector<MultiSeries> inner{T, T * T};
  CHECK(compose(outer_sum, inner) == T + T * T);

  auto S = T + T * T * T;
  std::vector<MultiSeries> ident{S, T};
  CHECK(compose(two.var(0), ident) == S);

  auto outer_prod = two.var(0) * two.var(1);
  std::vector<MultiSeries> inner2{T + T * T, T};
  CHECK(compose(outer_prod, inner2).to_string() == "T^2 + T^3");

  std::vector<MultiSeries> bad{T + one.c(1), T};
  try {
    (void)compose(outer_prod, bad);
    FAIL("expected TruncationExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTruncationExceeded);
  }
}

TEST_CASE("partial derivatives") {
  auto ring = PrimeConfig::make(3, 1, 6);
  Vars v{ring, 2, 5};
  auto X = v.var(0);
  auto Y = v.var(1);
  CHECK((X * X * Y).partial_derivative(0).to_string() == "2*X1*X2");
  CHECK((X * X).partial_derivative(1).is_zero());
  Vars u{ring, 1, 9};
  auto T = u.var(0);
  auto pow9 = T;
  for (int i = 1; i < 9; ++i) pow9 = pow9 * T;
  auto f = u.c(3) * T + u.c(7) * pow9;
  auto df = f.partial_derivative(0);
  CHECK(df.trunc_degree() == 8);
  CHECK(df.to_string() == "3 + 63*T^8");
}

TEST_CASE("graded parts") {
  Vars v{PrimeConfig::make(3, 1, 6), 1, 4};
  auto T = v.var(0);
  auto a = v.c(3) * T + T * T * T;
  CHECK(a.graded_part(3).to_string() == "T^3");
  CHECK(a.graded_part(2).is_zero());
  CHECK_THROWS_AS((void)a.graded_part(5), Error);

  Vars w{v.ring, 2, 4};
  auto X = w.var(0);
  auto Y = w.var(1);
  auto b = X * X + X * Y + w.c(3) * Y * Y * Y;
  CHECK(b.graded_part(2).to_string() == "X1^2 + X1*X2");
}

TEST_CASE("monomial ranks are dense and graded-lex") {
  for (int n = 1; n <= 4; ++n) {
    std::uint64_t expected = 0;
    for (int d = 0; d <= 6; ++d) {
      for (const auto& m : monomials_of_degree(n, d)) CHECK(monomial_rank(m, n) == expected++);
    }
    CHECK(expected == monomial_count(n, 6));
  }
}

TEST_CASE("random series obey ring and composition laws") {
  std::mt19937_64 rng(7);
  Vars v{PrimeConfig::make(5, 1, 8), 3, 7};
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_series(v, rng, 0, 12);
    auto b = random_series(v, rng, 0, 12);
    auto c = random_series(v, rng, 0, 12);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    // Graded parts sum back to the series.
    MultiSeries sum(v.ring, v.n, v.d);
    for (int k = 0; k <= v.d; ++k) sum = sum + a.graded_part(k);
    CHECK(sum == a);

    // compose(compose(a, B), C) == compose(a, compose(B, C)).
    std::vector<MultiSeries> B{random_series(v, rng, 1, 6), random_series(v, rng, 1, 6), random_series(v, rng, 1, 6)};
    std::vector<MultiSeries> C{random_series(v, rng, 1, 6), random_series(v, rng, 1, 6), random_series(v, rng, 1, 6)};
    auto lhs = compose(compose(a, B), C);
    auto BC = compose(std::span<const MultiSeries>(B), std::span<const MultiSeries>(C));
    auto rhs = compose(a, BC);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("shape mismatches") {
  auto ring = PrimeConfig::make(3, 1, 6);
  auto a = MultiSeries::variable(ring, 2, 4, 0);
  auto b = MultiSeries::variable(ring, 2, 5, 0);
  auto c = MultiSeries::variable(ring, 3, 4, 0);
  CHECK_THROWS_AS((void)(a + b), Error);
  CHECK_THROWS_AS((void)(a * c), Error);
}
