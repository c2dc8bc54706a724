#include "doctest.h"

#include "fgt/galois_field.hpp"
#include "fgt/scalar.hpp"

#include <random>
#include <set>

using namespace fgt;

namespace {

PadicScalar random_scalar(const ConfigPtr& ctx, std::mt19937_64& rng) {
  WElem e;
  std::uniform_int_distribution<std::int64_t> dist(0, ctx->modulus() - 1);
  for (int i = 0; i < ctx->f(); ++i) e.c[i] = dist(rng);
  // Bias toward divisibility by small powers of p so valuations vary.
  const int shift = static_cast<int>(rng() % 3);
  WElem out = e;
  for (int i = 0; i < shift; ++i) out = ctx->mul_int(out, ctx->p());
  return {ctx, out};
}

}  // namespace

TEST_CASE("scalar addition examples") {
  auto c34 = PrimeConfig::make(3, 1, 4);
  CHECK((PadicScalar(c34, 5) + PadicScalar(c34, 22)).raw().c[0] == 27);
  CHECK(PadicScalar(c34, 17) + PadicScalar(c34, 0) == PadicScalar(c34, 17));
  auto c32 = PrimeConfig::make(3, 1, 2);
  CHECK((PadicScalar(c32, 5) + PadicScalar(c32, 4)).is_zero());
}

TEST_CASE("scalar valuation examples") {
  auto c = PrimeConfig::make(3, 1, 4);
  CHECK(PadicScalar(c, 18).valuation() == Valuation::exact(2));
  CHECK(PadicScalar(c, 81).valuation() == Valuation::lower_bound(Rational(4)));
  CHECK(PadicScalar(c, 7).valuation() == Valuation::exact(0));
  CHECK(PadicScalar(c, 81).valuation().str() == ">=4");
}

TEST_CASE("scalar inversion") {
  auto c = PrimeConfig::make(3, 1, 2);
  CHECK(PadicScalar(c, 2).inverse().raw().c[0] == 5);
  CHECK(PadicScalar(c, 1).inverse() == PadicScalar(c, 1));
  CHECK_FALSE(PadicScalar(c, 3).is_unit());
  try {
    (void)PadicScalar(c, 3).inverse();
    FAIL("expected NonUnit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonUnit);
  }
}

TEST_CASE("context mismatch is rejected") {
  auto a = PrimeConfig::make(3, 1, 4);
  auto b = PrimeConfig::make(3, 1, 5);
  CHECK_THROWS_AS((void)(PadicScalar(a, 1) + PadicScalar(b, 1)), Error);
  // Equal parameters count as the same context.
  auto a2 = PrimeConfig::make(3, 1, 4);
  CHECK(PadicScalar(a, 2) * PadicScalar(a2, 3) == PadicScalar(a, 6));
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(PrimeConfig::make(2, 1, 4), Error);
  CHECK_THROWS_AS(PrimeConfig::make(9, 1, 4), Error);
  CHECK_THROWS_AS(PrimeConfig::make(3, 1, 0), Error);
  CHECK_THROWS_AS(PrimeConfig::make(3, 1, 60), Error);
}

TEST_CASE("teichmuller units") {
  auto c31 = PrimeConfig::make(3, 1, 6);
  auto units = teichmuller_units(c31, 2);
  REQUIRE(units.size() == 2);
  std::set<std::uint32_t> residues;
  for (const auto& u : units) {
    residues.insert(c31->residue_index(u.raw()));
    // Teichmüller lifts satisfy x^{q-1} = 1 exactly.
    CHECK(c31->pow(u.raw(), 2) == c31->from_int(1));
  }
  CHECK(residues == std::set<std::uint32_t>{1, 2});
  CHECK(teichmuller_units(c31, 0).empty());
  CHECK_THROWS_AS(teichmuller_units(c31, 3), Error);

  auto c32 = PrimeConfig::make(3, 2, 5);
  auto units9 = teichmuller_units(c32, 8);
  std::set<std::uint32_t> res9;
  for (const auto& u : units9) {
    res9.insert(c32->residue_index(u.raw()));
    CHECK(c32->pow(u.raw(), 8) == c32->from_int(1));
  }
  CHECK(res9.size() == 8);
  CHECK(res9.count(0) == 0);
}

TEST_CASE("unramified modulus is the smallest irreducible") {
  auto c = PrimeConfig::make(3, 2, 3);
  // x^2 + 1 is the first monic irreducible quadratic over F_3 in index order.
  CHECK(c->residue_modulus() == std::vector<std::int64_t>{1, 0, 1});
  auto c5 = PrimeConfig::make(5, 2, 3);
  // x^2 + 2 (digits 2,0): -2 is a non-square mod 5.
  CHECK(c5->residue_modulus() == std::vector<std::int64_t>{2, 0, 1});
}

TEST_CASE("ring axioms and valuation laws on random triples") {
  std::mt19937_64 rng(12345);
  for (auto [p, f, n] : {std::tuple{3, 1, 8}, std::tuple{5, 1, 8}, std::tuple{3, 2, 6}, std::tuple{5, 3, 4}}) {
    auto ctx = PrimeConfig::make(p, f, n);
    for (int trial = 0; trial < 200; ++trial) {
      auto a = random_scalar(ctx, rng);
      auto b = random_scalar(ctx, rng);
      auto c = random_scalar(ctx, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      const auto va = a.valuation();
      const auto vb = b.valuation();
      if (va.is_exact() && vb.is_exact() && va.value() + vb.value() < n) {
        CHECK((a * b).valuation() == Valuation::exact(va.value() + vb.value()));
      }
      const auto vs = (a + b).valuation();
      CHECK(vs.value() >= std::min(va.value(), vb.value()));
      if (a.is_unit()) {
        CHECK(a * a.inverse() == PadicScalar(ctx, 1));
        CHECK(a.inverse().inverse() == a);
      }
    }
  }
}

TEST_CASE("galois field basics") {
  GaloisField f9(3, 2);
  CHECK(f9.size() == 9);
  for (GaloisField::Elem a = 1; a < 9; ++a) {
    CHECK(f9.mul(a, f9.inv(a)) == 1);
    CHECK(f9.pow(a, 8) == 1);
    CHECK(f9.frobenius_root(f9.pow(a, 3), 1) == a);
  }
  GaloisField f3(3, 1);
  GfMatrix m{{1, 2}, {1, 2}};
  CHECK(gf_determinant(f3, m) == 0);
  std::vector<GaloisField::Elem> x;
  REQUIRE(gf_kernel_vector(f3, m, x));
  CHECK(f3.add(x[0], f3.mul(2, x[1])) == 0);
  CHECK(gf_rank(f3, {{1, 0}, {0, 1}, {1, 1}}) == 2);
}
