// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include "oracles.hpp"

#include "fgt/error.hpp"
#include "fgt/report.hpp"
#include "fgt/strictness.hpp"
#include "fgt/torsion.hpp"

#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

using namespace fgt;

namespace {

constexpr int kPrecision = 8;

struct Bundled {
  std::string name;
  int p;
  GroupDescriptor group;
};

GroupDescriptor lubin_tate(int h) {
  GroupDescriptor g;
  g.kind = GroupDescriptor::Kind::kLubinTate;
  g.height = h;
  return g;
}

GroupDescriptor simple(GroupDescriptor::Kind kind) {
  GroupDescriptor g;
  g.kind = kind;
  return g;
}

GroupDescriptor elliptic(const WeierstrassCoeffs& a) {
  GroupDescriptor g;
  g.kind = GroupDescriptor::Kind::kElliptic;
  g.a = a;
  return g;
}

GroupDescriptor product(std::vector<GroupDescriptor> children) {
  GroupDescriptor g;
  g.kind = GroupDescriptor::Kind::kProduct;
  g.children = std::move(children);
  return g;
}

const WeierstrassCoeffs kSupersingular3{0, 0, 0, 1, 0};
const WeierstrassCoeffs kOrdinary3{0, 1, 0, 1, 1};
const WeierstrassCoeffs kSupersingular5{0, 0, 0, 0, 1};
const WeierstrassCoeffs kOrdinary5{0, 0, 0, 1, 1};

std::vector<Bundled> bundled_groups() {
  using K = GroupDescriptor::Kind;
  return {{"multiplicative p=3", 3, simple(K::kMultiplicative)},
          {"multiplicative p=5", 5, simple(K::kMultiplicative)},
          {"additive p=3", 3, simple(K::kAdditive)},
          {"additive p=5", 5, simple(K::kAdditive)},
          {"lubin_tate(1) p=3", 3, lubin_tate(1)},
          {"lubin_tate(2) p=3", 3, lubin_tate(2)},
          {"lubin_tate(1) p=5", 5, lubin_tate(1)},
          {"supersingular p=3", 3, elliptic(kSupersingular3)},
          {"ordinary p=3", 3, elliptic(kOrdinary3)},
          {"supersingular p=5", 5, elliptic(kSupersingular5)},
          {"ordinary p=5", 5, elliptic(kOrdinary5)},
          {"lubin_tate(2)^2 p=3", 3, product({lubin_tate(2), lubin_tate(2)})},
          {"multiplicative x lubin_tate(1) p=3", 3, product({simple(K::kMultiplicative), lubin_tate(1)})},
          {"lubin_tate(1)^3 p=3", 3, product({lubin_tate(1), lubin_tate(1), lubin_tate(1)})},
          {"lubin_tate(1) x lubin_tate(2) p=3", 3, product({lubin_tate(1), lubin_tate(2)})}};
}

FormalGroupLaw build(int p, const GroupDescriptor& g) {
  return build_group(PrimeConfig::make(p, 1, kPrecision), default_truncation(p, g), g);
}

bool is_strict_group(const FormalGroupLaw& law) {
  try {
    return decide_strict(extract_forms(mul_by_p(law))).is_strict;
  } catch (const Error&) {
    return false;
  }
}

/// Collects failures; a criterion passes when none were recorded.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  int checks() const { return checks_; }
  int failed() const { return failed_; }
  std::string summary() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

int g_failed = 0;

void criterion(int id, const std::string& title, const std::function<void(Checker&)>& body) {
  Checker c;
  std::string error;
  try {
    body(c);
  } catch (const Error& e) {
    error = std::string(error_code_name(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const bool pass = error.empty() && c.failed() == 0 && c.checks() > 0;
  if (!pass) ++g_failed;
  std::printf("%s criterion %2d: %s (%d checks)\n", pass ? "PASS" : "FAIL", id, title.c_str(), c.checks());
  if (!error.empty()) std::printf("      error: %s\n", error.c_str());
  if (c.failed() > 0) std::printf("      %d failed: %s\n", c.failed(), c.summary().c_str());
  std::fflush(stdout);
}

MultiSeries univariate(const ConfigPtr& ring, int trunc, const std::vector<std::pair<int, std::int64_t>>& terms) {
  MultiSeries out(ring, 1, trunc);
  for (auto [k, c] : terms) out = out + MultiSeries::monomial(ring, 1, trunc, Monomial::var(0, k), ring->from_int(c));
  return out;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Rational cyclotomic_different_oracle(int p, int r) { return Rational(r) - Rational(1, p - 1); }

Polynomial shifted_cyclotomic(const ConfigPtr& ring, int p, int r) {
  const Polynomial y = Polynomial::from_ints(ring, {1, 1});
  Polynomial ypow = Polynomial::from_ints(ring, {1});
  for (std::int64_t i = 0; i < ipow(p, r - 1); ++i) ypow = ypow * y;
  Polynomial acc = Polynomial::from_ints(ring, {0});
  Polynomial term = Polynomial::from_ints(ring, {1});
  for (int j = 0; j < p; ++j) {
    acc = acc + term;
    term = term * ypow;
  }
  return acc;
}

RamifiedElement random_element(const ExtensionPtr& ext, std::mt19937_64& rng) {
  std::vector<std::int64_t> c;
  for (int i = 0; i < ext->degree(); ++i) {
    std::int64_t v = static_cast<std::int64_t>(rng() % 200) - 100;
    if (rng() % 3 == 0) v *= ext->ring()->p();
    c.push_back(v);
  }
  return ext->element_from_ints(c);
}

/// G_i = sum_j A_ij X_j^d over F_p; roughly half the systems get a dependent last row.
std::vector<FfForm> random_frobenius_linear(int p, int g, int d, bool singular, std::mt19937_64& rng) {
  std::vector<std::vector<GaloisField::Elem>> a(static_cast<std::size_t>(g),
                                                std::vector<GaloisField::Elem>(static_cast<std::size_t>(g)));
  for (auto& row : a) {
    for (auto& x : row) x = static_cast<GaloisField::Elem>(rng() % static_cast<unsigned>(p));
  }
  if (singular) {
    const auto s = static_cast<GaloisField::Elem>(rng() % static_cast<unsigned>(p));
    for (int j = 0; j < g; ++j) {
      auto& last = a[static_cast<std::size_t>(g - 1)][static_cast<std::size_t>(j)];
      last = static_cast<GaloisField::Elem>((s * a[0][static_cast<std::size_t>(j)]) % static_cast<unsigned>(p));
    }
  }
  std::vector<FfForm> forms;
  for (int i = 0; i < g; ++i) {
    FfForm f;
    f.num_vars = g;
    f.degree = d;
    for (int j = 0; j < g; ++j) {
      const auto c = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (c) f.terms.push_back({Monomial::var(j, d), c});
    }
    forms.push_back(f);
  }
  return forms;
}

bool all_forms_nonzero(const std::vector<FfForm>& forms) {
  return std::all_of(forms.begin(), forms.end(), [](const FfForm& f) { return !f.is_zero(); });
}

bool is_common_zero(const FormSystem& fs, const CommonZero& z) {
  if (z.field->degree() != fs.field->degree()) return false;
  bool nonzero = false;
  for (auto x : z.point) nonzero = nonzero || x != 0;
  if (!nonzero) return false;
  for (const auto& G : fs.forms_G) {
    if (G.evaluate(*z.field, z.point) != 0) return false;
  }
  return true;
}

WMatrix random_unit_matrix(const ConfigPtr& ring, int g, std::mt19937_64& rng) {
  for (;;) {
    WMatrix m(static_cast<std::size_t>(g), std::vector<WElem>(static_cast<std::size_t>(g)));
    for (auto& row : m) {
      for (auto& x : row) x = ring->from_int(static_cast<std::int64_t>(rng() % 1000) - 500);
    }
    try {
      invert_matrix(ring, m);
      return m;
    } catch (const Error&) {
    }
  }
}

}  // namespace

int main() {
  criterion(1, "group-law axioms hold exactly for every bundled constructor", [](Checker& c) {
    for (const auto& b : bundled_groups()) {
      const auto law = build(b.p, b.group);
      c.expect(verify_group_axioms(law).all(), b.name);
    }
    // Larger truncations of the curves.
    for (const auto& a : {kSupersingular3, kOrdinary3}) {
      c.expect(verify_group_axioms(build_elliptic(PrimeConfig::make(3, 1, kPrecision), 30, a)).all(), "curve D=30");
    }
  });

  criterion(2, "multiplicative calibration", [](Checker& c) {
    for (int p : {3, 5}) {
      const auto law = build(p, simple(GroupDescriptor::Kind::kMultiplicative));
      const auto ring = law.ring();
      const int D = law.trunc_degree();
      const auto one_plus = univariate(ring, D, {{0, 1}, {1, 1}});
      auto power = univariate(ring, D, {{0, 1}});
      for (int i = 0; i < p; ++i) power = power * one_plus;
      c.expect(mul_by_p(law).f[0] == power - univariate(ring, D, {{0, 1}}), "[p](T) = (1+T)^p - 1");
      const auto tv = torsion_valuations(law);
      c.expect(tv.components[0].valuation == Rational(1, p - 1), "torsion valuation 1/(p-1)");
      const auto tb = verify_theorem_B(law);
      c.expect(tb.e == p - 1 && tb.tame, "e = p - 1, tame");
      const auto o1 = verify_O1_exclusion(tb);
      c.expect(o1.entries[0].report.delta == Valuation::exact(Rational(-(p - 2), p - 1)), "delta(root)");
      if (p == 3) c.expect(o1.entries[0].report.delta == Valuation::exact(Rational(-1, 2)), "delta(root) = -1/2");
    }
  });

  criterion(3, "Lubin-Tate laws for (3,1), (3,2), (5,1)", [](Checker& c) {
    for (auto [p, h] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}}) {
      const auto tag = "(" + std::to_string(p) + "," + std::to_string(h) + ")";
      const auto law = build(p, lubin_tate(h));
      const auto ring = law.ring();
      const int D = law.trunc_degree();
      const int d = static_cast<int>(ipow(p, h));
      const auto f = univariate(ring, D, {{1, p}, {d, 1}});
      const SeriesTuple fx{compose(f, std::vector{MultiSeries::variable(ring, 2, D, 0)}),
                           compose(f, std::vector{MultiSeries::variable(ring, 2, D, 1)})};
      const auto F = law.law()[0];
      c.expect(compose(F, fx) == compose(f, std::vector{F}), "F(f(X), f(Y)) = f(F(X, Y)) " + tag);
      c.expect(mul_by_p(law).f[0] == f, "[p] = f " + tag);
      c.expect(is_strict_group(law), "strict " + tag);
      const auto tv = torsion_valuations(law);
      const auto& seg = tv.components[0].polygon.segments;
      c.expect(seg.size() == 1 && seg[0].slope == Rational(1, d - 1) && seg[0].multiplicity() == d - 1,
               "slope 1/(p^h - 1) " + tag);
      const auto root = lift_torsion_root(law);
      c.expect(surely_at_least(root.residual, root.residual_claim), "root residual " + tag);
      const auto direct = evaluate(Polynomial::from_series(f), root.z);
      c.expect(surely_at_least(direct.valuation(), root.residual_claim), "f(z) residual " + tag);
      c.expect(tv.e_pred && *tv.e_pred == d - 1 && std::gcd(*tv.e_pred, p) == 1, "e_pred coprime to p " + tag);
    }
  });

  criterion(4, "supersingular y^2 = x^3 + x at p = 3", [](Checker& c) {
    c.expect(oracle::frobenius_trace(3, kSupersingular3) == 0, "trace 0");
    const auto law = build(3, elliptic(kSupersingular3));
    const auto fs = extract_forms(mul_by_p(law));
    c.expect(fs.degrees == std::vector<int>{9}, "d = 9");
    c.expect(decide_strict(fs).is_strict, "strict");
    const auto tb = verify_theorem_B(law);
    c.expect(tb.valuations.components[0].valuation == Rational(1, 8), "valuation 1/8");
    c.expect(tb.valuations.components[0].polygon_matches, "polygon slope 1/8");
    c.expect(tb.roots[0].v_z == Valuation::exact(Rational(1, 8)), "root valuation 1/8");
    c.expect(tb.e == 8 && tb.tame, "tame degree 8");
  });

  criterion(5, "ordinary y^2 = x^3 + x^2 + x + 1 at p = 3", [](Checker& c) {
    c.expect(oracle::frobenius_trace(3, kOrdinary3) % 3 != 0, "trace nonzero mod 3");
    const auto law = build(3, elliptic(kOrdinary3));
    const auto fs = extract_forms(mul_by_p(law));
    c.expect(fs.degrees == std::vector<int>{3}, "d = 3");
    const auto tb = verify_theorem_B(law);
    const auto& seg = tb.valuations.components[0].polygon.segments;
    c.expect(seg.size() == 1 && seg[0].slope == Rational(1, 2), "slope 1/2");
    c.expect(tb.e == 2 && tb.tame, "tame degree 2");
  });

  criterion(6, "strictness methods agree on 200 Frobenius-linear systems", [](Checker& c) {
    std::mt19937_64 rng(2024);
    int trials = 0;
    while (trials < 200) {
      const int p = trials % 2 == 0 ? 3 : 5;
      const int g = 2 + static_cast<int>(rng() % 2);
      const int d = (p == 3 && rng() % 3 == 0) ? 9 : p;
      const bool singular = rng() % 2 == 0;
      const auto forms = random_frobenius_linear(p, g, d, singular, rng);
      if (!all_forms_nonzero(forms)) continue;
      ++trials;
      const auto ring = PrimeConfig::make(p, 1, 4);
      const auto fs = forms_from_residues(ring, forms);
      const auto tag = "trial " + std::to_string(trials);
      const auto shortcut = decide_strict(fs);
      c.expect(shortcut.method == StrictMethod::kDeterminantShortcut, tag + " shortcut used");
      c.expect(shortcut.determinant.has_value(), tag + " determinant reported");
      const bool det_zero = shortcut.determinant && *shortcut.determinant == 0;
      c.expect(shortcut.is_strict == !det_zero, tag + " strict iff det != 0");
      const auto macaulay = decide_strict_macaulay(fs);
      c.expect(macaulay.is_strict == shortcut.is_strict, tag + " Macaulay agrees");
      std::optional<CommonZero> found;
      for (int k = 1; k <= 2 && !found; ++k) found = brute_force_common_zero(fs, k);
      c.expect(found.has_value() == det_zero, tag + " brute force agrees");
      if (found) c.expect(is_common_zero(fs, *found), tag + " brute-force witness");
      if (shortcut.witness) c.expect(is_common_zero(fs, *shortcut.witness), tag + " shortcut witness");
    }
  });

  criterion(7, "verdict unchanged under 50 unit-determinant coordinate changes", [](Checker& c) {
    std::mt19937_64 rng(77);
    struct Pool {
      FormSystem fs;
      std::optional<MulPSeries> fp;
    };
    std::vector<Pool> pool;
    for (const auto& b : bundled_groups()) {
      const auto law = build(b.p, b.group);
      if (law.dim() < 2 || !is_strict_group(law)) continue;
      auto fp = mul_by_p(law);
      pool.push_back({extract_forms(fp), fp});
    }
    for (int p : {3, 5}) {
      const auto ring = PrimeConfig::make(p, 1, kPrecision);
      for (int g : {2, 3}) {
        // Frobenius-linear and generic strict systems.
        for (int kind = 0; kind < 2; ++kind) {
          for (;;) {
            std::vector<FfForm> forms;
            if (kind == 0) {
              forms = random_frobenius_linear(p, g, p, false, rng);
            } else {
              for (int i = 0; i < g; ++i) {
                FfForm f;
                f.num_vars = g;
                f.degree = p;
                for (const auto& m : monomials_of_degree(g, p)) {
                  const auto coeff = static_cast<GaloisField::Elem>(rng() % static_cast<unsigned>(p));
                  if (coeff) f.terms.push_back({m, coeff});
                }
                forms.push_back(f);
              }
            }
            if (!all_forms_nonzero(forms)) continue;
            auto fs = forms_from_residues(ring, forms);
            if (!decide_strict(fs).is_strict) continue;
            pool.push_back({fs, std::nullopt});
            break;
          }
        }
      }
    }
    for (int trial = 0; trial < 50; ++trial) {
      const auto& entry = pool[static_cast<std::size_t>(trial) % pool.size()];
      const auto ring = entry.fs.forms_F.front().ring();
      const auto m = random_unit_matrix(ring, entry.fs.g, rng);
      const auto tag = "trial " + std::to_string(trial);
      const auto moved = transform_forms(entry.fs, m);
      c.expect(decide_strict(moved).is_strict, tag + " strict after change");
      c.expect(decide_strict_macaulay(moved).is_strict, tag + " Macaulay strict after change");
      if (entry.fp) {
        const auto direct = extract_forms(change_coordinates(*entry.fp, m));
        c.expect(decide_strict(direct).is_strict, tag + " conjugated [p]-series strict");
      }
    }
  });

  criterion(8, "delta properties on 500 pairs and presentation independence", [](Checker& c) {
    std::mt19937_64 rng(8);
    const auto ring = PrimeConfig::make(3, 1, 10);
    const std::vector<ExtensionPtr> exts{EisensteinExtension::pure(ring, 2, -3), EisensteinExtension::pure(ring, 4, 3),
                                         EisensteinExtension::pure(ring, 8, 3),
                                         EisensteinExtension::make(shifted_cyclotomic(ring, 3, 2))};
    for (int i = 0; i < 500; ++i) {
      const auto& ext = exts[static_cast<std::size_t>(i) % exts.size()];
      const auto a = random_element(ext, rng);
      const auto b = random_element(ext, rng);
      const auto f = Polynomial::from_ints(ring, {static_cast<std::int64_t>(rng() % 9), static_cast<std::int64_t>(rng() % 9),
                                                  static_cast<std::int64_t>(rng() % 9), 1});
      const auto rep = delta_properties_check(a, b, f);
      const auto tag = "pair " + std::to_string(i) + " e=" + std::to_string(ext->degree());
      c.expect(rep.additive, tag + " (1)");
      c.expect(rep.product, tag + " (2)");
      c.expect(rep.polynomial_image, tag + " (3)");
      c.expect(rep.annihilation, tag + " (4)");
    }
    // sqrt(-3) inside (-3)^(1/4) inside (-3)^(1/8).
    const auto ring8 = PrimeConfig::make(3, 1, kPrecision);
    const auto L2 = EisensteinExtension::pure(ring8, 2, -3);
    const auto L4 = EisensteinExtension::pure(ring8, 4, -3);
    const auto L8 = EisensteinExtension::pure(ring8, 8, -3);
    const auto sq = [](const RamifiedElement& x) { return x * x; };
    const std::vector<std::tuple<ExtensionPtr, ExtensionPtr, RamifiedElement>> towers{
        {L2, L4, sq(L4->uniformizer())}, {L4, L8, sq(L8->uniformizer())}, {L2, L8, sq(sq(L8->uniformizer()))}};
    for (const auto& [small, large, image] : towers) {
      for (int i = 0; i < 30; ++i) {
        const auto x = random_element(small, rng);
        const auto moved = change_presentation(x, large, image);
        c.expect(delta(x).delta == delta(moved).delta, "nested radical e=" + std::to_string(small->degree()) + "->" +
                                                             std::to_string(large->degree()));
      }
      c.expect(delta(change_presentation(small->uniformizer(), large, image)).delta ==
                   Valuation::exact(Rational(1 - small->degree(), small->degree())),
               "uniformizer of the smaller field");
    }
  });

  criterion(9, "different valuations against tame and cyclotomic oracles", [](Checker& c) {
    for (int p : {3, 5}) {
      const auto ring = PrimeConfig::make(p, 1, kPrecision);
      for (int e = 2; e <= 10; ++e) {
        if (e % p == 0) continue;
        for (std::int64_t unit : {1, -1, 2}) {
          const auto ext = EisensteinExtension::pure(ring, e, unit * p);
          c.expect(different_valuation(*ext) == Valuation::exact(Rational(e - 1, e)),
                   "tame e=" + std::to_string(e) + " p=" + std::to_string(p));
        }
      }
      const int max_r = p == 3 ? 3 : 2;
      for (int r = 1; r <= max_r; ++r) {
        const auto ext = EisensteinExtension::make(shifted_cyclotomic(ring, p, r));
        c.expect(different_valuation(*ext) == Valuation::exact(cyclotomic_different_oracle(p, r)),
                 "cyclotomic p^" + std::to_string(r) + " p=" + std::to_string(p));
      }
    }
    const auto ring = PrimeConfig::make(3, 1, kPrecision);
    c.expect(different_valuation(*EisensteinExtension::make(shifted_cyclotomic(ring, 3, 2))) ==
                 Valuation::exact(Rational(3, 2)),
             "Phi_9(1+X) gives 3/2");
  });

  std::vector<TheoremBReport> strict_reports;
  std::vector<std::string> strict_names;
  for (const auto& b : bundled_groups()) {
    try {
      const auto law = build(b.p, b.group);
      if (!is_strict_group(law)) continue;
      strict_reports.push_back(verify_theorem_B(law));
      strict_names.push_back(b.name);
    } catch (const Error& e) {
      std::printf("      %s: %s\n", b.name.c_str(), e.what());
    }
  }

  criterion(10, "every strict bundled group has delta < 0 at its uniformizer coordinate", [&](Checker& c) {
    c.expect(strict_reports.size() == 12, "twelve strict bundled groups");
    for (std::size_t i = 0; i < strict_reports.size(); ++i) {
      const auto o1 = verify_O1_exclusion(strict_reports[i]);
      c.expect(o1.some_negative, strict_names[i] + " some coordinate with delta < 0");
      bool exact = !o1.entries.empty();
      for (const auto& pt : strict_reports[i].points) {
        const auto u = static_cast<std::size_t>(pt.uniformizer_index - 1);
        const auto rep = delta(pt.coords[u]);
        exact = exact && rep.delta == Valuation::exact(-o1.v_different);
      }
      c.expect(exact, strict_names[i] + " delta(x_u) = -v(D)");
      c.expect(o1.uniformizer_matches && o1.tame_value, strict_names[i] + " report flags");
    }
  });

  criterion(11, "Eisenstein root geometry at every lifted witness", [&](Checker& c) {
    for (std::size_t i = 0; i < strict_reports.size(); ++i) {
      for (std::size_t k = 0; k < strict_reports[i].roots.size(); ++k) {
        const auto& root = strict_reports[i].roots[k];
        const auto& geo = strict_reports[i].geometry[k];
        const int d = root.witness.d;
        c.expect(geo.v_p_prime == Valuation::exact(Rational(d - 2, d - 1)), strict_names[i] + " v(P'(theta))");
        c.expect(surely_greater(geo.gap, Valuation::exact(Rational(1, d - 1))), strict_names[i] + " Krasner gap");
        c.expect(geo.derivative_ok && geo.krasner_ok, strict_names[i] + " report flags");
      }
    }
  });

  std::printf("%s: %d criteria failed\n", g_failed == 0 ? "ACCEPTED" : "REJECTED", g_failed);
  return g_failed == 0 ? 0 : 1;
}
