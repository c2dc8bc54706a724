#include "fgt/torsion.hpp"

#include "fgt/error.hpp"

#include <numeric>

namespace fgt {

namespace {

Rational cross(const PolygonPoint& o, const PolygonPoint& a, const PolygonPoint& b) {
  return Rational(a.degree - o.degree) * (b.valuation - o.valuation) -
         (a.valuation - o.valuation) * Rational(b.degree - o.degree);
}

int first_unit_degree(const MultiSeries& s) {
  for (const auto& t : s.terms()) {
    if (s.ring()->is_unit(t.coeff)) return t.mono.degree();
  }
  return -1;
}

}  // namespace

NewtonPolygon newton_polygon(const MultiSeries& series) {
  if (series.num_vars() != 1) throw Error(ErrorCode::kShapeMismatch, "Newton polygon needs a univariate series");
  const auto& ring = series.ring();
  const int d = first_unit_degree(series);
  if (d < 0) {
    throw Error(ErrorCode::kNoUnitCoefficient,
                "no unit coefficient up to degree " + std::to_string(series.trunc_degree()));
  }
  NewtonPolygon poly;
  for (const auto& t : series.terms()) {
    const int k = t.mono.e[0];
    if (k > d) break;
    poly.points.push_back({k, Rational(ring->val_int(t.coeff))});
  }
  // Lower hull by the monotone chain.
  for (const auto& pt : poly.points) {
    while (poly.vertices.size() >= 2 &&
           cross(poly.vertices[poly.vertices.size() - 2], poly.vertices.back(), pt) <= Rational(0)) {
      poly.vertices.pop_back();
    }
    poly.vertices.push_back(pt);
  }
  // Absent coefficients only say v >= N; they matter if that floor dips below the hull.
  const Rational floor(ring->precision());
  for (std::size_t i = 0; i + 1 < poly.vertices.size(); ++i) {
    const auto& a = poly.vertices[i];
    const auto& b = poly.vertices[i + 1];
    const Rational slope = (b.valuation - a.valuation) / Rational(b.degree - a.degree);
    for (int k = a.degree + 1; k < b.degree; ++k) {
      if (a.valuation + slope * Rational(k - a.degree) > floor) {
        throw Error(ErrorCode::kIndeterminatePrecision, "hull rests on a coefficient below the precision floor");
      }
    }
    poly.segments.push_back({a.degree, b.degree, -slope});
  }
  return poly;
}

namespace {

bool single_segment(const NewtonPolygon& poly, int d) {
  return poly.segments.size() == 1 && poly.segments[0].start == 1 && poly.segments[0].end == d &&
         poly.segments[0].slope == Rational(1, d - 1);
}

ComponentTorsion component_report(const MultiSeries& fp, int index) {
  ComponentTorsion c;
  c.index = index;
  c.polygon = newton_polygon(fp);
  c.form_degree = c.polygon.points.back().degree;
  if (c.form_degree < 2) throw Error(ErrorCode::kNonPPowerDegree, "[p] has a unit linear coefficient");
  c.valuation = Rational(1, c.form_degree - 1);
  c.e_pred = c.form_degree - 1;
  c.tame = std::gcd(c.e_pred, fp.ring()->p()) == 1;
  c.polygon_matches = single_segment(c.polygon, c.form_degree);
  return c;
}

// Univariate view of a series in one coordinate of a product [p].
MultiSeries coordinate_series(const MultiSeries& s, int j) {
  std::vector<Term> terms;
  for (const auto& t : s.terms()) {
    if (t.mono.degree() != t.mono.e[static_cast<std::size_t>(j)]) {
      throw Error(ErrorCode::kUnsupportedDimension, "product component is not block diagonal");
    }
    terms.push_back(Term{Monomial::var(0, t.mono.e[static_cast<std::size_t>(j)]), 0, t.coeff});
  }
  return MultiSeries::from_terms(s.ring(), 1, s.trunc_degree(), std::move(terms));
}

bool is_product_of_lines(const FormalGroupLaw& law) {
  for (const auto& f : law.factors()) {
    if (f.dim() != 1) return false;
  }
  return true;
}

}  // namespace

TorsionValuations torsion_valuations(const FormalGroupLaw& law) {
  TorsionValuations out;
  const auto fp = mul_by_p(law);
  const auto fs = extract_forms(fp);
  out.verdict = decide_strict(fs);
  if (!is_product_of_lines(law)) {
    out.predicted_only = true;
    if (out.verdict.is_strict) {
      out.predicted_valuation = Rational(1, fs.degrees.front() - 1);
      out.e_pred = fs.degrees.front() - 1;
    }
    return out;
  }
  for (int j = 0; j < law.dim(); ++j) {
    out.components.push_back(component_report(coordinate_series(fp.f[static_cast<std::size_t>(j)], j), j + 1));
  }
  if (out.verdict.is_strict) out.e_pred = out.components.front().e_pred;
  if (law.dim() > 1) {
    const int g = law.dim();
    if (g > 9) throw Error(ErrorCode::kUnsupportedDimension, "too many torsion classes");
    for (unsigned mask = 1; mask < (1U << g); ++mask) {
      TorsionClass cls;
      std::optional<Rational> best;
      for (int j = 0; j < g; ++j) {
        const bool on = (mask >> j) & 1U;
        cls.support.push_back(on);
        if (on && (!best || out.components[static_cast<std::size_t>(j)].valuation < *best)) {
          best = out.components[static_cast<std::size_t>(j)].valuation;
        }
      }
      cls.min_valuation = *best;
      out.classes.push_back(std::move(cls));
    }
  }
  return out;
}

namespace {

struct LiftAttempt {
  RamifiedElement z;
  int steps;
};

// Newton from z0; accepted once the iterate has the expected valuation and
// meets the strict Hensel inequality.
std::optional<LiftAttempt> try_start(const MultiSeries& f, const MultiSeries& df, RamifiedElement z,
                                     const Rational& target) {
  constexpr int kPreSteps = 4;
  for (int step = 0; step <= kPreSteps; ++step) {
    std::vector<RamifiedElement> pt{z};
    const auto fz = evaluate(f, pt).value;
    const auto dfz = evaluate(df, pt).value;
    const auto vf = fz.valuation();
    const auto vdf = dfz.valuation();
    if (!vdf.is_exact()) return std::nullopt;
    const bool on_circle = z.valuation() == Valuation::exact(target);
    if (on_circle && surely_greater(vf, Valuation::exact(vdf.value() * 2))) return LiftAttempt{z, step};
    if (step == kPreSteps || !vf.is_exact()) return std::nullopt;
    try {
      z = z - fz.divide(dfz);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

TorsionRoot lift_torsion_root(const FormalGroupLaw& law) {
  if (law.dim() != 1) throw Error(ErrorCode::kUnsupportedDimension, "lift_torsion_root needs dimension one");
  const auto& ring = law.ring();
  if (ring->precision() < 4) throw Error(ErrorCode::kInvalidArgument, "lifting needs N >= 4");
  const auto f = mul_by_p(law).f.front();
  const int d = first_unit_degree(f);
  if (d < 0) {
    throw Error(ErrorCode::kNoUnitCoefficient, "[p] has no unit coefficient up to degree " + std::to_string(f.trunc_degree()));
  }
  if (d < 2) throw Error(ErrorCode::kNonPPowerDegree, "[p] has a unit linear coefficient");
  const auto df = f.partial_derivative(0);

  EisensteinWitness witness;
  witness.d = d;
  witness.u = f.coefficient(Monomial::var(0, d));
  std::vector<WElem> E(static_cast<std::size_t>(d - 1), WElem{});
  E.front() = ring->mul(ring->from_int(ring->p()), ring->inverse(witness.u));
  E.push_back(ring->from_int(1));
  witness.ext = EisensteinExtension::make(Polynomial(ring, E));
  const auto& ext = witness.ext;
  const Rational target(1, d - 1);
  const int max_starts = static_cast<int>(std::min<std::int64_t>(ring->q() - 1, 64));
  const auto starts = teichmuller_units(ring, max_starts);

  for (int idx = 0; idx < max_starts; ++idx) {
    const auto z0 = ext->uniformizer().scaled(starts[static_cast<std::size_t>(idx)].raw());
    auto attempt = try_start(f, df, z0, target);
    if (!attempt) continue;
    RamifiedElement z = attempt->z;
    int steps = attempt->steps;
    // Quadratic convergence: about log2(eN) more steps reach the floor.
    const int limit = 2 * (d - 1) * ring->precision() + 4;
    for (int known = 1; known < limit; known *= 2) {
      std::vector<RamifiedElement> pt{z};
      const auto fz = evaluate(f, pt).value;
      if (fz.is_zero()) break;
      z = z - fz.divide(evaluate(df, pt).value);
      ++steps;
    }
    std::vector<RamifiedElement> pt{z};
    const auto val = evaluate(f, pt);
    const Rational claim = std::min(Rational(ring->precision() - 1), Rational(f.trunc_degree() + 1, d - 1));
    TorsionRoot out{witness, z, z.valuation(), val.value.valuation(), claim, val.tail_bound, idx, steps};
    if (!(out.v_z == Valuation::exact(target)) || !surely_at_least(out.residual, out.residual_claim)) {
      throw Error(ErrorCode::kLiftDiverged, "Newton iteration left the valuation-1/(d-1) circle");
    }
    return out;
  }
  throw Error(ErrorCode::kLiftDiverged, "no Teichmüller start met the lifting criterion");
}

RootGeometry eisenstein_root_geometry(const TorsionRoot& root) {
  const auto& ext = root.witness.ext;
  const auto& ring = ext->ring();
  const int d = root.witness.d;
  if ((d - 1) % ring->p() == 0) throw Error(ErrorCode::kInvalidArgument, "d - 1 must be prime to p");
  // z = c1 pi + ..., and theta = pi * omega(c1) is the root of P next to z.
  const auto& c = root.z.coeffs();
  const WElem c1 = c.size() > 1 ? c[1] : WElem{};
  if (!ring->is_unit(c1)) {
    throw Error(ErrorCode::kIndeterminatePrecision, "root has no unit pi-coefficient");
  }
  RootGeometry g{ext->uniformizer().scaled(teichmuller_lift(*ring, c1)), Valuation::infinity(), Rational(d - 2, d - 1),
                 Rational(1, d - 1), Valuation::infinity()};
  if (!evaluate(ext->polynomial(), g.theta).valuation().is_lower_bound()) {
    throw Error(ErrorCode::kIndeterminatePrecision, "matched theta is not a root of P");
  }
  g.v_p_prime = evaluate(ext->polynomial().derivative(), g.theta).valuation();
  g.derivative_ok = g.v_p_prime == Valuation::exact(g.expected_v_p_prime);
  g.gap = (root.z - g.theta).valuation();
  g.krasner_ok = surely_greater(g.gap, Valuation::exact(g.root_spacing));
  return g;
}

TheoremBReport verify_theorem_B(const FormalGroupLaw& law) {
  TheoremBReport rep;
  rep.valuations = torsion_valuations(law);
  if (rep.valuations.predicted_only) {
    throw Error(ErrorCode::kUnsupportedDimension, "torsion roots need dimension one or a product of such groups");
  }
  if (!rep.valuations.verdict.is_strict) {
    throw Error(ErrorCode::kNotStrict, "torsion witnesses need a strict group (" + reason_name(rep.valuations.verdict.reason) + ")");
  }
  const auto factors = law.factors();
  for (const auto& f : factors) {
    rep.roots.push_back(lift_torsion_root(f));
    rep.geometry.push_back(eisenstein_root_geometry(rep.roots.back()));
  }
  const int g = law.dim();
  rep.e = rep.roots.front().witness.d - 1;
  rep.tame = std::gcd(rep.e, law.ring()->p()) == 1;

  const auto fp = mul_by_p(law);
  auto make_point = [&](const std::vector<bool>& support) {
    const auto& ext = rep.roots[static_cast<std::size_t>(std::find(support.begin(), support.end(), true) - support.begin())].witness.ext;
    TorsionPoint pt;
    std::optional<Rational> best;
    for (int j = 0; j < g; ++j) {
      const bool on = support[static_cast<std::size_t>(j)];
      pt.coords.push_back(on ? rep.roots[static_cast<std::size_t>(j)].z : ext->zero());
      pt.structural_zero.push_back(!on);
      if (!on) continue;
      const auto v = pt.coords.back().valuation().require_exact("torsion coordinate");
      if (!best || v < *best) best = v;
      if (pt.uniformizer_index == 0 && v == Rational(1, rep.e)) pt.uniformizer_index = j + 1;
    }
    pt.min_valuation = *best;
    pt.jacobian_valuation = jacobian_det_at(fp, pt.coords).valuation();
    return pt;
  };
  for (int j = 0; j < g; ++j) {
    std::vector<bool> support(static_cast<std::size_t>(g), false);
    support[static_cast<std::size_t>(j)] = true;
    rep.points.push_back(make_point(support));
  }
  if (g > 1) {
    bool shared = true;
    for (const auto& r : rep.roots) shared = shared && r.witness.ext->same_as(*rep.roots.front().witness.ext);
    if (shared) rep.points.push_back(make_point(std::vector<bool>(static_cast<std::size_t>(g), true)));
  }
  rep.uniformizer_ok = true;
  for (const auto& pt : rep.points) rep.uniformizer_ok = rep.uniformizer_ok && pt.uniformizer_index != 0;
  return rep;
}

O1Report verify_O1_exclusion(const TheoremBReport& report) {
  O1Report out;
  out.v_different = different_valuation(*report.roots.front().witness.ext).value();
  out.uniformizer_matches = true;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& pt = report.points[i];
    bool negative_here = false;
    for (std::size_t j = 0; j < pt.coords.size(); ++j) {
      CoordinateDelta cd;
      cd.point = static_cast<int>(i);
      cd.coordinate = static_cast<int>(j) + 1;
      cd.structural_zero = pt.structural_zero[j];
      cd.report = delta(pt.coords[j]);
      negative_here = negative_here || cd.report.delta.value() < Rational(0);
      if (cd.coordinate == pt.uniformizer_index) {
        const Rational vd = cd.report.v_different.value();
        out.uniformizer_matches = out.uniformizer_matches && cd.report.delta == Valuation::exact(-vd);
      }
      out.entries.push_back(std::move(cd));
    }
    out.some_negative = (i == 0 ? true : out.some_negative) && negative_here;
  }
  if (report.points.empty()) out.uniformizer_matches = false;
  out.tame_value = out.v_different == Rational(report.e - 1, report.e);
  return out;
}

O1Report verify_O1_exclusion(const FormalGroupLaw& law) { return verify_O1_exclusion(verify_theorem_B(law)); }

}  // namespace fgt
