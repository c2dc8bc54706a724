#pragma once

#include "fgt/formal_group.hpp"
#include "fgt/ramified.hpp"
#include "fgt/strictness.hpp"

#include <optional>
#include <vector>

namespace fgt {

struct PolygonPoint {
  int degree = 0;
  Rational valuation;
};

struct PolygonSegment {
  int start = 0;
  int end = 0;
  /// Valuation of the roots on this segment, -(change in v)/(change in k).
  Rational slope;
  int multiplicity() const { return end - start; }
};

struct NewtonPolygon {
  std::vector<PolygonPoint> points;
  std::vector<PolygonPoint> vertices;
  std::vector<PolygonSegment> segments;
};

/// Lower hull of (k, v(a_k)) from the first nonzero coefficient to the first
/// unit coefficient of a univariate series.
NewtonPolygon newton_polygon(const MultiSeries& series);

struct ComponentTorsion {
  int index = 0;  // 1-based coordinate
  NewtonPolygon polygon;
  int form_degree = 0;   // d = p^h
  Rational valuation;    // 1 / (d - 1)
  int e_pred = 0;        // d - 1
  bool tame = false;
  /// The polygon has exactly one segment, of slope 1/(d-1) and length d-1.
  bool polygon_matches = false;
};

/// Support pattern of a torsion point of a product (true = nonzero coordinate).
struct TorsionClass {
  std::vector<bool> support;
  Rational min_valuation;
};

struct TorsionValuations {
  std::vector<ComponentTorsion> components;
  std::vector<TorsionClass> classes;  // products only
  StrictnessVerdict verdict;
  /// Set for non-product groups of dimension >= 2: valuation from the form
  /// degree only.
  bool predicted_only = false;
  std::optional<Rational> predicted_valuation;
  std::optional<int> e_pred;
};

TorsionValuations torsion_valuations(const FormalGroupLaw& law);

/// P(Z) = p + u Z^{d-1}, stored monic as Z^{d-1} + p u^{-1}.
struct EisensteinWitness {
  int d = 0;
  WElem u;
  ExtensionPtr ext;
};

struct TorsionRoot {
  EisensteinWitness witness;
  RamifiedElement z;
  Valuation v_z = Valuation::infinity();
  /// v([p](z)) for the truncated series.
  Valuation residual = Valuation::infinity();
  /// min(N - 1, (D + 1)/(d - 1)).
  Rational residual_claim;
  Valuation tail_bound = Valuation::infinity();
  int start_index = 0;  // Teichmüller start c used
  int newton_steps = 0;
};

/// Root of [p] of valuation 1/(d-1) in the extension cut out by the
/// Eisenstein witness; dimension one, strict.
TorsionRoot lift_torsion_root(const FormalGroupLaw& law);

struct RootGeometry {
  RamifiedElement theta;
  Valuation v_p_prime;
  Rational expected_v_p_prime;  // (d-2)/(d-1)
  Rational root_spacing;        // 1/(d-1)
  Valuation gap;                // v(z - theta)
  bool derivative_ok = false;
  bool krasner_ok = false;
};

RootGeometry eisenstein_root_geometry(const TorsionRoot& root);

struct TorsionPoint {
  std::vector<RamifiedElement> coords;
  std::vector<bool> structural_zero;
  int uniformizer_index = 0;  // 1-based
  Rational min_valuation;
  Valuation jacobian_valuation = Valuation::infinity();
};

struct TheoremBReport {
  TorsionValuations valuations;
  std::vector<TorsionRoot> roots;  // one per coordinate
  std::vector<RootGeometry> geometry;
  std::vector<TorsionPoint> points;
  int e = 0;
  bool tame = false;
  bool uniformizer_ok = false;
};

/// End-to-end check for strict groups of dimension one or equal-height
/// products. NotStrict, UnsupportedDimension otherwise.
TheoremBReport verify_theorem_B(const FormalGroupLaw& law);

struct CoordinateDelta {
  int point = 0;       // index into TheoremBReport::points
  int coordinate = 0;  // 1-based
  bool structural_zero = false;
  DeltaReport report;
};

struct O1Report {
  std::vector<CoordinateDelta> entries;
  Rational v_different;
  bool some_negative = false;
  bool uniformizer_matches = false;  // delta(x_u) = -v(D) at every point
  bool tame_value = false;           // and that equals -(e-1)/e
};

O1Report verify_O1_exclusion(const TheoremBReport& report);
O1Report verify_O1_exclusion(const FormalGroupLaw& law);

}  // namespace fgt
