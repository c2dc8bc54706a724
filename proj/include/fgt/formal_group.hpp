#pragma once

#include "fgt/power_series.hpp"
#include "fgt/ramified.hpp"
#include "fgt/scalar.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace fgt {

/// How a law was built; echoed into reports.
struct GroupDescriptor {
  enum class Kind { kMultiplicative, kAdditive, kLubinTate, kElliptic, kProduct };

  Kind kind = Kind::kMultiplicative;
  int height = 0;                        // Lubin-Tate only
  std::array<std::int64_t, 5> a{};       // elliptic: a1, a2, a3, a4, a6
  std::vector<GroupDescriptor> children;  // product only

  std::string kind_name() const;
  std::string str() const;
};

/// Weierstrass coefficients a1, a2, a3, a4, a6 of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
using WeierstrassCoeffs = std::array<std::int64_t, 5>;

/// A commutative formal group law of dimension g: g series in the 2g
/// variables (X1..Xg, Y1..Yg).
class FormalGroupLaw {
 public:
  FormalGroupLaw(int dim, SeriesTuple law, GroupDescriptor provenance);

  int dim() const { return dim_; }
  const SeriesTuple& law() const { return law_; }
  const GroupDescriptor& provenance() const { return provenance_; }
  const ConfigPtr& ring() const { return law_.front().ring(); }
  int trunc_degree() const { return law_.front().trunc_degree(); }

  /// Children of a product in order; a one-element list holding *this
  /// for anything else.
  std::vector<FormalGroupLaw> factors() const;

 private:
  int dim_;
  SeriesTuple law_;
  GroupDescriptor provenance_;
  std::vector<FormalGroupLaw> children_;

  friend FormalGroupLaw build_product(const std::vector<FormalGroupLaw>& children);
};

/// X + Y + XY.
FormalGroupLaw build_multiplicative(const ConfigPtr& ring, int trunc);
/// X + Y.
FormalGroupLaw build_additive(const ConfigPtr& ring, int trunc);
/// The law with endomorphism f(x) = p x + x^{p^h}, solved degree by degree.
/// Requires p^h <= trunc.
FormalGroupLaw build_lubin_tate(const ConfigPtr& ring, int trunc, int height);
/// The formal group of the Weierstrass curve in the parameter t = -x/y.
/// SingularReduction unless the discriminant is a unit.
FormalGroupLaw build_elliptic(const ConfigPtr& ring, int trunc, const WeierstrassCoeffs& a);
/// Block-diagonal law; the children must share the ring and truncation.
FormalGroupLaw build_product(const std::vector<FormalGroupLaw>& children);

/// Discriminant of the Weierstrass model, in W/p^N.
WElem elliptic_discriminant(const ConfigPtr& ring, const WeierstrassCoeffs& a);

/// [n](X) = F(X, [n-1](X)), a g-tuple in g variables.
SeriesTuple mul_by_int(const FormalGroupLaw& law, int n);

/// The [p]-series f_1, ..., f_g.
struct MulPSeries {
  SeriesTuple f;

  int dim() const { return static_cast<int>(f.size()); }
  const ConfigPtr& ring() const { return f.front().ring(); }
  int trunc_degree() const { return f.front().trunc_degree(); }
};

MulPSeries mul_by_p(const FormalGroupLaw& law);

struct AxiomReport {
  bool left_unit = false;
  bool right_unit = false;
  bool commutative = false;
  bool associative = false;

  bool all() const { return left_unit && right_unit && commutative && associative; }
};

/// Exact term comparisons to the truncation degree.
AxiomReport verify_group_axioms(const FormalGroupLaw& law);

/// det(d f_s / d X_j) at a point of positive valuation.
RamifiedElement jacobian_det_at(const MulPSeries& fp, std::span<const RamifiedElement> point);

}  // namespace fgt
