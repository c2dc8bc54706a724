#pragma once

#include "fgt/formal_group.hpp"
#include "fgt/galois_field.hpp"
#include "fgt/power_series.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fgt {

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Homogeneous polynomial over a finite field; terms in graded-lex order.
struct FfForm {
  struct Term {
    Monomial mono;
    GaloisField::Elem coeff;
  };
  int num_vars = 0;
  int degree = 0;
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  GaloisField::Elem evaluate(const GaloisField& field, const std::vector<GaloisField::Elem>& x) const;
  std::string to_string(const GaloisField& field) const;
};

/// Minimal-degree unit parts F_i of a [p]-series and their reductions G_i
/// over the residue field F_q.
struct FormSystem {
  int g = 0;
  std::vector<int> degrees;
  std::vector<MultiSeries> forms_F;
  std::vector<FfForm> forms_G;
  /// Non-unit monomials of degree d_i left out of F_i.
  std::vector<int> excluded;
  FieldPtr field;
};

/// Residue field F_q of a prime configuration, in the same encoding as
/// PrimeConfig::residue_index.
FieldPtr residue_field(const ConfigPtr& ring);

FormSystem extract_forms(const MulPSeries& fp);

/// A system given directly by forms over F_q; F_i are coordinatewise lifts.
FormSystem forms_from_residues(const ConfigPtr& ring, const std::vector<FfForm>& forms);

struct CommonZero {
  int ext_degree = 1;  // the point lies in F_{p^ext_degree}
  FieldPtr field;
  std::vector<GaloisField::Elem> point;

  std::string str() const;
};

enum class StrictReason { kOnlyTrivialZero, kUnequalDegrees, kNontrivialCommonZero };
enum class StrictMethod { kDegreeComparison, kDeterminantShortcut, kMacaulayRank, kBruteForce };

std::string reason_name(StrictReason r);
std::string method_name(StrictMethod m);

struct StrictnessVerdict {
  bool is_strict = false;
  StrictReason reason = StrictReason::kOnlyTrivialZero;
  StrictMethod method = StrictMethod::kDegreeComparison;
  std::vector<int> degrees;
  std::optional<GaloisField::Elem> determinant;  // shortcut only
  /// Macaulay: first degree where the graded piece fills up, or the bound
  /// degree at which it is still deficient.
  std::optional<int> macaulay_degree;
  std::optional<std::size_t> macaulay_rank;
  std::optional<std::size_t> macaulay_columns;
  std::optional<CommonZero> witness;
};

/// True when every G_i is a combination of pure d-th powers X_j^d with the
/// same d for all i.
bool is_frobenius_linear(const FormSystem& fs);

StrictnessVerdict decide_strict(const FormSystem& fs);
/// Forces the graded-rank method (skipping the shortcut); for cross-checks.
StrictnessVerdict decide_strict_macaulay(const FormSystem& fs);

/// Rank of the degree-t piece of (G_1, ..., G_g) and the number of degree-t
/// monomials.
std::pair<std::size_t, std::size_t> macaulay_rank(const FormSystem& fs, int t);

/// Searches F_{p^k}^g for a nonzero common zero; k must be a multiple of f.
/// BudgetExceeded when p^{k g} exceeds 10^6.
std::optional<CommonZero> brute_force_common_zero(const FormSystem& fs, int k);

/// g x g matrix over W.
using WMatrix = std::vector<std::vector<WElem>>;

/// Inverse over W; NonUnitDeterminant unless det is a unit.
WMatrix invert_matrix(const ConfigPtr& ring, const WMatrix& m);

/// The [p]-series in the coordinates Y = M X: M f(M^{-1} Y).
MulPSeries change_coordinates(const MulPSeries& fp, const WMatrix& m);

/// Forms of the coordinate change: F'_i = sum_j M_ij F_j(M^{-1} X), kept to
/// unit monomials. Requires equal degrees and det(M) a unit.
FormSystem transform_forms(const FormSystem& fs, const WMatrix& m);

}  // namespace fgt
