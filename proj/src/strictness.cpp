#include "fgt/strictness.hpp"

#include "fgt/error.hpp"

#include <sstream>

namespace fgt {

namespace {

using Elem = GaloisField::Elem;

bool is_p_power(int d, int p, int& h) {
  h = 0;
  while (d % p == 0) {
    d /= p;
    ++h;
  }
  return d == 1 && h >= 1;
}

FfForm reduce_form(const PrimeConfig& ring, const MultiSeries& s, int degree) {
  FfForm out;
  out.num_vars = s.num_vars();
  out.degree = degree;
  for (const auto& t : s.terms()) {
    const Elem c = ring.residue_index(t.coeff);
    if (c != 0) out.terms.push_back({t.mono, c});
  }
  return out;
}

Elem monomial_value(const GaloisField& field, const Monomial& m, const std::vector<Elem>& x) {
  Elem v = field.one();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (m.e[j] != 0) v = field.mul(v, field.pow(x[j], m.e[j]));
  }
  return v;
}

std::uint64_t int_pow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

constexpr std::size_t kMaxMacaulayColumns = 20000;
constexpr std::uint64_t kBruteForceBudget = 1000000;

}  // namespace

Elem FfForm::evaluate(const GaloisField& field, const std::vector<Elem>& x) const {
  Elem acc = field.zero();
  for (const auto& t : terms) acc = field.add(acc, field.mul(t.coeff, monomial_value(field, t.mono, x)));
  return acc;
}

std::string FfForm::to_string(const GaloisField& field) const {
  if (terms.empty()) return "0";
  const auto names = default_variable_names(num_vars);
  std::ostringstream out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out << " + ";
    const auto& t = terms[i];
    bool need_star = false;
    if (t.coeff != 1) {
      out << field.to_string(t.coeff);
      need_star = true;
    }
    for (int j = 0; j < num_vars; ++j) {
      const int e = t.mono.e[static_cast<std::size_t>(j)];
      if (e == 0) continue;
      out << (need_star ? "*" : "") << names[static_cast<std::size_t>(j)];
      if (e > 1) out << "^" << e;
      need_star = true;
    }
  }
  return out.str();
}

FieldPtr residue_field(const ConfigPtr& ring) {
  return std::make_shared<const GaloisField>(ring->p(), ring->residue_modulus());
}

FormSystem extract_forms(const MulPSeries& fp) {
  const auto& ring = fp.ring();
  FormSystem fs;
  fs.g = fp.dim();
  fs.field = residue_field(ring);
  for (int i = 0; i < fs.g; ++i) {
    const auto& s = fp.f[static_cast<std::size_t>(i)];
    int d = -1;
    for (const auto& t : s.terms()) {
      if (ring->is_unit(t.coeff)) {
        d = t.mono.degree();
        break;  // terms are sorted by degree
      }
    }
    const std::string which = "component " + std::to_string(i + 1);
    if (d < 0) {
      throw Error(ErrorCode::kInfiniteHeightComponent,
                  which + " has no unit coefficient up to degree " + std::to_string(s.trunc_degree()));
    }
    int h = 0;
    if (!is_p_power(d, ring->p(), h)) {
      throw Error(ErrorCode::kNonPPowerDegree, which + " has minimal unit degree " + std::to_string(d));
    }
    std::vector<Term> units;
    int excluded = 0;
    for (const auto& t : s.terms()) {
      if (t.mono.degree() != d) continue;
      if (ring->is_unit(t.coeff)) {
        units.push_back(t);
      } else {
        ++excluded;
      }
    }
    auto F = MultiSeries::from_terms(ring, fs.g, d, std::move(units));
    fs.forms_G.push_back(reduce_form(*ring, F, d));
    fs.forms_F.push_back(std::move(F));
    fs.degrees.push_back(d);
    fs.excluded.push_back(excluded);
  }
  return fs;
}

FormSystem forms_from_residues(const ConfigPtr& ring, const std::vector<FfForm>& forms) {
  FormSystem fs;
  fs.g = static_cast<int>(forms.size());
  fs.field = residue_field(ring);
  for (const auto& G : forms) {
    if (G.num_vars != fs.g) throw Error(ErrorCode::kShapeMismatch, "need g forms in g variables");
    std::vector<Term> terms;
    for (const auto& t : G.terms) {
      if (t.mono.degree() != G.degree) throw Error(ErrorCode::kInvalidArgument, "form is not homogeneous");
      terms.push_back(Term{t.mono, 0, ring->from_residue_index(t.coeff)});
    }
    auto F = MultiSeries::from_terms(ring, fs.g, G.degree, std::move(terms));
    fs.forms_G.push_back(reduce_form(*ring, F, G.degree));
    fs.forms_F.push_back(std::move(F));
    fs.degrees.push_back(G.degree);
    fs.excluded.push_back(0);
  }
  return fs;
}

std::string CommonZero::str() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < point.size(); ++i) out << (i ? ", " : "") << field->to_string(point[i]);
  out << ")";
  return out.str();
}

std::string reason_name(StrictReason r) {
  switch (r) {
    case StrictReason::kOnlyTrivialZero: return "EqualDegreesOnlyTrivialZero";
    case StrictReason::kUnequalDegrees: return "UnequalDegrees";
    case StrictReason::kNontrivialCommonZero: return "NontrivialCommonZero";
  }
  return "unknown";
}

std::string method_name(StrictMethod m) {
  switch (m) {
    case StrictMethod::kDegreeComparison: return "DegreeComparison";
    case StrictMethod::kDeterminantShortcut: return "DeterminantShortcut";
    case StrictMethod::kMacaulayRank: return "MacaulayRank";
    case StrictMethod::kBruteForce: return "BruteForce";
  }
  return "unknown";
}

bool is_frobenius_linear(const FormSystem& fs) {
  if (fs.g == 0) return false;
  const int d = fs.degrees.front();
  for (int i = 0; i < fs.g; ++i) {
    if (fs.degrees[static_cast<std::size_t>(i)] != d) return false;
    for (const auto& t : fs.forms_G[static_cast<std::size_t>(i)].terms) {
      int nonzero = 0;
      for (int j = 0; j < fs.g; ++j) nonzero += t.mono.e[static_cast<std::size_t>(j)] != 0;
      if (nonzero != 1) return false;
    }
  }
  return true;
}

std::pair<std::size_t, std::size_t> macaulay_rank(const FormSystem& fs, int t) {
  const std::uint64_t offset = t == 0 ? 0 : monomial_count(fs.g, t - 1);
  const std::size_t cols = static_cast<std::size_t>(monomial_count(fs.g, t) - offset);
  if (cols > kMaxMacaulayColumns) {
    throw Error(ErrorCode::kBudgetExceeded, "Macaulay matrix in degree " + std::to_string(t) + " is too large");
  }
  GfMatrix m;
  for (int i = 0; i < fs.g; ++i) {
    const int d = fs.degrees[static_cast<std::size_t>(i)];
    if (d > t) continue;
    for (const auto& mult : monomials_of_degree(fs.g, t - d)) {
      std::vector<Elem> row(cols, 0);
      for (const auto& term : fs.forms_G[static_cast<std::size_t>(i)].terms) {
        row[static_cast<std::size_t>(monomial_rank(term.mono * mult, fs.g) - offset)] = term.coeff;
      }
      m.push_back(std::move(row));
    }
  }
  if (m.empty()) return {0, cols};
  return {gf_rank(*fs.field, std::move(m)), cols};
}

namespace {

StrictnessVerdict unequal(const FormSystem& fs) {
  StrictnessVerdict v;
  v.degrees = fs.degrees;
  v.is_strict = false;
  v.reason = StrictReason::kUnequalDegrees;
  v.method = StrictMethod::kDegreeComparison;
  return v;
}

bool degrees_equal(const FormSystem& fs) {
  for (int d : fs.degrees) {
    if (d != fs.degrees.front()) return false;
  }
  return true;
}

StrictnessVerdict shortcut(const FormSystem& fs) {
  const auto& F = *fs.field;
  const int d = fs.degrees.front();
  int h = 0;
  if (!is_p_power(d, F.p(), h)) throw Error(ErrorCode::kNonPPowerDegree, "shortcut needs p-power degrees");
  GfMatrix a(static_cast<std::size_t>(fs.g), std::vector<Elem>(static_cast<std::size_t>(fs.g), 0));
  for (int i = 0; i < fs.g; ++i) {
    for (const auto& t : fs.forms_G[static_cast<std::size_t>(i)].terms) {
      for (int j = 0; j < fs.g; ++j) {
        if (t.mono.e[static_cast<std::size_t>(j)] != 0) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t.coeff;
      }
    }
  }
  StrictnessVerdict v;
  v.degrees = fs.degrees;
  v.method = StrictMethod::kDeterminantShortcut;
  v.determinant = gf_determinant(F, a);
  v.is_strict = *v.determinant != 0;
  if (v.is_strict) {
    v.reason = StrictReason::kOnlyTrivialZero;
    return v;
  }
  v.reason = StrictReason::kNontrivialCommonZero;
  std::vector<Elem> y;
  if (!gf_kernel_vector(F, a, y)) throw Error(ErrorCode::kSpecError, "singular matrix without a kernel vector");
  CommonZero z;
  z.ext_degree = F.degree();
  z.field = fs.field;
  // G_i(x) = sum_j a_ij x_j^{p^h}, so x_j is the p^h-th root of y_j.
  for (auto yj : y) z.point.push_back(F.frobenius_root(yj, h));
  // Projective normalization: first nonzero coordinate 1.
  Elem scale = 0;
  for (auto x : z.point) {
    if (x != 0) {
      scale = F.inv(x);
      break;
    }
  }
  for (auto& x : z.point) x = F.mul(x, scale);
  v.witness = std::move(z);
  return v;
}

}  // namespace

StrictnessVerdict decide_strict_macaulay(const FormSystem& fs) {
  if (!degrees_equal(fs)) return unequal(fs);
  StrictnessVerdict v;
  v.degrees = fs.degrees;
  v.method = StrictMethod::kMacaulayRank;
  int bound = 1;
  int lowest = 0;
  for (int d : fs.degrees) {
    bound += d - 1;
    lowest = std::max(lowest, d);
  }
  const auto [rank_b, cols_b] = macaulay_rank(fs, bound);
  if (rank_b < cols_b) {
    v.is_strict = false;
    v.reason = StrictReason::kNontrivialCommonZero;
    v.macaulay_degree = bound;
    v.macaulay_rank = rank_b;
    v.macaulay_columns = cols_b;
    return v;
  }
  v.is_strict = true;
  v.reason = StrictReason::kOnlyTrivialZero;
  v.macaulay_degree = bound;
  v.macaulay_rank = rank_b;
  v.macaulay_columns = cols_b;
  // Saturation is monotone, so the first full degree is the certificate.
  for (int t = lowest; t < bound; ++t) {
    const auto [r, c] = macaulay_rank(fs, t);
    if (r == c) {
      v.macaulay_degree = t;
      v.macaulay_rank = r;
      v.macaulay_columns = c;
      break;
    }
  }
  return v;
}

StrictnessVerdict decide_strict(const FormSystem& fs) {
  if (!degrees_equal(fs)) return unequal(fs);
  if (is_frobenius_linear(fs)) return shortcut(fs);
  return decide_strict_macaulay(fs);
}

std::optional<CommonZero> brute_force_common_zero(const FormSystem& fs, int k) {
  const auto& small = *fs.field;
  if (k < 1 || k % small.degree() != 0) {
    throw Error(ErrorCode::kInvalidArgument, "extension degree must be a multiple of the residue degree");
  }
  const std::uint64_t q = int_pow(static_cast<std::uint64_t>(small.p()), k);
  if (int_pow(q, fs.g) > kBruteForceBudget) {
    throw Error(ErrorCode::kBudgetExceeded, "brute force over F_" + std::to_string(q) + "^" + std::to_string(fs.g));
  }
  auto big = std::make_shared<const GaloisField>(small.p(), k);
  // Embed F_q by sending its generator to a root of its modulus.
  Elem r = big->zero();
  if (small.degree() > 1) {
    std::vector<std::int64_t> mod(small.modulus().begin(), small.modulus().end());
    if (!big->find_root(mod, r)) throw Error(ErrorCode::kSpecError, "residue field does not embed");
  }
  auto embed = [&](Elem a) {
    Elem out = big->zero();
    Elem power = big->one();
    for (int i = 0; i < small.degree(); ++i) {
      const Elem digit = a % static_cast<Elem>(small.p());
      a /= static_cast<Elem>(small.p());
      out = big->add(out, big->mul(big->from_int(digit), power));
      power = big->mul(power, r);
    }
    return out;
  };
  std::vector<FfForm> forms;
  for (const auto& G : fs.forms_G) {
    FfForm e = G;
    for (auto& t : e.terms) t.coeff = embed(t.coeff);
    forms.push_back(std::move(e));
  }
  const std::size_t g = static_cast<std::size_t>(fs.g);
  std::vector<Elem> x(g, 0);
  for (std::size_t lead = 0; lead < g; ++lead) {
    const std::size_t free = g - lead - 1;
    const std::uint64_t total = int_pow(q, static_cast<int>(free));
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::fill(x.begin(), x.end(), 0);
      x[lead] = 1;
      std::uint64_t rest = idx;
      for (std::size_t j = lead + 1; j < g; ++j) {
        x[j] = static_cast<Elem>(rest % q);
        rest /= q;
      }
      bool all_zero = true;
      for (const auto& G : forms) {
        if (G.evaluate(*big, x) != 0) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) return CommonZero{k, big, x};
    }
  }
  return std::nullopt;
}

WMatrix invert_matrix(const ConfigPtr& ring, const WMatrix& m) {
  const std::size_t n = m.size();
  WMatrix a = m;
  WMatrix inv(n, std::vector<WElem>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::kShapeMismatch, "matrix must be square");
    inv[i][i] = ring->from_int(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && !ring->is_unit(a[piv][c])) ++piv;
    if (piv == n) throw Error(ErrorCode::kNonUnitDeterminant, "determinant is not a unit");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    const WElem s = ring->inverse(a[c][c]);
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] = ring->mul(a[c][j], s);
      inv[c][j] = ring->mul(inv[c][j], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || ring->is_zero(a[r][c])) continue;
      const WElem factor = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = ring->sub(a[r][j], ring->mul(factor, a[c][j]));
        inv[r][j] = ring->sub(inv[r][j], ring->mul(factor, inv[c][j]));
      }
    }
  }
  return inv;
}

namespace {

// Linear series sum_j m_ij X_j.
SeriesTuple linear_tuple(const ConfigPtr& ring, const WMatrix& m, int trunc) {
  const int g = static_cast<int>(m.size());
  SeriesTuple out;
  for (int i = 0; i < g; ++i) {
    MultiSeries s(ring, g, trunc);
    for (int j = 0; j < g; ++j) {
      s = s + MultiSeries::variable(ring, g, trunc, j).scaled(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

SeriesTuple conjugate(const SeriesTuple& f, const WMatrix& m, const WMatrix& inv) {
  const auto& ring = f.front().ring();
  const auto inner = linear_tuple(ring, inv, f.front().trunc_degree());
  const auto h = compose(f, inner);
  SeriesTuple out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    MultiSeries s(ring, h.front().num_vars(), h.front().trunc_degree());
    for (std::size_t j = 0; j < m.size(); ++j) s = s + h[j].scaled(m[i][j]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

MulPSeries change_coordinates(const MulPSeries& fp, const WMatrix& m) {
  if (static_cast<int>(m.size()) != fp.dim()) throw Error(ErrorCode::kShapeMismatch, "matrix size must equal g");
  return MulPSeries{conjugate(fp.f, m, invert_matrix(fp.ring(), m))};
}

FormSystem transform_forms(const FormSystem& fs, const WMatrix& m) {
  if (static_cast<int>(m.size()) != fs.g) throw Error(ErrorCode::kShapeMismatch, "matrix size must equal g");
  if (!degrees_equal(fs)) throw Error(ErrorCode::kInvalidArgument, "transform_forms needs equal degrees");
  const auto& ring = fs.forms_F.front().ring();
  const auto mixed = conjugate(fs.forms_F, m, invert_matrix(ring, m));
  FormSystem out;
  out.g = fs.g;
  out.field = fs.field;
  const int d = fs.degrees.front();
  for (int i = 0; i < fs.g; ++i) {
    std::vector<Term> units;
    int excluded = 0;
    for (const auto& t : mixed[static_cast<std::size_t>(i)].terms()) {
      if (ring->is_unit(t.coeff)) {
        units.push_back(t);
      } else {
        ++excluded;
      }
    }
    if (units.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "transformed component " + std::to_string(i + 1) + " has no unit monomial in degree " + std::to_string(d));
    }
    auto F = MultiSeries::from_terms(ring, fs.g, d, std::move(units));
    out.forms_G.push_back(reduce_form(*ring, F, d));
    out.forms_F.push_back(std::move(F));
    out.degrees.push_back(d);
    out.excluded.push_back(excluded);
  }
  return out;
}

}  // namespace fgt
