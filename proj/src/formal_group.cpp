#include "fgt/formal_group.hpp"

#include "fgt/error.hpp"

#include <sstream>

namespace fgt {

std::string GroupDescriptor::kind_name() const {
  switch (kind) {
    case Kind::kMultiplicative: return "multiplicative";
    case Kind::kAdditive: return "additive";
    case Kind::kLubinTate: return "lubin_tate";
    case Kind::kElliptic: return "elliptic";
    case Kind::kProduct: return "product";
  }
  return "unknown";
}

std::string GroupDescriptor::str() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kLubinTate:
      out << "lubin_tate(" << height << ")";
      break;
    case Kind::kElliptic:
      out << "elliptic(" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << "," << a[4] << ")";
      break;
    case Kind::kProduct:
      out << "product(";
      for (std::size_t i = 0; i < children.size(); ++i) out << (i ? "," : "") << children[i].str();
      out << ")";
      break;
    default:
      out << kind_name();
  }
  return out.str();
}

FormalGroupLaw::FormalGroupLaw(int dim, SeriesTuple law, GroupDescriptor provenance)
    : dim_(dim), law_(std::move(law)), provenance_(std::move(provenance)) {
  if (dim_ < 1 || static_cast<int>(law_.size()) != dim_) {
    throw Error(ErrorCode::kShapeMismatch, "a law of dimension g needs g series");
  }
  require_tuple_shape(law_);
  if (law_.front().num_vars() != 2 * dim_) throw Error(ErrorCode::kShapeMismatch, "law series must have 2g variables");
}

std::vector<FormalGroupLaw> FormalGroupLaw::factors() const {
  if (!children_.empty()) return children_;
  return {*this};
}

namespace {

MultiSeries var(const ConfigPtr& ring, int n, int d, int i) { return MultiSeries::variable(ring, n, d, i); }

GroupDescriptor simple(GroupDescriptor::Kind k) {
  GroupDescriptor g;
  g.kind = k;
  return g;
}

// 1 / (1 + u) for u without constant term.
MultiSeries inverse_one_plus(const MultiSeries& u) {
  const auto one = MultiSeries::constant(u.ring(), u.num_vars(), u.trunc_degree(), 1);
  if (u.is_zero()) return one;
  MultiSeries acc = one;
  MultiSeries power = one;
  const int steps = u.trunc_degree() / std::max(1, u.order());
  for (int k = 1; k <= steps; ++k) {
    power = power * (-u);
    if (power.is_zero()) break;
    acc = acc + power;
  }
  return acc;
}

int ceil_log(int base, int value) {
  int k = 0;
  for (long long x = 1; x < value; x *= base) ++k;
  return k;
}

}  // namespace

FormalGroupLaw build_multiplicative(const ConfigPtr& ring, int trunc) {
  auto X = var(ring, 2, trunc, 0);
  auto Y = var(ring, 2, trunc, 1);
  return FormalGroupLaw(1, {X + Y + X * Y}, simple(GroupDescriptor::Kind::kMultiplicative));
}

FormalGroupLaw build_additive(const ConfigPtr& ring, int trunc) {
  return FormalGroupLaw(1, {var(ring, 2, trunc, 0) + var(ring, 2, trunc, 1)}, simple(GroupDescriptor::Kind::kAdditive));
}

FormalGroupLaw build_lubin_tate(const ConfigPtr& ring, int trunc, int height) {
  if (height < 1) throw Error(ErrorCode::kInvalidArgument, "Lubin-Tate height must be >= 1");
  const int p = ring->p();
  long long q = 1;
  for (int i = 0; i < height; ++i) {
    q *= p;
    if (q > trunc) {
      throw Error(ErrorCode::kTruncationExceeded,
                  "Lubin-Tate height " + std::to_string(height) + " needs D >= p^h, D = " + std::to_string(trunc));
    }
  }
  const int qi = static_cast<int>(q);
  // Each degree divides by p once; the guard digits absorb the loss.
  const auto work = ring->with_precision(ring->precision() + ceil_log(p, trunc) + 2);
  const WElem pw = work->from_int(p);

  const auto T = var(work, 1, trunc, 0);
  const auto f = T.scaled(pw) + MultiSeries::monomial(work, 1, trunc, Monomial::var(0, qi), work->from_int(1));
  const auto X = var(work, 2, trunc, 0);
  const auto Y = var(work, 2, trunc, 1);
  const SeriesTuple fxy{compose(f, std::vector<MultiSeries>{X}), compose(f, std::vector<MultiSeries>{Y})};

  MultiSeries F = X + Y;
  for (int n = 2; n <= trunc; ++n) {
    const auto Fn = F.truncated(n);
    const SeriesTuple inner{fxy[0].truncated(n), fxy[1].truncated(n)};
    const auto lhs = compose(Fn, inner);
    const auto rhs = compose(f.truncated(n), std::vector<MultiSeries>{Fn});
    const auto residual = (lhs - rhs).graded_part(n);
    if (residual.is_zero()) continue;
    // (p - p^n) F_n = residual.
    const WElem unit_inv = work->inverse(work->sub(work->from_int(1), work->pow(pw, static_cast<std::uint64_t>(n - 1))));
    std::vector<Term> terms;
    for (const auto& t : residual.terms()) {
      if (work->val_int(t.coeff) < 1) {
        throw Error(ErrorCode::kIndeterminatePrecision, "Lubin-Tate residual not divisible by p at degree " + std::to_string(n));
      }
      terms.push_back(Term{t.mono, 0, work->mul(work->divide_by_p_power(t.coeff, 1), unit_inv)});
    }
    F = F + MultiSeries::from_terms(work, 2, trunc, std::move(terms));
  }
  GroupDescriptor desc = simple(GroupDescriptor::Kind::kLubinTate);
  desc.height = height;
  return FormalGroupLaw(1, {F.with_ring(ring)}, desc);
}

WElem elliptic_discriminant(const ConfigPtr& ring, const WeierstrassCoeffs& a) {
  const auto& r = *ring;
  auto c = [&](std::int64_t v) { return r.from_int(v); };
  const WElem a1 = c(a[0]), a2 = c(a[1]), a3 = c(a[2]), a4 = c(a[3]), a6 = c(a[4]);
  const WElem b2 = r.add(r.mul(a1, a1), r.mul_int(a2, 4));
  const WElem b4 = r.add(r.mul_int(a4, 2), r.mul(a1, a3));
  const WElem b6 = r.add(r.mul(a3, a3), r.mul_int(a6, 4));
  WElem b8 = r.add(r.mul(r.mul(a1, a1), a6), r.mul_int(r.mul(a2, a6), 4));
  b8 = r.sub(b8, r.mul(r.mul(a1, a3), a4));
  b8 = r.add(b8, r.mul(a2, r.mul(a3, a3)));
  b8 = r.sub(b8, r.mul(a4, a4));
  WElem d = r.neg(r.mul(r.mul(b2, b2), b8));
  d = r.sub(d, r.mul_int(r.mul(b4, r.mul(b4, b4)), 8));
  d = r.sub(d, r.mul_int(r.mul(b6, b6), 27));
  d = r.add(d, r.mul_int(r.mul(b2, r.mul(b4, b6)), 9));
  return d;
}

FormalGroupLaw build_elliptic(const ConfigPtr& ring, int trunc, const WeierstrassCoeffs& a) {
  if (!ring->is_unit(elliptic_discriminant(ring, a))) {
    throw Error(ErrorCode::kSingularReduction, "discriminant is not a unit: the curve has bad reduction");
  }
  const int dw = trunc + 3;
  auto sc = [&](std::int64_t v) { return ring->from_int(v); };
  const WElem a1 = sc(a[0]), a2 = sc(a[1]), a3 = sc(a[2]), a4 = sc(a[3]), a6 = sc(a[4]);

  // w(t) = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3 by fixed-point iteration.
  const auto t = var(ring, 1, dw, 0);
  const auto t3 = t * t * t;
  MultiSeries w(ring, 1, dw);
  for (int iter = 0; iter <= dw; ++iter) {
    const auto w2 = w * w;
    auto next = t3 + (t * w).scaled(a1) + (t * t * w).scaled(a2) + w2.scaled(a3) + (t * w2).scaled(a4) +
                (w2 * w).scaled(a6);
    if (next == w) break;
    w = std::move(next);
  }

  // Chord through (t1, w(t1)) and (t2, w(t2)); (t2^k - t1^k)/(t2 - t1) expanded exactly.
  std::vector<Term> lam_terms;
  for (const auto& term : w.terms()) {
    const int k = term.mono.e[0];
    for (int i = 0; i < k; ++i) {
      Monomial m;
      m.e[0] = static_cast<std::uint8_t>(i);
      m.e[1] = static_cast<std::uint8_t>(k - 1 - i);
      lam_terms.push_back(Term{m, 0, term.coeff});
    }
  }
  const auto lam = MultiSeries::from_terms(ring, 2, dw, std::move(lam_terms));
  const auto t1 = var(ring, 2, dw, 0);
  const auto t2 = var(ring, 2, dw, 1);
  const auto w1 = compose(w, std::vector<MultiSeries>{t1});
  const auto nu = w1 - lam * t1;

  const auto lam2 = lam * lam;
  // Substituting w = lam z + nu leaves a cubic in z whose roots sum to -c2/c3.
  const auto c2 = lam.scaled(a1) + lam2.scaled(a3) + nu.scaled(a2) + (lam * nu).scaled(ring->mul_int(a4, 2)) +
                  (lam2 * nu).scaled(ring->mul_int(a6, 3));
  const auto c3_tail = lam.scaled(a2) + lam2.scaled(a4) + (lam2 * lam).scaled(a6);
  const auto z3 = -t1 - t2 - c2 * inverse_one_plus(c3_tail);

  // Inverse point: i(z) = z / (-1 + a1 z + a3 w(z)).
  const auto wz = compose(w, std::vector<MultiSeries>{z3});
  const auto inv_denom = -inverse_one_plus(-(z3.scaled(a1) + wz.scaled(a3)));
  const auto F = (z3 * inv_denom).truncated(trunc);

  GroupDescriptor desc = simple(GroupDescriptor::Kind::kElliptic);
  desc.a = a;
  return FormalGroupLaw(1, {F}, desc);
}

FormalGroupLaw build_product(const std::vector<FormalGroupLaw>& children) {
  if (children.empty()) throw Error(ErrorCode::kInvalidArgument, "product of no groups");
  std::vector<FormalGroupLaw> flat;
  for (const auto& c : children) {
    for (auto& f : c.factors()) flat.push_back(std::move(f));
  }
  if (flat.size() == 1) return flat.front();
  const auto& ring = flat.front().ring();
  const int trunc = flat.front().trunc_degree();
  int g = 0;
  for (const auto& c : flat) {
    require_same_config(*ring, *c.ring());
    if (c.trunc_degree() != trunc) throw Error(ErrorCode::kShapeMismatch, "product factors must share D");
    g += c.dim();
  }
  SeriesTuple law;
  GroupDescriptor desc = simple(GroupDescriptor::Kind::kProduct);
  int offset = 0;
  for (const auto& c : flat) {
    const int gc = c.dim();
    SeriesTuple remap;
    for (int j = 0; j < gc; ++j) remap.push_back(var(ring, 2 * g, trunc, offset + j));
    for (int j = 0; j < gc; ++j) remap.push_back(var(ring, 2 * g, trunc, g + offset + j));
    for (const auto& s : c.law()) law.push_back(compose(s, remap));
    desc.children.push_back(c.provenance());
    offset += gc;
  }
  FormalGroupLaw out(g, std::move(law), desc);
  out.children_ = std::move(flat);
  return out;
}

SeriesTuple mul_by_int(const FormalGroupLaw& law, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "mul_by_int needs n >= 1");
  const int g = law.dim();
  const auto ident = identity_tuple(law.ring(), g, law.trunc_degree());
  SeriesTuple cur = ident;
  for (int k = 2; k <= n; ++k) {
    SeriesTuple inner = ident;
    inner.insert(inner.end(), cur.begin(), cur.end());
    cur = compose(law.law(), inner);
  }
  return cur;
}

MulPSeries mul_by_p(const FormalGroupLaw& law) { return MulPSeries{mul_by_int(law, law.ring()->p())}; }

AxiomReport verify_group_axioms(const FormalGroupLaw& law) {
  const int g = law.dim();
  const auto& ring = law.ring();
  const int d = law.trunc_degree();
  AxiomReport r;

  const auto xs = identity_tuple(ring, g, d);
  const SeriesTuple zeros(static_cast<std::size_t>(g), MultiSeries(ring, g, d));
  SeriesTuple left = xs;
  left.insert(left.end(), zeros.begin(), zeros.end());
  SeriesTuple right = zeros;
  right.insert(right.end(), xs.begin(), xs.end());
  r.right_unit = compose(law.law(), left) == xs;
  r.left_unit = compose(law.law(), right) == xs;

  SeriesTuple swapped;
  for (int j = 0; j < g; ++j) swapped.push_back(var(ring, 2 * g, d, g + j));
  for (int j = 0; j < g; ++j) swapped.push_back(var(ring, 2 * g, d, j));
  r.commutative = compose(law.law(), swapped) == law.law();

  // F(F(X, Y), Z) against F(X, F(Y, Z)) in 3g variables.
  SeriesTuple x_y, y_z, x_only, z_only;
  for (int j = 0; j < g; ++j) {
    x_only.push_back(var(ring, 3 * g, d, j));
    z_only.push_back(var(ring, 3 * g, d, 2 * g + j));
  }
  for (int j = 0; j < 2 * g; ++j) {
    x_y.push_back(var(ring, 3 * g, d, j));
    y_z.push_back(var(ring, 3 * g, d, g + j));
  }
  SeriesTuple lhs_inner = compose(law.law(), x_y);
  lhs_inner.insert(lhs_inner.end(), z_only.begin(), z_only.end());
  SeriesTuple rhs_inner = x_only;
  const auto fyz = compose(law.law(), y_z);
  rhs_inner.insert(rhs_inner.end(), fyz.begin(), fyz.end());
  r.associative = compose(law.law(), lhs_inner) == compose(law.law(), rhs_inner);
  return r;
}

namespace {

RamifiedElement determinant(std::vector<std::vector<RamifiedElement>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  RamifiedElement acc = m[0][0].extension()->zero();
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<RamifiedElement>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<RamifiedElement> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    const auto term = m[0][col] * determinant(std::move(minor));
    acc = (col % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

RamifiedElement jacobian_det_at(const MulPSeries& fp, std::span<const RamifiedElement> point) {
  const int g = fp.dim();
  if (static_cast<int>(point.size()) != g) throw Error(ErrorCode::kShapeMismatch, "point dimension must equal g");
  std::vector<std::vector<RamifiedElement>> m;
  for (int s = 0; s < g; ++s) {
    std::vector<RamifiedElement> row;
    for (int j = 0; j < g; ++j) row.push_back(evaluate(fp.f[static_cast<std::size_t>(s)].partial_derivative(j), point).value);
    m.push_back(std::move(row));
  }
  return determinant(std::move(m));
}

}  // namespace fgt
