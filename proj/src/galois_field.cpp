#include "fgt/galois_field.hpp"

#include "fgt/error.hpp"

#include <sstream>

namespace fgt {

namespace {

std::vector<int> digits(std::uint32_t a, int p, int k) {
  std::vector<int> d(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(a % static_cast<std::uint32_t>(p));
    a /= static_cast<std::uint32_t>(p);
  }
  return d;
}

std::uint32_t encode(const std::vector<int>& d, int p) {
  std::uint32_t out = 0;
  for (std::size_t i = d.size(); i-- > 0;) out = out * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(d[i]);
  return out;
}

bool has_factor(const std::vector<int>& h, int p) {
  // Trial division by all monic polynomials of degree <= deg(h)/2.
  const int n = static_cast<int>(h.size()) - 1;
  for (int dd = 1; dd <= n / 2; ++dd) {
    std::uint32_t count = 1;
    for (int i = 0; i < dd; ++i) count *= static_cast<std::uint32_t>(p);
    for (std::uint32_t idx = 0; idx < count; ++idx) {
      std::vector<int> b = digits(idx, p, dd);
      b.push_back(1);
      std::vector<int> a = h;
      for (int top = n; top >= dd; --top) {
        const int lead = a[static_cast<std::size_t>(top)];
        if (lead == 0) continue;
        for (int i = 0; i <= dd; ++i) {
          auto& slot = a[static_cast<std::size_t>(top - dd + i)];
          slot = ((slot - lead * b[static_cast<std::size_t>(i)]) % p + p) % p;
        }
      }
      bool zero = true;
      for (int i = 0; i < dd; ++i) zero = zero && a[static_cast<std::size_t>(i)] == 0;
      if (zero) return true;
    }
  }
  return false;
}

}  // namespace

GaloisField::GaloisField(int p, int k) : p_(p), k_(k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "field degree must be >= 1");
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= static_cast<std::uint32_t>(p);
  if (k == 1) {
    modulus_ = {0, 1};
  } else {
    for (std::uint32_t idx = 0; idx < q_; ++idx) {
      std::vector<int> h = digits(idx, p, k);
      h.push_back(1);
      if (!has_factor(h, p)) {
        modulus_ = h;
        break;
      }
    }
  }
  build();
}

GaloisField::GaloisField(int p, const std::vector<std::int64_t>& modulus)
    : p_(p), k_(static_cast<int>(modulus.size()) - 1) {
  q_ = 1;
  for (int i = 0; i < k_; ++i) q_ *= static_cast<std::uint32_t>(p);
  for (auto c : modulus) modulus_.push_back(static_cast<int>(((c % p) + p) % p));
  if (modulus_.back() != 1 || (k_ > 1 && has_factor(modulus_, p))) {
    throw Error(ErrorCode::kInvalidArgument, "modulus must be monic irreducible");
  }
  build();
}

void GaloisField::build() {
  if (q_ > (1U << 24)) throw Error(ErrorCode::kBudgetExceeded, "field too large for table arithmetic");
  // Multiplication by schoolbook to find a primitive element, then tables.
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    if (k_ == 1) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % static_cast<std::uint64_t>(p_));
    auto da = digits(a, p_, k_);
    auto db = digits(b, p_, k_);
    std::vector<int> prod(static_cast<std::size_t>(2 * k_ - 1), 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        prod[static_cast<std::size_t>(i + j)] = (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p_;
    for (int top = 2 * k_ - 2; top >= k_; --top) {
      const int lead = prod[static_cast<std::size_t>(top)];
      if (lead == 0) continue;
      for (int i = 0; i <= k_; ++i) {
        auto& slot = prod[static_cast<std::size_t>(top - k_ + i)];
        slot = ((slot - lead * modulus_[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
      }
    }
    prod.resize(static_cast<std::size_t>(k_));
    return encode(prod, p_);
  };
  exp_.assign(2 * static_cast<std::size_t>(q_), 0);
  log_.assign(q_, 0);
  for (std::uint32_t cand = 2; cand < q_; ++cand) {
    std::uint32_t x = 1;
    std::uint32_t order = 0;
    do {
      x = slow_mul(x, cand);
      ++order;
    } while (x != 1 && order < q_);
    if (order == q_ - 1) {
      x = 1;
      for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = x;
        exp_[i + q_ - 1] = x;
        log_[x] = i;
        x = slow_mul(x, cand);
      }
      return;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "no primitive element found");
}

GaloisField::Elem GaloisField::from_int(std::int64_t v) const {
  return static_cast<Elem>(((v % p_) + p_) % p_);
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
  if (k_ == 1) return (a + b) % static_cast<Elem>(p_);
  Elem out = 0;
  Elem scale = 1;
  for (int i = 0; i < k_; ++i) {
    const Elem da = a % static_cast<Elem>(p_);
    const Elem db = b % static_cast<Elem>(p_);
    out += ((da + db) % static_cast<Elem>(p_)) * scale;
    a /= static_cast<Elem>(p_);
    b /= static_cast<Elem>(p_);
    scale *= static_cast<Elem>(p_);
  }
  return out;
}

GaloisField::Elem GaloisField::sub(Elem a, Elem b) const {
  if (k_ == 1) return (a + static_cast<Elem>(p_) - b) % static_cast<Elem>(p_);
  Elem out = 0;
  Elem scale = 1;
  for (int i = 0; i < k_; ++i) {
    const Elem da = a % static_cast<Elem>(p_);
    const Elem db = b % static_cast<Elem>(p_);
    out += ((da + static_cast<Elem>(p_) - db) % static_cast<Elem>(p_)) * scale;
    a /= static_cast<Elem>(p_);
    b /= static_cast<Elem>(p_);
    scale *= static_cast<Elem>(p_);
  }
  return out;
}

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

GaloisField::Elem GaloisField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::kNonUnit, "inverse of zero in F_q");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

GaloisField::Elem GaloisField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
}

GaloisField::Elem GaloisField::generator_x() const {
  return k_ == 1 ? 0 : static_cast<Elem>(p_);
}

GaloisField::Elem GaloisField::frobenius_root(Elem a, int h) const {
  // x -> x^p has order k on F_q, so its h-fold inverse is the (k*m - h)-fold power.
  int steps = ((-h) % k_ + k_) % k_;
  Elem x = a;
  for (int i = 0; i < steps; ++i) x = pow(x, static_cast<std::uint64_t>(p_));
  return x;
}

bool GaloisField::find_root(const std::vector<std::int64_t>& poly, Elem& root) const {
  for (Elem x = 0; x < q_; ++x) {
    Elem acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = add(mul(acc, x), from_int(poly[i]));
    if (acc == 0) {
      root = x;
      return true;
    }
  }
  return false;
}

std::string GaloisField::to_string(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  std::ostringstream os;
  os << '[';
  auto d = digits(a, p_, k_);
  for (int i = 0; i < k_; ++i) os << (i ? "," : "") << d[static_cast<std::size_t>(i)];
  os << ']';
  return os.str();
}

namespace {

// Row-reduce in place; returns the pivot column of each pivot row.
std::vector<std::size_t> eliminate(const GaloisField& f, GfMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    const auto inv = f.inv(m[r][c]);
    for (auto& x : m[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const auto factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (m[r][j] != 0) m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t gf_rank(const GaloisField& field, GfMatrix m) { return eliminate(field, m).size(); }

GaloisField::Elem gf_determinant(const GaloisField& field, GfMatrix m) {
  const std::size_t n = m.size();
  GaloisField::Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m[sel][c] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      std::swap(m[sel], m[c]);
      det = field.neg(det);
    }
    det = field.mul(det, m[c][c]);
    const auto inv = field.inv(m[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const auto factor = field.mul(m[i][c], inv);
      for (std::size_t j = c; j < n; ++j) m[i][j] = field.sub(m[i][j], field.mul(factor, m[c][j]));
    }
  }
  return det;
}

bool gf_kernel_vector(const GaloisField& field, GfMatrix m, std::vector<GaloisField::Elem>& x) {
  if (m.empty()) return false;
  const std::size_t cols = m[0].size();
  const auto pivots = eliminate(field, m);
  if (pivots.size() == cols) return false;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  x.assign(cols, 0);
  x[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = field.neg(m[r][free_col]);
  return true;
}

}  // namespace fgt
