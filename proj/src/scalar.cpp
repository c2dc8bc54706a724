#include "fgt/scalar.hpp"

#include <limits>
#include <sstream>

namespace fgt {

namespace {

using SmallPoly = std::vector<int>;  // over F_p, low degree first

void trim(SmallPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over F_p.
SmallPoly poly_rem(SmallPoly a, const SmallPoly& b, int p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

SmallPoly monic_from_index(std::int64_t idx, int degree, int p) {
  SmallPoly out(static_cast<std::size_t>(degree) + 1, 0);
  for (int i = 0; i < degree; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(idx % p);
    idx /= p;
  }
  out.back() = 1;
  return out;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

bool is_irreducible(const SmallPoly& h, int p) {
  const int degree = static_cast<int>(h.size()) - 1;
  for (int dd = 1; dd <= degree / 2; ++dd) {
    for (std::int64_t idx = 0; idx < ipow(p, dd); ++idx) {
      if (poly_rem(h, monic_from_index(idx, dd, p), p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::int64_t> smallest_irreducible(int p, int f) {
  for (std::int64_t idx = 0; idx < ipow(p, f); ++idx) {
    SmallPoly h = monic_from_index(idx, f, p);
    if (is_irreducible(h, p)) return {h.begin(), h.end()};
  }
  throw Error(ErrorCode::kInvalidArgument, "no irreducible polynomial found");
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

PrimeConfig::PrimeConfig(int p, int f, int n) : p_(p), f_(f), n_(n) {
  if (p < 3 || !is_prime(p)) {
    throw Error(ErrorCode::kInvalidArgument, "p must be an odd prime, got " + std::to_string(p));
  }
  if (f < 1 || f > kMaxResidueDegree) {
    throw Error(ErrorCode::kInvalidArgument,
                "residue degree f must be in [1, " + std::to_string(kMaxResidueDegree) + "]");
  }
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "precision N must be >= 1");
  // Keep p^N below 2^62 so that sums of two residues never overflow.
  std::int64_t pn = 1;
  for (int i = 0; i < n; ++i) {
    if (pn > (std::int64_t{1} << 62) / p) {
      throw Error(ErrorCode::kInvalidArgument, "p^N exceeds 2^62");
    }
    pn *= p;
  }
  pn_ = pn;
  q_ = ipow(p, f);
  if (f == 1) {
    poly_ = {0, 1};
  } else {
    poly_ = smallest_irreducible(p, f);
  }
}

std::shared_ptr<const PrimeConfig> PrimeConfig::make(int p, int f, int precision) {
  return std::shared_ptr<const PrimeConfig>(new PrimeConfig(p, f, precision));
}

std::shared_ptr<const PrimeConfig> PrimeConfig::with_precision(int precision) const {
  return make(p_, f_, precision);
}

std::int64_t PrimeConfig::reduce(std::int64_t v) const {
  v %= pn_;
  return v < 0 ? v + pn_ : v;
}

std::int64_t PrimeConfig::mulmod(std::int64_t a, std::int64_t b) const {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % pn_);
}

WElem PrimeConfig::from_int(std::int64_t v) const {
  WElem out;
  out.c[0] = reduce(v);
  return out;
}

WElem PrimeConfig::add(const WElem& a, const WElem& b) const {
  WElem out;
  for (int i = 0; i < f_; ++i) {
    std::int64_t s = a.c[i] + b.c[i];
    out.c[i] = s >= pn_ ? s - pn_ : s;
  }
  return out;
}

WElem PrimeConfig::sub(const WElem& a, const WElem& b) const {
  WElem out;
  for (int i = 0; i < f_; ++i) {
    std::int64_t s = a.c[i] - b.c[i];
    out.c[i] = s < 0 ? s + pn_ : s;
  }
  return out;
}

WElem PrimeConfig::neg(const WElem& a) const { return sub(WElem{}, a); }

WElem PrimeConfig::mul(const WElem& a, const WElem& b) const {
  WElem out;
  if (f_ == 1) {
    out.c[0] = mulmod(a.c[0], b.c[0]);
    return out;
  }
  std::array<std::int64_t, 2 * kMaxResidueDegree> prod{};
  for (int i = 0; i < f_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < f_; ++j) {
      prod[i + j] = reduce(prod[i + j] + mulmod(a.c[i], b.c[j]));
    }
  }
  // w^f = -sum poly_i w^i
  for (int k = 2 * f_ - 2; k >= f_; --k) {
    const std::int64_t lead = prod[k];
    if (lead == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < f_; ++i) {
      prod[k - f_ + i] = reduce(prod[k - f_ + i] - mulmod(lead, poly_[i]));
    }
  }
  for (int i = 0; i < f_; ++i) out.c[i] = prod[i];
  return out;
}

WElem PrimeConfig::mul_int(const WElem& a, std::int64_t k) const {
  const std::int64_t kk = reduce(k);
  WElem out;
  for (int i = 0; i < f_; ++i) out.c[i] = mulmod(a.c[i], kk);
  return out;
}

WElem PrimeConfig::pow(WElem a, std::uint64_t e) const {
  WElem result = from_int(1);
  while (e > 0) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return result;
}

bool PrimeConfig::is_unit(const WElem& a) const {
  for (int i = 0; i < f_; ++i) {
    if (a.c[i] % p_ != 0) return true;
  }
  return false;
}

int PrimeConfig::val_int(const WElem& a) const {
  int best = n_;
  for (int i = 0; i < f_; ++i) {
    std::int64_t x = a.c[i];
    if (x == 0) continue;
    int k = 0;
    while (x % p_ == 0) {
      x /= p_;
      ++k;
    }
    best = std::min(best, k);
  }
  return best;
}

Valuation PrimeConfig::valuation(const WElem& a) const {
  if (is_zero(a)) return Valuation::lower_bound(Rational(n_));
  return Valuation::exact(val_int(a));
}

WElem PrimeConfig::inverse(const WElem& a) const {
  if (!is_unit(a)) throw Error(ErrorCode::kNonUnit, "inverse of non-unit " + to_string(a));
  // Residue inverse via a^{q-2} (correct mod p), then Newton y <- y(2 - ay).
  WElem y = pow(a, static_cast<std::uint64_t>(q_ - 2));
  const WElem two = from_int(2);
  for (int known = 1; known < n_; known *= 2) {
    y = mul(y, sub(two, mul(a, y)));
  }
  return y;
}

WElem PrimeConfig::divide_by_p_power(const WElem& a, int k) const {
  if (k == 0) return a;
  std::int64_t pk = ipow(p_, k);
  WElem out;
  for (int i = 0; i < f_; ++i) {
    if (a.c[i] % pk != 0) {
      throw Error(ErrorCode::kInvalidArgument, "element not divisible by p^" + std::to_string(k));
    }
    out.c[i] = a.c[i] / pk;
  }
  return out;
}

WElem PrimeConfig::convert(const WElem& a, const PrimeConfig& target) const {
  if (target.p_ != p_ || target.f_ != f_) {
    throw Error(ErrorCode::kContextMismatch, "convert between different residue fields");
  }
  WElem out;
  for (int i = 0; i < f_; ++i) out.c[i] = target.reduce(a.c[i]);
  return out;
}

std::uint32_t PrimeConfig::residue_index(const WElem& a) const {
  std::uint32_t idx = 0;
  std::uint32_t scale = 1;
  for (int i = 0; i < f_; ++i) {
    idx += static_cast<std::uint32_t>(a.c[i] % p_) * scale;
    scale *= static_cast<std::uint32_t>(p_);
  }
  return idx;
}

WElem PrimeConfig::from_residue_index(std::uint32_t idx) const {
  WElem out;
  for (int i = 0; i < f_; ++i) {
    out.c[i] = idx % static_cast<std::uint32_t>(p_);
    idx /= static_cast<std::uint32_t>(p_);
  }
  return out;
}

std::array<std::int64_t, kMaxResidueDegree> PrimeConfig::symmetric(const WElem& a) const {
  std::array<std::int64_t, kMaxResidueDegree> out{};
  for (int i = 0; i < f_; ++i) out[i] = a.c[i] > pn_ / 2 ? a.c[i] - pn_ : a.c[i];
  return out;
}

std::string PrimeConfig::to_string(const WElem& a) const {
  const auto s = symmetric(a);
  if (f_ == 1) return std::to_string(s[0]);
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < f_; ++i) os << (i ? "," : "") << s[i];
  os << ']';
  return os.str();
}

void require_same_config(const PrimeConfig& a, const PrimeConfig& b) {
  if (&a != &b && !(a == b)) {
    throw Error(ErrorCode::kContextMismatch, "operands belong to different PrimeConfigs");
  }
}

PadicScalar::PadicScalar(ConfigPtr ctx, std::int64_t v) : ctx_(std::move(ctx)) {
  v_ = ctx_->from_int(v);
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  require_same_config(*ctx_, *o.ctx_);
  return {ctx_, ctx_->add(v_, o.v_)};
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
  require_same_config(*ctx_, *o.ctx_);
  return {ctx_, ctx_->sub(v_, o.v_)};
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  require_same_config(*ctx_, *o.ctx_);
  return {ctx_, ctx_->mul(v_, o.v_)};
}

PadicScalar PadicScalar::operator-() const { return {ctx_, ctx_->neg(v_)}; }

bool PadicScalar::operator==(const PadicScalar& o) const {
  require_same_config(*ctx_, *o.ctx_);
  return v_ == o.v_;
}

PadicScalar PadicScalar::inverse() const { return {ctx_, ctx_->inverse(v_)}; }

WElem teichmuller_lift(const PrimeConfig& ctx, const WElem& unit) {
  if (!ctx.is_unit(unit)) throw Error(ErrorCode::kNonUnit, "Teichmüller lift of a non-unit");
  // x^{q^{N-1}} depends only on x mod p and is fixed by x -> x^q.
  WElem x = unit;
  for (int i = 1; i < ctx.precision(); ++i) x = ctx.pow(x, static_cast<std::uint64_t>(ctx.q()));
  return x;
}

std::vector<PadicScalar> teichmuller_units(const ConfigPtr& ctx, int count) {
  if (count < 0 || count > ctx->q() - 1) {
    throw Error(ErrorCode::kCountTooLarge,
                "requested " + std::to_string(count) + " units but q - 1 = " + std::to_string(ctx->q() - 1));
  }
  std::vector<PadicScalar> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int idx = 1; idx <= count; ++idx) {
    out.emplace_back(ctx, teichmuller_lift(*ctx, ctx->from_residue_index(static_cast<std::uint32_t>(idx))));
  }
  return out;
}

}  // namespace fgt
