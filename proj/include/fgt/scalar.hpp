#pragma once

#include "fgt/error.hpp"
#include "fgt/valuation.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace fgt {

inline constexpr int kMaxResidueDegree = 4;

/// Raw element of W/p^N: coordinates in the basis 1, w, ..., w^{f-1} where
/// w is a root of the modulus polynomial. Each coordinate lies in [0, p^N).
struct WElem {
  std::array<std::int64_t, kMaxResidueDegree> c{};

  bool operator==(const WElem&) const = default;
};

/// Ring context for W(F_q)/p^N, q = p^f.
///
/// The unramified generator is a root of the lexicographically smallest
/// monic irreducible of degree f over F_p (coefficients read as a base-p
/// number, constant term least significant), lifted with digits in [0, p).
class PrimeConfig {
 public:
  static std::shared_ptr<const PrimeConfig> make(int p, int f, int precision);

  int p() const { return p_; }
  int f() const { return f_; }
  int precision() const { return n_; }
  std::int64_t modulus() const { return pn_; }
  std::int64_t q() const { return q_; }
  /// Monic modulus, low degree first, size f + 1.
  const std::vector<std::int64_t>& residue_modulus() const { return poly_; }

  /// Same p and f at another precision.
  std::shared_ptr<const PrimeConfig> with_precision(int precision) const;

  bool operator==(const PrimeConfig& o) const {
    return p_ == o.p_ && f_ == o.f_ && n_ == o.n_;
  }

  // Raw arithmetic. All inputs are assumed reduced.
  WElem from_int(std::int64_t v) const;
  WElem add(const WElem& a, const WElem& b) const;
  WElem sub(const WElem& a, const WElem& b) const;
  WElem neg(const WElem& a) const;
  WElem mul(const WElem& a, const WElem& b) const;
  WElem mul_int(const WElem& a, std::int64_t k) const;
  WElem pow(WElem a, std::uint64_t e) const;
  bool is_zero(const WElem& a) const { return a == WElem{}; }
  bool is_unit(const WElem& a) const;
  /// Largest k <= N with p^k | a (N when a == 0).
  int val_int(const WElem& a) const;
  Valuation valuation(const WElem& a) const;
  WElem inverse(const WElem& a) const;
  /// a / p^k for a divisible by p^k; the result is determined mod p^{N-k}
  /// and its top k digits are set to zero.
  WElem divide_by_p_power(const WElem& a, int k) const;
  /// Map into another precision (reduction, or lift with zero top digits).
  WElem convert(const WElem& a, const PrimeConfig& target) const;
  /// Residue in F_q, encoded as sum c_i p^i with c_i in [0, p).
  std::uint32_t residue_index(const WElem& a) const;
  WElem from_residue_index(std::uint32_t idx) const;
  /// Representative with coordinates in (-p^N/2, p^N/2].
  std::array<std::int64_t, kMaxResidueDegree> symmetric(const WElem& a) const;
  std::string to_string(const WElem& a) const;

 private:
  PrimeConfig(int p, int f, int n);

  std::int64_t reduce(std::int64_t v) const;
  std::int64_t mulmod(std::int64_t a, std::int64_t b) const;

  int p_;
  int f_;
  int n_;
  std::int64_t pn_;
  std::int64_t q_;
  std::vector<std::int64_t> poly_;
};

using ConfigPtr = std::shared_ptr<const PrimeConfig>;

void require_same_config(const PrimeConfig& a, const PrimeConfig& b);

/// Element of W/p^N bound to its ring context.
class PadicScalar {
 public:
  PadicScalar(ConfigPtr ctx, WElem v) : ctx_(std::move(ctx)), v_(v) {}
  PadicScalar(ConfigPtr ctx, std::int64_t v);

  const ConfigPtr& config() const { return ctx_; }
  const WElem& raw() const { return v_; }

  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar operator-() const;
  bool operator==(const PadicScalar& o) const;

  Valuation valuation() const { return ctx_->valuation(v_); }
  bool is_unit() const { return ctx_->is_unit(v_); }
  bool is_zero() const { return ctx_->is_zero(v_); }
  /// Throws NonUnit.
  PadicScalar inverse() const;
  std::string str() const { return ctx_->to_string(v_); }

 private:
  ConfigPtr ctx_;
  WElem v_;
};

/// Teichmüller representatives of the first `count` nonzero residues of F_q
/// in index order. Throws CountTooLarge when count > q - 1.
std::vector<PadicScalar> teichmuller_units(const ConfigPtr& ctx, int count);

/// Teichmüller lift of the residue of a unit.
WElem teichmuller_lift(const PrimeConfig& ctx, const WElem& unit);

}  // namespace fgt
