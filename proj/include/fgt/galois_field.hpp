#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fgt {

/// F_{p^k} with elements encoded as integers 0..q-1 (base-p digits are the
/// coordinates in the polynomial basis). Multiplication goes through
/// log/antilog tables, so q is limited to a few million.
class GaloisField {
 public:
  using Elem = std::uint32_t;

  /// Modulus is the lexicographically smallest monic irreducible.
  GaloisField(int p, int k);
  /// Explicit monic irreducible modulus (low degree first, size k + 1).
  GaloisField(int p, const std::vector<std::int64_t>& modulus);

  int p() const { return p_; }
  int degree() const { return k_; }
  std::uint32_t size() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const { return sub(0, a); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  /// The element w (class of x); generates the field over F_p.
  Elem generator_x() const;

  /// Solve for the p^h-th root (Frobenius is a bijection).
  Elem frobenius_root(Elem a, int h) const;

  /// Root of a monic polynomial over F_p inside this field (smallest
  /// index), used to embed a smaller field. Returns false when none exists.
  bool find_root(const std::vector<std::int64_t>& poly, Elem& root) const;

  std::string to_string(Elem a) const;

 private:
  void build();

  int p_;
  int k_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

/// Dense matrices over a GaloisField; rows of equal length.
using GfMatrix = std::vector<std::vector<GaloisField::Elem>>;

/// Rank by Gaussian elimination (the matrix is consumed).
std::size_t gf_rank(const GaloisField& field, GfMatrix m);
GaloisField::Elem gf_determinant(const GaloisField& field, GfMatrix m);
/// A nonzero x with m x = 0, when one exists.
bool gf_kernel_vector(const GaloisField& field, GfMatrix m, std::vector<GaloisField::Elem>& x);

}  // namespace fgt
