#pragma once

#include "fgt/power_series.hpp"
#include "fgt/scalar.hpp"

#include <string>
#include <vector>

namespace fgt {

/// Dense univariate polynomial over W/p^N, low degree first, trailing
/// zeros trimmed.
class Polynomial {
 public:
  Polynomial(ConfigPtr ring, std::vector<WElem> coeffs);
  static Polynomial from_ints(ConfigPtr ring, const std::vector<std::int64_t>& coeffs);
  /// Univariate series read as a polynomial of degree <= D.
  static Polynomial from_series(const MultiSeries& s);

  const ConfigPtr& ring() const { return ring_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<WElem>& coeffs() const { return c_; }
  WElem coefficient(int i) const;

  Polynomial derivative() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();

  ConfigPtr ring_;
  std::vector<WElem> c_;
};

}  // namespace fgt
