#pragma once

#include <string>
#include <vector>

#include "catembed/cyclotomic.hpp"

namespace catembed {

// Univariate polynomial with CycElement coefficients, ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<CycElement> coeffs);

  // x - root
  static Polynomial linear_factor(const CycElement& root);

  const std::vector<CycElement>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const;
  const CycElement& coeff(std::size_t i) const;

  CycElement evaluate(const CycElement& x) const;
  Polynomial pow(unsigned e) const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial negated() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<CycElement> coeffs_;
};

}  // namespace catembed
