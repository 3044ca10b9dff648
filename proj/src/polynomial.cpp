#include "catembed/polynomial.hpp"

#include <sstream>

namespace catembed {

Polynomial::Polynomial(std::vector<CycElement> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::linear_factor(const CycElement& root) { return Polynomial({-root, CycElement(1)}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool Polynomial::is_monic() const { return !coeffs_.empty() && coeffs_.back() == CycElement(1); }

const CycElement& Polynomial::coeff(std::size_t i) const {
  static const CycElement zero;
  return i < coeffs_.size() ? coeffs_[i] : zero;
}

CycElement Polynomial::evaluate(const CycElement& x) const {
  CycElement acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result({CycElement(1)});
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<CycElement> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<CycElement> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
  return Polynomial(std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  }
  return true;
}

Polynomial Polynomial::negated() const {
  std::vector<CycElement> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(-c);
  return Polynomial(std::move(out));
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const CycElement& c = coeffs_[i];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = c == CycElement(1);
    if (i == 0 || !unit) os << (c.is_monomial() || c.is_rational() ? c.to_string() : "(" + c.to_string() + ")");
    if (i > 0) {
      if (!unit) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace catembed
