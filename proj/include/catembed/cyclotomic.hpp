#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace catembed {

using Rational = mpq_class;
using Conductor = std::uint64_t;

Rational parse_rational(const std::string& text);
std::string rational_string(const Rational& q);

Conductor lcm_conductor(Conductor a, Conductor b);
Conductor euler_phi(Conductor n);

// Sparse integer polynomial sum c_j x^j, ascending exponents.
struct CyclotomicPolynomial {
  Conductor n = 1;
  Conductor degree = 1;
  std::vector<std::pair<Conductor, mpz_class>> terms;
};

// Cached; the reference stays valid for the life of the process.
const CyclotomicPolynomial& cyclotomic_polynomial(Conductor n);

// Element of Q(zeta_N) in the power basis {1, zeta, ..., zeta^(phi(N)-1)}.
// Only nonzero coefficients are stored, sorted by exponent, so two elements
// of the same conductor are equal iff their term lists are equal.
class CycElement {
 public:
  using Term = std::pair<Conductor, Rational>;

  CycElement() = default;
  CycElement(long value);  // NOLINT: integers convert implicitly
  explicit CycElement(const Rational& value);

  // cyc_make: exponents are taken mod N, then reduced modulo Phi_N.
  static CycElement make(Conductor n, const std::vector<std::pair<std::int64_t, Rational>>& coeffs);
  static CycElement zeta(Conductor n, std::int64_t exponent = 1);

  Conductor conductor() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational rational_value() const;

  // Same element viewed in Q(zeta_M); M must be a multiple of the conductor.
  CycElement lift(Conductor m) const;

  CycElement operator-() const;
  CycElement& operator+=(const CycElement& other);
  CycElement& operator-=(const CycElement& other);
  CycElement& operator*=(const CycElement& other);
  CycElement& operator/=(const CycElement& other);

  CycElement inv() const;
  CycElement conj() const;
  CycElement pow(std::int64_t e) const;

  friend CycElement operator+(CycElement a, const CycElement& b) { return a += b; }
  friend CycElement operator-(CycElement a, const CycElement& b) { return a -= b; }
  friend CycElement operator*(const CycElement& a, const CycElement& b);
  friend CycElement operator/(const CycElement& a, const CycElement& b) { return a * b.inv(); }
  friend bool operator==(const CycElement& a, const CycElement& b);
  friend bool operator!=(const CycElement& a, const CycElement& b) { return !(a == b); }

  CycElement scaled(const Rational& q) const;

  // Human-readable form such as "1/2 - 1/2*z8^2".
  std::string to_string() const;

 private:
  friend class CycBuilder;
  CycElement(Conductor n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {}

  Conductor n_ = 1;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const CycElement& a);

CycElement cyc_conj(const CycElement& a);

class GaloisAutomorphism {
 public:
  GaloisAutomorphism(Conductor n, std::int64_t k);

  static GaloisAutomorphism conjugation(Conductor n) { return GaloisAutomorphism(n, -1); }
  static GaloisAutomorphism identity(Conductor n) { return GaloisAutomorphism(n, 1); }

  Conductor conductor() const { return n_; }
  Conductor exponent() const { return k_; }

  // Exponent of an extension of this automorphism to Q(zeta_M), M a multiple of N.
  Conductor exponent_at(Conductor m) const;
  GaloisAutomorphism compose(const GaloisAutomorphism& other) const;

  friend bool operator==(const GaloisAutomorphism& a, const GaloisAutomorphism& b) {
    return a.n_ == b.n_ && a.k_ == b.k_;
  }

 private:
  Conductor n_;
  Conductor k_;
};

CycElement galois_apply(const GaloisAutomorphism& g, const CycElement& a);

// Apply zeta -> zeta^k on Q(zeta_N) with N = a.conductor(); k must be coprime to N.
CycElement galois_apply_exponent(Conductor k, const CycElement& a);

struct ComplexApprox {
  std::string re;
  std::string im;
  std::complex<double> value;
};

// Evaluates at zeta_N = exp(2 pi i / N) with working precision chosen so the
// absolute error is below 10^-digits.
ComplexApprox to_complex(const CycElement& a, int digits);
std::complex<double> to_complex_double(const CycElement& a);

}  // namespace catembed
