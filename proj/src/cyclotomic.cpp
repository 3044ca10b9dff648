#include "catembed/cyclotomic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "catembed/error.hpp"

namespace catembed {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s.push_back(ch);
  }
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw Error(ErrorKind::ParseError, "not a rational: '" + text + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rational_string(const Rational& q) { return q.get_str(10); }

Conductor lcm_conductor(Conductor a, Conductor b) { return std::lcm(a, b); }

namespace {

std::vector<Conductor> prime_factors(Conductor n) {
  std::vector<Conductor> primes;
  for (Conductor p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

using DensePoly = std::vector<mpz_class>;

// Exact division by a monic divisor.
DensePoly divide_exact(DensePoly num, const DensePoly& den) {
  const std::size_t dn = den.size() - 1;
  DensePoly quot(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    const mpz_class c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

DensePoly squarefree_cyclotomic(Conductor n, std::map<Conductor, DensePoly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  DensePoly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (Conductor d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(p, squarefree_cyclotomic(d, memo));
  }
  memo[n] = p;
  return p;
}

std::unique_ptr<CyclotomicPolynomial> build_cyclotomic(Conductor n) {
  Conductor rad = 1;
  for (Conductor p : prime_factors(n)) rad *= p;
  std::map<Conductor, DensePoly> memo;
  const DensePoly base = squarefree_cyclotomic(rad, memo);
  auto out = std::make_unique<CyclotomicPolynomial>();
  out->n = n;
  const Conductor stretch = n / rad;
  out->degree = (base.size() - 1) * stretch;
  for (std::size_t j = 0; j < base.size(); ++j) {
    if (base[j] != 0) out->terms.emplace_back(j * stretch, base[j]);
  }
  return out;
}

Conductor mul_mod(Conductor a, Conductor b, Conductor n) {
  return static_cast<Conductor>((static_cast<unsigned __int128>(a) * b) % n);
}

}  // namespace

Conductor euler_phi(Conductor n) {
  Conductor result = n;
  for (Conductor p : prime_factors(n)) result = result / p * (p - 1);
  return result;
}

const CyclotomicPolynomial& cyclotomic_polynomial(Conductor n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "conductor must be positive");
  static std::mutex mutex;
  static std::map<Conductor, std::unique_ptr<CyclotomicPolynomial>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = build_cyclotomic(n);
  return *slot;
}

// Accumulates exponent/coefficient pairs in Q[x]/(x^N - 1) and reduces the
// result modulo Phi_N.  Small conductors use a dense scratch array.
class CycBuilder {
 public:
  explicit CycBuilder(Conductor n)
      : n_(n), phi_(cyclotomic_polynomial(n)), dense_mode_(n <= kDenseLimit) {
    if (dense_mode_) dense_.resize(n);
  }

  void add(Conductor e, const Rational& c) {
    e %= n_;
    if (dense_mode_) {
      dense_[e] += c;
    } else {
      sparse_[e] += c;
    }
  }

  void add_product(Conductor e, const Rational& a, const Rational& b) {
    e %= n_;
    if (dense_mode_) {
      mpq_class& slot = dense_[e];
      mpq_class t = a * b;
      slot += t;
    } else {
      sparse_[e] += a * b;
    }
  }

  CycElement finish() {
    const Conductor deg = phi_.degree;
    std::vector<CycElement::Term> terms;
    if (dense_mode_) {
      for (Conductor e = n_; e-- > deg;) {
        if (sgn(dense_[e]) == 0) continue;
        const Rational c = dense_[e];
        for (const auto& [j, a] : phi_.terms) {
          if (j < deg) dense_[e - deg + j] -= c * a;
        }
      }
      for (Conductor e = 0; e < std::min(deg, n_); ++e) {
        if (sgn(dense_[e]) != 0) terms.emplace_back(e, std::move(dense_[e]));
      }
    } else {
      while (!sparse_.empty()) {
        auto top = std::prev(sparse_.end());
        if (top->first < deg) break;
        const Conductor e = top->first;
        const Rational c = top->second;
        sparse_.erase(top);
        if (sgn(c) == 0) continue;
        for (const auto& [j, a] : phi_.terms) {
          if (j < deg) sparse_[e - deg + j] -= c * a;
        }
      }
      for (auto& [e, c] : sparse_) {
        if (sgn(c) != 0) terms.emplace_back(e, std::move(c));
      }
    }
    return CycElement(n_, std::move(terms));
  }

 private:
  static constexpr Conductor kDenseLimit = 2048;
  Conductor n_;
  const CyclotomicPolynomial& phi_;
  bool dense_mode_;
  std::vector<Rational> dense_;
  std::map<Conductor, Rational> sparse_;
};

CycElement::CycElement(long value) {
  if (value != 0) terms_.emplace_back(0, Rational(value));
}

CycElement::CycElement(const Rational& value) {
  if (sgn(value) != 0) {
    terms_.emplace_back(0, value);
    terms_.back().second.canonicalize();
  }
}

CycElement CycElement::make(Conductor n, const std::vector<std::pair<std::int64_t, Rational>>& coeffs) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "cyc_make: conductor 0");
  CycBuilder b(n);
  const auto sn = static_cast<std::int64_t>(n);
  for (const auto& [e, c] : coeffs) {
    Rational q = c;
    q.canonicalize();
    b.add(static_cast<Conductor>(((e % sn) + sn) % sn), q);
  }
  return b.finish();
}

CycElement CycElement::zeta(Conductor n, std::int64_t exponent) { return make(n, {{exponent, Rational(1)}}); }

bool CycElement::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

Rational CycElement::rational_value() const {
  if (!is_rational()) throw Error(ErrorKind::InvalidArgument, "element is not rational: " + to_string());
  return terms_.empty() ? Rational(0) : terms_[0].second;
}

CycElement CycElement::lift(Conductor m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "cannot lift conductor " + std::to_string(n_) + " to " + std::to_string(m));
  }
  if (is_rational()) {
    CycElement out = *this;
    out.n_ = m;
    return out;
  }
  const Conductor stretch = m / n_;
  CycBuilder b(m);
  for (const auto& [e, c] : terms_) b.add(e * stretch, c);
  return b.finish();
}

CycElement CycElement::operator-() const {
  CycElement out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

CycElement& CycElement::operator+=(const CycElement& other) {
  if (other.n_ != n_) {
    const Conductor l = lcm_conductor(n_, other.n_);
    *this = lift(l);
    return *this += other.lift(l);
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (sgn(s) != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

CycElement& CycElement::operator-=(const CycElement& other) { return *this += -other; }

CycElement& CycElement::operator*=(const CycElement& other) {
  *this = *this * other;
  return *this;
}

CycElement& CycElement::operator/=(const CycElement& other) {
  *this = *this / other;
  return *this;
}

CycElement CycElement::scaled(const Rational& q) const {
  if (sgn(q) == 0) {
    CycElement z;
    z.n_ = n_;
    return z;
  }
  Rational k = q;
  k.canonicalize();
  CycElement out = *this;
  for (auto& t : out.terms_) t.second *= k;
  return out;
}

CycElement operator*(const CycElement& a, const CycElement& b) {
  if (a.n_ != b.n_) {
    const Conductor l = lcm_conductor(a.n_, b.n_);
    return a.lift(l) * b.lift(l);
  }
  if (a.is_zero() || b.is_zero()) return CycElement(0).lift(a.n_);
  if (a.is_rational()) return b.scaled(a.terms_[0].second);
  if (b.is_rational()) return a.scaled(b.terms_[0].second);
  CycBuilder acc(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) acc.add_product(ea + eb, ca, cb);
  }
  return acc.finish();
}

bool operator==(const CycElement& a, const CycElement& b) {
  if (a.n_ == b.n_ || (a.is_rational() && b.is_rational())) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
    }
    return true;
  }
  const Conductor l = lcm_conductor(a.n_, b.n_);
  return a.lift(l) == b.lift(l);
}

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Returns (quotient, remainder).
std::pair<QPoly, QPoly> divmod(QPoly num, const QPoly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {QPoly{}, num};
  QPoly quot(num.size() - dd);
  const Rational lead = den.back();
  for (std::size_t i = num.size(); i-- > dd;) {
    if (sgn(num[i]) == 0) continue;
    Rational c = num[i] / lead;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    quot[i - dd] = std::move(c);
  }
  num.resize(dd);
  trim(num);
  trim(quot);
  return {quot, num};
}

QPoly poly_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly out = a;
  if (!q.empty() && !b.empty()) {
    if (out.size() < q.size() + b.size() - 1) out.resize(q.size() + b.size() - 1);
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (sgn(q[i]) == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
    }
  }
  trim(out);
  return out;
}

}  // namespace

CycElement CycElement::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (is_rational()) return CycElement(Rational(1) / terms_[0].second).lift(n_);
  if (is_monomial()) {
    const auto& [e, c] = terms_[0];
    CycBuilder b(n_);
    b.add(n_ - e, Rational(1) / c);
    return b.finish();
  }
  // Extended Euclid: s * a = r (mod Phi_N) with r a nonzero constant.
  const auto& phi = cyclotomic_polynomial(n_);
  QPoly r0(phi.degree + 1);
  for (const auto& [j, c] : phi.terms) r0[j] = c;
  QPoly r1(terms_.back().first + 1);
  for (const auto& [e, c] : terms_) r1[e] = c;
  QPoly s0;
  QPoly s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = poly_sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw Error(ErrorKind::DivisionByZero, "element not invertible");
  const Rational scale = Rational(1) / r1[0];
  CycBuilder b(n_);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (sgn(s1[i]) != 0) b.add(i, s1[i] * scale);
  }
  return b.finish();
}

CycElement galois_apply_exponent(Conductor k, const CycElement& a) {
  const Conductor n = a.conductor();
  if (std::gcd(k % n, n) != 1) {
    throw Error(ErrorKind::InvalidArgument,
                "Galois exponent " + std::to_string(k) + " not coprime to " + std::to_string(n));
  }
  if (a.is_rational()) return a;
  CycBuilder b(n);
  for (const auto& [e, c] : a.terms()) b.add(mul_mod(e, k % n, n), c);
  return b.finish();
}

CycElement CycElement::conj() const {
  if (n_ <= 2 || is_rational()) return *this;
  return galois_apply_exponent(n_ - 1, *this);
}

CycElement cyc_conj(const CycElement& a) { return a.conj(); }

CycElement CycElement::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  CycElement result = CycElement(1).lift(n_);
  CycElement base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string CycElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "z" << n_;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycElement& a) { return os << a.to_string(); }

GaloisAutomorphism::GaloisAutomorphism(Conductor n, std::int64_t k) : n_(n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "Galois automorphism with conductor 0");
  const auto sn = static_cast<std::int64_t>(n);
  k_ = static_cast<Conductor>(((k % sn) + sn) % sn);
  if (std::gcd(k_, n_) != 1) {
    throw Error(ErrorKind::InvalidArgument,
                "Galois exponent " + std::to_string(k) + " not coprime to " + std::to_string(n));
  }
}

Conductor GaloisAutomorphism::exponent_at(Conductor m) const {
  if (m % n_ != 0) throw Error(ErrorKind::InvalidArgument, "exponent_at: not a multiple of the conductor");
  for (Conductor k = k_;; k += n_) {
    if (std::gcd(k, m) == 1) return k % m;
  }
}

GaloisAutomorphism GaloisAutomorphism::compose(const GaloisAutomorphism& other) const {
  const Conductor l = lcm_conductor(n_, other.n_);
  return GaloisAutomorphism(l, static_cast<std::int64_t>(mul_mod(exponent_at(l), other.exponent_at(l), l)));
}

CycElement galois_apply(const GaloisAutomorphism& g, const CycElement& a) {
  const Conductor l = lcm_conductor(g.conductor(), a.conductor());
  return galois_apply_exponent(g.exponent_at(l), a.lift(l));
}

namespace {

struct MpfrValue {
  explicit MpfrValue(mpfr_prec_t bits) { mpfr_init2(v, bits); mpfr_set_ui(v, 0, MPFR_RNDN); }
  ~MpfrValue() { mpfr_clear(v); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_t v;
};

std::string fixed_string(const mpfr_t x, int decimals) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rf", decimals, x);
  std::string s(buf);
  mpfr_free_str(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(s.begin());
  return s;
}

}  // namespace

ComplexApprox to_complex(const CycElement& a, int digits) {
  if (digits < 1) throw Error(ErrorKind::InvalidArgument, "to_complex: digits must be >= 1");
  // Guard digits cover the number of terms and the coefficient magnitudes.
  double guard = 10.0 + std::log10(static_cast<double>(a.terms().size()) + 1.0);
  for (const auto& [e, c] : a.terms()) {
    guard = std::max(guard, 10.0 + std::log10(std::fabs(c.get_d()) + 1.0) * 2.0);
  }
  const auto bits = static_cast<mpfr_prec_t>(std::ceil((digits + guard) * 3.33)) + 32;
  MpfrValue re(bits), im(bits), angle(bits), s(bits), c(bits), twopi(bits);
  mpfr_const_pi(twopi.v, MPFR_RNDN);
  mpfr_mul_ui(twopi.v, twopi.v, 2, MPFR_RNDN);
  const Conductor n = a.conductor();
  for (const auto& [e, coef] : a.terms()) {
    mpfr_mul_ui(angle.v, twopi.v, static_cast<unsigned long>(e), MPFR_RNDN);
    mpfr_div_ui(angle.v, angle.v, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_sin_cos(s.v, c.v, angle.v, MPFR_RNDN);
    mpfr_mul_q(c.v, c.v, coef.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_q(s.v, s.v, coef.get_mpq_t(), MPFR_RNDN);
    mpfr_add(re.v, re.v, c.v, MPFR_RNDN);
    mpfr_add(im.v, im.v, s.v, MPFR_RNDN);
  }
  ComplexApprox out;
  out.re = fixed_string(re.v, digits + 2);
  out.im = fixed_string(im.v, digits + 2);
  out.value = {mpfr_get_d(re.v, MPFR_RNDN), mpfr_get_d(im.v, MPFR_RNDN)};
  return out;
}

std::complex<double> to_complex_double(const CycElement& a) { return to_complex(a, 17).value; }

}  // namespace catembed
