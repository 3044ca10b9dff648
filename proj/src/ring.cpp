#include "catembed/ring.hpp"

#include <algorithm>
#include <numeric>

#include "catembed/error.hpp"

namespace catembed {

namespace {

std::vector<Conductor> units_fixing(Conductor n, const std::vector<CycElement>& gens) {
  std::vector<Conductor> out;
  for (Conductor k = (n == 1 ? 0 : 1); k < std::max<Conductor>(n, 1); ++k) {
    if (std::gcd(k, n) != 1) continue;
    bool fixes = true;
    for (const auto& g : gens) {
      if (!g.is_rational() && galois_apply_exponent(k, g) != g) {
        fixes = false;
        break;
      }
    }
    if (fixes) out.push_back(k);
  }
  return out;
}

// Gauss-Jordan inverse of a small square matrix over Q(zeta_N).
std::vector<std::vector<CycElement>> invert_small(std::vector<std::vector<CycElement>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<CycElement>> inv(n, std::vector<CycElement>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = CycElement(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw Error(ErrorKind::DivisionByZero, "singular conjugate Vandermonde matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const CycElement scale = a[col][col].inv();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * scale;
      inv[col][j] = inv[col][j] * scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const CycElement f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

RingSpec::RingSpec(std::vector<CycElement> generators, std::optional<std::set<Conductor>> denominator_primes,
                   std::string name, Conductor conductor)
    : name_(std::move(name)), conductor_(conductor), primes_(std::move(denominator_primes)) {
  if (conductor_ == 0) throw Error(ErrorKind::InvalidArgument, "RingSpec conductor 0");
  for (const auto& g : generators) conductor_ = lcm_conductor(conductor_, g.conductor());
  for (const auto& g : generators) {
    if (!g.is_rational()) generators_.push_back(g.lift(conductor_));
  }
  stabilizer_ = units_fixing(conductor_, generators_);
  for (const auto& g : generators_) {
    if (!field_contains(g.conj())) {
      throw Error(ErrorKind::InvalidArgument, "subfield of " + name_ + " is not closed under conjugation");
    }
  }
}

RingSpec RingSpec::integers() { return RingSpec({}, std::set<Conductor>{}, "Z"); }
RingSpec RingSpec::rationals() { return RingSpec({}, std::nullopt, "Q"); }
RingSpec RingSpec::dyadic() { return RingSpec({}, std::set<Conductor>{2}, "D"); }

const std::set<Conductor>& RingSpec::denominator_primes() const {
  static const std::set<Conductor> empty;
  return primes_ ? *primes_ : empty;
}

const std::vector<Conductor>& RingSpec::stabilizer_at(Conductor m) const {
  if (m == conductor_) return stabilizer_;
  if (m % conductor_ != 0) {
    throw Error(ErrorKind::InvalidArgument, "stabilizer_at: " + std::to_string(m) + " is not a multiple of " +
                                                std::to_string(conductor_));
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->by_conductor.find(m);
  if (it != cache_->by_conductor.end()) return it->second;
  std::vector<Conductor> out;
  for (Conductor h : stabilizer_) {
    for (Conductor k = h; k < m; k += conductor_) {
      if (std::gcd(k, m) == 1) out.push_back(k);
    }
  }
  std::sort(out.begin(), out.end());
  return cache_->by_conductor.emplace(m, std::move(out)).first->second;
}

bool RingSpec::field_contains(const CycElement& a) const {
  if (a.is_rational()) return true;
  if (stabilizer_.size() == euler_phi(conductor_)) return false;  // K0 = Q
  const Conductor l = lcm_conductor(conductor_, a.conductor());
  const CycElement lifted = a.lift(l);
  for (Conductor k : stabilizer_at(l)) {
    if (k != 1 && galois_apply_exponent(k, lifted) != lifted) return false;
  }
  return true;
}

bool RingSpec::denominators_ok(const CycElement& a) const {
  if (!primes_) return true;
  for (const auto& [e, c] : a.terms()) {
    mpz_class d = c.get_den();
    for (Conductor p : *primes_) {
      const mpz_class pz(static_cast<unsigned long>(p));
      while (d % pz == 0) d /= pz;
    }
    if (d != 1) return false;
  }
  return true;
}

RingSpec RingSpec::adjoin(const CycElement& a, std::string name) const {
  std::vector<CycElement> gens = generators_;
  gens.push_back(a);
  return RingSpec(std::move(gens), primes_, name.empty() ? name_ + "[" + a.to_string() + "]" : std::move(name),
                  conductor_);
}

bool RingSpec::same_ring(const RingSpec& other) const {
  if (primes_ != other.primes_) return false;
  const Conductor l = lcm_conductor(conductor_, other.conductor_);
  return stabilizer_at(l) == other.stabilizer_at(l);
}

bool ring_contains(const RingSpec& r, const CycElement& a) { return r.contains(a); }

Polynomial min_poly(const CycElement& a, const RingSpec& base) {
  const Conductor l = lcm_conductor(base.conductor(), a.conductor());
  const CycElement lifted = a.lift(l);
  std::vector<CycElement> images;
  for (Conductor k : base.stabilizer_at(l)) {
    CycElement img = galois_apply_exponent(k, lifted);
    if (std::find(images.begin(), images.end(), img) == images.end()) images.push_back(std::move(img));
  }
  Polynomial p({CycElement(1)});
  for (const auto& img : images) p = p * Polynomial::linear_factor(img);
  return p;
}

RingTower::RingTower(RingSpec base, CycElement alpha)
    : base_(std::move(base)),
      alpha_(std::move(alpha)),
      min_poly_(catembed::min_poly(alpha_, base_)),
      conductor_(lcm_conductor(base_.conductor(), alpha_.conductor())),
      extended_(base_.adjoin(alpha_)) {
  for (std::size_t i = 0; i < min_poly_.coeffs().size(); ++i) {
    if (!base_.contains(min_poly_.coeffs()[i])) {
      throw Error(ErrorKind::RingViolation, "minimal polynomial " + min_poly_.to_string() + " of " +
                                                alpha_.to_string() + " is not integral over " + base_.name());
    }
  }
  const CycElement lifted = alpha_.lift(conductor_);
  std::vector<CycElement> images;
  for (Conductor k : base_.stabilizer_at(conductor_)) {
    CycElement img = galois_apply_exponent(k, lifted);
    if (std::find(images.begin(), images.end(), img) == images.end()) {
      images.push_back(std::move(img));
      conjugate_exponents_.push_back(k);
    }
  }
  const std::size_t d = images.size();
  std::vector<std::vector<CycElement>> v(d, std::vector<CycElement>(d));
  for (std::size_t j = 0; j < d; ++j) {
    CycElement power(1);
    for (std::size_t i = 0; i < d; ++i) {
      v[j][i] = power;
      power = power * images[j];
    }
  }
  vandermonde_inverse_ = invert_small(std::move(v));
}

std::optional<std::vector<CycElement>> RingTower::decompose(const CycElement& x) const {
  const std::size_t d = degree();
  std::vector<CycElement> coeffs(d);
  if (x.is_rational()) {
    coeffs[0] = x;
    return coeffs;
  }
  std::vector<CycElement> rhs;
  rhs.reserve(d);
  for (Conductor k : conjugate_exponents_) {
    rhs.push_back(galois_apply(GaloisAutomorphism(conductor_, static_cast<std::int64_t>(k)), x));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) coeffs[i] += vandermonde_inverse_[i][j] * rhs[j];
    if (!base_.field_contains(coeffs[i])) return std::nullopt;
  }
  CycElement check;
  for (std::size_t i = d; i-- > 0;) check = check * alpha_ + coeffs[i];
  if (check != x) return std::nullopt;
  return coeffs;
}

bool RingTower::contains(const CycElement& x) const {
  auto c = decompose(x);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [&](const CycElement& ci) { return base_.denominators_ok(ci); });
}

}  // namespace catembed
