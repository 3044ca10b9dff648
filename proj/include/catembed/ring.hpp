#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catembed/cyclotomic.hpp"
#include "catembed/polynomial.hpp"

namespace catembed {

// A Kroneckerian number ring: the algebraic integers of a subfield K0 of
// Q(zeta_N), localized at a finite set of primes (or at all primes, giving K0).
class RingSpec {
 public:
  // An empty optional for denominator_primes means every prime is allowed.
  RingSpec(std::vector<CycElement> generators, std::optional<std::set<Conductor>> denominator_primes,
           std::string name = "", Conductor conductor = 1);

  static RingSpec integers();
  static RingSpec rationals();
  static RingSpec dyadic();  // Z[1/2]

  const std::string& name() const { return name_; }
  Conductor conductor() const { return conductor_; }
  const std::vector<CycElement>& generators() const { return generators_; }
  bool all_denominators() const { return !primes_.has_value(); }
  const std::set<Conductor>& denominator_primes() const;

  // Exponents k mod M with zeta_M -> zeta_M^k fixing K0; M a multiple of conductor().
  const std::vector<Conductor>& stabilizer_at(Conductor m) const;

  bool field_contains(const CycElement& a) const;
  bool denominators_ok(const CycElement& a) const;
  bool contains(const CycElement& a) const { return field_contains(a) && denominators_ok(a); }

  // The ring R[a] with the same denominator set.
  RingSpec adjoin(const CycElement& a, std::string name = "") const;

  bool same_ring(const RingSpec& other) const;

 private:
  bool is_rational_field() const { return conductor_ <= 2; }

  std::string name_;
  Conductor conductor_ = 1;
  std::vector<CycElement> generators_;
  std::optional<std::set<Conductor>> primes_;
  std::vector<Conductor> stabilizer_;

  struct Cache {
    std::mutex mutex;
    std::map<Conductor, std::vector<Conductor>> by_conductor;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

bool ring_contains(const RingSpec& r, const CycElement& a);

// Minimal polynomial of a over Frac(base): product of (x - s(a)) over the
// distinct images of a under Gal(Q(zeta_M)/K0).
Polynomial min_poly(const CycElement& a, const RingSpec& base);

// R subset R[alpha] with alpha integral over R.
class RingTower {
 public:
  RingTower(RingSpec base, CycElement alpha);

  const RingSpec& base() const { return base_; }
  const CycElement& alpha() const { return alpha_; }
  const Polynomial& min_poly() const { return min_poly_; }
  std::size_t degree() const { return static_cast<std::size_t>(min_poly_.degree()); }
  Conductor conductor() const { return conductor_; }
  const RingSpec& extended() const { return extended_; }

  // Exponents (at conductor()) of automorphisms fixing K0, one per distinct
  // image of alpha; the first is the identity.
  const std::vector<Conductor>& conjugate_exponents() const { return conjugate_exponents_; }

  // x = sum c_i alpha^i with c_i in Frac(base); nullopt if x is not in K0(alpha).
  std::optional<std::vector<CycElement>> decompose(const CycElement& x) const;

  bool contains(const CycElement& x) const;

 private:
  RingSpec base_;
  CycElement alpha_;
  Polynomial min_poly_;
  Conductor conductor_;
  RingSpec extended_;
  std::vector<Conductor> conjugate_exponents_;
  std::vector<std::vector<CycElement>> vandermonde_inverse_;
};

}  // namespace catembed
