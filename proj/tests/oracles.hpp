#pragma once

// Independent reference computations used only by the tests.  Nothing here
// calls into the library's linear algebra, Galois or embedding code.

#include <gmpxx.h>

#include <optional>
#include <random>
#include <vector>

#include "catembed/cyclotomic.hpp"

namespace oracle {

using catembed::Conductor;
using catembed::CycElement;
using catembed::Rational;
using QVec = std::vector<Rational>;

// Dense coefficient vector of a (lifted to conductor n) in the power basis.
inline QVec coords(const CycElement& a, Conductor n) {
  const CycElement l = a.lift(n);
  QVec v(catembed::euler_phi(n));
  for (const auto& [e, c] : l.terms()) v[e] = c;
  return v;
}

// Solves sum_j x_j * cols[j] = target over Q; nullopt if inconsistent.
inline std::optional<QVec> solve_columns(const std::vector<QVec>& cols, const QVec& target) {
  const std::size_t rows = target.size();
  const std::size_t n = cols.size();
  std::vector<QVec> m(rows, QVec(n + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < n; ++j) m[r][j] = cols[j][r];
    m[r][n] = target[r];
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && sgn(m[p][col]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c <= n; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (sgn(m[r][n]) != 0) return std::nullopt;
  }
  QVec x(n);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][n];
  return x;
}

inline std::size_t rank_of(const std::vector<QVec>& vecs) {
  std::size_t r = 0;
  std::vector<QVec> basis;
  for (const auto& v : vecs) {
    if (!solve_columns(basis, v)) {
      basis.push_back(v);
      ++r;
    }
  }
  return r;
}

// Q-basis of the field generated by gens inside Q(zeta_n): close {1} under
// multiplication by the generators, keeping independent vectors.
inline std::vector<CycElement> subfield_basis(const std::vector<CycElement>& gens, Conductor n) {
  std::vector<CycElement> basis{CycElement(1).lift(n)};
  std::vector<QVec> vecs{coords(basis[0], n)};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (const auto& g : gens) {
      CycElement cand = basis[i] * g.lift(n);
      QVec v = coords(cand, n);
      if (!solve_columns(vecs, v)) {
        basis.push_back(cand);
        vecs.push_back(v);
      }
    }
  }
  return basis;
}

// Degree of a over the field generated by gens: smallest d with a^d in the
// Q-span of {b_j a^i : i < d}.
inline std::size_t min_poly_degree_by_dependence(const CycElement& a, const std::vector<CycElement>& gens) {
  Conductor n = a.conductor();
  for (const auto& g : gens) n = catembed::lcm_conductor(n, g.conductor());
  const auto basis = subfield_basis(gens, n);
  std::vector<QVec> cols;
  CycElement power = CycElement(1).lift(n);
  for (std::size_t d = 1;; ++d) {
    for (const auto& b : basis) cols.push_back(coords(b * power, n));
    power = power * a.lift(n);
    if (solve_columns(cols, coords(power, n))) return d;
  }
}

inline CycElement random_element(std::mt19937& rng, Conductor n, int max_num = 5, int max_den = 3) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  std::vector<std::pair<std::int64_t, Rational>> coeffs;
  const auto deg = static_cast<std::int64_t>(catembed::euler_phi(n));
  for (std::int64_t e = 0; e < deg; ++e) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    coeffs.emplace_back(e, q);
  }
  return CycElement::make(n, coeffs);
}


// Coefficients c_0..c_{d-1} in the field generated by gens with
// x = sum c_i alpha^i, found by a rational linear solve over the basis
// {b_j alpha^i}.
inline std::optional<std::vector<CycElement>> alpha_coefficients(const CycElement& x, const CycElement& alpha,
                                                                 const std::vector<CycElement>& gens,
                                                                 std::size_t d) {
  Conductor n = catembed::lcm_conductor(x.conductor(), alpha.conductor());
  for (const auto& g : gens) n = catembed::lcm_conductor(n, g.conductor());
  const auto basis = subfield_basis(gens, n);
  std::vector<QVec> cols;
  std::vector<CycElement> power{CycElement(1).lift(n)};
  for (std::size_t i = 1; i < d; ++i) power.push_back(power.back() * alpha.lift(n));
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto& b : basis) cols.push_back(coords(b * power[i], n));
  }
  const auto sol = solve_columns(cols, coords(x, n));
  if (!sol) return std::nullopt;
  std::vector<CycElement> c(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) c[i] += basis[j].scaled((*sol)[i * basis.size() + j]);
  }
  return c;
}

}  // namespace oracle
