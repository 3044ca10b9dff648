#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "catembed/cyclotomic.hpp"
#include "catembed/polynomial.hpp"

namespace catembed {

// Dense row-major matrix over Q(zeta_N); all entries share one conductor.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<CycElement> entries);
  ExactMatrix(std::initializer_list<std::initializer_list<CycElement>> rows);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix column(std::vector<CycElement> entries);
  static ExactMatrix diagonal(const std::vector<CycElement>& diag);
  // |i><j| of size rows x cols
  static ExactMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Conductor conductor() const { return conductor_; }
  const std::vector<CycElement>& entries() const { return entries_; }
  const CycElement& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool is_zero() const;
  ExactMatrix lifted(Conductor m) const;

  ExactMatrix dagger() const;
  ExactMatrix transpose() const;
  CycElement trace() const;
  ExactMatrix scaled(const CycElement& s) const;

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void unify_conductor();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Conductor conductor_ = 1;
  std::vector<CycElement> entries_;
};

ExactMatrix operator*(const CycElement& s, const ExactMatrix& a);
ExactMatrix tensor(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix matrix_power(const ExactMatrix& a, unsigned e);

// Permutation |a>|b> -> |b>|a> for a in C^m, b in C^n.
ExactMatrix swap_matrix(std::size_t m, std::size_t n);

struct MatrixPredicates {
  bool is_normal = false;
  bool is_unitary = false;
  bool is_hermitian = false;
  bool is_orthogonal_projector = false;
};

MatrixPredicates predicates(const ExactMatrix& a);
bool is_normal(const ExactMatrix& a);
bool is_unitary(const ExactMatrix& a);
bool is_hermitian(const ExactMatrix& a);
bool is_orthogonal_projector(const ExactMatrix& a);

// det(xI - A) by Faddeev-LeVerrier.
Polynomial char_poly(const ExactMatrix& a);
ExactMatrix evaluate_polynomial(const Polynomial& p, const ExactMatrix& a);

// Basis of the right null space, from the reduced row echelon form with
// first-nonzero pivoting.
std::vector<ExactMatrix> kernel(const ExactMatrix& a);
std::size_t rank(const ExactMatrix& a);

// <u, v> = u^dagger v for column vectors.
CycElement inner(const ExactMatrix& u, const ExactMatrix& v);

struct Eigenspace {
  CycElement eigenvalue;
  std::vector<ExactMatrix> basis;   // mutually orthogonal, unnormalized
  std::vector<CycElement> norms_sq;  // <v, v> per basis vector
  ExactMatrix projector;
  std::size_t multiplicity = 0;
};

Eigenspace eigenspace_for(const ExactMatrix& a, const CycElement& lambda);

// Projector onto the span of one nonzero column vector.
ExactMatrix rank_one_projector(const ExactMatrix& v);

ExactMatrix mat_galois(const GaloisAutomorphism& g, const ExactMatrix& a);

}  // namespace catembed
