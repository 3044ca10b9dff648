#include "catembed/matrix.hpp"

#include <sstream>

#include "catembed/error.hpp"

namespace catembed {

namespace {

std::string shape(const ExactMatrix& a) { return std::to_string(a.rows()) + "x" + std::to_string(a.cols()); }

void require_square(const ExactMatrix& a, const char* op) {
  if (!a.is_square()) throw Error(ErrorKind::NotSquare, std::string(op) + ": matrix is " + shape(a));
}

}  // namespace

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, std::vector<CycElement> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(rows * cols) + " entries, got " +
                                              std::to_string(entries_.size()));
  }
  unify_conductor();
}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<CycElement>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
  unify_conductor();
}

void ExactMatrix::unify_conductor() {
  conductor_ = 1;
  for (const auto& e : entries_) conductor_ = lcm_conductor(conductor_, e.conductor());
  for (auto& e : entries_) {
    if (e.conductor() != conductor_) e = e.lift(conductor_);
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = CycElement(1);
  return m;
}

ExactMatrix ExactMatrix::column(std::vector<CycElement> entries) {
  const std::size_t n = entries.size();
  return ExactMatrix(n, 1, std::move(entries));
}

ExactMatrix ExactMatrix::diagonal(const std::vector<CycElement>& diag) {
  const std::size_t n = diag.size();
  std::vector<CycElement> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return ExactMatrix(n, n, std::move(e));
}

ExactMatrix ExactMatrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  ExactMatrix m(rows, cols);
  m.entries_[i * cols + j] = CycElement(1);
  return m;
}

bool ExactMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

ExactMatrix ExactMatrix::lifted(Conductor m) const {
  ExactMatrix out = *this;
  for (auto& e : out.entries_) e = e.lift(m);
  out.conductor_ = m;
  return out;
}

ExactMatrix ExactMatrix::dagger() const {
  std::vector<CycElement> e(entries_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) e[c * rows_ + r] = (*this)(r, c).conj();
  }
  return ExactMatrix(cols_, rows_, std::move(e));
}

ExactMatrix ExactMatrix::transpose() const {
  std::vector<CycElement> e(entries_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) e[c * rows_ + r] = (*this)(r, c);
  }
  return ExactMatrix(cols_, rows_, std::move(e));
}

CycElement ExactMatrix::trace() const {
  require_square(*this, "trace");
  CycElement t;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ExactMatrix ExactMatrix::scaled(const CycElement& s) const {
  std::vector<CycElement> e;
  e.reserve(entries_.size());
  for (const auto& x : entries_) e.push_back(x.is_zero() ? x : x * s);
  return ExactMatrix(rows_, cols_, std::move(e));
}

ExactMatrix operator*(const CycElement& s, const ExactMatrix& a) { return a.scaled(s); }

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(ErrorKind::ShapeMismatch, "add: " + shape(a) + " vs " + shape(b));
  }
  std::vector<CycElement> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] + b.entries_[i];
  return ExactMatrix(a.rows_, a.cols_, std::move(e));
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(ErrorKind::ShapeMismatch, "sub: " + shape(a) + " vs " + shape(b));
  }
  std::vector<CycElement> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] - b.entries_[i];
  return ExactMatrix(a.rows_, a.cols_, std::move(e));
}

// Skips zero entries on both sides; gate and permutation matrices are mostly zero.
ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeMismatch, "mul: " + shape(a) + " * " + shape(b));
  std::vector<std::vector<std::size_t>> nz(b.rows_);
  for (std::size_t k = 0; k < b.rows_; ++k) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      if (!b(k, j).is_zero()) nz[k].push_back(j);
    }
  }
  std::vector<CycElement> e(a.rows_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    CycElement* row = &e[i * b.cols_];
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const CycElement& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j : nz[k]) row[j] += x * b(k, j);
    }
  }
  return ExactMatrix(a.rows_, b.cols_, std::move(e));
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
  }
  os << "]";
  return os.str();
}

ExactMatrix tensor(const ExactMatrix& a, const ExactMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<CycElement> e(rows * cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const CycElement& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (!b(k, l).is_zero()) e[(i * b.rows() + k) * cols + j * b.cols() + l] = x * b(k, l);
        }
      }
    }
  }
  return ExactMatrix(rows, cols, std::move(e));
}

ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
  const std::size_t rows = a.rows() + b.rows();
  const std::size_t cols = a.cols() + b.cols();
  std::vector<CycElement> e(rows * cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) e[i * cols + j] = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) e[(a.rows() + i) * cols + a.cols() + j] = b(i, j);
  }
  return ExactMatrix(rows, cols, std::move(e));
}

ExactMatrix matrix_power(const ExactMatrix& a, unsigned e) {
  require_square(a, "matrix_power");
  ExactMatrix result = ExactMatrix::identity(a.rows());
  for (unsigned i = 0; i < e; ++i) result = result * a;
  return result;
}

ExactMatrix swap_matrix(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw Error(ErrorKind::InvalidArgument, "swap dimensions must be positive");
  const std::size_t d = m * n;
  std::vector<CycElement> e(d * d);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < n; ++b) e[(b * m + a) * d + (a * n + b)] = CycElement(1);
  }
  return ExactMatrix(d, d, std::move(e));
}

bool is_normal(const ExactMatrix& a) {
  require_square(a, "is_normal");
  const ExactMatrix ad = a.dagger();
  return a * ad == ad * a;
}

bool is_unitary(const ExactMatrix& a) {
  require_square(a, "is_unitary");
  const ExactMatrix ad = a.dagger();
  const ExactMatrix id = ExactMatrix::identity(a.rows());
  return ad * a == id && a * ad == id;
}

bool is_hermitian(const ExactMatrix& a) {
  require_square(a, "is_hermitian");
  return a == a.dagger();
}

bool is_orthogonal_projector(const ExactMatrix& a) {
  require_square(a, "is_orthogonal_projector");
  return a == a.dagger() && a * a == a;
}

MatrixPredicates predicates(const ExactMatrix& a) {
  return {is_normal(a), is_unitary(a), is_hermitian(a), is_orthogonal_projector(a)};
}

Polynomial char_poly(const ExactMatrix& a) {
  require_square(a, "char_poly");
  const std::size_t n = a.rows();
  std::vector<CycElement> c(n + 1);
  c[n] = CycElement(1);
  ExactMatrix m(n, n);
  const ExactMatrix id = ExactMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + id.scaled(c[n - k + 1]);
    c[n - k] = (a * m).trace().scaled(Rational(-1, static_cast<long>(k)));
  }
  return Polynomial(std::move(c));
}

ExactMatrix evaluate_polynomial(const Polynomial& p, const ExactMatrix& a) {
  require_square(a, "evaluate_polynomial");
  const ExactMatrix id = ExactMatrix::identity(a.rows());
  ExactMatrix acc(a.rows(), a.cols());
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * a + id.scaled(*it);
  return acc;
}

std::vector<ExactMatrix> kernel(const ExactMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::vector<CycElement>> m(rows, std::vector<CycElement>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = a(r, c);
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && m[p][col].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    const CycElement inv = m[row][col].inv();
    for (std::size_t c = col; c < cols; ++c) {
      if (!m[row][c].is_zero()) m[row][c] = m[row][c] * inv;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const CycElement f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) {
        if (!m[row][c].is_zero()) m[r][c] -= f * m[row][c];
      }
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<ExactMatrix> basis;
  std::size_t next_pivot = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == free) {
      ++next_pivot;
      continue;
    }
    std::vector<CycElement> v(cols);
    v[free] = CycElement(1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m[i][free];
    basis.push_back(ExactMatrix::column(std::move(v)));
  }
  return basis;
}

std::size_t rank(const ExactMatrix& a) { return a.cols() - kernel(a).size(); }

CycElement inner(const ExactMatrix& u, const ExactMatrix& v) {
  if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "inner: " + shape(u) + " vs " + shape(v));
  }
  CycElement s;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    if (!u(i, 0).is_zero() && !v(i, 0).is_zero()) s += u(i, 0).conj() * v(i, 0);
  }
  return s;
}

ExactMatrix rank_one_projector(const ExactMatrix& v) {
  const CycElement n = inner(v, v);
  if (n.is_zero()) throw Error(ErrorKind::InvalidArgument, "projector onto the zero vector");
  return (v * v.dagger()).scaled(n.inv());
}

Eigenspace eigenspace_for(const ExactMatrix& a, const CycElement& lambda) {
  require_square(a, "eigenspace_for");
  const std::size_t n = a.rows();
  if (!char_poly(a).evaluate(lambda).is_zero()) {
    throw Error(ErrorKind::NotEigenvalue, lambda.to_string() + " is not a root of the characteristic polynomial");
  }
  const auto raw = kernel(a - ExactMatrix::identity(n).scaled(lambda));
  if (raw.empty()) throw Error(ErrorKind::NotEigenvalue, "multiplicity zero for " + lambda.to_string());
  Eigenspace es;
  es.eigenvalue = lambda;
  es.projector = ExactMatrix(n, n);
  for (const auto& v : raw) {
    ExactMatrix u = v;
    for (std::size_t i = 0; i < es.basis.size(); ++i) {
      const CycElement coeff = inner(es.basis[i], v) / es.norms_sq[i];
      if (!coeff.is_zero()) u = u - es.basis[i].scaled(coeff);
    }
    const CycElement nsq = inner(u, u);
    es.projector = es.projector + (u * u.dagger()).scaled(nsq.inv());
    es.basis.push_back(std::move(u));
    es.norms_sq.push_back(nsq);
  }
  es.multiplicity = es.basis.size();
  return es;
}

ExactMatrix mat_galois(const GaloisAutomorphism& g, const ExactMatrix& a) {
  std::vector<CycElement> e;
  e.reserve(a.entries().size());
  for (const auto& x : a.entries()) e.push_back(galois_apply(g, x));
  return ExactMatrix(a.rows(), a.cols(), std::move(e));
}

}  // namespace catembed
