// Exact integer/rational linear algebra: Hermite and Smith normal forms,
// linear solving over Q and Z, and feasibility of homogeneous strict systems.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricfan {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element of N or M: integer coordinates over a fixed ambient rank.
using LatticeVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Malformed input or a violated precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Rows must share one length; an empty list gives a 0 x cols matrix.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw Error("matrix rows have different lengths");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows = 0) {
    return from_rows(columns, rows).transpose();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product dimension mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += a(i, k) * b(k, j);
      }
    return p;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (v.size() != cols_) throw Error("matrix-vector dimension mismatch");
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

RationalMatrix to_rational(const IntegerMatrix& m);
RationalVector to_rational(const LatticeVector& v);

Integer dot(const LatticeVector& a, const LatticeVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const LatticeVector& a, const RationalVector& b);

/// Divides out the content. Throws Error("no primitive representative") on zero input.
LatticeVector primitive(const LatticeVector& v);

/// Positive multiple of a nonzero rational vector with coprime integer entries.
LatticeVector primitive(const RationalVector& v);

bool is_zero(const LatticeVector& v);
bool is_zero(const RationalVector& v);

/// Column-style Hermite form: H = M * U, U unimodular. H is lower echelon;
/// each pivot is positive, the entries right of a pivot vanish and the entries
/// left of a pivot in its row lie in [0, pivot).
struct HermiteForm {
  IntegerMatrix H;
  IntegerMatrix U;
  std::size_t rank = 0;
  /// pivot_rows[j] is the row of the pivot in column j, for j < rank.
  std::vector<std::size_t> pivot_rows;
};
HermiteForm hermite_normal_form(const IntegerMatrix& m);

/// S = U * M * V with S diagonal, nonnegative, and d1 | d2 | ... .
struct SmithForm {
  IntegerMatrix S;
  IntegerMatrix U;
  IntegerMatrix V;
  /// Nonzero diagonal entries of S, in order.
  std::vector<Integer> diagonal;
};
SmithForm smith_normal_form(const IntegerMatrix& m);

Integer determinant(const IntegerMatrix& m);
std::size_t rank(const RationalMatrix& m);
std::size_t rank(const IntegerMatrix& m);
bool is_unimodular(const IntegerMatrix& m);

/// Reduced row echelon form; pivots receives the pivot column of each nonzero row.
RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots = nullptr);

/// Inverse of a square matrix; throws Error if singular.
RationalMatrix inverse(const RationalMatrix& m);
/// Inverse of a unimodular integer matrix; throws Error otherwise.
IntegerMatrix inverse_unimodular(const IntegerMatrix& m);

std::vector<RationalVector> kernel_basis(const RationalMatrix& m);
/// Lattice basis of {x in Z^cols : M x = 0}.
std::vector<LatticeVector> integer_kernel_basis(const IntegerMatrix& m);

enum class SolveMode { rational, integral };

struct LinearSolution {
  RationalVector particular;
  std::vector<RationalVector> kernel;
};

/// Solves A x = b. In integral mode both the particular solution and the kernel
/// basis are integral (a lattice basis), and nullopt means no integer solution.
std::optional<LinearSolution> solve_linear(const RationalMatrix& a, const RationalVector& b,
                                           SolveMode mode);

/// Finitely generated abelian group Z^rank + sum Z/d_i with d_1 | d_2 | ... and d_i >= 2.
struct FGAbelianGroup {
  std::size_t rank = 0;
  std::vector<Integer> invariant_factors;

  bool trivial() const { return rank == 0 && invariant_factors.empty(); }
  std::string to_string() const;
  friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;
};

/// Cokernel Z^rows / M Z^cols.
FGAbelianGroup cokernel(const IntegerMatrix& m);

/// Homogeneous system: equalities r.x = 0 and strict inequalities r.x > 0.
struct StrictSystem {
  std::size_t dim = 0;
  std::vector<RationalVector> equalities;
  std::vector<RationalVector> strict_inequalities;
};

/// Witness x satisfying the system exactly, or nullopt if none exists.
/// Each strict row is tightened to r.x >= 1 (valid by homogeneity) and the
/// resulting system is decided by Fourier-Motzkin elimination.
std::optional<RationalVector> strict_feasible(const StrictSystem& sys);

bool satisfies(const StrictSystem& sys, const RationalVector& x);

Integer lcm_of_denominators(const RationalVector& v);

std::string to_string(const LatticeVector& v);
std::string to_string(const RationalVector& v);

}  // namespace toricfan
