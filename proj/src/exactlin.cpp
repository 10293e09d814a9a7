#include "toricfan/exactlin.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace toricfan {

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

RationalVector to_rational(const LatticeVector& v) {
  RationalVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error("dot product of vectors with different lengths");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw Error("dot product of vectors with different lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const LatticeVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw Error("dot product of vectors with different lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

bool is_zero(const LatticeVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

LatticeVector primitive(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) throw Error("no primitive representative: zero vector");
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

Integer lcm_of_denominators(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  return l;
}

LatticeVector primitive(const RationalVector& v) {
  const Integer l = lcm_of_denominators(v);
  LatticeVector scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    scaled[i] = s.get_num();
  }
  return primitive(scaled);
}

namespace {

template <class T>
void swap_columns(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

// col_target -= q * col_source
void axpy_column(IntegerMatrix& m, std::size_t target, std::size_t source, const Integer& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, target) -= q * m(r, source);
}

void axpy_row(IntegerMatrix& m, std::size_t target, std::size_t source, const Integer& q) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(target, c) -= q * m(source, c);
}

// Replaces columns (p, c) by (x*p + y*c, -(b/g)*p + (a/g)*c); determinant 1.
void combine_columns(IntegerMatrix& m, std::size_t p, std::size_t c, const Integer& x,
                     const Integer& y, const Integer& bg, const Integer& ag) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer vp = m(r, p);
    Integer vc = m(r, c);
    m(r, p) = x * vp + y * vc;
    m(r, c) = ag * vc - bg * vp;
  }
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const IntegerMatrix& m) {
  HermiteForm out{m, IntegerMatrix::identity(m.cols()), 0, {}};
  IntegerMatrix& h = out.H;
  IntegerMatrix& u = out.U;
  std::size_t pivot = 0;
  for (std::size_t r = 0; r < h.rows() && pivot < h.cols(); ++r) {
    for (std::size_t c = pivot + 1; c < h.cols(); ++c) {
      if (h(r, c) == 0) continue;
      Integer a = h(r, pivot);
      Integer b = h(r, c);
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer bg = b / g;
      Integer ag = a / g;
      combine_columns(h, pivot, c, x, y, bg, ag);
      combine_columns(u, pivot, c, x, y, bg, ag);
    }
    if (h(r, pivot) == 0) continue;
    if (h(r, pivot) < 0) {
      for (std::size_t i = 0; i < h.rows(); ++i) h(i, pivot) = -h(i, pivot);
      for (std::size_t i = 0; i < u.rows(); ++i) u(i, pivot) = -u(i, pivot);
    }
    for (std::size_t c = 0; c < pivot; ++c) {
      Integer q = floor_div(h(r, c), h(r, pivot));
      if (q == 0) continue;
      axpy_column(h, c, pivot, q);
      axpy_column(u, c, pivot, q);
    }
    out.pivot_rows.push_back(r);
    ++pivot;
  }
  out.rank = pivot;
  return out;
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
  SmithForm out{m, IntegerMatrix::identity(m.rows()), IntegerMatrix::identity(m.cols()), {}};
  IntegerMatrix& s = out.S;
  const std::size_t rows = s.rows();
  const std::size_t cols = s.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block goes to (t, t)
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (s(i, j) != 0 && (bi == rows || abs(s(i, j)) < abs(s(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    swap_rows(s, t, bi);
    swap_rows(out.U, t, bi);
    swap_columns(s, t, bj);
    swap_columns(out.V, t, bj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        Integer q = trunc_div(s(i, t), s(t, t));
        axpy_row(s, i, t, q);
        axpy_row(out.U, i, t, q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        Integer q = trunc_div(s(t, j), s(t, t));
        axpy_column(s, j, t, q);
        axpy_column(out.V, j, t, q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder survived: move the smallest entry of row/column t to the pivot
        std::size_t pi = t, pj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (s(i, t) != 0 && abs(s(i, t)) < abs(s(pi, pj))) {
            pi = i;
            pj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (s(t, j) != 0 && abs(s(t, j)) < abs(s(pi, pj))) {
            pi = t;
            pj = j;
          }
        swap_rows(s, t, pi);
        swap_rows(out.U, t, pi);
        swap_columns(s, t, pj);
        swap_columns(out.V, t, pj);
        continue;
      }
      // divisibility: fold an offending row into row t and repeat
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (s(i, j) % s(t, t) != 0) {
            axpy_row(s, t, i, Integer(-1));
            axpy_row(out.U, t, i, Integer(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) s(t, c) = -s(t, c);
      for (std::size_t c = 0; c < out.U.cols(); ++c) out.U(t, c) = -out.U(t, c);
    }
  }
  for (std::size_t t = 0; t < std::min(rows, cols); ++t)
    if (s(t, t) != 0) out.diagonal.push_back(s(t, t));
  return out;
}

Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntegerMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      swap_rows(a, k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots) {
  if (pivots) pivots->clear();
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    swap_rows(m, row, p);
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return m;
}

std::size_t rank(const RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  rref(m, &pivots);
  return pivots.size();
}

std::size_t rank(const IntegerMatrix& m) { return rank(to_rational(m)); }

bool is_unimodular(const IntegerMatrix& m) {
  return m.rows() == m.cols() && abs(determinant(m)) == 1;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  std::vector<std::size_t> pivots;
  RationalMatrix red = rref(aug, &pivots);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n)) throw Error("matrix is singular");
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red(r, n + c);
  return inv;
}

IntegerMatrix inverse_unimodular(const IntegerMatrix& m) {
  if (!is_unimodular(m)) throw Error("matrix is not unimodular");
  RationalMatrix inv = inverse(to_rational(m));
  IntegerMatrix out(inv.rows(), inv.cols());
  for (std::size_t r = 0; r < inv.rows(); ++r)
    for (std::size_t c = 0; c < inv.cols(); ++c) out(r, c) = inv(r, c).get_num();
  return out;
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  RationalMatrix r = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<LatticeVector> integer_kernel_basis(const IntegerMatrix& m) {
  HermiteForm hf = hermite_normal_form(m);
  std::vector<LatticeVector> basis;
  for (std::size_t c = hf.rank; c < m.cols(); ++c) basis.push_back(hf.U.column(c));
  return basis;
}

namespace {

std::optional<LinearSolution> solve_rational(const RationalMatrix& a, const RationalVector& b) {
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  std::vector<std::size_t> pivots;
  RationalMatrix red = rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  LinearSolution sol;
  sol.particular.assign(a.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = red(i, a.cols());
  sol.kernel = kernel_basis(a);
  return sol;
}

std::optional<LinearSolution> solve_integral(const RationalMatrix& a, const RationalVector& b) {
  IntegerMatrix ai(a.rows(), a.cols());
  LatticeVector bi(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Integer l = lcm_of_denominators(a.row(r));
    for (std::size_t c = 0; c < a.cols(); ++c) {
      Rational v = a(r, c) * l;
      ai(r, c) = v.get_num();
    }
    Rational rhs = b[r] * l;
    if (rhs.get_den() != 1) return std::nullopt;
    bi[r] = rhs.get_num();
  }
  HermiteForm hf = hermite_normal_form(ai);
  // H y = b, forward substitution along the pivots
  LatticeVector y(a.cols(), Integer(0));
  for (std::size_t j = 0; j < hf.rank; ++j) {
    const std::size_t pr = hf.pivot_rows[j];
    Integer rest = bi[pr];
    for (std::size_t l = 0; l < j; ++l) rest -= hf.H(pr, l) * y[l];
    if (rest % hf.H(pr, j) != 0) return std::nullopt;
    y[j] = rest / hf.H(pr, j);
  }
  if (hf.H * y != bi) return std::nullopt;
  LinearSolution sol;
  sol.particular = to_rational(hf.U * y);
  for (std::size_t c = hf.rank; c < a.cols(); ++c) sol.kernel.push_back(to_rational(hf.U.column(c)));
  return sol;
}

}  // namespace

std::optional<LinearSolution> solve_linear(const RationalMatrix& a, const RationalVector& b,
                                           SolveMode mode) {
  if (a.rows() != b.size()) throw Error("solve_linear: matrix has " + std::to_string(a.rows()) +
                                        " rows but right-hand side has length " +
                                        std::to_string(b.size()));
  return mode == SolveMode::rational ? solve_rational(a, b) : solve_integral(a, b);
}

std::string FGAbelianGroup::to_string() const {
  if (trivial()) return "0";
  std::string s;
  if (rank > 0) s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
  for (const auto& d : invariant_factors) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.get_str();
  }
  return s;
}

FGAbelianGroup cokernel(const IntegerMatrix& m) {
  SmithForm sf = smith_normal_form(m);
  FGAbelianGroup g;
  g.rank = m.rows() - sf.diagonal.size();
  for (const auto& d : sf.diagonal)
    if (d > 1) g.invariant_factors.push_back(d);
  return g;
}

bool satisfies(const StrictSystem& sys, const RationalVector& x) {
  if (x.size() != sys.dim) return false;
  for (const auto& r : sys.equalities)
    if (dot(r, x) != 0) return false;
  for (const auto& r : sys.strict_inequalities)
    if (dot(r, x) <= 0) return false;
  return true;
}

namespace {

// Rows c.t >= rhs keyed by primitive integral c; duplicates keep the largest rhs.
using InequalitySet = std::map<LatticeVector, Rational>;

// Returns false on a contradiction 0 >= rhs > 0.
bool add_row(InequalitySet& set, const RationalVector& coeffs, const Rational& rhs) {
  if (is_zero(coeffs)) return rhs <= 0;
  Integer l = lcm_of_denominators(coeffs);
  LatticeVector ci(coeffs.size());
  Integer g = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Rational v = coeffs[i] * l;
    ci[i] = v.get_num();
    g = gcd(g, ci[i]);
  }
  for (auto& v : ci) v /= g;
  Rational scaled = rhs * l / g;
  auto [it, inserted] = set.emplace(std::move(ci), scaled);
  if (!inserted && it->second < scaled) it->second = scaled;
  return true;
}

}  // namespace

std::optional<RationalVector> strict_feasible(const StrictSystem& sys) {
  for (const auto& r : sys.equalities)
    if (r.size() != sys.dim) throw Error("strict system row has wrong length");
  for (const auto& r : sys.strict_inequalities)
    if (r.size() != sys.dim) throw Error("strict system row has wrong length");

  // parametrize the equality solution space: x = K t
  std::vector<RationalVector> kernel;
  if (sys.equalities.empty()) {
    for (std::size_t i = 0; i < sys.dim; ++i) {
      RationalVector e(sys.dim, Rational(0));
      e[i] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = kernel_basis(RationalMatrix::from_rows(sys.equalities, sys.dim));
  }
  const std::size_t k = kernel.size();

  InequalitySet current;
  for (const auto& r : sys.strict_inequalities) {
    RationalVector c(k);
    for (std::size_t j = 0; j < k; ++j) c[j] = dot(r, kernel[j]);
    if (!add_row(current, c, Rational(1))) return std::nullopt;
  }

  std::vector<InequalitySet> levels;
  levels.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    levels.push_back(current);
    InequalitySet next;
    std::vector<const std::pair<const LatticeVector, Rational>*> pos, neg;
    for (const auto& row : current) {
      const Integer& cj = row.first[j];
      if (cj > 0) {
        pos.push_back(&row);
      } else if (cj < 0) {
        neg.push_back(&row);
      } else {
        next.insert(row);
      }
    }
    for (const auto* p : pos)
      for (const auto* q : neg) {
        const Integer a = -q->first[j];
        const Integer b = p->first[j];
        RationalVector c(k);
        for (std::size_t l = 0; l < k; ++l) c[l] = Rational(a * p->first[l] + b * q->first[l]);
        if (!add_row(next, c, a * p->second + b * q->second)) return std::nullopt;
      }
    current = std::move(next);
  }

  // back-substitution, last eliminated variable first
  RationalVector t(k, Rational(0));
  for (std::size_t jj = k; jj-- > 0;) {
    std::optional<Rational> lower, upper;
    for (const auto& [c, rhs] : levels[jj]) {
      if (c[jj] == 0) continue;
      Rational rest = rhs;
      for (std::size_t l = jj + 1; l < k; ++l) rest -= Rational(c[l]) * t[l];
      Rational bound = rest / Rational(c[jj]);
      if (c[jj] > 0) {
        if (!lower || bound > *lower) lower = bound;
      } else {
        if (!upper || bound < *upper) upper = bound;
      }
    }
    Rational value = 0;
    if (lower) {
      Integer ceil_lower;
      mpz_cdiv_q(ceil_lower.get_mpz_t(), lower->get_num_mpz_t(), lower->get_den_mpz_t());
      value = (!upper || Rational(ceil_lower) <= *upper) ? Rational(ceil_lower) : *lower;
    } else if (upper) {
      Integer floor_upper;
      mpz_fdiv_q(floor_upper.get_mpz_t(), upper->get_num_mpz_t(), upper->get_den_mpz_t());
      value = Rational(floor_upper);
    }
    t[jj] = value;
  }

  RationalVector x(sys.dim, Rational(0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < sys.dim; ++i) x[i] += kernel[j][i] * t[j];
  if (!satisfies(sys, x))
    throw InvariantViolation("strict_feasible: back-substituted witness violates the system");
  return x;
}

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const RationalVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

}  // namespace toricfan
