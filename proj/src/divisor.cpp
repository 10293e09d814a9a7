#include "toricfan/divisor.hpp"

#include <algorithm>
#include <set>

namespace toricfan {

namespace {

void check_aligned(const Fan& f, const ToricDivisor& d) {
  if (d.coefficients.size() != f.ray_count())
    throw Error("divisor has " + std::to_string(d.coefficients.size()) +
                " coefficients but the fan has " + std::to_string(f.ray_count()) + " rays");
}

std::optional<LinearSolution> solve_cone(const Fan& f, std::size_t cone, const ToricDivisor& d,
                                         const Integer& scale, SolveMode mode) {
  const auto& idx = f.max_cones()[cone];
  RationalMatrix a(idx.size(), f.ambient_rank());
  RationalVector b(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t c = 0; c < f.ambient_rank(); ++c) a(r, c) = f.rays()[idx[r]][c];
    b[r] = -scale * d.coefficients[idx[r]];
  }
  return solve_linear(a, b, mode);
}

std::string superscript(std::size_t k) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char ch : std::to_string(k)) s += digits[ch - '0'];
  return s;
}

std::string subscript(std::size_t k) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s;
  for (char ch : std::to_string(k)) s += digits[ch - '0'];
  return s;
}

std::string power_of_t(std::size_t k) {
  if (k == 0) return "1";
  if (k == 1) return "t";
  return "t" + superscript(k);
}

Integer factorial(std::size_t d) {
  Integer f = 1;
  for (std::size_t i = 2; i <= d; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

}  // namespace

ToricDivisor prime_divisor(const Fan& f, std::size_t ray) {
  if (ray >= f.ray_count()) throw Error("unknown ray index " + std::to_string(ray));
  ToricDivisor d{std::vector<Integer>(f.ray_count(), Integer(0))};
  d.coefficients[ray] = 1;
  return d;
}

ToricDivisor scaled(const ToricDivisor& d, const Integer& c) {
  ToricDivisor out = d;
  for (auto& a : out.coefficients) a *= c;
  return out;
}

std::optional<CartierData> cartier_data(const Fan& f, const ToricDivisor& d, SolveMode mode) {
  check_aligned(f, d);
  CartierData data;
  for (std::size_t c = 0; c < f.cone_count(); ++c) {
    auto sol = solve_cone(f, c, d, 1, mode);
    if (!sol) return std::nullopt;
    data.characters.push_back(std::move(sol->particular));
  }
  return data;
}

bool is_cartier(const Fan& f, const ToricDivisor& d) {
  return cartier_data(f, d, SolveMode::integral).has_value();
}

bool is_q_cartier(const Fan& f, const ToricDivisor& d) {
  return cartier_data(f, d, SolveMode::rational).has_value();
}

std::optional<Integer> cartier_index(const Fan& f, const ToricDivisor& d) {
  check_aligned(f, d);
  Integer index = 1;
  for (std::size_t c = 0; c < f.cone_count(); ++c) {
    auto rational = solve_cone(f, c, d, 1, SolveMode::rational);
    if (!rational) return std::nullopt;
    // the multiples c with cD Cartier on this cone form a subgroup containing
    // the denominator lcm of any rational solution, so its generator divides it
    const Integer bound = lcm_of_denominators(rational->particular);
    Integer local = bound;
    for (Integer k = 1; k < bound; ++k) {
      if (bound % k != 0) continue;
      if (solve_cone(f, c, d, k, SolveMode::integral)) {
        local = k;
        break;
      }
    }
    index = lcm(index, local);
  }
  return index;
}

FGAbelianGroup class_group(const Fan& f) {
  IntegerMatrix r = IntegerMatrix::from_rows(f.rays(), f.ambient_rank());
  if (rank(r) != f.ambient_rank()) throw Error("class group: the rays do not span N_R");
  return cokernel(r);
}

FGAbelianGroup picard_group(const Fan& f) {
  if (!is_complete(f)) throw Error("picard group requires a complete fan");
  const std::size_t n = f.ambient_rank();
  const std::size_t m = f.ray_count();
  const std::size_t cones = f.cone_count();
  const std::size_t unknowns = cones * n + m;

  // m_sigma(l_k) + a_k = 0 for every ray k of every maximal cone sigma
  std::vector<LatticeVector> rows;
  for (std::size_t c = 0; c < cones; ++c)
    for (auto k : f.max_cones()[c]) {
      LatticeVector row(unknowns, Integer(0));
      for (std::size_t i = 0; i < n; ++i) row[c * n + i] = f.rays()[k][i];
      row[cones * n + k] = 1;
      rows.push_back(std::move(row));
    }
  const auto solutions = integer_kernel_basis(IntegerMatrix::from_rows(rows, unknowns));

  // lattice of Cartier divisors: projection of the solutions to the a-part
  IntegerMatrix proj(m, solutions.size());
  for (std::size_t j = 0; j < solutions.size(); ++j)
    for (std::size_t k = 0; k < m; ++k) proj(k, j) = solutions[j][cones * n + k];
  HermiteForm hf = hermite_normal_form(proj);
  const std::size_t r = hf.rank;
  if (r == 0) return FGAbelianGroup{};
  RationalMatrix basis(m, r);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < r; ++j) basis(k, j) = hf.H(k, j);

  // principal divisors a_k = m(l_k), written in the Cartier lattice basis
  IntegerMatrix coords(r, n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector principal(m);
    for (std::size_t k = 0; k < m; ++k) principal[k] = f.rays()[k][i];
    auto sol = solve_linear(basis, principal, SolveMode::rational);
    if (!sol) throw InvariantViolation("picard_group: principal divisor is not Cartier");
    for (std::size_t j = 0; j < r; ++j) {
      if (sol->particular[j].get_den() != 1)
        throw InvariantViolation("picard_group: principal divisor outside the Cartier lattice");
      coords(j, i) = sol->particular[j].get_num();
    }
  }
  return cokernel(coords);
}

bool is_ample(const Fan& f, const ToricDivisor& d) {
  auto data = cartier_data(f, d, SolveMode::integral);
  if (!data) throw Error("ampleness undefined for non-Cartier input");
  for (std::size_t c = 0; c < f.cone_count(); ++c) {
    const auto& idx = f.max_cones()[c];
    for (std::size_t k = 0; k < f.ray_count(); ++k) {
      if (std::binary_search(idx.begin(), idx.end(), k)) continue;
      if (dot(f.rays()[k], data->characters[c]) <= -Rational(d.coefficients[k])) return false;
    }
  }
  return true;
}

StrictSystem convexity_system(const Fan& f) {
  const std::size_t n = f.ambient_rank();
  StrictSystem sys;
  sys.dim = f.cone_count() * n;
  auto value_row = [&](std::size_t plus, std::size_t minus, std::size_t ray) {
    RationalVector row(sys.dim, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      row[plus * n + i] += f.rays()[ray][i];
      row[minus * n + i] -= f.rays()[ray][i];
    }
    return row;
  };
  for (std::size_t k = 0; k < f.ray_count(); ++k) {
    const auto containing = star(f, k);
    for (std::size_t j = 1; j < containing.size(); ++j)
      sys.equalities.push_back(value_row(containing[j - 1], containing[j], k));
    for (std::size_t c = 0; c < f.cone_count(); ++c)
      if (!std::binary_search(containing.begin(), containing.end(), c))
        sys.strict_inequalities.push_back(value_row(c, containing.front(), k));
  }
  return sys;
}

std::optional<AmpleWitness> is_projective(const Fan& f) {
  const std::size_t n = f.ambient_rank();
  auto x = strict_feasible(convexity_system(f));
  if (!x) return std::nullopt;
  LatticeVector integral(x->size(), Integer(0));
  if (!is_zero(*x)) integral = primitive(*x);
  AmpleWitness w;
  for (std::size_t c = 0; c < f.cone_count(); ++c) {
    RationalVector m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = integral[c * n + i];
    w.data.characters.push_back(std::move(m));
  }
  w.divisor.coefficients.resize(f.ray_count());
  for (std::size_t k = 0; k < f.ray_count(); ++k) {
    const auto c = star(f, k).front();
    Rational v = -dot(f.rays()[k], w.data.characters[c]);
    w.divisor.coefficients[k] = v.get_num();
  }
  if (!is_ample(f, w.divisor))
    throw InvariantViolation("is_projective: witness divisor fails the ampleness check");
  return w;
}

bool Polytope::contains(const LatticeVector& m, const Integer& scale) const {
  for (std::size_t k = 0; k < normals.size(); ++k)
    if (dot(normals[k], m) < -scale * offsets[k]) return false;
  return true;
}

Polytope divisor_polytope(const Fan& f, const ToricDivisor& d) {
  check_aligned(f, d);
  const std::size_t n = f.ambient_rank();
  const std::size_t m = f.ray_count();
  IntegerMatrix r = IntegerMatrix::from_rows(f.rays(), n);
  // bounded iff no nonzero m has l_k(m) >= 0 for all k, i.e. the rays span
  // and positively span: sum y_k l_k = 0 with all y_k > 0
  bool bounded = rank(r) == n;
  if (bounded && n > 0) {
    StrictSystem sys;
    sys.dim = m;
    for (std::size_t i = 0; i < n; ++i) sys.equalities.push_back(to_rational(r.column(i)));
    for (std::size_t k = 0; k < m; ++k) {
      RationalVector e(m, Rational(0));
      e[k] = 1;
      sys.strict_inequalities.push_back(std::move(e));
    }
    bounded = strict_feasible(sys).has_value();
  }
  if (!bounded) throw Error("unbounded polytope: the fan rays do not positively span N_R");

  Polytope p;
  p.ambient_dim = n;
  p.normals = f.rays();
  p.offsets = d.coefficients;
  std::set<RationalVector> vertices;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  while (n <= m) {
    RationalMatrix a(n, n);
    RationalVector b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = f.rays()[idx[i]][j];
      b[i] = -d.coefficients[idx[i]];
    }
    if (rank(a) == n) {
      auto sol = solve_linear(a, b, SolveMode::rational);
      bool inside = true;
      for (std::size_t k = 0; k < m && inside; ++k)
        inside = dot(f.rays()[k], sol->particular) >= -Rational(d.coefficients[k]);
      if (inside) vertices.insert(sol->particular);
    }
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == m - n + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  p.vertices.assign(vertices.begin(), vertices.end());
  return p;
}

long affine_dimension(const Polytope& p) {
  if (p.vertices.empty()) return -1;
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    RationalVector v(p.ambient_dim);
    for (std::size_t j = 0; j < p.ambient_dim; ++j) v[j] = p.vertices[i][j] - p.vertices[0][j];
    diffs.push_back(std::move(v));
  }
  if (diffs.empty()) return 0;
  return static_cast<long>(rank(RationalMatrix::from_rows(diffs)));
}

Rational Polynomial::operator()(const Rational& t) const {
  Rational v = 0;
  for (std::size_t i = coefficients.size(); i-- > 0;) v = v * t + coefficients[i];
  return v;
}

std::size_t Polynomial::degree() const {
  for (std::size_t i = coefficients.size(); i-- > 0;)
    if (coefficients[i] != 0) return i;
  return 0;
}

std::string Polynomial::to_string() const {
  std::string s;
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    const Rational& c = coefficients[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (i == 0 || mag != 1) s += mag.get_str();
    if (i >= 1) s += (i == 1) ? "t" : "t^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw Error("interpolation needs matching nonempty data");
  const std::size_t k = xs.size();
  Polynomial p{std::vector<Rational>(k, Rational(0))};
  for (std::size_t i = 0; i < k; ++i) {
    // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t e = 0; e < basis.size(); ++e) {
        next[e + 1] += basis[e];
        next[e] -= basis[e] * xs[j];
      }
      basis = std::move(next);
      denom *= xs[i] - xs[j];
    }
    if (denom == 0) throw Error("interpolation nodes must be distinct");
    for (std::size_t e = 0; e < basis.size(); ++e) p.coefficients[e] += ys[i] * basis[e] / denom;
  }
  return p;
}

Integer count_lattice_points(const Polytope& p, const Integer& t, bool interior) {
  const std::size_t n = p.ambient_dim;
  if (p.vertices.empty()) return 0;
  if (n == 0) return interior ? 0 : 1;
  LatticeVector lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational mn = p.vertices[0][j], mx = p.vertices[0][j];
    for (const auto& v : p.vertices) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    Rational a = mn * t, b = mx * t;
    mpz_fdiv_q(lo[j].get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_cdiv_q(hi[j].get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  }
  Integer count = 0;
  LatticeVector x = lo;
  for (;;) {
    bool ok = true;
    for (std::size_t k = 0; k < p.normals.size() && ok; ++k) {
      Integer v = dot(p.normals[k], x) + t * p.offsets[k];
      ok = interior ? v > 0 : v >= 0;
    }
    if (ok) ++count;
    std::size_t j = 0;
    while (j < n && x[j] == hi[j]) {
      x[j] = lo[j];
      ++j;
    }
    if (j == n) break;
    ++x[j];
  }
  return count;
}

EhrhartResult polytope_degree(const Polytope& p, std::size_t d) {
  if (p.vertices.empty()) throw Error("empty polytope has no Ehrhart polynomial");
  for (const auto& v : p.vertices)
    for (const auto& x : v)
      if (x.get_den() != 1)
        throw Error("non-integral vertex " + to_string(v) +
                    ": scale divisor to its Cartier index first");
  if (affine_dimension(p) != static_cast<long>(d))
    throw Error("polytope has dimension " + std::to_string(affine_dimension(p)) + ", not " +
                std::to_string(d));
  EhrhartResult out;
  std::vector<Rational> xs, ys;
  for (std::size_t t = 0; t <= d; ++t) {
    Integer c = count_lattice_points(p, Integer(static_cast<unsigned long>(t)));
    out.counts.push_back(c);
    xs.emplace_back(static_cast<unsigned long>(t));
    ys.emplace_back(c);
  }
  out.ehrhart = interpolate(xs, ys);
  Rational deg = out.ehrhart.coefficients[d] * factorial(d);
  if (deg.get_den() != 1) throw InvariantViolation("degree of an integral polytope is not integral");
  out.degree = deg.get_num();
  return out;
}

GrowthReport chern_growth(std::size_t n, const Integer& degree) {
  if (degree < 1) throw Error("chern_growth needs degree >= 1");
  if (n < 2) throw Error("chern_growth needs dimension n >= 2");
  GrowthReport g;
  g.n = n;
  g.degree = degree;
  std::string coef = degree == 1 ? "" : degree.get_str();
  g.statement = "c" + subscript(n) + "(E_t) = " + coef + power_of_t(n - 1) + " + O(" +
                power_of_t(n - 2) + ")";
  g.lower_order = "coefficients below t" + superscript(n - 1) + " are not determined";
  return g;
}

}  // namespace toricfan
