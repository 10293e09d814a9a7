// Torus-invariant divisors on toric varieties given by fans: Cartier data,
// class and Picard groups, ampleness, projectivity, divisor polytopes and
// their Ehrhart degree.
#pragma once

#include "toricfan/fan.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace toricfan {

/// D = sum a_rho D_rho, coefficients aligned with the fan's ray order.
struct ToricDivisor {
  std::vector<Integer> coefficients;

  friend bool operator==(const ToricDivisor&, const ToricDivisor&) = default;
};

ToricDivisor prime_divisor(const Fan& f, std::size_t ray);
ToricDivisor scaled(const ToricDivisor& d, const Integer& c);

/// One character m_sigma per maximal cone with m_sigma(l_k) = -a_k on its rays.
struct CartierData {
  std::vector<RationalVector> characters;
};

/// Solves the per-cone systems in the requested mode; nullopt if some cone has
/// no solution. Integral mode decides Cartier, rational mode Q-Cartier.
std::optional<CartierData> cartier_data(const Fan& f, const ToricDivisor& d, SolveMode mode);

bool is_cartier(const Fan& f, const ToricDivisor& d);
bool is_q_cartier(const Fan& f, const ToricDivisor& d);

/// Least c >= 1 with cD Cartier, or nullopt if D is not Q-Cartier.
std::optional<Integer> cartier_index(const Fan& f, const ToricDivisor& d);

/// Z^{rays} / M. Throws Error if the rays do not span N_R.
FGAbelianGroup class_group(const Fan& f);

/// Cartier divisors modulo principal ones. Throws Error on a non-complete fan.
FGAbelianGroup picard_group(const Fan& f);

/// Strict convexity of the support function: m_sigma(l_k) > -a_k for every
/// maximal cone sigma and every ray k outside sigma. Throws Error if D is not
/// Cartier.
bool is_ample(const Fan& f, const ToricDivisor& d);

struct AmpleWitness {
  ToricDivisor divisor;
  CartierData data;
};

/// Searches for a strictly convex piecewise linear support function; on
/// success returns an integral ample divisor with its Cartier data.
std::optional<AmpleWitness> is_projective(const Fan& f);

/// The homogeneous system in the unknowns (m_sigma) solved by is_projective.
StrictSystem convexity_system(const Fan& f);

/// {m : l_k(m) >= -c_k}, one row per ray.
struct Polytope {
  std::size_t ambient_dim = 0;
  std::vector<LatticeVector> normals;
  std::vector<Integer> offsets;
  std::vector<RationalVector> vertices;

  bool contains(const LatticeVector& m, const Integer& scale = 1) const;
};

/// Throws Error if the polytope is unbounded.
Polytope divisor_polytope(const Fan& f, const ToricDivisor& d);

/// Dimension of the affine span of the vertices; -1 for the empty polytope.
long affine_dimension(const Polytope& p);

struct Polynomial {
  /// coefficients[i] multiplies t^i.
  std::vector<Rational> coefficients;

  Rational operator()(const Rational& t) const;
  std::size_t degree() const;
  std::string to_string() const;
};

/// Unique polynomial of degree <= points.size()-1 through (x_i, y_i).
Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

struct EhrhartResult {
  Polynomial ehrhart;
  /// d! times the leading coefficient.
  Integer degree;
  /// Lattice point counts of tP for t = 0..d.
  std::vector<Integer> counts;
};

/// Lattice points of tP for t = 0..d, counted in the bounding box and
/// interpolated. Throws Error on non-integral vertices or a dimension mismatch.
EhrhartResult polytope_degree(const Polytope& p, std::size_t d);

/// Number of lattice points of tP (t >= 0); interior points when `interior`.
Integer count_lattice_points(const Polytope& p, const Integer& t, bool interior = false);

/// Leading-term statement c_n(E_t) = degree * t^(n-1) + O(t^(n-2)).
struct GrowthReport {
  std::size_t n = 0;
  Integer degree;
  std::string statement;
  std::string lower_order;
};

GrowthReport chern_growth(std::size_t n, const Integer& degree);

}  // namespace toricfan
