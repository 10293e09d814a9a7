// Pyramidal extensions, rays in Egyptian position, and the small toric
// modification that makes such a ray's divisor Q-Cartier.
//
// For a full-dimensional cone sigma and one of its rays rho, sigma' is the cone
// on the remaining rays. sigma is a pyramidal extension of sigma' by rho when
// either dim sigma' = n-1 (then sigma'' = sigma), or dim sigma' = n and l_rho
// lies beyond exactly one facet eta of sigma' and beneath all others (then
// sigma'' = eta + rho). A fan ray is in Egyptian position when every
// n-dimensional cone of its star is such an extension; splitting each sigma
// with dim sigma' = n into sigma' and sigma'' adds no rays.
#pragma once

#include "toricfan/divisor.hpp"
#include "toricfan/fan.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toricfan {

/// The cone on the rays of sigma other than `ray`. Throws Error if `ray` is
/// not a ray of sigma.
Cone sigma_prime(const Cone& sigma, const LatticeVector& ray);

enum class PyramidalKind { LowDim, Pyramidal, NotPyramidal };

const char* to_string(PyramidalKind k);

struct FacetPosition {
  LatticeVector normal;  // inward normal of a facet of sigma'
  Position position;
};

struct PyramidalClassification {
  PyramidalKind kind = PyramidalKind::NotPyramidal;
  Cone sigma_prime;
  /// sigma for LowDim, eta + rho for Pyramidal.
  std::optional<Cone> sigma_double_prime;
  /// The unique facet of sigma' with rho beyond it (Pyramidal only).
  std::optional<Cone> eta;
  /// Position of l_rho against every facet of sigma' (empty for LowDim).
  std::vector<FacetPosition> positions;

  std::size_t count(Position p) const;
};

/// Classifies sigma as an extension of sigma' by `ray`. On Pyramidal the face
/// lattice of sigma is checked against the prediction from sigma' and eta;
/// a mismatch throws InvariantViolation. Throws Error if sigma is not
/// full-dimensional or `ray` is not one of its rays.
PyramidalClassification classify_pyramidal(const Cone& sigma, const LatticeVector& ray);

/// Proper faces of sigma predicted for a Pyramidal classification: the proper
/// faces of sigma' other than eta, and tau + rho for each proper face tau of
/// eta. Returned as sets of rays.
std::vector<std::vector<LatticeVector>> predicted_proper_faces(const Cone& sigma,
                                                               const LatticeVector& ray,
                                                               const PyramidalClassification& c);

/// Proper faces of sigma computed from its own facets, as sets of rays.
std::vector<std::vector<LatticeVector>> proper_faces(const Cone& sigma);

struct EgyptianReport {
  std::size_t ray = 0;
  /// (maximal cone index, classification) for each n-dimensional star cone.
  std::vector<std::pair<std::size_t, PyramidalClassification>> per_cone;
  bool verdict = false;
};

EgyptianReport egyptian_report(const Fan& f, std::size_t ray);

struct ModificationResult {
  Fan original;
  Fan fan;
  /// original star cone -> (index of sigma', index of sigma'') in `fan`.
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> split_cones;
  /// eta = sigma' ∩ sigma'' for each split, by global ray indices.
  std::vector<std::vector<std::size_t>> exceptional_walls;
  std::size_t strict_transform_ray = 0;
};

/// Seed of the membership sampling done by small_modification.
inline constexpr unsigned kModificationSampleSeed = 0x5EED;
inline constexpr std::size_t kModificationSamples = 100;

/// Replaces every star cone with dim sigma' = n by sigma' and sigma''. The
/// result is revalidated (and checked complete if the input was); for each
/// split, sigma' ∩ sigma'' = eta is checked exactly and seeded sample points
/// of sigma are checked to lie in sigma' or sigma''. Throws
/// Error("ray not in Egyptian position") when the precondition fails.
ModificationResult small_modification(const Fan& f, std::size_t ray);

struct ModificationCheck {
  bool walls_projective = true;
  bool orbit_points = true;
  bool divisor_isomorphic = true;
  std::size_t exceptional_curves = 0;
  std::vector<std::string> failures;

  bool passed() const { return walls_projective && orbit_points && divisor_isomorphic; }
};

/// (1) every exceptional wall lies on exactly its two sibling cones, so its
/// orbit closure is P^1; (2) eta + rho is a maximal cone of the new fan;
/// (3) the quotient fan at rho is unchanged up to isomorphism.
ModificationCheck verify_modification(const ModificationResult& m);

}  // namespace toricfan
