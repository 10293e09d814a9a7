// Strictly convex rational polyhedral cones in N_R = R^n.
#pragma once

#include "toricfan/exactlin.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace toricfan {

/// A strictly convex rational polyhedral cone, stored by its primitive extreme
/// rays (sorted lexicographically) together with an inequality description.
///
/// Facet normals are primitive integer vectors lying in the linear span of the
/// cone, so for a lower-dimensional cone they describe facets relative to that
/// span; `span_equations` cut the span out of the ambient space. Membership is
///   contains(x)  <=>  e.x = 0 for all equations and w.x >= 0 for all normals.
class Cone {
 public:
  /// The zero cone of rank 0.
  Cone() = default;

  static Cone origin(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t dim() const { return dim_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<LatticeVector>& facet_normals() const { return facet_normals_; }
  const std::vector<LatticeVector>& span_equations() const { return span_equations_; }

  bool is_full_dimensional() const { return dim_ == ambient_rank_; }
  bool contains(const LatticeVector& x) const;
  bool contains(const RationalVector& x) const;
  bool contains(const Cone& other) const;
  /// Index of the ray equal to the primitive vector `ray`, if any.
  std::optional<std::size_t> find_ray(const LatticeVector& ray) const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.rays_ == b.rays_;
  }

 private:
  friend Cone cone_from_rays(std::size_t ambient_rank, const std::vector<LatticeVector>& generators);

  std::size_t ambient_rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<LatticeVector> facet_normals_;
  std::vector<LatticeVector> span_equations_;
};

/// Builds the cone generated by `generators`: primitivizes, deduplicates and
/// drops non-extreme generators. Throws Error on a zero generator, a length
/// mismatch, an empty list, or if the cone contains a line.
Cone cone_from_rays(std::size_t ambient_rank, const std::vector<LatticeVector>& generators);

/// Primitive inward facet normals. Every facet of a finitely generated cone is
/// spanned by dim-1 of its generators, so all such subsets are enumerated;
/// this is exponential in the ray count and meant for cones with few rays.
std::vector<LatticeVector> facet_normals(const Cone& c);

/// A face, given by indices into the parent cone's ray list.
struct Face {
  std::vector<std::size_t> ray_indices;
  std::size_t dim = 0;

  friend bool operator==(const Face&, const Face&) = default;
  friend auto operator<=>(const Face&, const Face&) = default;
};

/// All k-dimensional faces, sorted by ray indices. Throws Error if k > dim.
std::vector<Face> faces(const Cone& c, std::size_t k);

/// The whole face lattice, from the zero face up to the cone itself.
std::vector<Face> face_lattice(const Cone& c);

/// The cone spanned by the rays of a face.
Cone face_cone(const Cone& c, const Face& f);

/// c1 ∩ c2, converted back to ray form by double description cuts.
Cone intersect(const Cone& c1, const Cone& c2);

/// True iff f ⊆ c and some functional, nonnegative on c, vanishes exactly on f.
bool is_face_of(const Cone& f, const Cone& c);

enum class Position { Beneath, Beyond, OnHyperplane };

/// Side of the hyperplane normal^⊥ on which x lies, for an inward normal.
Position classify_position(const LatticeVector& normal, const LatticeVector& x);

const char* to_string(Position p);

}  // namespace toricfan
