// Rational polyhedral fans: validation, completeness, stars, quotient fans,
// orbit-curve classification of walls, and unimodular isomorphism.
#pragma once

#include "toricfan/cone.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace toricfan {

/// An (n-1)-dimensional cone of the fan, by global ray indices, with the
/// n-dimensional maximal cones it is a face of.
struct Wall {
  std::vector<std::size_t> rays;
  std::vector<std::size_t> incident;
};

enum class WallCurveKind { Torus, Affine, Projective };

const char* to_string(WallCurveKind k);

class Fan {
 public:
  std::size_t ambient_rank() const { return ambient_rank_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  /// Sorted global ray indices of each maximal cone.
  const std::vector<std::vector<std::size_t>>& max_cones() const { return max_cones_; }
  const Cone& cone(std::size_t i) const { return cones_.at(i); }
  const std::vector<Wall>& walls() const { return walls_; }
  /// Optional names of the maximal cones; empty or one per cone.
  const std::vector<std::string>& labels() const { return labels_; }

  std::size_t ray_count() const { return rays_.size(); }
  std::size_t cone_count() const { return max_cones_.size(); }
  std::optional<std::size_t> ray_index(const LatticeVector& primitive_ray) const;
  /// Global indices of the rays of an arbitrary cone whose rays are fan rays.
  std::optional<std::vector<std::size_t>> ray_indices(const Cone& c) const;
  const Wall* find_wall(const std::vector<std::size_t>& rays) const;

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.rays_ == b.rays_ &&
           a.max_cones_ == b.max_cones_;
  }

 private:
  friend Fan fan_from_cones(std::size_t, std::vector<LatticeVector>,
                            std::vector<std::vector<std::size_t>>, std::vector<std::string>);

  std::size_t ambient_rank_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<std::vector<std::size_t>> max_cones_;
  std::vector<Cone> cones_;
  std::vector<Wall> walls_;
  std::vector<std::string> labels_;
};

/// Validates the fan axioms: rays are nonzero, distinct after primitivization
/// and each used by some cone; the listed rays of every cone are its extreme
/// rays; no maximal cone contains another; and every pairwise intersection is
/// a face of both cones. Throws Error describing the first violation.
Fan fan_from_cones(std::size_t ambient_rank, std::vector<LatticeVector> rays,
                   std::vector<std::vector<std::size_t>> max_cones,
                   std::vector<std::string> labels = {});

/// Every maximal cone is n-dimensional, every wall has two incident cones and
/// the wall adjacency graph on maximal cones is connected.
bool is_complete(const Fan& f);

/// Maximal cones containing the given ray.
std::vector<std::size_t> star(const Fan& f, std::size_t ray);

/// The fan of the orbit closure V(ray) in N / Z l_ray, with lattice basis
/// fixed by Hermite completion. Maximal cone i is the image of star(f, ray)[i].
Fan quotient_fan(const Fan& f, std::size_t ray);

/// Lattice projection N -> N / Z l_ray used by quotient_fan ((n-1) x n).
IntegerMatrix quotient_projection(const LatticeVector& primitive_ray);

struct FanIsomorphism {
  /// Unimodular A with A * rays1[i] = rays2[ray_map[i]].
  IntegerMatrix map;
  std::vector<std::size_t> ray_map;
};

std::optional<FanIsomorphism> fans_isomorphic(const Fan& f1, const Fan& f2);

/// Orbit curve V(w) for an (n-1)-dimensional cone w of the fan, by the number
/// of n-dimensional cones containing it: 0 torus, 1 affine line, 2 P^1.
WallCurveKind classify_wall_curve(const Fan& f, const std::vector<std::size_t>& wall_rays);

}  // namespace toricfan
