#include "toricfan/cone.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace toricfan {

namespace {

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t rank_of(const std::vector<LatticeVector>& vs, std::size_t n) {
  if (vs.empty()) return 0;
  return rank(to_rational(IntegerMatrix::from_rows(vs, n)));
}

// Indices of a maximal linearly independent subset, chosen greedily.
std::vector<std::size_t> independent_subset(const std::vector<LatticeVector>& vs, std::size_t n) {
  std::vector<std::size_t> chosen;
  std::vector<LatticeVector> picked;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    picked.push_back(vs[i]);
    if (rank_of(picked, n) == picked.size()) {
      chosen.push_back(i);
    } else {
      picked.pop_back();
    }
  }
  return chosen;
}

// Inward normals, lying in span(gens), of the facets of cone(gens).
// Assumes the cone is pointed; gens may include non-extreme generators.
std::vector<LatticeVector> compute_facets(const std::vector<LatticeVector>& gens, std::size_t n,
                                          std::size_t dim) {
  if (dim == 0) return {};
  std::vector<LatticeVector> basis;
  for (auto i : independent_subset(gens, n)) basis.push_back(gens[i]);

  std::set<LatticeVector> normals;
  for_each_subset(gens.size(), dim - 1, [&](const std::vector<std::size_t>& subset) {
    RationalMatrix m(subset.size(), dim);
    for (std::size_t r = 0; r < subset.size(); ++r)
      for (std::size_t j = 0; j < dim; ++j) m(r, j) = Rational(dot(gens[subset[r]], basis[j]));
    auto ker = kernel_basis(m);
    if (ker.size() != 1) return;
    RationalVector w(n, Rational(0));
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t i = 0; i < n; ++i) w[i] += ker[0][j] * Rational(basis[j][i]);
    LatticeVector normal = primitive(w);
    bool has_pos = false, has_neg = false;
    for (const auto& g : gens) {
      int s = sgn(dot(normal, g));
      has_pos |= s > 0;
      has_neg |= s < 0;
    }
    if (has_pos && has_neg) return;
    if (has_neg)
      for (auto& x : normal) x = -x;
    normals.insert(std::move(normal));
  });
  return {normals.begin(), normals.end()};
}

bool pointed(const std::vector<LatticeVector>& gens, std::size_t n) {
  StrictSystem sys;
  sys.dim = n;
  for (const auto& g : gens) sys.strict_inequalities.push_back(to_rational(g));
  return strict_feasible(sys).has_value();
}

// Indices i with vs[i].x = 0.
std::vector<std::size_t> tight_set(const std::vector<LatticeVector>& vs, const LatticeVector& x) {
  std::vector<std::size_t> z;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (dot(vs[i], x) == 0) z.push_back(i);
  return z;
}

// One double description step: cuts the pointed cone with extreme rays `rays`
// (described by `constraints`) by a.x >= 0, or a.x = 0 when `equation`.
std::vector<LatticeVector> dd_cut(const std::vector<LatticeVector>& rays,
                                  std::vector<LatticeVector>& constraints, const LatticeVector& a,
                                  bool equation) {
  std::vector<std::size_t> pos, neg;
  std::vector<Integer> val(rays.size());
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    val[i] = dot(a, rays[i]);
    if (val[i] > 0) {
      pos.push_back(i);
      if (!equation) out.push_back(rays[i]);
    } else if (val[i] < 0) {
      neg.push_back(i);
    } else {
      out.push_back(rays[i]);
    }
  }
  if (!pos.empty() && !neg.empty()) {
    std::vector<std::vector<std::size_t>> tight(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) tight[i] = tight_set(constraints, rays[i]);
    for (auto p : pos)
      for (auto q : neg) {
        std::vector<std::size_t> common;
        std::set_intersection(tight[p].begin(), tight[p].end(), tight[q].begin(), tight[q].end(),
                              std::back_inserter(common));
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (std::includes(tight[r].begin(), tight[r].end(), common.begin(), common.end()))
            adjacent = false;
        }
        if (!adjacent) continue;
        LatticeVector combo(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) combo[i] = val[p] * rays[q][i] - val[q] * rays[p][i];
        out.push_back(primitive(combo));
      }
  }
  constraints.push_back(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Cone Cone::origin(std::size_t ambient_rank) {
  Cone c;
  c.ambient_rank_ = ambient_rank;
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    LatticeVector e(ambient_rank, Integer(0));
    e[i] = 1;
    c.span_equations_.push_back(std::move(e));
  }
  return c;
}

Cone cone_from_rays(std::size_t ambient_rank, const std::vector<LatticeVector>& generators) {
  if (generators.empty()) throw Error("cone needs at least one generator");
  std::vector<LatticeVector> gens;
  for (const auto& g : generators) {
    if (g.size() != ambient_rank)
      throw Error("generator " + to_string(g) + " does not have length " +
                  std::to_string(ambient_rank));
    if (is_zero(g)) throw Error("zero generator");
    gens.push_back(primitive(g));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (!pointed(gens, ambient_rank)) throw Error("cone contains a line");

  Cone c;
  c.ambient_rank_ = ambient_rank;
  c.dim_ = rank_of(gens, ambient_rank);
  c.facet_normals_ = compute_facets(gens, ambient_rank, c.dim_);
  for (const auto& g : gens) {
    std::vector<LatticeVector> tight;
    for (const auto& w : c.facet_normals_)
      if (dot(w, g) == 0) tight.push_back(w);
    if (rank_of(tight, ambient_rank) + 1 == c.dim_) c.rays_.push_back(g);
  }
  c.span_equations_ = integer_kernel_basis(IntegerMatrix::from_rows(c.rays_, ambient_rank));
  return c;
}

bool Cone::contains(const LatticeVector& x) const {
  if (x.size() != ambient_rank_) throw Error("membership test with wrong vector length");
  for (const auto& e : span_equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& w : facet_normals_)
    if (dot(w, x) < 0) return false;
  return true;
}

bool Cone::contains(const RationalVector& x) const {
  if (x.size() != ambient_rank_) throw Error("membership test with wrong vector length");
  for (const auto& e : span_equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& w : facet_normals_)
    if (dot(w, x) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& other) const {
  if (other.ambient_rank_ != ambient_rank_) throw Error("cones of different ambient rank");
  return std::all_of(other.rays_.begin(), other.rays_.end(),
                     [this](const LatticeVector& r) { return contains(r); });
}

std::optional<std::size_t> Cone::find_ray(const LatticeVector& ray) const {
  auto it = std::lower_bound(rays_.begin(), rays_.end(), ray);
  if (it == rays_.end() || *it != ray) return std::nullopt;
  return static_cast<std::size_t>(it - rays_.begin());
}

std::vector<LatticeVector> facet_normals(const Cone& c) { return c.facet_normals(); }

std::vector<Face> face_lattice(const Cone& c) {
  std::set<std::vector<std::size_t>> sets;
  std::vector<std::size_t> all(c.rays().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  sets.insert(all);
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& w : c.facet_normals()) facet_sets.push_back(tight_set(c.rays(), w));
  // closure of the facet incidence sets under intersection
  std::vector<std::vector<std::size_t>> frontier{all};
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& s : frontier)
      for (const auto& f : facet_sets) {
        std::vector<std::size_t> meet;
        std::set_intersection(s.begin(), s.end(), f.begin(), f.end(), std::back_inserter(meet));
        if (sets.insert(meet).second) next.push_back(std::move(meet));
      }
    frontier = std::move(next);
  }
  std::vector<Face> out;
  for (const auto& s : sets) {
    std::vector<LatticeVector> vs;
    for (auto i : s) vs.push_back(c.rays()[i]);
    out.push_back(Face{s, rank_of(vs, c.ambient_rank())});
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.ray_indices < b.ray_indices;
  });
  return out;
}

std::vector<Face> faces(const Cone& c, std::size_t k) {
  if (k > c.dim())
    throw Error("face dimension " + std::to_string(k) + " exceeds cone dimension " +
                std::to_string(c.dim()));
  std::vector<Face> out;
  for (auto& f : face_lattice(c))
    if (f.dim == k) out.push_back(std::move(f));
  return out;
}

Cone face_cone(const Cone& c, const Face& f) {
  if (f.ray_indices.empty()) return Cone::origin(c.ambient_rank());
  std::vector<LatticeVector> vs;
  for (auto i : f.ray_indices) vs.push_back(c.rays().at(i));
  return cone_from_rays(c.ambient_rank(), vs);
}

Cone intersect(const Cone& c1, const Cone& c2) {
  if (c1.ambient_rank() != c2.ambient_rank()) throw Error("cones of different ambient rank");
  std::vector<LatticeVector> rays = c1.rays();
  std::vector<LatticeVector> constraints = c1.facet_normals();
  for (const auto& e : c2.span_equations()) {
    if (rays.empty()) break;
    rays = dd_cut(rays, constraints, e, true);
  }
  for (const auto& w : c2.facet_normals()) {
    if (rays.empty()) break;
    rays = dd_cut(rays, constraints, w, false);
  }
  if (rays.empty()) return Cone::origin(c1.ambient_rank());
  return cone_from_rays(c1.ambient_rank(), rays);
}

bool is_face_of(const Cone& f, const Cone& c) {
  if (f.ambient_rank() != c.ambient_rank()) throw Error("cones of different ambient rank");
  if (!c.contains(f)) return false;
  StrictSystem sys;
  sys.dim = c.ambient_rank();
  for (const auto& r : f.rays()) sys.equalities.push_back(to_rational(r));
  for (const auto& r : c.rays())
    if (!f.contains(r)) sys.strict_inequalities.push_back(to_rational(r));
  return strict_feasible(sys).has_value();
}

Position classify_position(const LatticeVector& normal, const LatticeVector& x) {
  if (is_zero(normal)) throw Error("classify_position: zero normal");
  const int s = sgn(dot(normal, x));
  return s > 0 ? Position::Beneath : s < 0 ? Position::Beyond : Position::OnHyperplane;
}

const char* to_string(Position p) {
  switch (p) {
    case Position::Beneath:
      return "beneath";
    case Position::Beyond:
      return "beyond";
    case Position::OnHyperplane:
      return "on-hyperplane";
  }
  return "?";
}

}  // namespace toricfan
