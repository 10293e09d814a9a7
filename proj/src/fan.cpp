#include "toricfan/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace toricfan {

namespace {

std::string index_list(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string ray_list(const std::vector<LatticeVector>& rays) {
  std::string s = "<";
  for (std::size_t i = 0; i < rays.size(); ++i) s += (i ? ", " : "") + to_string(rays[i]);
  return s + ">";
}

Cone cone_of(std::size_t n, const std::vector<LatticeVector>& rays,
             const std::vector<std::size_t>& indices) {
  if (indices.empty()) return Cone::origin(n);
  std::vector<LatticeVector> gens;
  for (auto i : indices) gens.push_back(rays[i]);
  return cone_from_rays(n, gens);
}

}  // namespace

const char* to_string(WallCurveKind k) {
  switch (k) {
    case WallCurveKind::Torus:
      return "torus";
    case WallCurveKind::Affine:
      return "affine-line";
    case WallCurveKind::Projective:
      return "projective-line";
  }
  return "?";
}

std::optional<std::size_t> Fan::ray_index(const LatticeVector& primitive_ray) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i] == primitive_ray) return i;
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> Fan::ray_indices(const Cone& c) const {
  std::vector<std::size_t> out;
  for (const auto& r : c.rays()) {
    auto i = ray_index(r);
    if (!i) return std::nullopt;
    out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const Wall* Fan::find_wall(const std::vector<std::size_t>& rays) const {
  std::vector<std::size_t> key = rays;
  std::sort(key.begin(), key.end());
  for (const auto& w : walls_)
    if (w.rays == key) return &w;
  return nullptr;
}

Fan fan_from_cones(std::size_t ambient_rank, std::vector<LatticeVector> rays,
                   std::vector<std::vector<std::size_t>> max_cones,
                   std::vector<std::string> labels) {
  const std::size_t n = ambient_rank;
  for (auto& r : rays) {
    if (r.size() != n)
      throw Error("ray " + to_string(r) + " does not have length " + std::to_string(n));
    if (is_zero(r)) throw Error("zero ray");
    r = primitive(r);
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j])
        throw Error("duplicate ray: rays " + std::to_string(i) + " and " + std::to_string(j) +
                    " are both " + to_string(rays[i]));
  if (!labels.empty() && labels.size() != max_cones.size())
    throw Error("label count does not match maximal cone count");

  Fan f;
  f.ambient_rank_ = n;
  std::vector<bool> used(rays.size(), false);
  for (std::size_t c = 0; c < max_cones.size(); ++c) {
    auto& idx = max_cones[c];
    for (auto i : idx) {
      if (i >= rays.size())
        throw Error("cone " + std::to_string(c) + " refers to ray " + std::to_string(i) +
                    " but there are only " + std::to_string(rays.size()) + " rays");
      used[i] = true;
    }
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
      throw Error("cone " + std::to_string(c) + " lists a ray twice");
    Cone cone = cone_of(n, rays, idx);
    if (cone.rays().size() != idx.size()) {
      for (auto i : idx)
        if (!cone.find_ray(rays[i]))
          throw Error("cone " + std::to_string(c) + ": ray " + std::to_string(i) + " " +
                      to_string(rays[i]) + " is not an extreme ray");
    }
    f.cones_.push_back(std::move(cone));
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!used[i]) throw Error("ray " + std::to_string(i) + " is not used by any maximal cone");

  for (std::size_t i = 0; i < f.cones_.size(); ++i)
    for (std::size_t j = 0; j < f.cones_.size(); ++j)
      if (i != j && f.cones_[j].contains(f.cones_[i]) &&
          (max_cones[i] != max_cones[j] || i > j))
        throw Error("redundant maximal cone " + std::to_string(i) + " (contained in cone " +
                    std::to_string(j) + ")");

  for (std::size_t i = 0; i < f.cones_.size(); ++i)
    for (std::size_t j = i + 1; j < f.cones_.size(); ++j) {
      Cone meet = intersect(f.cones_[i], f.cones_[j]);
      if (!is_face_of(meet, f.cones_[i]) || !is_face_of(meet, f.cones_[j]))
        throw Error("not a fan: cones " + std::to_string(i) + "," + std::to_string(j) +
                    " overlap badly (intersection " + ray_list(meet.rays()) + ", dim " +
                    std::to_string(meet.dim()) + ")");
    }

  f.rays_ = std::move(rays);
  f.max_cones_ = std::move(max_cones);
  f.labels_ = std::move(labels);

  std::map<std::vector<std::size_t>, Wall> walls;
  for (std::size_t c = 0; c < f.cones_.size(); ++c) {
    const Cone& cone = f.cones_[c];
    if (n == 0) break;
    if (cone.dim() + 1 == n) {
      walls[f.max_cones_[c]].rays = f.max_cones_[c];
    } else if (cone.dim() == n) {
      for (const auto& facet : faces(cone, n - 1)) {
        std::vector<std::size_t> key;
        for (auto local : facet.ray_indices) key.push_back(*f.ray_index(cone.rays()[local]));
        std::sort(key.begin(), key.end());
        Wall& w = walls[key];
        w.rays = key;
        w.incident.push_back(c);
      }
    }
  }
  for (auto& [key, w] : walls) f.walls_.push_back(std::move(w));
  return f;
}

bool is_complete(const Fan& f) {
  const std::size_t n = f.ambient_rank();
  if (f.cone_count() == 0) return false;
  for (std::size_t c = 0; c < f.cone_count(); ++c)
    if (f.cone(c).dim() != n) return false;
  if (n == 0) return true;
  std::vector<std::vector<std::size_t>> adjacent(f.cone_count());
  for (const auto& w : f.walls()) {
    if (w.incident.size() != 2) return false;
    adjacent[w.incident[0]].push_back(w.incident[1]);
    adjacent[w.incident[1]].push_back(w.incident[0]);
  }
  std::vector<bool> seen(f.cone_count(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (auto d : adjacent[c])
      if (!seen[d]) {
        seen[d] = true;
        ++reached;
        stack.push_back(d);
      }
  }
  return reached == f.cone_count();
}

std::vector<std::size_t> star(const Fan& f, std::size_t ray) {
  if (ray >= f.ray_count()) throw Error("unknown ray index " + std::to_string(ray));
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < f.cone_count(); ++c) {
    const auto& idx = f.max_cones()[c];
    if (std::binary_search(idx.begin(), idx.end(), ray)) out.push_back(c);
  }
  return out;
}

IntegerMatrix quotient_projection(const LatticeVector& primitive_ray) {
  const std::size_t n = primitive_ray.size();
  // l^T U = (1, 0, ..., 0), so U^T l = e_1 and rows 2..n of U^T project along l
  HermiteForm hf = hermite_normal_form(IntegerMatrix::from_rows({primitive_ray}));
  if (hf.rank != 1 || hf.H(0, 0) != 1) throw Error("quotient by a non-primitive vector");
  IntegerMatrix w = hf.U.transpose();
  IntegerMatrix p(n - 1, n);
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) p(r - 1, c) = w(r, c);
  return p;
}

Fan quotient_fan(const Fan& f, std::size_t ray) {
  const std::vector<std::size_t> cones = star(f, ray);
  const std::size_t n = f.ambient_rank();
  const IntegerMatrix p = quotient_projection(f.rays()[ray]);
  std::vector<LatticeVector> qrays;
  std::vector<std::vector<std::size_t>> qcones;
  for (auto c : cones) {
    std::vector<LatticeVector> images;
    for (auto i : f.max_cones()[c]) {
      if (i == ray) continue;
      LatticeVector img = p * f.rays()[i];
      if (is_zero(img))
        throw InvariantViolation("quotient_fan: a star cone contains the line through the ray");
      images.push_back(primitive(img));
    }
    std::vector<std::size_t> idx;
    if (!images.empty()) {
      Cone image = cone_from_rays(n - 1, images);
      for (const auto& r : image.rays()) {
        auto it = std::find(qrays.begin(), qrays.end(), r);
        if (it == qrays.end()) {
          idx.push_back(qrays.size());
          qrays.push_back(r);
        } else {
          idx.push_back(static_cast<std::size_t>(it - qrays.begin()));
        }
      }
    }
    qcones.push_back(std::move(idx));
  }
  std::vector<std::string> labels;
  if (!f.labels().empty())
    for (auto c : cones) labels.push_back(f.labels()[c]);
  try {
    Fan q = fan_from_cones(n - 1, std::move(qrays), std::move(qcones), std::move(labels));
    if (q.cone_count() != cones.size())
      throw InvariantViolation("quotient_fan: star and quotient cone counts differ");
    return q;
  } catch (const Error& e) {
    throw InvariantViolation(std::string("quotient_fan: projected star is not a fan: ") +
                             e.what());
  }
}

namespace {

// Coordinates in which the rays of f span the first k coordinate directions
// of a lattice basis: y = U x with U unimodular.
struct AdaptedCoordinates {
  IntegerMatrix to;    // U
  IntegerMatrix from;  // U^{-1}
  std::size_t rank = 0;
  std::vector<LatticeVector> rays;  // first `rank` coordinates of U * ray
};

AdaptedCoordinates adapt(const Fan& f) {
  const std::size_t n = f.ambient_rank();
  AdaptedCoordinates a;
  if (f.ray_count() == 0) {
    a.to = a.from = IntegerMatrix::identity(n);
    return a;
  }
  SmithForm sf = smith_normal_form(IntegerMatrix::from_columns(f.rays(), n));
  a.to = sf.U;
  a.from = inverse_unimodular(sf.U);
  a.rank = sf.diagonal.size();
  for (const auto& r : f.rays()) {
    LatticeVector y = a.to * r;
    for (std::size_t i = a.rank; i < n; ++i)
      if (y[i] != 0) throw InvariantViolation("adapted coordinates do not contain a ray");
    y.resize(a.rank);
    a.rays.push_back(std::move(y));
  }
  return a;
}

std::vector<std::size_t> valences(const Fan& f) {
  std::vector<std::size_t> v(f.ray_count(), 0);
  for (const auto& c : f.max_cones())
    for (auto i : c) ++v[i];
  return v;
}

}  // namespace

std::optional<FanIsomorphism> fans_isomorphic(const Fan& f1, const Fan& f2) {
  const std::size_t n = f1.ambient_rank();
  if (n != f2.ambient_rank() || f1.ray_count() != f2.ray_count() ||
      f1.cone_count() != f2.cone_count())
    return std::nullopt;
  const auto val1 = valences(f1);
  const auto val2 = valences(f2);
  {
    auto s1 = val1, s2 = val2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }
  const AdaptedCoordinates a1 = adapt(f1);
  const AdaptedCoordinates a2 = adapt(f2);
  if (a1.rank != a2.rank) return std::nullopt;
  const std::size_t k = a1.rank;
  const std::size_t m = f1.ray_count();

  std::set<std::vector<std::size_t>> cones2(f2.max_cones().begin(), f2.max_cones().end());

  // basis of the adapted ray span among the rays of f1
  std::vector<std::size_t> basis;
  {
    std::vector<LatticeVector> picked;
    for (std::size_t i = 0; i < m && basis.size() < k; ++i) {
      picked.push_back(a1.rays[i]);
      if (rank(IntegerMatrix::from_rows(picked, k)) == picked.size()) {
        basis.push_back(i);
      } else {
        picked.pop_back();
      }
    }
  }
  RationalMatrix b1_inv;
  if (k > 0) {
    std::vector<LatticeVector> cols;
    for (auto i : basis) cols.push_back(a1.rays[i]);
    b1_inv = inverse(to_rational(IntegerMatrix::from_columns(cols, k)));
  }

  std::optional<FanIsomorphism> found;
  std::vector<std::size_t> images(basis.size());
  std::vector<bool> taken(m, false);

  auto try_assignment = [&]() -> bool {
    IntegerMatrix ak = IntegerMatrix::identity(k);
    if (k > 0) {
      std::vector<LatticeVector> cols;
      for (auto j : images) cols.push_back(a2.rays[j]);
      RationalMatrix prod = to_rational(IntegerMatrix::from_columns(cols, k)) * b1_inv;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) {
          if (prod(r, c).get_den() != 1) return false;
          ak(r, c) = prod(r, c).get_num();
        }
      if (!is_unimodular(ak)) return false;
    }
    std::vector<std::size_t> ray_map(m);
    std::vector<bool> hit(m, false);
    for (std::size_t i = 0; i < m; ++i) {
      LatticeVector img = ak * a1.rays[i];
      auto it = std::find(a2.rays.begin(), a2.rays.end(), img);
      if (it == a2.rays.end()) return false;
      const auto j = static_cast<std::size_t>(it - a2.rays.begin());
      if (hit[j] || val1[i] != val2[j]) return false;
      hit[j] = true;
      ray_map[i] = j;
    }
    for (const auto& c : f1.max_cones()) {
      std::vector<std::size_t> mapped;
      for (auto i : c) mapped.push_back(ray_map[i]);
      std::sort(mapped.begin(), mapped.end());
      if (!cones2.count(mapped)) return false;
    }
    IntegerMatrix block = IntegerMatrix::identity(n);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) block(r, c) = ak(r, c);
    IntegerMatrix full = a2.from * block * a1.to;
    for (std::size_t i = 0; i < m; ++i)
      if (full * f1.rays()[i] != f2.rays()[ray_map[i]])
        throw InvariantViolation("fans_isomorphic: assembled map does not send rays to rays");
    found = FanIsomorphism{std::move(full), std::move(ray_map)};
    return true;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    if (depth == basis.size()) return try_assignment();
    for (std::size_t j = 0; j < m; ++j) {
      if (taken[j] || val1[basis[depth]] != val2[j]) continue;
      taken[j] = true;
      images[depth] = j;
      if (search(depth + 1)) return true;
      taken[j] = false;
    }
    return false;
  };
  search(0);
  return found;
}

WallCurveKind classify_wall_curve(const Fan& f, const std::vector<std::size_t>& wall_rays) {
  const std::size_t n = f.ambient_rank();
  for (auto i : wall_rays)
    if (i >= f.ray_count()) throw Error("unknown ray index " + std::to_string(i));
  std::vector<std::size_t> key = wall_rays;
  std::sort(key.begin(), key.end());
  Cone w = cone_of(n, f.rays(), key);
  if (w.dim() + 1 != n)
    throw Error("wall " + index_list(key) + " has dimension " + std::to_string(w.dim()) +
                ", expected " + std::to_string(n - 1));
  const Wall* found = f.find_wall(key);
  if (!found) throw Error("cone " + index_list(key) + " is not a cone of the fan");
  switch (found->incident.size()) {
    case 0:
      return WallCurveKind::Torus;
    case 1:
      return WallCurveKind::Affine;
    case 2:
      return WallCurveKind::Projective;
    default:
      throw InvariantViolation("wall with more than two incident maximal cones");
  }
}

}  // namespace toricfan
