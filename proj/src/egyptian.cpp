#include "toricfan/egyptian.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace toricfan {

namespace {

using RaySet = std::vector<LatticeVector>;

RaySet rays_of(const Cone& c, const Face& f) {
  RaySet out;
  for (auto i : f.ray_indices) out.push_back(c.rays()[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string index_list(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

}  // namespace

const char* to_string(PyramidalKind k) {
  switch (k) {
    case PyramidalKind::LowDim:
      return "low-dim";
    case PyramidalKind::Pyramidal:
      return "pyramidal";
    case PyramidalKind::NotPyramidal:
      return "not-pyramidal";
  }
  return "?";
}

std::size_t PyramidalClassification::count(Position p) const {
  return static_cast<std::size_t>(std::count_if(
      positions.begin(), positions.end(), [p](const FacetPosition& fp) { return fp.position == p; }));
}

Cone sigma_prime(const Cone& sigma, const LatticeVector& ray) {
  if (!sigma.find_ray(ray)) throw Error("vector " + to_string(ray) + " is not a ray of the cone");
  RaySet rest;
  for (const auto& r : sigma.rays())
    if (r != ray) rest.push_back(r);
  if (rest.empty()) return Cone::origin(sigma.ambient_rank());
  return cone_from_rays(sigma.ambient_rank(), rest);
}

std::vector<RaySet> proper_faces(const Cone& sigma) {
  std::vector<RaySet> out;
  for (const auto& f : face_lattice(sigma))
    if (f.dim < sigma.dim()) out.push_back(rays_of(sigma, f));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RaySet> predicted_proper_faces(const Cone& sigma, const LatticeVector& ray,
                                           const PyramidalClassification& c) {
  if (c.kind != PyramidalKind::Pyramidal || !c.eta)
    throw Error("face prediction needs a pyramidal classification");
  std::set<RaySet> out;
  const RaySet eta_rays = c.eta->rays();
  for (const auto& f : face_lattice(c.sigma_prime)) {
    if (f.dim == c.sigma_prime.dim()) continue;
    RaySet rs = rays_of(c.sigma_prime, f);
    if (rs != eta_rays) out.insert(std::move(rs));
  }
  for (const auto& f : face_lattice(*c.eta)) {
    if (f.dim == c.eta->dim()) continue;
    RaySet rs = rays_of(*c.eta, f);
    rs.push_back(ray);
    std::sort(rs.begin(), rs.end());
    out.insert(std::move(rs));
  }
  (void)sigma;
  return {out.begin(), out.end()};
}

PyramidalClassification classify_pyramidal(const Cone& sigma, const LatticeVector& ray) {
  if (!sigma.is_full_dimensional())
    throw Error("pyramidal classification needs a full-dimensional cone");
  PyramidalClassification out;
  out.sigma_prime = sigma_prime(sigma, ray);
  const std::size_t n = sigma.ambient_rank();
  if (out.sigma_prime.dim() + 1 == n) {
    out.kind = PyramidalKind::LowDim;
    out.sigma_double_prime = sigma;
    return out;
  }
  for (const auto& w : out.sigma_prime.facet_normals())
    out.positions.push_back(FacetPosition{w, classify_position(w, ray)});
  if (out.count(Position::Beyond) != 1 || out.count(Position::OnHyperplane) != 0) {
    out.kind = PyramidalKind::NotPyramidal;
    return out;
  }
  out.kind = PyramidalKind::Pyramidal;
  const auto beyond = std::find_if(out.positions.begin(), out.positions.end(),
                                   [](const FacetPosition& p) { return p.position == Position::Beyond; });
  RaySet eta_rays;
  for (const auto& r : out.sigma_prime.rays())
    if (dot(beyond->normal, r) == 0) eta_rays.push_back(r);
  out.eta = cone_from_rays(n, eta_rays);
  eta_rays.push_back(ray);
  out.sigma_double_prime = cone_from_rays(n, eta_rays);
  if (predicted_proper_faces(sigma, ray, out) != proper_faces(sigma))
    throw InvariantViolation("pyramidal extension: face lattice differs from the prediction");
  return out;
}

EgyptianReport egyptian_report(const Fan& f, std::size_t ray) {
  EgyptianReport rep;
  rep.ray = ray;
  rep.verdict = true;
  for (auto c : star(f, ray)) {
    if (!f.cone(c).is_full_dimensional()) continue;
    auto cls = classify_pyramidal(f.cone(c), f.rays()[ray]);
    if (cls.kind == PyramidalKind::NotPyramidal) rep.verdict = false;
    rep.per_cone.emplace_back(c, std::move(cls));
  }
  return rep;
}

ModificationResult small_modification(const Fan& f, std::size_t ray) {
  const EgyptianReport rep = egyptian_report(f, ray);
  if (!rep.verdict)
    throw Error("ray not in Egyptian position: ray " + std::to_string(ray) +
                " has a star cone that is not a pyramidal extension");
  std::map<std::size_t, const PyramidalClassification*> splits;
  for (const auto& [c, cls] : rep.per_cone)
    if (cls.kind == PyramidalKind::Pyramidal) splits[c] = &cls;

  const std::size_t n = f.ambient_rank();
  std::vector<std::vector<std::size_t>> cones;
  std::vector<std::string> labels;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> split_index;
  std::vector<std::vector<std::size_t>> walls;
  for (std::size_t c = 0; c < f.cone_count(); ++c) {
    const std::string label = f.labels().empty() ? std::string() : f.labels()[c];
    auto it = splits.find(c);
    if (it == splits.end()) {
      cones.push_back(f.max_cones()[c]);
      labels.push_back(label);
      continue;
    }
    const PyramidalClassification& cls = *it->second;
    auto lower = f.ray_indices(cls.sigma_prime);
    auto upper = f.ray_indices(*cls.sigma_double_prime);
    auto eta = f.ray_indices(*cls.eta);
    if (!lower || !upper || !eta)
      throw InvariantViolation("small_modification: split cones use rays outside the fan");
    split_index[c] = {cones.size(), cones.size() + 1};
    cones.push_back(*lower);
    cones.push_back(*upper);
    labels.push_back(label + "'");
    labels.push_back(label + "''");
    walls.push_back(*eta);

    if (intersect(cls.sigma_prime, *cls.sigma_double_prime) != *cls.eta)
      throw InvariantViolation("small_modification: sigma' ∩ sigma'' differs from eta");
    std::mt19937 rng(kModificationSampleSeed);
    std::uniform_int_distribution<int> coeff(1, 1000);
    const Cone& sigma = f.cone(c);
    for (std::size_t s = 0; s < kModificationSamples; ++s) {
      LatticeVector point(n, Integer(0));
      for (const auto& r : sigma.rays()) {
        const Integer k = coeff(rng);
        for (std::size_t i = 0; i < n; ++i) point[i] += k * r[i];
      }
      if (!cls.sigma_prime.contains(point) && !cls.sigma_double_prime->contains(point))
        throw InvariantViolation("small_modification: sample point " + to_string(point) +
                                 " of cone " + std::to_string(c) + " is in neither piece");
    }
  }
  if (f.labels().empty()) labels.clear();

  ModificationResult out{f, f, std::move(split_index), std::move(walls), ray};
  try {
    out.fan = fan_from_cones(n, f.rays(), std::move(cones), std::move(labels));
  } catch (const Error& e) {
    throw InvariantViolation(std::string("small_modification: refined cones are not a fan: ") +
                             e.what());
  }
  if (is_complete(f) && !is_complete(out.fan))
    throw InvariantViolation("small_modification: refinement of a complete fan is not complete");
  return out;
}

ModificationCheck verify_modification(const ModificationResult& m) {
  ModificationCheck check;
  const Fan& fan = m.fan;
  const std::size_t rho = m.strict_transform_ray;
  check.exceptional_curves = m.exceptional_walls.size();
  std::size_t k = 0;
  for (const auto& [orig, pieces] : m.split_cones) {
    if (k >= m.exceptional_walls.size()) {
      check.walls_projective = false;
      check.failures.push_back("split of cone " + std::to_string(orig) + " has no exceptional wall");
      break;
    }
    const auto& eta = m.exceptional_walls[k++];
    const Wall* wall = fan.find_wall(eta);
    std::vector<std::size_t> siblings{pieces.first, pieces.second};
    std::sort(siblings.begin(), siblings.end());
    std::vector<std::size_t> incident = wall ? wall->incident : std::vector<std::size_t>{};
    std::sort(incident.begin(), incident.end());
    if (!wall || incident != siblings ||
        classify_wall_curve(fan, eta) != WallCurveKind::Projective) {
      check.walls_projective = false;
      check.failures.push_back("exceptional wall " + index_list(eta) + " is incident to cones " +
                               index_list(incident) + ", expected " + index_list(siblings));
    }
    std::vector<std::size_t> upper = eta;
    upper.push_back(rho);
    std::sort(upper.begin(), upper.end());
    if (std::find(fan.max_cones().begin(), fan.max_cones().end(), upper) == fan.max_cones().end()) {
      check.orbit_points = false;
      check.failures.push_back("eta + rho = " + index_list(upper) + " is not a maximal cone");
    }
  }
  try {
    if (!fans_isomorphic(quotient_fan(fan, rho), quotient_fan(m.original, rho))) {
      check.divisor_isomorphic = false;
      check.failures.push_back("quotient fan at ray " + std::to_string(rho) + " changed");
    }
  } catch (const std::exception& e) {
    check.divisor_isomorphic = false;
    check.failures.push_back(std::string("quotient fan comparison failed: ") + e.what());
  }
  return check;
}

}  // namespace toricfan
