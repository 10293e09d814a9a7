#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suites.hpp"

#include <algorithm>
#include <set>

using namespace toricfan;
using fixtures::v;

namespace {

std::set<LatticeVector> as_set(const std::vector<LatticeVector>& xs) { return {xs.begin(), xs.end()}; }

std::vector<Fan> complete_3d_fans() {
  std::vector<Fan> out{fixtures::p3(), fixtures::square_fan()};
  for (long u = 1; u <= 3; ++u) {
    const YuFan y = yu_fan(YuConfig{3, u});
    out.push_back(y.fan);
    out.push_back(small_modification(y.fan, y.e).fan);
  }
  return out;
}

}  // namespace

TEST_CASE("sigma prime") {
  const Cone simplex = cone_from_rays(3, {v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 2})});
  for (const auto& r : simplex.rays()) CHECK(sigma_prime(simplex, r).dim() == 2);

  const Cone sq = fixtures::square_cone();
  const Cone sp = sigma_prime(sq, v({1, 0, 1}));
  CHECK(sp.dim() == 3);
  CHECK(as_set(sp.rays()) == as_set({v({0, 1, 1}), v({-1, 0, 1}), v({0, -1, 1})}));
  CHECK_THROWS_AS(sigma_prime(sq, v({0, 0, 1})), Error);

  const YuFan y = yu_fan(YuConfig{3, 2});
  const auto& rays = y.fan.rays();
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<LatticeVector> expected{rays[y.g[i]]};
    for (std::size_t k = 0; k < 3; ++k)
      if (k != i) expected.push_back(rays[y.f[k]]);
    CHECK(as_set(sigma_prime(y.fan.cone(y.sigma[i]), rays[y.e]).rays()) == as_set(expected));
  }
}

TEST_CASE("square cone is a pyramidal extension by (1,0,1)") {
  const auto cls = classify_pyramidal(fixtures::square_cone(), v({1, 0, 1}));
  REQUIRE(cls.kind == PyramidalKind::Pyramidal);
  REQUIRE(cls.eta);
  CHECK(as_set(cls.eta->rays()) == as_set({v({0, 1, 1}), v({0, -1, 1})}));
  CHECK(cls.count(Position::Beyond) == 1);
  CHECK(cls.count(Position::Beneath) == 2);
  CHECK(cls.sigma_double_prime->dim() == 3);
  CHECK(as_set(cls.sigma_double_prime->rays()) == as_set({v({0, 1, 1}), v({0, -1, 1}), v({1, 0, 1})}));
  for (const auto& p : cls.positions)
    CHECK(dot(p.normal, v({1, 0, 1})) == (p.position == Position::Beyond ? -1 : 2));
}

TEST_CASE("rank-4 cone that is not a pyramidal extension") {
  const Cone c = cone_from_rays(4, fixtures::not_pyramidal_rays());
  const auto cls = classify_pyramidal(c, v({0, 3, -1, 1}));
  CHECK(cls.kind == PyramidalKind::NotPyramidal);
  CHECK(cls.count(Position::Beyond) == 2);
  CHECK(cls.count(Position::OnHyperplane) == 0);
  std::set<LatticeVector> beyond;
  for (const auto& p : cls.positions)
    if (p.position == Position::Beyond) beyond.insert(p.normal);
  CHECK(beyond == std::set<LatticeVector>{v({0, 0, 1, 0}), v({0, -1, -1, 1})});
  CHECK_FALSE(cls.eta);
}

TEST_CASE("LowDim exactly when sigma' drops dimension") {
  std::vector<Cone> cones;
  for (const auto& c : suites::fixture_cones())
    if (c.is_full_dimensional()) cones.push_back(c);
  for (const auto& c : suites::random_3d_cones(21, 60)) cones.push_back(c);
  for (const auto& c : cones)
    for (const auto& r : c.rays()) {
      const auto cls = classify_pyramidal(c, r);
      CHECK((cls.kind == PyramidalKind::LowDim) == (sigma_prime(c, r).dim() + 1 == c.ambient_rank()));
      if (cls.kind != PyramidalKind::NotPyramidal) CHECK(cls.sigma_double_prime->dim() == c.ambient_rank());
    }
}

TEST_CASE("pyramidal faces match the prediction") {
  std::size_t checked = 0;
  for (const auto& c : suites::random_3d_cones(99, 80)) {
    for (const auto& r : c.rays()) {
      const auto cls = classify_pyramidal(c, r);
      if (cls.kind != PyramidalKind::Pyramidal) continue;
      ++checked;
      CHECK(predicted_proper_faces(c, r, cls) == proper_faces(c));
    }
  }
  CHECK(checked > 50);
  const Cone sq = fixtures::square_cone();
  const auto cls = classify_pyramidal(sq, v({1, 0, 1}));
  CHECK(predicted_proper_faces(sq, v({1, 0, 1}), cls).size() == 9);
}

TEST_CASE("random 3-dimensional cones are never NotPyramidal") {
  const auto res = suites::three_dim_suite(0x3D, 500);
  INFO(res.first_failure);
  CHECK(res.ok());
  CHECK(res.cases == 500);
  CHECK(res.pyramidal > 0);
  CHECK(res.low_dim > 0);
}

TEST_CASE("Egyptian position") {
  for (std::size_t n = 3; n <= 4; ++n)
    for (long u = 1; u <= 3; ++u) {
      const YuFan y = yu_fan(YuConfig{n, u});
      const auto rep = egyptian_report(y.fan, y.e);
      CHECK(rep.verdict);
      CHECK(rep.per_cone.size() == n);
    }
  for (const auto& f : complete_3d_fans())
    for (std::size_t r = 0; r < f.ray_count(); ++r) CHECK(egyptian_report(f, r).verdict);

  const Fan np = fixtures::not_pyramidal_fan();
  const auto rep = egyptian_report(np, 5);
  CHECK_FALSE(rep.verdict);
  REQUIRE(rep.per_cone.size() == 1);
  CHECK(rep.per_cone[0].second.kind == PyramidalKind::NotPyramidal);
  CHECK_THROWS_AS(egyptian_report(np, 6), Error);
}

TEST_CASE("small modification of Y_u at e") {
  const YuFan y = yu_fan(YuConfig{3, 2});
  const ModificationResult m = small_modification(y.fan, y.e);
  CHECK(m.fan.cone_count() == 9);
  CHECK(m.exceptional_walls.size() == 3);
  CHECK(m.split_cones.size() == 3);
  CHECK(m.fan.rays() == y.fan.rays());
  CHECK(is_complete(m.fan));
  CHECK(m.strict_transform_ray == y.e);
  // Unsplit cones are carried over.
  for (const auto& [ij, c] : y.sigma_pair)
    CHECK(std::count(m.fan.max_cones().begin(), m.fan.max_cones().end(), y.fan.max_cones()[c]) == 1);

  const ModificationCheck check = verify_modification(m);
  CHECK(check.passed());
  CHECK(check.exceptional_curves == 3);
  CHECK(check.failures.empty());

  for (auto c : star(m.fan, y.e)) CHECK(sigma_prime(m.fan.cone(c), y.fan.rays()[y.e]).dim() == 2);
  CHECK(is_q_cartier(m.fan, prime_divisor(m.fan, y.e)));
}

TEST_CASE("simplicial star gives the identity modification") {
  const Fan p3 = fixtures::p3();
  const ModificationResult m = small_modification(p3, 0);
  CHECK(m.fan == p3);
  CHECK(m.exceptional_walls.empty());
  const ModificationCheck check = verify_modification(m);
  CHECK(check.passed());
  CHECK(check.exceptional_curves == 0);
}

TEST_CASE("square fan splits exactly one cone") {
  const Fan f = fixtures::square_fan();
  const auto r = f.ray_index(v({1, 0, 1}));
  REQUIRE(r);
  const ModificationResult m = small_modification(f, *r);
  CHECK(m.split_cones.size() == 1);
  CHECK(m.split_cones.begin()->first == 0);
  CHECK(m.fan.cone_count() == 6);
  CHECK(is_complete(m.fan));
  CHECK(verify_modification(m).passed());
}

TEST_CASE("modification refuses a ray not in Egyptian position") {
  CHECK_THROWS_WITH_AS(small_modification(fixtures::not_pyramidal_fan(), 5),
                       doctest::Contains("ray not in Egyptian position"), Error);
}

TEST_CASE("dropping a sibling cone breaks the exceptional-wall check") {
  const YuFan y = yu_fan(YuConfig{3, 2});
  ModificationResult m = small_modification(y.fan, y.e);
  const std::size_t dropped = m.split_cones.begin()->second.second;
  auto cones = m.fan.max_cones();
  cones.erase(cones.begin() + static_cast<std::ptrdiff_t>(dropped));
  m.fan = fan_from_cones(3, m.fan.rays(), cones);
  for (auto& [orig, pieces] : m.split_cones) {
    if (pieces.first > dropped) --pieces.first;
    if (pieces.second > dropped) --pieces.second;
  }
  const ModificationCheck check = verify_modification(m);
  CHECK_FALSE(check.walls_projective);
  CHECK_FALSE(check.passed());
  CHECK_FALSE(check.failures.empty());
}
