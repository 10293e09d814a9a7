#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suites.hpp"

#include <algorithm>
#include <set>

using namespace toricfan;
using fixtures::v;

namespace {

std::set<LatticeVector> as_set(const std::vector<LatticeVector>& xs) { return {xs.begin(), xs.end()}; }

std::set<std::set<LatticeVector>> face_ray_sets(const Cone& c, std::size_t k) {
  std::set<std::set<LatticeVector>> out;
  for (const auto& f : faces(c, k)) out.insert(as_set(face_cone(c, f).rays()));
  return out;
}

}  // namespace

TEST_CASE("quadrant") {
  const Cone c = cone_from_rays(2, {v({1, 0}), v({0, 1})});
  CHECK(c.dim() == 2);
  CHECK(as_set(c.facet_normals()) == as_set({v({1, 0}), v({0, 1})}));
  CHECK(face_ray_sets(c, 1) == std::set<std::set<LatticeVector>>{{v({1, 0})}, {v({0, 1})}});
  REQUIRE(faces(c, 2).size() == 1);
  CHECK(face_cone(c, faces(c, 2)[0]) == c);
  CHECK_THROWS_AS(faces(c, 3), Error);
}

TEST_CASE("square cone facets and faces") {
  const Cone c = fixtures::square_cone();
  CHECK(c.rays().size() == 4);
  CHECK(as_set(c.facet_normals()) ==
        as_set({v({-1, -1, 1}), v({1, -1, 1}), v({1, 1, 1}), v({-1, 1, 1})}));
  // Each normal vanishes on two adjacent rays and is positive on the others.
  for (const auto& w : c.facet_normals()) {
    int zeros = 0;
    for (const auto& r : c.rays()) {
      CHECK(dot(w, r) >= 0);
      zeros += dot(w, r) == 0;
    }
    CHECK(zeros == 2);
  }
  const auto two = face_ray_sets(c, 2);
  CHECK(two.size() == 4);
  const auto rays = fixtures::square_rays();
  for (std::size_t i = 0; i < 4; ++i) CHECK(two.count({rays[i], rays[(i + 1) % 4]}) == 1);
  CHECK(faces(c, 1).size() == 4);
  CHECK(faces(c, 0).size() == 1);
  CHECK(face_lattice(c).size() == 1 + 4 + 4 + 1);
}

TEST_CASE("simplicial normals (1,0),(1,2)") {
  const Cone c = cone_from_rays(2, {v({1, 0}), v({1, 2})});
  CHECK(as_set(c.facet_normals()) == as_set({v({0, 1}), v({2, -1})}));
}

TEST_CASE("octant normals") {
  const Cone c = cone_from_rays(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})});
  CHECK(as_set(c.facet_normals()) == as_set({v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})}));
  CHECK(face_lattice(c).size() == 8);
}

TEST_CASE("construction errors and normalization") {
  CHECK_THROWS_WITH_AS(cone_from_rays(1, {v({1}), v({-1})}), "cone contains a line", Error);
  CHECK_THROWS_AS(cone_from_rays(2, {v({1, 0}), v({0, 0})}), Error);
  CHECK_THROWS_AS(cone_from_rays(2, {v({1, 0, 0})}), Error);
  const Cone c = cone_from_rays(2, {v({2, 0}), v({0, 3}), v({1, 1})});
  CHECK(c.rays() == std::vector<LatticeVector>{v({0, 1}), v({1, 0})});
}

TEST_CASE("lower-dimensional cones") {
  const Cone c = cone_from_rays(3, {v({1, 0, 0}), v({1, 1, 0})});
  CHECK(c.dim() == 2);
  CHECK(c.span_equations().size() == 1);
  CHECK(c.contains(v({2, 1, 0})));
  CHECK_FALSE(c.contains(v({2, 1, 1})));
  CHECK_FALSE(c.contains(v({0, 1, 0})));
  CHECK(Cone::origin(3).dim() == 0);
}

TEST_CASE("intersections") {
  const Cone q1 = cone_from_rays(2, {v({1, 0}), v({0, 1})});
  const Cone q2 = cone_from_rays(2, {v({0, 1}), v({-1, 0})});
  CHECK(intersect(q1, q2) == cone_from_rays(2, {v({0, 1})}));
  CHECK(intersect(q1, q1) == q1);
  const Cone q3 = cone_from_rays(2, {v({-1, 0}), v({0, -1})});
  CHECK(intersect(q1, q3).dim() == 0);

  const YuFan y = yu_fan(YuConfig{3, 1});
  const Cone meet = intersect(y.fan.cone(y.sigma[0]), y.fan.cone(y.sigma[1]));
  CHECK(as_set(meet.rays()) == as_set({y.fan.rays()[y.e], y.fan.rays()[y.f[2]]}));
}

TEST_CASE("intersection laws on random cones") {
  const auto cones = suites::random_3d_cones(77, 40);
  for (std::size_t i = 0; i + 1 < cones.size(); i += 2) {
    const Cone& a = cones[i];
    const Cone& b = cones[i + 1];
    const Cone ab = intersect(a, b);
    CHECK(ab == intersect(b, a));
    CHECK(a.contains(ab));
    CHECK(b.contains(ab));
    CHECK(intersect(ab, a) == ab);
  }
}

TEST_CASE("is_face_of") {
  const Cone q = cone_from_rays(2, {v({1, 0}), v({0, 1})});
  CHECK(is_face_of(cone_from_rays(2, {v({1, 0})}), q));
  CHECK_FALSE(is_face_of(cone_from_rays(2, {v({1, 1})}), q));
  CHECK(is_face_of(Cone::origin(2), q));
  CHECK(is_face_of(q, q));
  const Cone c = fixtures::square_cone();
  for (const auto& f : face_lattice(c)) CHECK(is_face_of(face_cone(c, f), c));
  CHECK_FALSE(is_face_of(cone_from_rays(3, {v({1, 0, 1}), v({-1, 0, 1})}), c));
}

TEST_CASE("beneath and beyond") {
  // sigma' of the square cone without (1,0,1).
  const Cone sp = cone_from_rays(3, {v({0, 1, 1}), v({-1, 0, 1}), v({0, -1, 1})});
  CHECK(std::count(sp.facet_normals().begin(), sp.facet_normals().end(), v({-1, 0, 0})) == 1);
  CHECK(classify_position(v({-1, 0, 0}), v({1, 0, 1})) == Position::Beyond);
  CHECK(classify_position(v({1, -1, 1}), v({1, 0, 1})) == Position::Beneath);
  CHECK(classify_position(v({1, -1, 1}), v({0, 1, 1})) == Position::OnHyperplane);
  CHECK_THROWS_AS(classify_position(v({0, 0, 0}), v({1, 0, 1})), Error);

  // Rays off a facet are beneath it, for every fixture.
  for (const auto& c : suites::fixture_cones()) {
    if (!c.is_full_dimensional()) continue;
    for (const auto& w : c.facet_normals())
      for (const auto& r : c.rays())
        if (dot(w, r) != 0) CHECK(classify_position(w, r) == Position::Beneath);
  }
}

TEST_CASE("facet normals are supporting on every fixture") {
  for (const auto& c : suites::fixture_cones()) {
    for (const auto& w : c.facet_normals()) {
      std::vector<LatticeVector> tight;
      for (const auto& r : c.rays()) {
        CHECK(dot(w, r) >= 0);
        if (dot(w, r) == 0) tight.push_back(r);
      }
      if (!tight.empty()) CHECK(rank(IntegerMatrix::from_rows(tight)) == c.dim() - 1);
    }
  }
}

TEST_CASE("rays -> facets -> rays round trip") {
  const auto res = suites::facet_roundtrip_suite();
  INFO(res.first_failure);
  CHECK(res.ok());
  for (const auto& c : suites::random_3d_cones(3, 50)) {
    const auto back = suites::rays_from_facets(c);
    CHECK(back == as_set(c.rays()));
  }
}

TEST_CASE("faces are closed under intersection") {
  const Cone c = cone_from_rays(4, fixtures::not_pyramidal_rays());
  const auto lattice = face_lattice(c);
  std::set<std::set<LatticeVector>> sets;
  for (const auto& f : lattice) sets.insert(as_set(face_cone(c, f).rays()));
  for (const auto& a : lattice)
    for (const auto& b : lattice) {
      const Cone meet = intersect(face_cone(c, a), face_cone(c, b));
      CHECK(sets.count(as_set(meet.rays())) == 1);
    }
}
