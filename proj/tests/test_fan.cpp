#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suites.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace toricfan;
using fixtures::v;

namespace {

std::set<std::vector<std::size_t>> wall_table(const Fan& f) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& w : f.walls()) out.insert(w.rays);
  return out;
}

std::vector<Fan> complete_fixtures() {
  std::vector<Fan> out{fixtures::p1(), fixtures::p2(), fixtures::p1xp1(), fixtures::p3(),
                       fixtures::p112(), fixtures::square_fan()};
  for (std::size_t n = 3; n <= 4; ++n)
    for (long u = 1; u <= 3; ++u) out.push_back(yu_fan(YuConfig{n, u}).fan);
  return out;
}

// Image of a cone under the projection along l, as a cone of rank n-1.
Cone project(const Cone& c, const LatticeVector& l) {
  const IntegerMatrix p = quotient_projection(l);
  std::vector<LatticeVector> gens;
  for (const auto& r : c.rays()) {
    LatticeVector img = p * r;
    if (!is_zero(img)) gens.push_back(img);
  }
  if (gens.empty()) return Cone::origin(l.size() - 1);
  return cone_from_rays(l.size() - 1, gens);
}

}  // namespace

TEST_CASE("small valid fans") {
  const Fan p1 = fixtures::p1();
  CHECK(p1.ray_count() == 2);
  CHECK(is_complete(p1));
  const Fan p2 = fixtures::p2();
  CHECK(p2.cone_count() == 3);
  CHECK(p2.walls().size() == 3);
  CHECK(is_complete(p2));
}

TEST_CASE("overlapping cones are rejected") {
  CHECK_THROWS_AS(fan_from_cones(2, {v({1, 0}), v({1, 2}), v({1, 1}), v({0, 1})}, {{0, 1}, {2, 3}}), Error);
  // The common point (2,3) lies inside both cones.
  const Cone a = cone_from_rays(2, {v({1, 0}), v({1, 2})});
  const Cone b = cone_from_rays(2, {v({1, 1}), v({0, 1})});
  CHECK(a.contains(v({2, 3})));
  CHECK(b.contains(v({2, 3})));
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(fan_from_cones(2, {v({1, 0}), v({2, 0})}, {{0}, {1}}), Error);
  CHECK_THROWS_AS(fan_from_cones(2, {v({1, 0}), v({0, 1}), v({-1, 0})}, {{0, 1}}), Error);
  CHECK_THROWS_AS(fan_from_cones(2, {v({1, 0}), v({0, 1})}, {{0, 1}, {0}}), Error);
  CHECK_THROWS_AS(fan_from_cones(2, {v({1, 0}), v({0, 1})}, {{0, 5}}), Error);
  CHECK_THROWS_AS(fan_from_cones(2, {v({1, 0}), v({1, 1}), v({0, 1})}, {{0, 1, 2}}), Error);
}

TEST_CASE("completeness") {
  for (const auto& f : complete_fixtures()) CHECK(is_complete(f));
  CHECK_FALSE(is_complete(fan_from_cones(2, {v({1, 0}), v({0, 1}), v({-1, -1})}, {{0, 1}, {1, 2}})));
  CHECK_FALSE(is_complete(fixtures::not_pyramidal_fan()));
  for (std::size_t n = 3; n <= 5; ++n)
    for (long u = 1; u <= 3; ++u) CHECK(is_complete(yu_fan(YuConfig{n, u}).fan));
}

TEST_CASE("cone order does not change the verdict or the walls") {
  std::mt19937 rng(9);
  for (const auto& f : complete_fixtures()) {
    auto cones = f.max_cones();
    std::shuffle(cones.begin(), cones.end(), rng);
    const Fan g = fan_from_cones(f.ambient_rank(), f.rays(), cones);
    CHECK(wall_table(f) == wall_table(g));
    CHECK(is_complete(g));
  }
  auto bad = std::vector<std::vector<std::size_t>>{{2, 3}, {0, 1}};
  CHECK_THROWS_AS(fan_from_cones(2, {v({1, 0}), v({1, 2}), v({1, 1}), v({0, 1})}, bad), Error);
}

TEST_CASE("star") {
  const Fan p2 = fixtures::p2();
  for (std::size_t r = 0; r < 3; ++r) CHECK(star(p2, r).size() == 2);
  const YuFan y = yu_fan(YuConfig{3, 2});
  CHECK(star(y.fan, y.e) == y.sigma);
  const Fan single = fan_from_cones(2, {v({1, 0}), v({0, 1})}, {{0, 1}});
  CHECK(star(single, 0) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(star(single, 7), Error);
}

TEST_CASE("quotient fans") {
  const Fan single = fan_from_cones(2, {v({1, 0}), v({0, 1})}, {{0, 1}});
  const Fan q = quotient_fan(single, 0);
  CHECK(q.ambient_rank() == 1);
  CHECK(q.cone_count() == 1);
  CHECK(q.cone(0).dim() == 1);

  for (std::size_t n = 3; n <= 4; ++n)
    for (long u = 2; u <= 3; ++u) {
      const YuFan y = yu_fan(YuConfig{n, u});
      CHECK(fans_isomorphic(quotient_fan(y.fan, y.e), projective_space_fan(n - 1)));
    }
}

TEST_CASE("quotient cones correspond to star cones") {
  for (const auto& f : complete_fixtures()) {
    if (f.ambient_rank() < 2) continue;
    for (std::size_t r = 0; r < f.ray_count(); ++r) {
      const auto st = star(f, r);
      const Fan q = quotient_fan(f, r);
      REQUIRE(q.cone_count() == st.size());
      const LatticeVector& l = f.rays()[r];
      for (std::size_t i = 0; i < st.size(); ++i) {
        CHECK(q.cone(i) == project(f.cone(st[i]), l));
        for (std::size_t j = i + 1; j < st.size(); ++j)
          CHECK(intersect(q.cone(i), q.cone(j)) == project(intersect(f.cone(st[i]), f.cone(st[j])), l));
      }
    }
  }
}

TEST_CASE("fan isomorphism") {
  const Fan p2 = fixtures::p2();
  const Fan permuted = fan_from_cones(2, {v({-1, -1}), v({1, 0}), v({0, 1})}, {{0, 1}, {1, 2}, {0, 2}});
  auto iso = fans_isomorphic(p2, permuted);
  REQUIRE(iso);
  CHECK(is_unimodular(iso->map));
  for (std::size_t i = 0; i < p2.ray_count(); ++i)
    CHECK(iso->map * p2.rays()[i] == permuted.rays()[iso->ray_map[i]]);
  CHECK_FALSE(fans_isomorphic(fixtures::p1xp1(), p2));
  CHECK_FALSE(fans_isomorphic(fixtures::p112(), p2));

  const IntegerMatrix a = IntegerMatrix::from_rows({v({1, 2, 0}), v({0, 1, 3}), v({1, 2, 1})});
  REQUIRE(is_unimodular(a));
  for (const auto& f : complete_fixtures()) {
    CHECK(fans_isomorphic(f, f));
    if (f.ambient_rank() != 3) continue;
    std::vector<LatticeVector> moved;
    for (const auto& r : f.rays()) moved.push_back(a * r);
    const Fan g = fan_from_cones(3, moved, f.max_cones());
    auto fg = fans_isomorphic(f, g);
    auto gf = fans_isomorphic(g, f);
    REQUIRE(fg);
    REQUIRE(gf);
    const IntegerMatrix back = inverse_unimodular(fg->map);
    for (std::size_t i = 0; i < f.ray_count(); ++i) CHECK(back * g.rays()[fg->ray_map[i]] == f.rays()[i]);
    CHECK(is_unimodular(gf->map));
  }
}

TEST_CASE("wall curves") {
  for (const auto& f : complete_fixtures())
    for (const auto& w : f.walls()) CHECK(classify_wall_curve(f, w.rays) == WallCurveKind::Projective);
  const Fan single = fan_from_cones(2, {v({1, 0}), v({0, 1})}, {{0, 1}});
  CHECK(classify_wall_curve(single, {0}) == WallCurveKind::Affine);
  const Fan ray_only = fan_from_cones(2, {v({1, 0})}, {{0}});
  CHECK(classify_wall_curve(ray_only, {0}) == WallCurveKind::Torus);
  CHECK_THROWS_AS(classify_wall_curve(single, {0, 1}), Error);
}
