#include "toricfan/families.hpp"

#include <algorithm>
#include <set>

namespace toricfan {

namespace {

using IndexSet = std::vector<std::size_t>;

IndexSet sorted(IndexSet v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string show(const IndexSet& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string sigma_name(std::size_t i) { return "sigma_" + std::to_string(i + 1); }

std::string sigma_name(std::size_t i, std::size_t j) {
  return "sigma_" + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

LatticeVector combination(const Fan& fan, const std::vector<std::pair<Integer, std::size_t>>& terms) {
  LatticeVector out(fan.ambient_rank(), Integer(0));
  for (const auto& [c, r] : terms)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * fan.rays()[r][k];
  return out;
}

// f_k for every k outside `skip`, followed by `extra`.
IndexSet with_fs(const YuFan& y, std::initializer_list<std::size_t> skip, IndexSet extra) {
  for (std::size_t k = 0; k < y.config.n; ++k)
    if (std::find(skip.begin(), skip.end(), k) == skip.end()) extra.push_back(y.f[k]);
  return sorted(std::move(extra));
}

std::set<IndexSet> facet_sets(const Fan& fan, std::size_t cone) {
  std::set<IndexSet> out;
  for (const auto& w : fan.cone(cone).facet_normals()) {
    IndexSet tight;
    for (auto r : fan.max_cones()[cone])
      if (dot(w, fan.rays()[r]) == 0) tight.push_back(r);
    out.insert(tight);
  }
  return out;
}

}  // namespace

YuFan yu_fan(const YuConfig& cfg) {
  const std::size_t n = cfg.n;
  if (n < 3) throw Error("Y_u needs n >= 3, got n = " + std::to_string(n));
  if (cfg.u < 1) throw Error("Y_u needs u >= 1, got u = " + cfg.u.get_str());

  YuFan y;
  y.config = cfg;
  auto unit = [n](std::size_t i) {
    LatticeVector v(n, Integer(0));
    v[i] = 1;
    return v;
  };
  std::vector<LatticeVector> rays;
  const LatticeVector e = unit(n - 1);
  LatticeVector h = e;
  for (auto& x : h) x = -x;

  std::vector<LatticeVector> fs;
  LatticeVector fn(n, Integer(0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    fs.push_back(unit(i));
    fn[i] = -1;
  }
  fs.push_back(fn);

  rays.push_back(e);
  for (const auto& v : fs) rays.push_back(v);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer c = (i + 1 == n) ? cfg.u : Integer(1);
    LatticeVector gi(n);
    for (std::size_t k = 0; k < n; ++k) gi[k] = c * h[k] - fs[i][k];
    rays.push_back(gi);
  }
  rays.push_back(h);

  y.e = 0;
  y.h = 2 * n + 1;
  for (std::size_t i = 0; i < n; ++i) {
    y.f.push_back(1 + i);
    y.g.push_back(n + 1 + i);
  }

  std::vector<IndexSet> cones;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    y.sigma.push_back(cones.size());
    cones.push_back(with_fs(y, {i}, {y.e, y.g[i]}));
    labels.push_back(sigma_name(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      y.sigma_pair[{i, j}] = cones.size();
      cones.push_back(with_fs(y, {i, j}, {y.h, y.g[i], y.g[j]}));
      labels.push_back(sigma_name(i, j));
    }
  y.fan = fan_from_cones(n, std::move(rays), std::move(cones), std::move(labels));
  return y;
}

Fan projective_space_fan(std::size_t k) {
  if (k < 1) throw Error("projective space needs dimension >= 1");
  std::vector<LatticeVector> rays;
  LatticeVector last(k, Integer(-1));
  for (std::size_t i = 0; i < k; ++i) {
    LatticeVector v(k, Integer(0));
    v[i] = 1;
    rays.push_back(v);
  }
  rays.push_back(last);
  std::vector<IndexSet> cones;
  for (std::size_t skip = k + 1; skip-- > 0;) {
    IndexSet c;
    for (std::size_t i = 0; i <= k; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return fan_from_cones(k, std::move(rays), std::move(cones));
}

CombinatoricsReport verify_yu_combinatorics(const YuFan& y) {
  CombinatoricsReport rep;
  const Fan& fan = y.fan;
  const std::size_t n = y.config.n;
  const Integer& u = y.config.u;

  auto circuit = [&](const std::string& name, const std::vector<std::pair<Integer, std::size_t>>& lhs,
                     const std::vector<std::pair<Integer, std::size_t>>& rhs) {
    ++rep.circuits_checked;
    const LatticeVector a = combination(fan, lhs);
    const LatticeVector b = combination(fan, rhs);
    if (a != b) rep.failures.push_back("circuit " + name + ": " + to_string(a) + " != " + to_string(b));
  };
  auto f_sum = [&](std::initializer_list<std::size_t> skip) {
    std::vector<std::pair<Integer, std::size_t>> t;
    for (auto k : with_fs(y, skip, {})) t.emplace_back(Integer(1), k);
    return t;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const Integer ce = (i + 1 == n) ? u : Integer(1);
    circuit("e + g_" + std::to_string(i + 1), {{ce, y.e}, {1, y.g[i]}}, f_sum({i}));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto rhs = f_sum({i, j});
      rhs.emplace_back((j + 1 == n) ? u + 1 : Integer(2), y.h);
      circuit("g_" + std::to_string(i + 1) + " + g_" + std::to_string(j + 1),
              {{1, y.g[i]}, {1, y.g[j]}}, rhs);
    }

  auto facets = [&](std::size_t cone, const std::string& name, const std::set<IndexSet>& expected) {
    ++rep.facets_checked;
    const auto actual = facet_sets(fan, cone);
    if (actual.size() != 2 * n - 2)
      rep.failures.push_back(name + " has " + std::to_string(actual.size()) + " facets, expected " +
                             std::to_string(2 * n - 2));
    if (actual != expected) {
      std::string msg = name + " facets differ; got";
      for (const auto& s : actual) msg += " " + show(s);
      rep.failures.push_back(msg);
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::set<IndexSet> expected;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      expected.insert(with_fs(y, {i, k}, {y.e}));
      expected.insert(with_fs(y, {i, k}, {y.g[i]}));
    }
    facets(y.sigma[i], sigma_name(i), expected);
  }
  for (const auto& [ij, cone] : y.sigma_pair) {
    const auto [i, j] = ij;
    std::set<IndexSet> expected;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      expected.insert(with_fs(y, {i, j, k}, {y.h, y.g[i]}));
      expected.insert(with_fs(y, {i, j, k}, {y.h, y.g[j]}));
    }
    expected.insert(with_fs(y, {i, j}, {y.g[i]}));
    expected.insert(with_fs(y, {i, j}, {y.g[j]}));
    facets(cone, sigma_name(i, j), expected);
  }

  // Expected intersection of two maximal cones with its dimension.
  struct Entry {
    std::size_t a, b;
    std::string name;
    IndexSet rays;
    std::size_t dim;
  };
  std::vector<Entry> table;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      table.push_back({y.sigma[i], y.sigma[j], sigma_name(i) + " ∩ " + sigma_name(j),
                       with_fs(y, {i, j}, {y.e}), n - 1});
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [jk, cone] : y.sigma_pair) {
      const auto [j, k] = jk;
      Entry ent{y.sigma[i], cone, sigma_name(i) + " ∩ " + sigma_name(j, k), {}, n - 1};
      if (i == j || i == k)
        ent.rays = with_fs(y, {j, k}, {y.g[i]});
      else {
        ent.rays = with_fs(y, {i, j, k}, {});
        ent.dim = n - 3;
      }
      table.push_back(ent);
    }
  for (auto p = y.sigma_pair.begin(); p != y.sigma_pair.end(); ++p)
    for (auto q = std::next(p); q != y.sigma_pair.end(); ++q) {
      const auto [i, j] = p->first;
      const auto [a, b] = q->first;
      Entry ent{p->second, q->second, sigma_name(i, j) + " ∩ " + sigma_name(a, b), {}, n - 1};
      std::set<std::size_t> both{i, j, a, b};
      IndexSet extra{y.h};
      if (both.size() == 3) {
        const std::size_t common = (i == a || i == b) ? i : j;
        extra.push_back(y.g[common]);
      } else {
        ent.dim = n - 3;
      }
      for (std::size_t k = 0; k < n; ++k)
        if (!both.count(k)) extra.push_back(y.f[k]);
      ent.rays = sorted(extra);
      table.push_back(ent);
    }

  for (const auto& ent : table) {
    ++rep.intersections_checked;
    const Cone meet = intersect(fan.cone(ent.a), fan.cone(ent.b));
    const auto idx = fan.ray_indices(meet);
    if (!idx || sorted(*idx) != ent.rays || meet.dim() != ent.dim)
      rep.failures.push_back(ent.name + " = " + (idx ? show(sorted(*idx)) : std::string("<non-fan rays>")) +
                             " of dim " + std::to_string(meet.dim()) + ", expected " + show(ent.rays) +
                             " of dim " + std::to_string(ent.dim));
  }
  return rep;
}

PipelineReport pipeline_report(const Fan& f, std::size_t ray, const Fan* reference) {
  PipelineReport rep;
  rep.ray = ray;
  rep.complete = is_complete(f);
  if (rep.complete) {
    rep.picard = picard_group(f);
    rep.projective = is_projective(f);
  } else {
    rep.notes.push_back("fan is not complete: Picard group and projectivity skipped");
  }
  rep.egyptian = egyptian_report(f, ray);
  rep.divisor_q_cartier = is_q_cartier(f, prime_divisor(f, ray));
  if (!rep.egyptian.verdict) {
    rep.notes.push_back("ray is not in Egyptian position: modification not attempted");
    return rep;
  }

  rep.modification = small_modification(f, ray);
  rep.modification_check = verify_modification(*rep.modification);
  rep.modified_cartier_index =
      cartier_index(rep.modification->fan, prime_divisor(rep.modification->fan, ray));

  Fan quotient = quotient_fan(f, ray);
  if (reference) rep.divisor_fan_iso = fans_isomorphic(quotient, *reference);
  if (!is_complete(quotient)) {
    rep.notes.push_back("quotient fan is not complete: degree not computed");
    return rep;
  }

  std::optional<QuotientDegree> qd;
  for (std::size_t k = 0; k < quotient.ray_count() && !qd; ++k) {
    ToricDivisor d = prime_divisor(quotient, k);
    if (is_cartier(quotient, d) && is_ample(quotient, d))
      qd = QuotientDegree{quotient, d, "prime divisor " + std::to_string(k), {}};
  }
  if (!qd) {
    if (auto w = is_projective(quotient))
      qd = QuotientDegree{quotient, w->divisor, "projectivity witness", {}};
  }
  if (!qd) {
    rep.notes.push_back("quotient fan is not projective: growth not reported");
    return rep;
  }
  qd->ehrhart = polytope_degree(divisor_polytope(quotient, qd->divisor), quotient.ambient_rank());
  rep.growth = chern_growth(f.ambient_rank(), qd->ehrhart.degree);
  rep.degree = std::move(qd);
  return rep;
}

PipelineReport yu_report(const YuConfig& cfg) {
  const YuFan y = yu_fan(cfg);
  const Fan pn = projective_space_fan(cfg.n - 1);
  return pipeline_report(y.fan, y.e, &pn);
}

}  // namespace toricfan
