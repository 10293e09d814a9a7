// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include "suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace toricfan;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  bool ok = true;
  double worst = 0;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
  void timed(double limit, const std::string& what, const std::function<void()>& body) {
    const auto t0 = Clock::now();
    body();
    const double s = seconds_since(t0);
    worst = std::max(worst, s);
    require(s <= limit, what + " took " + std::to_string(s) + " s");
  }
};

const std::size_t kNs[] = {3, 4, 5};

std::string tag(std::size_t n, long u) { return "n=" + std::to_string(n) + " u=" + std::to_string(u) + ": "; }

void trivial_picard(Criterion& c) {
  for (auto n : kNs)
    for (long u : {2L, 3L}) {
      const Fan f = yu_fan(YuConfig{n, u}).fan;
      c.timed(1.0, tag(n, u) + "Picard", [&] { c.require(picard_group(f).trivial(), tag(n, u) + "Pic not trivial"); });
    }
}

void projectivity(Criterion& c) {
  for (auto n : kNs)
    for (long u = 1; u <= 3; ++u) {
      const Fan f = yu_fan(YuConfig{n, u}).fan;
      c.timed(2.0, tag(n, u) + "projectivity", [&] {
        const auto w = is_projective(f);
        if (u == 1)
          c.require(w && is_ample(f, w->divisor), tag(n, u) + "no ample witness");
        else
          c.require(!w, tag(n, u) + "unexpected ample divisor");
      });
    }
}

void egyptian_and_quotient(Criterion& c) {
  for (auto n : kNs)
    for (long u = 1; u <= 3; ++u) {
      const YuFan y = yu_fan(YuConfig{n, u});
      c.timed(2.0, tag(n, u) + "Egyptian check", [&] {
        c.require(egyptian_report(y.fan, y.e).verdict, tag(n, u) + "not Egyptian");
        c.require(fans_isomorphic(quotient_fan(y.fan, y.e), projective_space_fan(n - 1)).has_value(),
                  tag(n, u) + "quotient not P^(n-1)");
      });
    }
}

void modification(Criterion& c) {
  for (auto n : kNs)
    for (long u = 1; u <= 3; ++u) {
      const YuFan y = yu_fan(YuConfig{n, u});
      c.timed(2.0, tag(n, u) + "modification", [&] {
        const ModificationResult m = small_modification(y.fan, y.e);
        c.require(m.fan.cone_count() == 2 * n + n * (n - 1) / 2, tag(n, u) + "cone count");
        c.require(m.exceptional_walls.size() == n, tag(n, u) + "wall count");
        c.require(is_complete(m.fan), tag(n, u) + "modified fan not complete");
        c.require(verify_modification(m).passed(), tag(n, u) + "verification failed");
      });
    }
}

void cartier_after_modification(Criterion& c) {
  for (auto n : kNs)
    for (long u = 1; u <= 3; ++u) {
      const YuFan y = yu_fan(YuConfig{n, u});
      c.require(!is_q_cartier(y.fan, prime_divisor(y.fan, y.e)), tag(n, u) + "D_e already Q-Cartier");
      const ModificationResult m = small_modification(y.fan, y.e);
      const auto idx = cartier_index(m.fan, prime_divisor(m.fan, y.e));
      c.require(idx && *idx == 1, tag(n, u) + "index differs from the regression value 1");
    }
}

void three_dim(Criterion& c) {
  c.timed(5.0, "500 cones", [&] {
    const auto res = suites::three_dim_suite(0x3D, 500);
    c.require(res.ok() && res.cases == 500, "3-d suite: " + res.first_failure);
  });
}

void chern_pipeline(Criterion& c) {
  const PipelineReport r = yu_report(YuConfig{3, 2});
  c.require(r.degree.has_value(), "no degree");
  if (r.degree) {
    c.require(r.degree->ehrhart.degree == 1, "degree is not 1");
    c.require(r.degree->ehrhart.counts == std::vector<Integer>{1, 3, 6}, "lattice counts differ");
  }
  c.require(r.growth && r.growth->statement == "c₃(E_t) = t² + O(t)", "growth statement differs");
}

void linear_algebra(Criterion& c) {
  const std::pair<const char*, suites::SuiteResult> runs[] = {
      {"strict feasibility", suites::strict_feasible_suite(1, 200)},
      {"integral solve", suites::integral_solve_suite(2, 200)},
      {"SNF minors", suites::snf_minors_suite(3, 100)},
      {"facet round trip", suites::facet_roundtrip_suite()},
  };
  for (const auto& [name, res] : runs) c.require(res.ok(), std::string(name) + ": " + res.first_failure);
}

void combinatorics(Criterion& c) {
  for (auto n : kNs)
    for (long u = 1; u <= 3; ++u) {
      const auto rep = verify_yu_combinatorics(yu_fan(YuConfig{n, u}));
      c.require(rep.passed(), tag(n, u) + (rep.failures.empty() ? "" : rep.failures.front()));
    }
}

}  // namespace

int main() {
  const std::pair<const char*, void (*)(Criterion&)> criteria[] = {
      {"Pic(Y_u) trivial for u > 1", trivial_picard},
      {"Y_1 projective, Y_u not projective for u > 1", projectivity},
      {"ray e in Egyptian position, quotient fan is P^(n-1)", egyptian_and_quotient},
      {"small modification verified", modification},
      {"D_e Cartier after modification", cartier_after_modification},
      {"3-dimensional cones never NotPyramidal", three_dim},
      {"degree and Chern growth for n = 3, u = 2", chern_pipeline},
      {"exact linear algebra against oracles", linear_algebra},
      {"Y_u combinatorics tables", combinatorics},
  };
  int failed = 0;
  int i = 0;
  for (const auto& [name, fn] : criteria) {
    ++i;
    Criterion c;
    const auto t0 = Clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double s = seconds_since(t0);
    std::printf("%s %d %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", i, name, s, c.ok ? "" : ": ",
                c.detail.str().c_str());
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
