// The fans Delta_u of the varieties Y_u (trivial Picard group for u > 1) and
// the end-to-end pipeline: Egyptian check, small modification, quotient fan
// of the divisor, its degree and the resulting Chern-number growth.
#pragma once

#include "toricfan/divisor.hpp"
#include "toricfan/egyptian.hpp"
#include "toricfan/fan.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toricfan {

struct YuConfig {
  std::size_t n = 3;
  Integer u = 1;
};

/// Ray order: e (0), f_1..f_n (1..n), g_1..g_n (n+1..2n), h (2n+1).
/// Maximal cones: sigma_1..sigma_n, then sigma_ij for i < j in lexicographic
/// order. Vectors below use 0-based positions, so f[i] is f_{i+1}.
struct YuFan {
  YuConfig config;
  Fan fan;
  std::size_t e = 0;
  std::size_t h = 0;
  std::vector<std::size_t> f;
  std::vector<std::size_t> g;
  /// Cone index of sigma_{i+1}.
  std::vector<std::size_t> sigma;
  /// Cone index of sigma_{i+1,j+1} keyed by (i, j), i < j.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> sigma_pair;
};

/// Throws Error unless n >= 3 and u >= 1.
YuFan yu_fan(const YuConfig& cfg);

/// Rays e_1..e_k and -(e_1 + ... + e_k); every k of them span a maximal cone.
Fan projective_space_fan(std::size_t k);

struct CombinatoricsReport {
  std::size_t circuits_checked = 0;
  std::size_t facets_checked = 0;
  std::size_t intersections_checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Circuit relations among the generators, the 2n-2 facets of every maximal
/// cone, and the table of pairwise intersections (codimension one and three),
/// all by exact comparison of ray sets.
CombinatoricsReport verify_yu_combinatorics(const YuFan& y);

struct QuotientDegree {
  Fan quotient;
  /// Divisor on the quotient fan used for the degree.
  ToricDivisor divisor;
  /// "prime divisor <k>" when a single quotient ray is ample, else "projectivity witness".
  std::string choice;
  EhrhartResult ehrhart;
};

struct PipelineReport {
  std::size_t ray = 0;
  bool complete = false;
  std::optional<FGAbelianGroup> picard;
  std::optional<AmpleWitness> projective;
  EgyptianReport egyptian;
  /// D_ray on the input fan.
  bool divisor_q_cartier = false;
  std::optional<ModificationResult> modification;
  std::optional<ModificationCheck> modification_check;
  std::optional<Integer> modified_cartier_index;
  std::optional<FanIsomorphism> divisor_fan_iso;
  std::optional<QuotientDegree> degree;
  std::optional<GrowthReport> growth;
  std::vector<std::string> notes;
};

/// Runs the pipeline for a ray of an arbitrary fan. Stops after the Egyptian
/// check when it fails. When `reference` is given the quotient fan is matched
/// against it. Growth is reported only if the ray is in Egyptian position and
/// the quotient fan is projective.
PipelineReport pipeline_report(const Fan& f, std::size_t ray, const Fan* reference = nullptr);

/// pipeline_report for ray e of Delta_u with reference fan P^{n-1}.
PipelineReport yu_report(const YuConfig& cfg);

}  // namespace toricfan
