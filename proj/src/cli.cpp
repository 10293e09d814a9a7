#include "toricfan/cli.hpp"

#include "toricfan/egyptian.hpp"
#include "toricfan/families.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace toricfan::cli {

namespace {

using json = nlohmann::ordered_json;

json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json to_json(const Rational& q) {
  if (q.get_den() == 1) return to_json(Integer(q.get_num()));
  return q.get_str();
}

template <class T>
json to_json(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Integer read_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw ParseError(where + ": expected an integer, got " + j.dump());
}

const json& member(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  return *it;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

struct Options {
  std::string fan;
  std::string divisor;
  std::string emit;
  std::string kind;
  std::optional<std::size_t> ray;
  std::optional<std::size_t> n;
  std::optional<long long> u;
  bool json = false;
};

// Human-readable lines plus the same content as a JSON document.
struct Report {
  json doc;
  std::vector<std::string> lines;

  void say(const std::string& s) { lines.push_back(s); }
};

std::string cone_name(const Fan& f, std::size_t c) {
  std::string s = "cone " + std::to_string(c);
  if (!f.labels().empty() && !f.labels()[c].empty()) s += " (" + f.labels()[c] + ")";
  return s;
}

Fan load_fan(const Options& o, Report& r) {
  if (o.fan.empty()) throw ParseError("--fan is required");
  std::vector<std::string> warnings;
  Fan f = parse_fan_file(read_file(o.fan), &warnings);
  for (const auto& w : warnings) r.say("warning: " + w);
  if (!warnings.empty()) r.doc["warnings"] = warnings;
  return f;
}

std::size_t need_ray(const Options& o, const Fan& f) {
  if (!o.ray) throw ParseError("--ray is required");
  if (*o.ray >= f.ray_count())
    throw ParseError("--ray " + std::to_string(*o.ray) + " out of range (fan has " +
                     std::to_string(f.ray_count()) + " rays)");
  return *o.ray;
}

ToricDivisor load_divisor(const Options& o, const Fan& f) {
  if (o.divisor.empty()) throw ParseError("--divisor is required");
  return parse_divisor_file(read_file(o.divisor), f);
}

json characters_json(const Fan& f, const CartierData& data, Report& r) {
  json out = json::array();
  for (std::size_t c = 0; c < data.characters.size(); ++c) {
    r.say("  m[" + cone_name(f, c) + "] = " + to_string(data.characters[c]));
    out.push_back(to_json(data.characters[c]));
  }
  return out;
}

int cmd_validate(const Options& o, Report& r) {
  Fan f;
  try {
    f = load_fan(o, r);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    r.doc["valid"] = false;
    r.doc["error"] = e.what();
    r.say(std::string("invalid fan: ") + e.what());
    return kFails;
  }
  const bool complete = is_complete(f);
  r.doc["valid"] = true;
  r.doc["dim"] = f.ambient_rank();
  r.doc["rays"] = f.ray_count();
  r.doc["max_cones"] = f.cone_count();
  r.doc["complete"] = complete;
  r.say("valid fan in dimension " + std::to_string(f.ambient_rank()) + ": " +
        std::to_string(f.ray_count()) + " rays, " + std::to_string(f.cone_count()) +
        " maximal cones, " + (complete ? "complete" : "not complete"));
  return kHolds;
}

int cmd_complete(const Options& o, Report& r) {
  const Fan f = load_fan(o, r);
  const bool complete = is_complete(f);
  r.doc["complete"] = complete;
  r.say(complete ? "complete" : "not complete");
  return complete ? kHolds : kFails;
}

int cmd_cartier(const Options& o, Report& r) {
  const Fan f = load_fan(o, r);
  const ToricDivisor d = load_divisor(o, f);
  if (auto data = cartier_data(f, d, SolveMode::integral)) {
    r.doc["cartier"] = true;
    r.doc["q_cartier"] = true;
    r.say("Cartier");
    r.doc["characters"] = characters_json(f, *data, r);
    return kHolds;
  }
  r.doc["cartier"] = false;
  if (auto data = cartier_data(f, d, SolveMode::rational)) {
    r.doc["q_cartier"] = true;
    r.say("not Cartier, but Q-Cartier");
    r.doc["characters"] = characters_json(f, *data, r);
  } else {
    r.doc["q_cartier"] = false;
    r.say("not Q-Cartier");
  }
  return kFails;
}

int cmd_index(const Options& o, Report& r) {
  const Fan f = load_fan(o, r);
  const ToricDivisor d = load_divisor(o, f);
  const auto idx = cartier_index(f, d);
  r.doc["q_cartier"] = idx.has_value();
  if (!idx) {
    r.doc["index"] = nullptr;
    r.say("not Q-Cartier");
    return kFails;
  }
  r.doc["index"] = to_json(*idx);
  r.say("Cartier index " + idx->get_str());
  return kHolds;
}

json group_json(const FGAbelianGroup& g) {
  json j;
  j["rank"] = g.rank;
  j["invariant_factors"] = to_json(g.invariant_factors);
  j["trivial"] = g.trivial();
  j["group"] = g.to_string();
  return j;
}

int cmd_picard(const Options& o, Report& r) {
  const Fan f = load_fan(o, r);
  const FGAbelianGroup g = picard_group(f);
  r.doc["picard"] = group_json(g);
  r.say(g.trivial() ? "Pic trivial" : "Pic = " + g.to_string());
  return kHolds;
}

int cmd_classgroup(const Options& o, Report& r) {
  const Fan f = load_fan(o, r);
  const FGAbelianGroup g = class_group(f);
  r.doc["class_group"] = group_json(g);
  r.say("Cl = " + g.to_string());
  return kHolds;
}

int cmd_projective(const Options& o, Report& r) {
  const Fan f = load_fan(o, r);
  const auto w = is_projective(f);
  r.doc["projective"] = w ? "Feasible" : "Infeasible";
  if (!w) {
    r.say("Infeasible: no strictly convex support function");
    return kFails;
  }
  r.say("Feasible: ample divisor " + to_string(w->divisor.coefficients));
  r.doc["ample_divisor"] = to_json(w->divisor.coefficients);
  r.doc["characters"] = characters_json(f, w->data, r);
  return kHolds;
}

json classification_json(const Fan& f, std::size_t c, const PyramidalClassification& cls,
                         Report& r) {
  json j;
  j["cone"] = c;
  if (!f.labels().empty()) j["label"] = f.labels()[c];
  j["kind"] = to_string(cls.kind);
  j["sigma_prime_dim"] = cls.sigma_prime.dim();
  std::string line = "  " + cone_name(f, c) + ": " + to_string(cls.kind);
  if (cls.kind != PyramidalKind::LowDim) {
    json pos = json::array();
    for (const auto& p : cls.positions)
      pos.push_back({{"normal", to_json(p.normal)}, {"position", to_string(p.position)}});
    j["facet_positions"] = pos;
    line += " (beyond " + std::to_string(cls.count(Position::Beyond)) + ", beneath " +
            std::to_string(cls.count(Position::Beneath)) + ", on hyperplane " +
            std::to_string(cls.count(Position::OnHyperplane)) + ")";
  }
  if (cls.eta) {
    const auto idx = f.ray_indices(*cls.eta);
    if (idx) j["eta"] = *idx;
    line += ", eta = " + (idx ? join(*idx) : std::string("?"));
  }
  r.say(line);
  return j;
}

json egyptian_json(const Fan& f, const EgyptianReport& rep, Report& r) {
  json j;
  j["ray"] = rep.ray;
  j["verdict"] = rep.verdict;
  json per = json::array();
  for (const auto& [c, cls] : rep.per_cone) per.push_back(classification_json(f, c, cls, r));
  j["per_cone"] = per;
  r.say(rep.verdict ? "ray " + std::to_string(rep.ray) + " is in Egyptian position"
                    : "ray " + std::to_string(rep.ray) + " is not in Egyptian position");
  return j;
}

int cmd_egyptian(const Options& o, Report& r) {
  const Fan f = load_fan(o, r);
  const std::size_t ray = need_ray(o, f);
  const EgyptianReport rep = egyptian_report(f, ray);
  r.doc["egyptian"] = egyptian_json(f, rep, r);
  return rep.verdict ? kHolds : kFails;
}

json modification_json(const ModificationResult& m, const ModificationCheck& check, Report& r) {
  json j;
  json splits = json::array();
  for (const auto& [c, pieces] : m.split_cones) {
    splits.push_back({{"cone", c}, {"sigma_prime", pieces.first}, {"sigma_double_prime", pieces.second}});
    r.say("  split " + cone_name(m.original, c) + " into cones " + std::to_string(pieces.first) +
          " and " + std::to_string(pieces.second));
  }
  j["split_cones"] = splits;
  j["exceptional_walls"] = m.exceptional_walls;
  j["max_cones"] = m.fan.cone_count();
  j["complete"] = is_complete(m.fan);
  j["checks"] = {{"walls_projective", check.walls_projective},
                 {"orbit_points", check.orbit_points},
                 {"divisor_isomorphic", check.divisor_isomorphic}};
  j["exceptional_curves"] = check.exceptional_curves;
  j["failures"] = check.failures;
  r.say("modified fan: " + std::to_string(m.fan.cone_count()) + " maximal cones, " +
        std::to_string(check.exceptional_curves) + " exceptional P^1");
  r.say(std::string("  exceptional walls projective: ") + (check.walls_projective ? "yes" : "no"));
  r.say(std::string("  eta + rho maximal: ") + (check.orbit_points ? "yes" : "no"));
  r.say(std::string("  quotient fan unchanged: ") + (check.divisor_isomorphic ? "yes" : "no"));
  for (const auto& s : check.failures) r.say("  failure: " + s);
  return j;
}

void emit_to(const std::string& path, const Fan& f, Report& r) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << emit_fan_file(f);
  r.doc["emitted"] = path;
  r.say("wrote " + path);
}

int cmd_modify(const Options& o, Report& r) {
  const Fan f = load_fan(o, r);
  const std::size_t ray = need_ray(o, f);
  const EgyptianReport rep = egyptian_report(f, ray);
  if (!rep.verdict) {
    r.doc["egyptian"] = egyptian_json(f, rep, r);
    r.doc["modification"] = nullptr;
    return kFails;
  }
  const ModificationResult m = small_modification(f, ray);
  const ModificationCheck check = verify_modification(m);
  r.doc["modification"] = modification_json(m, check, r);
  if (!o.emit.empty()) emit_to(o.emit, m.fan, r);
  return check.passed() ? kHolds : kInvariantViolation;
}

json ehrhart_json(const EhrhartResult& e, Report& r) {
  json j;
  j["counts"] = to_json(e.counts);
  j["ehrhart"] = e.ehrhart.to_string();
  j["ehrhart_coefficients"] = to_json(e.ehrhart.coefficients);
  j["degree"] = to_json(e.degree);
  std::string counts;
  for (std::size_t t = 0; t < e.counts.size(); ++t)
    counts += (t ? ", " : "") + e.counts[t].get_str();
  r.say("  lattice points of tP, t = 0.." + std::to_string(e.counts.size() - 1) + ": " + counts);
  r.say("  Ehrhart polynomial " + e.ehrhart.to_string());
  r.say("  degree " + e.degree.get_str());
  return j;
}

int cmd_degree(const Options& o, Report& r) {
  const Fan f = load_fan(o, r);
  const ToricDivisor d = load_divisor(o, f);
  const Polytope p = divisor_polytope(f, d);
  json verts = json::array();
  for (const auto& v : p.vertices) verts.push_back(to_json(v));
  r.doc["vertices"] = verts;
  r.say("polytope with " + std::to_string(p.vertices.size()) + " vertices");
  r.doc["ehrhart"] = ehrhart_json(polytope_degree(p, f.ambient_rank()), r);
  return kHolds;
}

int cmd_family(const Options& o, Report& r) {
  if (o.kind != "yu") throw ParseError("unknown family " + o.kind);
  if (!o.n || !o.u) throw ParseError("family yu needs --n and --u");
  const YuFan y = yu_fan(YuConfig{*o.n, Integer(std::to_string(*o.u))});
  const CombinatoricsReport comb = verify_yu_combinatorics(y);
  r.doc["family"] = "yu";
  r.doc["n"] = *o.n;
  r.doc["u"] = *o.u;
  r.doc["rays"] = y.fan.ray_count();
  r.doc["max_cones"] = y.fan.cone_count();
  r.doc["combinatorics"] = {{"circuits", comb.circuits_checked},
                            {"facets", comb.facets_checked},
                            {"intersections", comb.intersections_checked},
                            {"failures", comb.failures}};
  r.say("Y_u with n = " + std::to_string(*o.n) + ", u = " + std::to_string(*o.u) + ": " +
        std::to_string(y.fan.ray_count()) + " rays, " + std::to_string(y.fan.cone_count()) +
        " maximal cones");
  r.say("  circuits " + std::to_string(comb.circuits_checked) + ", facet lists " +
        std::to_string(comb.facets_checked) + ", intersections " +
        std::to_string(comb.intersections_checked) + (comb.passed() ? ": all match" : ": MISMATCH"));
  for (const auto& s : comb.failures) r.say("  failure: " + s);
  if (!o.emit.empty()) emit_to(o.emit, y.fan, r);
  return comb.passed() ? kHolds : kInvariantViolation;
}

int cmd_report(const Options& o, Report& r) {
  std::optional<Fan> fan;
  std::optional<Fan> reference;
  std::size_t ray = 0;
  if (!o.fan.empty()) {
    fan = load_fan(o, r);
    ray = need_ray(o, *fan);
  } else if (o.n && o.u) {
    const YuFan y = yu_fan(YuConfig{*o.n, Integer(std::to_string(*o.u))});
    fan = y.fan;
    ray = y.e;
    reference = projective_space_fan(*o.n - 1);
    r.doc["family"] = {{"name", "yu"}, {"n", *o.n}, {"u", *o.u}};
    r.say("Y_u with n = " + std::to_string(*o.n) + ", u = " + std::to_string(*o.u) + ", ray e");
  } else {
    throw ParseError("report needs --fan and --ray, or --n and --u");
  }
  const PipelineReport p = pipeline_report(*fan, ray, reference ? &*reference : nullptr);

  r.doc["complete"] = p.complete;
  if (p.picard) {
    r.doc["picard"] = group_json(*p.picard);
    r.say(p.picard->trivial() ? "Pic trivial" : "Pic = " + p.picard->to_string());
  }
  if (p.complete) {
    r.doc["projective"] = p.projective ? "Feasible" : "Infeasible";
    r.say(std::string("projective: ") + (p.projective ? "Feasible" : "Infeasible"));
    if (p.projective) r.doc["ample_divisor"] = to_json(p.projective->divisor.coefficients);
  }
  r.doc["divisor_q_cartier"] = p.divisor_q_cartier;
  r.say(std::string("D_rho Q-Cartier on the input fan: ") + (p.divisor_q_cartier ? "yes" : "no"));
  r.doc["egyptian"] = egyptian_json(*fan, p.egyptian, r);
  for (const auto& s : p.notes) r.say("note: " + s);
  r.doc["notes"] = p.notes;
  if (!p.egyptian.verdict) return kFails;

  r.doc["modification"] = modification_json(*p.modification, *p.modification_check, r);
  r.doc["modified_cartier_index"] =
      p.modified_cartier_index ? to_json(*p.modified_cartier_index) : json(nullptr);
  r.say("Cartier index of D_rho on the modified fan: " +
        (p.modified_cartier_index ? p.modified_cartier_index->get_str() : std::string("none")));
  if (reference) {
    r.doc["divisor_fan_iso"] = p.divisor_fan_iso.has_value();
    r.say(std::string("quotient fan isomorphic to P^") + std::to_string(*o.n - 1) + ": " +
          (p.divisor_fan_iso ? "yes" : "no"));
    if (p.divisor_fan_iso) {
      json m = json::array();
      for (std::size_t i = 0; i < p.divisor_fan_iso->map.rows(); ++i)
        m.push_back(to_json(p.divisor_fan_iso->map.row(i)));
      r.doc["divisor_fan_map"] = m;
    }
  }
  if (p.degree) {
    r.say("quotient divisor: " + p.degree->choice + ", coefficients " +
          to_string(p.degree->divisor.coefficients));
    json d = ehrhart_json(p.degree->ehrhart, r);
    d["choice"] = p.degree->choice;
    d["divisor"] = to_json(p.degree->divisor.coefficients);
    r.doc["degree"] = d;
  }
  if (p.growth) {
    r.doc["growth"] = {{"statement", p.growth->statement},
                       {"degree", to_json(p.growth->degree)},
                       {"lower_order", p.growth->lower_order}};
    r.say("growth: " + p.growth->statement);
    r.say("  " + p.growth->lower_order);
  }
  if (!p.modification_check->passed()) return kInvariantViolation;
  return p.growth ? kHolds : kFails;
}

}  // namespace

Fan parse_fan_file(const std::string& text, std::vector<std::string>* warnings) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("fan file: expected a JSON object");
  const json& dim_j = member(doc, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1)
    throw ParseError("dim: expected a positive integer, got " + dim_j.dump());
  const auto n = static_cast<std::size_t>(dim_j.get<long long>());

  const json& rays_j = member(doc, "rays");
  if (!rays_j.is_array()) throw ParseError("rays: expected an array");
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < rays_j.size(); ++i) {
    const std::string where = "rays[" + std::to_string(i) + "]";
    const json& rj = rays_j[i];
    if (!rj.is_array() || rj.size() != n)
      throw ParseError(where + ": expected " + std::to_string(n) + " integers");
    LatticeVector v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(read_integer(rj[k], where + "[" + std::to_string(k) + "]"));
    if (is_zero(v)) throw ParseError(where + ": zero ray");
    LatticeVector p = primitive(v);
    if (p != v && warnings)
      warnings->push_back(where + " " + to_string(v) + " primitivized to " + to_string(p));
    for (std::size_t j = 0; j < rays.size(); ++j)
      if (rays[j] == p)
        throw ParseError(where + ": duplicate of rays[" + std::to_string(j) + "] " + to_string(p));
    rays.push_back(std::move(p));
  }

  const json& cones_j = member(doc, "max_cones");
  if (!cones_j.is_array()) throw ParseError("max_cones: expected an array");
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t c = 0; c < cones_j.size(); ++c) {
    const std::string where = "max_cones[" + std::to_string(c) + "]";
    if (!cones_j[c].is_array()) throw ParseError(where + ": expected an array of ray indices");
    std::vector<std::size_t> idx;
    for (const auto& x : cones_j[c]) {
      if (!x.is_number_integer() || x.get<long long>() < 0 ||
          static_cast<std::size_t>(x.get<long long>()) >= rays.size())
        throw ParseError(where + ": ray index " + x.dump() + " out of range");
      idx.push_back(static_cast<std::size_t>(x.get<long long>()));
    }
    cones.push_back(std::move(idx));
  }

  std::vector<std::string> labels;
  if (auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_array() || it->size() != cones.size())
      throw ParseError("labels: expected one string per maximal cone");
    for (const auto& l : *it) {
      if (!l.is_string()) throw ParseError("labels: expected strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return fan_from_cones(n, std::move(rays), std::move(cones), std::move(labels));
}

ToricDivisor parse_divisor_file(const std::string& text, const Fan& f) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("divisor file: expected a JSON object");
  const json& cj = member(doc, "coefficients");
  if (!cj.is_array()) throw ParseError("coefficients: expected an array");
  if (cj.size() != f.ray_count())
    throw ParseError("coefficients: expected " + std::to_string(f.ray_count()) + " entries, got " +
                     std::to_string(cj.size()));
  ToricDivisor d;
  for (std::size_t i = 0; i < cj.size(); ++i)
    d.coefficients.push_back(read_integer(cj[i], "coefficients[" + std::to_string(i) + "]"));
  return d;
}

std::string emit_fan_file(const Fan& f) {
  // One ray or cone per line keeps fixture diffs readable.
  std::ostringstream out;
  out << "{\n  \"dim\": " << f.ambient_rank() << ",\n  \"rays\": [";
  for (std::size_t i = 0; i < f.ray_count(); ++i)
    out << (i ? ",\n    " : "\n    ") << to_json(f.rays()[i]).dump();
  out << "\n  ],\n  \"max_cones\": [";
  for (std::size_t c = 0; c < f.cone_count(); ++c)
    out << (c ? ",\n    " : "\n    ") << json(f.max_cones()[c]).dump();
  out << "\n  ]";
  if (!f.labels().empty()) out << ",\n  \"labels\": " << json(f.labels()).dump();
  out << "\n}\n";
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Toric fans, divisors, Egyptian position and small modifications", "toricfan"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Print the report as JSON");

  auto fan_opt = [&](CLI::App* s) { s->add_option("--fan", o.fan, "Fan file (JSON)"); };
  auto div_opt = [&](CLI::App* s) { s->add_option("--divisor", o.divisor, "Divisor file (JSON)"); };
  auto ray_opt = [&](CLI::App* s) { s->add_option("--ray", o.ray, "Ray index"); };
  auto nu_opt = [&](CLI::App* s) {
    s->add_option("--n", o.n, "Dimension n >= 3");
    s->add_option("--u", o.u, "Parameter u >= 1");
  };

  using Handler = int (*)(const Options&, Report&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto sub = [&](const char* name, const char* help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    commands.emplace_back(s, h);
    return s;
  };
  fan_opt(sub("validate", "Check the fan axioms", cmd_validate));
  fan_opt(sub("complete", "Decide completeness", cmd_complete));
  for (auto [name, help, h] : {std::tuple{"cartier", "Cartier data of a divisor", cmd_cartier},
                               std::tuple{"index", "Cartier index of a divisor", cmd_index},
                               std::tuple{"degree", "Ehrhart polynomial and degree of the divisor polytope",
                                          cmd_degree}}) {
    CLI::App* s = sub(name, help, h);
    fan_opt(s);
    div_opt(s);
  }
  fan_opt(sub("picard", "Picard group of a complete fan", cmd_picard));
  fan_opt(sub("classgroup", "Class group", cmd_classgroup));
  fan_opt(sub("projective", "Search for an ample divisor", cmd_projective));
  for (auto [name, help, h] : {std::tuple{"egyptian", "Egyptian position of a ray", cmd_egyptian},
                               std::tuple{"modify", "Small modification at a ray", cmd_modify}}) {
    CLI::App* s = sub(name, help, h);
    fan_opt(s);
    ray_opt(s);
    if (h == cmd_modify) s->add_option("--emit", o.emit, "Write the modified fan here");
  }
  CLI::App* fam = sub("family", "Generate a fan of a named family", cmd_family);
  fam->add_option("kind", o.kind, "Family name (yu)")->required();
  nu_opt(fam);
  fam->add_option("--emit", o.emit, "Write the fan file here");
  CLI::App* rep = sub("report", "Full pipeline for a ray: Egyptian check, modification, degree, growth",
                      cmd_report);
  fan_opt(rep);
  ray_opt(rep);
  nu_opt(rep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kHolds : kInputError;
  }

  Report r;
  for (const auto& [s, h] : commands)
    if (s->parsed()) r.doc["command"] = s->get_name();
  r.doc["args"] = args;
  const auto start = std::chrono::steady_clock::now();
  int code = kHolds;
  std::string status;
  try {
    for (const auto& [s, h] : commands)
      if (s->parsed()) code = h(o, r);
  } catch (const InvariantViolation& e) {
    code = kInvariantViolation;
    status = std::string("invariant violation: ") + e.what();
  } catch (const Error& e) {
    code = kInputError;
    status = std::string("input error: ") + e.what();
  }
  r.doc["exit_code"] = code;
  if (!status.empty()) r.doc["error"] = status;
  r.doc["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (o.json) {
    out << r.doc.dump(2) << "\n";
  } else {
    for (const auto& l : r.lines) out << l << "\n";
    if (!status.empty()) err << "toricfan: " << status << "\n";
  }
  return code;
}

}  // namespace toricfan::cli
