#pragma once

// Body spec files, grid specs, report serialization (JSON and CSV).
//
// Infinite values are written as the string "inf" in JSON and as "inf" in CSV.
// Numbers go through nlohmann's shortest round-trip formatting (JSON) and
// std::to_chars (CSV), so output does not depend on the process locale.

#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "starbody/convergence.hpp"

namespace starbody::io {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- extended reals ----

inline json xreal_to_json(XReal v) {
  if (xreal::is_inf(v)) return "inf";
  return v;
}

inline XReal xreal_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
    throw ParseError("expected a number or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw ParseError("expected a number or \"inf\"");
  const double v = j.get<double>();
  if (!xreal::is_valid(v)) throw ParseError("radial values must lie in [0, inf]");
  return v;
}

inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ---- grid spec ----

struct GridRequest {
  int count = 0;  // 0: default for the dimension
  std::uint64_t seed = 0;
  bool symmetric = true;
};

inline GridRequest grid_request_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("grid spec must be an object");
  GridRequest g;
  g.count = j.value("count", 0);
  g.seed = j.value("seed", std::uint64_t{0});
  g.symmetric = j.value("symmetric", true);
  return g;
}

/// Default count, overridden by STARBODY_GRID_COUNT when set.
inline int default_count(int d) {
  if (const char* env = std::getenv("STARBODY_GRID_COUNT")) {
    int v = 0;
    const std::string s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v < 4)
      throw ParseError("STARBODY_GRID_COUNT must be an integer >= 4");
    return v;
  }
  return default_grid_count(d);
}

inline SphereGrid build_grid(int d, const GridRequest& req) {
  int count = req.count > 0 ? req.count : default_count(d);
  if (req.symmetric && count % 2) ++count;
  return make_grid(d, count, req.seed, req.symmetric);
}

inline json grid_to_json(const SphereGrid& g, double lipschitz = 1.0) {
  return {{"dimension", g.dimension()}, {"count", g.size()},      {"seed", g.seed()},
          {"symmetric", g.symmetric()}, {"resolution", g.resolution()}, {"eps_g", lipschitz * g.resolution()}};
}

// ---- body specs ----

/// Parsed body file. Convex seeds keep their seed so flower/polar can use it.
struct BodySpec {
  int dim = 2;
  std::string kind;
  std::string name;
  StarBody body{2, RadialProfile::constant(0.0)};
  std::optional<ConvexSeed> seed;
};

inline const std::vector<std::string>& body_kinds() {
  static const std::vector<std::string> k = {"closed_form", "sampled", "convex_seed"};
  return k;
}

inline const std::vector<std::string>& closed_form_names() {
  static const std::vector<std::string> k = {
      "ball",     "origin",  "whole_space",        "segment",         "symmetric_segment", "ray",
      "closed_halfspace",    "open_halfspace_with_origin",            "moszynska_cone",    "en_spike",
      "xn_power", "truncated_parabola", "rotating_segment", "tilting_halfspace", "halfspace_limit"};
  return k;
}

inline const std::vector<std::string>& convex_seed_names() {
  static const std::vector<std::string> k = {"ball", "segment", "ray", "polygon", "square", "strip", "wedge", "vrep"};
  return k;
}

namespace detail {

inline std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

inline Point point_from_json(const json& j, int d, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array of numbers");
  if (static_cast<int>(j.size()) != d)
    throw DimensionMismatch(what + " has " + std::to_string(j.size()) + " coordinates, expected " + std::to_string(d));
  Point p(d);
  for (int i = 0; i < d; ++i) {
    if (!j[i].is_number()) throw ParseError(what + " must contain numbers only");
    p[i] = j[i].get<double>();
  }
  return p;
}

inline std::vector<Point> points_from_json(const json& j, int d, const std::string& what) {
  std::vector<Point> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw ParseError(what + " must be an array of points");
  for (const auto& p : j) out.push_back(point_from_json(p, d, what));
  return out;
}

inline const json& require(const json& params, const char* key, const std::string& name) {
  if (!params.contains(key)) throw ParseError("'" + name + "' needs params." + key);
  return params.at(key);
}

inline double number(const json& params, const char* key, const std::string& name) {
  const auto& v = require(params, key, name);
  if (!v.is_number()) throw ParseError("params." + std::string(key) + " must be a number");
  return v.get<double>();
}

inline int index(const json& params, const std::string& name) {
  const auto& v = require(params, "n", name);
  if (!v.is_number_integer() || v.get<int>() < 1) throw ParseError("params.n must be an integer >= 1");
  return v.get<int>();
}

inline StarBody closed_form_body(int d, const std::string& name, const json& p) {
  if (name == "ball") return bodies::ball(d, p.contains("r") ? number(p, "r", name) : 1.0);
  if (name == "origin") return bodies::origin(d);
  if (name == "whole_space") return bodies::whole_space(d);
  if (name == "segment") return bodies::segment(point_from_json(require(p, "x", name), d, "params.x"));
  if (name == "symmetric_segment")
    return bodies::symmetric_segment(point_from_json(require(p, "x", name), d, "params.x"));
  if (name == "ray") return bodies::ray(point_from_json(require(p, "u", name), d, "params.u"));
  if (name == "closed_halfspace") return bodies::closed_halfspace(point_from_json(require(p, "u", name), d, "params.u"));
  if (name == "open_halfspace_with_origin")
    return bodies::open_halfspace_with_origin(point_from_json(require(p, "u", name), d, "params.u"));
  if (name == "moszynska_cone") return shapes::moszynska_cone(d, index(p, name));
  if (name == "en_spike") return shapes::en_spike(d, index(p, name));
  if (name == "xn_power") return shapes::xn_power(d, index(p, name));
  if (name == "truncated_parabola") {
    if (d != 2) throw DimensionMismatch("truncated_parabola is planar (dim 2)");
    return shapes::truncated_parabola(index(p, name));
  }
  if (name == "rotating_segment") return corpus("rotating_segments", d)(index(p, name));
  if (name == "tilting_halfspace") return corpus("tilting_halfspaces", d)(index(p, name));
  if (name == "halfspace_limit") return shapes::tilting_halfspace_limit(d);
  throw ParseError("unknown closed_form name '" + name + "'; valid names: " + join(closed_form_names()));
}

inline ConvexSeed convex_seed(int d, const std::string& name, const json& p) {
  if (name == "ball") return seeds::ball(d, p.contains("r") ? number(p, "r", name) : 1.0);
  if (name == "segment") return seeds::segment(point_from_json(require(p, "x", name), d, "params.x"));
  if (name == "ray") return seeds::ray(point_from_json(require(p, "u", name), d, "params.u"));
  if (name == "polygon") {
    if (d != 2) throw DimensionMismatch("polygon is planar (dim 2)");
    return seeds::polygon(points_from_json(require(p, "vertices", name), d, "params.vertices"));
  }
  if (name == "square") {
    if (d != 2) throw DimensionMismatch("square is planar (dim 2)");
    return seeds::square(p.contains("s") ? number(p, "s", name) : 1.0);
  }
  if (name == "strip") return seeds::embedded_strip(d);
  if (name == "wedge") return seeds::wedge(index(p, name), d);
  if (name == "vrep")
    return seeds::vrep(d, points_from_json(p.value("points", json::array()), d, "params.points"),
                       points_from_json(p.value("rays", json::array()), d, "params.rays"));
  throw ParseError("unknown convex_seed name '" + name + "'; valid names: " + join(convex_seed_names()));
}

}  // namespace detail

inline BodySpec body_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("body spec must be a JSON object");
  for (const char* key : {"dim", "kind"})
    if (!j.contains(key)) throw ParseError(std::string("body spec is missing '") + key + "'");
  if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() < 2) throw ParseError("'dim' must be an integer >= 2");
  if (!j.at("kind").is_string()) throw ParseError("'kind' must be a string");

  BodySpec spec;
  spec.dim = j.at("dim").get<int>();
  spec.kind = j.at("kind").get<std::string>();
  spec.name = j.value("name", std::string{});
  const json params = j.value("params", json::object());
  if (!params.is_object()) throw ParseError("'params' must be an object");

  try {
    if (spec.kind == "closed_form") {
      spec.body = detail::closed_form_body(spec.dim, spec.name, params);
    } else if (spec.kind == "convex_seed") {
      spec.seed = detail::convex_seed(spec.dim, spec.name, params);
      spec.body = spec.seed->body();
    } else if (spec.kind == "sampled") {
      const auto grid = std::make_shared<const SphereGrid>(
          build_grid(spec.dim, grid_request_from_json(detail::require(params, "grid", "sampled"))));
      const auto& vals = detail::require(params, "values", "sampled");
      if (!vals.is_array()) throw ParseError("params.values must be an array");
      if (vals.size() != grid->size())
        throw ParseError("params.values has " + std::to_string(vals.size()) + " entries, grid has " +
                         std::to_string(grid->size()));
      std::vector<XReal> values;
      values.reserve(vals.size());
      for (const auto& v : vals) values.push_back(xreal_from_json(v));
      spec.body = bodies::sampled(grid, std::move(values), spec.name.empty() ? "sampled" : spec.name);
    } else {
      throw ParseError("unknown kind '" + spec.kind + "'; valid kinds: " + detail::join(body_kinds()));
    }
  } catch (const DimensionMismatch&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed body spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return spec;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline BodySpec load_body(const std::string& path) { return body_from_json(read_json_file(path)); }

/// A body sampled on `grid`, as a "sampled" spec file that re-imports to the same values.
inline json export_sampled(const StarBody& a, const SphereGrid& grid, const GridRequest& req) {
  json vals = json::array();
  for (XReal v : a.sample(grid)) vals.push_back(xreal_to_json(v));
  return {{"dim", a.dimension()},
          {"kind", "sampled"},
          {"name", a.name()},
          {"params", {{"grid", {{"count", grid.size()}, {"seed", req.seed}, {"symmetric", grid.symmetric()}}},
                      {"values", std::move(vals)}}}};
}

// ---- reports ----

inline json awr_to_json(const AWRResult& r) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back({{"j", t.j}, {"delta_j", xreal_to_json(t.delta_j)}, {"term", t.term}});
  return {{"value", r.value},           {"attained_j", r.attained_j}, {"truncated_at", r.truncated_at},
          {"hit_cap", r.hit_cap},       {"closedness_unverified", r.closedness_unverified}, {"terms", terms}};
}

inline json witness_to_json(const Witness& w) {
  json dir = nullptr;
  if (w.direction) {
    dir = json::array();
    for (int i = 0; i < w.direction->dim(); ++i) dir.push_back((*w.direction)[i]);
  }
  return {{"direction", dir}, {"distance", xreal_to_json(w.distance)}};
}

inline json trace_to_json(const std::vector<TracePoint>& trace) {
  json out = json::array();
  for (const auto& p : trace) out.push_back({p.n, xreal_to_json(p.value)});
  return out;
}

inline json report_to_json(const ConvergenceReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json entry = {{"notion", to_string(e.notion)},
                  {"verdict", to_string(e.verdict)},
                  {"converge_threshold", e.converge_threshold},
                  {"diverge_threshold", e.diverge_threshold},
                  {"trace", trace_to_json(e.trace)}};
    if (e.decay_exponent) entry["decay_exponent"] = *e.decay_exponent;
    if (!e.reason.empty()) entry["reason"] = e.reason;
    entries.push_back(std::move(entry));
  }
  json aux = json::object();
  for (const auto& a : r.auxiliary) aux[a.name] = trace_to_json(a.trace);
  return {{"sequence", r.sequence},
          {"candidate", {{"tag", r.candidate_tag}, {"description", r.candidate}, {"source", r.candidate_source}}},
          {"dimension", r.dimension},
          {"n_max", r.n_max},
          {"grid",
           {{"count", r.grid.count}, {"seed", r.grid.seed}, {"symmetric", r.grid.symmetric},
            {"resolution", r.grid.resolution}}},
          {"eps_g", r.slack},
          {"entries", entries},
          {"auxiliary", aux},
          {"flags", r.flags},
          {"notes", r.notes}};
}

/// (n, notion, value) rows.
inline std::string report_to_csv(const ConvergenceReport& r) {
  std::string out = "n,notion,value\n";
  auto row = [&out](int n, const std::string& notion, double v) {
    out += std::to_string(n) + ',' + notion + ',' + format_double(v) + '\n';
  };
  for (const auto& e : r.entries)
    for (const auto& p : e.trace) row(p.n, to_string(e.notion), p.value);
  for (const auto& a : r.auxiliary)
    for (const auto& p : a.trace) row(p.n, a.name, p.value);
  return out;
}

inline std::string profile_to_csv(const StarBody& a, const SphereGrid& grid) {
  std::string out = "index";
  for (int k = 0; k < grid.dimension(); ++k) out += ",theta" + std::to_string(k + 1);
  out += ",rho\n";
  const auto s = a.sample(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += std::to_string(i);
    for (int k = 0; k < grid.dimension(); ++k) out += ',' + format_double(grid[i][k]);
    out += ',' + format_double(s[i]) + '\n';
  }
  return out;
}

/// Envelope around a payload. The payload depends only on inputs and seeds;
/// wall time sits outside it.
inline json envelope(const SphereGrid& grid, const std::vector<std::string>& command, json payload,
                     std::optional<double> wall_time_s = std::nullopt, json warnings = json::array()) {
  json env = {{"tool", "starbody"},
              {"version", kToolVersion},
              {"grid", grid_to_json(grid)},
              {"command", command},
              {"warnings", std::move(warnings)},
              {"payload", std::move(payload)}};
  if (wall_time_s) env["wall_time_s"] = *wall_time_s;
  return env;
}

}  // namespace starbody::io
