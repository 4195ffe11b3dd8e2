// starbody: distances, dualities, convergence reports and invariant checks
// for star bodies given by radial functions.
//
// Exit codes: 0 ok, 1 invariant failure, 2 parse error, 3 dimension mismatch,
// 4 precondition failure, 5 non-seed body passed to flower/polar.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "starbody.hpp"

namespace {

using namespace starbody;
using io::json;

enum Exit { kOk = 0, kInvariant = 1, kParse = 2, kDimension = 3, kPrecondition = 4, kNotSeed = 5 };

struct PreconditionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotASeed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridFlags {
  int count = 0;
  std::uint64_t seed = 0;
  bool asymmetric = false;

  io::GridRequest request() const { return {count, seed, !asymmetric}; }
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--grid-count", g.count, "number of sphere directions (default 2048 in 2D, 4096 otherwise)")
      ->check(CLI::Range(4, 1 << 24));
  cmd->add_option("--grid-seed", g.seed, "seed for the d >= 4 grid shift");
  cmd->add_flag("--asymmetric", g.asymmetric, "do not force an antipodally symmetric grid");
}

struct Output {
  std::string format = "json";
  std::string path;
  bool timing = false;
};

void add_output_flags(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.path, "write to this file instead of stdout");
  cmd->add_flag("--timing", o.timing, "include wall time in the envelope");
}

void emit(const Output& o, const std::string& text) {
  if (o.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + o.path + "'");
  f << text;
}

using Clock = std::chrono::steady_clock;

std::optional<double> elapsed(const Output& o, Clock::time_point t0) {
  if (!o.timing) return std::nullopt;
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- dist ----

struct DistArgs {
  std::string body_a, body_b, metric = "radial";
  double radius = 0.0;
  int j_max = kDefaultJMax;
  GridFlags grid;
  Output out;
};

int cmd_dist(const DistArgs& a, const std::vector<std::string>& argv) {
  const auto t0 = Clock::now();
  const auto sa = io::load_body(a.body_a);
  const auto sb = io::load_body(a.body_b);
  require_same_dimension(sa.body, sb.body);
  const auto grid = io::build_grid(sa.dim, a.grid.request());
  json warnings = json::array();
  json payload = {{"metric", a.metric}, {"a", sa.body.name()}, {"b", sb.body.name()}};
  std::string csv = "quantity,value\n";
  auto row = [&csv](const std::string& k, double v) { csv += k + ',' + io::format_double(v) + '\n'; };

  if (a.metric == "radial") {
    const double v = radial_metric(sa.body, sb.body, grid);
    payload["value"] = io::xreal_to_json(v);
    payload["radial_excess_ab"] = io::xreal_to_json(radial_excess(sa.body, sb.body, grid));
    payload["radial_excess_ba"] = io::xreal_to_json(radial_excess(sb.body, sa.body, grid));
    row("value", v);
    if (!bounded_on(sa.body, grid) || !bounded_on(sb.body, grid)) warnings.push_back("delta is meant for bounded bodies");
  } else if (a.metric == "awr" || a.metric == "aw") {
    const auto r = a.metric == "awr" ? radial_aw_distance(sa.body, sb.body, grid, a.j_max)
                                     : aw_distance(sa.body, sb.body, grid, a.j_max);
    payload.update(io::awr_to_json(r));
    if (r.closedness_unverified) warnings.push_back("closedness_unverified");
    if (r.hit_cap) warnings.push_back("J_max reached");
    row("value", r.value);
    row("attained_j", r.attained_j);
    for (const auto& t : r.terms) row("delta_" + std::to_string(t.j), t.delta_j);
  } else if (a.metric == "hausdorff") {
    const auto r = hausdorff(sa.body, sb.body, grid);
    payload["value"] = io::xreal_to_json(r.value);
    payload["witness_forward"] = io::witness_to_json(r.witness_forward);
    payload["witness_backward"] = io::witness_to_json(r.witness_backward);
    if (!bounded_on(sa.body, grid) || !bounded_on(sb.body, grid)) warnings.push_back("unbounded input");
    row("value", r.value);
  } else {
    if (!(a.radius > 0.0)) throw PreconditionFailure("--metric gap needs --radius > 0");
    const double v = radial_distance_sup_gap(sa.body, sb.body, a.radius, grid);
    payload["radius"] = a.radius;
    payload["value"] = io::xreal_to_json(v);
    row("value", v);
  }
  if (a.out.format == "csv") emit(a.out, csv);
  else emit(a.out, dump(io::envelope(grid, argv, payload, elapsed(a.out, t0), warnings)));
  return kOk;
}

// ---- dual ----

struct DualArgs {
  std::string body, map = "phi";
  int samples = 256;
  std::uint64_t seed = 1;
  GridFlags grid;
  Output out;
};

const ConvexSeed& require_seed(const io::BodySpec& s, const std::string& map) {
  if (!s.seed) throw NotASeed("--map " + map + " needs a convex_seed body (got kind '" + s.kind + "')");
  return *s.seed;
}

/// Generators first, then random points of K: convex combinations of the
/// points plus nonnegative multiples of the rays (ball seeds: boundary points).
std::vector<Point> seed_samples(const ConvexSeed& k, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss;
  std::vector<Point> out;
  const int d = k.dimension();
  if (k.kind() == ConvexSeed::Kind::Ball) {
    const double r = k.support(Direction::axis(d, 0));
    for (int i = 0; i < count; ++i) {
      Point p(d);
      for (int c = 0; c < d; ++c) p[c] = gauss(rng);
      out.push_back(r * p.normalized());
    }
    return out;
  }
  const auto& pts = k.points();
  const auto& rays = k.rays();
  for (const auto& p : pts) out.push_back(p);
  while (static_cast<int>(out.size()) < count && !pts.empty()) {
    Point x = Point::Zero(d);
    double total = 0.0;
    std::vector<double> w(pts.size());
    for (auto& v : w) total += (v = expo(rng));
    for (std::size_t i = 0; i < pts.size(); ++i) x += (w[i] / total) * pts[i];
    for (const auto& r : rays) x += expo(rng) * r;
    out.push_back(x);
  }
  return out;
}

int cmd_dual(const DualArgs& a, const std::vector<std::string>& argv) {
  const auto t0 = Clock::now();
  const auto spec = io::load_body(a.body);
  const auto grid = io::build_grid(spec.dim, a.grid.request());
  const io::GridRequest req = a.grid.request();
  json payload = {{"map", a.map}, {"body", spec.body.name()}};
  int code = kOk;

  auto emit_profile = [&](const StarBody& result) {
    if (a.out.format == "csv") {
      emit(a.out, io::profile_to_csv(result, grid));
      return;
    }
    payload["profile"] = io::export_sampled(result, grid, req);
    emit(a.out, dump(io::envelope(grid, argv, payload, elapsed(a.out, t0))));
  };

  if (a.map == "phi") {
    emit_profile(star_dual(spec.body));
    return kOk;
  }
  if (a.map == "flower" || a.map == "polar") {
    const auto& k = require_seed(spec, a.map);
    try {
      emit_profile(a.map == "flower" ? flower(k, grid).body : polar(k, grid));
    } catch (const FlowerError& e) {
      throw PreconditionFailure(e.what());
    }
    return kOk;
  }
  if (a.map == "inversion-check") {
    const auto r = inversion_check(spec.body, grid, 9);
    payload["checked"] = r.checked;
    payload["skipped_boundary"] = r.skipped_boundary;
    payload["violations"] = r.violations;
    payload["examples"] = r.examples;
    code = r.violations ? kInvariant : kOk;
  } else {
    const auto& k = require_seed(spec, a.map);
    const auto samples = seed_samples(k, a.samples, a.seed);
    UnionCheckReport r;
    try {
      r = flower_union_check(k, grid, samples);
    } catch (const std::invalid_argument& e) {
      throw PreconditionFailure(e.what());
    }
    payload["samples"] = samples.size();
    payload["max_gap"] = io::xreal_to_json(r.max_gap);
    payload["max_overshoot"] = r.max_overshoot;
    json prefix = json::array();
    for (const auto& [m, g] : r.gap_by_prefix) prefix.push_back({m, io::xreal_to_json(g)});
    payload["gap_by_prefix"] = prefix;
    payload["monotone"] = r.monotone;
    code = r.max_overshoot > 1e-12 ? kInvariant : kOk;
  }
  if (a.out.format == "csv") {
    std::string csv = "quantity,value\n";
    for (const auto& [k, v] : payload.items())
      if (v.is_number()) csv += k + ',' + io::format_double(v.get<double>()) + '\n';
    emit(a.out, csv);
  } else {
    emit(a.out, dump(io::envelope(grid, argv, payload, elapsed(a.out, t0))));
  }
  return code;
}

// ---- seq ----

struct SeqArgs {
  std::string corpus_name, candidate;
  int n_max = 60;
  int dim = 2;
  double lipschitz = 1.0;
  GridFlags grid;
  Output out;
};

std::string csv_path_for(const std::string& json_path) {
  std::filesystem::path p(json_path);
  p.replace_extension(".csv");
  return p.string();
}

int cmd_seq(const SeqArgs& a, const std::vector<std::string>& argv) {
  const auto t0 = Clock::now();
  SequenceSpec seq;
  try {
    seq = corpus(a.corpus_name, a.dim);
  } catch (const UnknownCorpus& e) {
    throw io::ParseError(e.what());
  }
  std::optional<CandidateLimit> cand;
  if (a.candidate.empty()) {
    cand = seq.candidates.front();
  } else if (std::filesystem::exists(a.candidate) || a.candidate.ends_with(".json")) {
    const auto spec = io::load_body(a.candidate);
    cand = CandidateLimit{"file", spec.body, "supplied", "candidate read from " + a.candidate, spec.seed};
  } else {
    for (const auto& c : seq.candidates)
      if (c.tag == a.candidate) cand = c;
    if (!cand) {
      std::string tags;
      for (const auto& c : seq.candidates) tags += (tags.empty() ? "" : ", ") + c.tag;
      throw io::ParseError("unknown candidate '" + a.candidate + "' for " + seq.name + "; valid tags: " + tags);
    }
  }
  require_same_dimension(seq(seq.first_index), cand->body);
  if (a.n_max < 10) throw PreconditionFailure("--n-max must be >= 10");

  const auto grid = (a.grid.count > 0 || std::getenv("STARBODY_GRID_COUNT"))
                        ? io::build_grid(a.dim, a.grid.request())
                        : analysis_grid(a.dim, a.n_max);
  Thresholds th;
  th.lipschitz = a.lipschitz;
  const auto report = analyze(seq, *cand, a.n_max, grid, th);
  const json env = io::envelope(grid, argv, io::report_to_json(report), elapsed(a.out, t0));
  if (a.out.path.empty()) {
    std::cout << (a.out.format == "csv" ? io::report_to_csv(report) : dump(env));
    return kOk;
  }
  Output json_out = a.out;
  emit(json_out, dump(env));
  json_out.path = csv_path_for(a.out.path);
  emit(json_out, io::report_to_csv(report));
  return kOk;
}

// ---- check ----

struct CheckArgs {
  std::string suite = "all";
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  GridFlags grid;
  Output out;
};

int cmd_check(const CheckArgs& a, const std::vector<std::string>& argv) {
  const auto t0 = Clock::now();
  checks::Options o;
  o.trials = a.trials;
  o.seed = a.seed;
  if (a.grid.count > 0) o.count_2d = o.count_3d = a.grid.count + (a.grid.count % 2);
  const auto summary = checks::run(a.suite, o);
  json tallies = json::array();
  std::string csv = "invariant,pass,fail\n";
  for (const auto& t : summary.tallies) {
    json row = {{"invariant", t.name}, {"pass", t.pass}, {"fail", t.fail}};
    if (t.fail) row["first_failure"] = t.first_failure;
    tallies.push_back(row);
    csv += '"' + t.name + "\"," + std::to_string(t.pass) + ',' + std::to_string(t.fail) + '\n';
  }
  const json payload = {{"suite", a.suite},    {"trials", a.trials},  {"seed", a.seed},
                        {"count_2d", o.count_2d}, {"count_3d", o.count_3d}, {"ok", summary.ok()},
                        {"invariants", tallies}};
  const auto grid = make_grid(2, o.count_2d, a.seed, true);
  if (a.out.format == "csv") emit(a.out, csv);
  else emit(a.out, dump(io::envelope(grid, argv, payload, elapsed(a.out, t0))));
  return summary.ok() ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"star-body radial metrics, dualities and convergence reports"};
  app.require_subcommand(1);
  const std::vector<std::string> args(argv, argv + argc);

  DistArgs dist;
  auto* d = app.add_subcommand("dist", "distance between two bodies");
  d->add_option("body_a", dist.body_a)->required();
  d->add_option("body_b", dist.body_b)->required();
  d->add_option("--metric", dist.metric)->check(CLI::IsMember({"radial", "awr", "aw", "hausdorff", "gap"}));
  d->add_option("--radius", dist.radius, "ball radius for --metric gap");
  d->add_option("--j-max", dist.j_max)->check(CLI::Range(1, 100000));
  add_grid_flags(d, dist.grid);
  add_output_flags(d, dist.out);

  DualArgs dual;
  auto* u = app.add_subcommand("dual", "star duality, flowers, polars and their checks");
  u->add_option("body", dual.body)->required();
  u->add_option("--map", dual.map)->check(CLI::IsMember({"phi", "flower", "polar", "inversion-check", "union-check"}));
  u->add_option("--samples", dual.samples, "points of K for union-check")->check(CLI::Range(1, 1 << 20));
  u->add_option("--seed", dual.seed);
  add_grid_flags(u, dual.grid);
  add_output_flags(u, dual.out);

  SeqArgs seq;
  auto* s = app.add_subcommand("seq", "convergence report for a corpus sequence");
  s->add_option("corpus", seq.corpus_name)->required();
  s->add_option("--candidate", seq.candidate, "candidate limit: corpus tag or body file");
  s->add_option("--n-max", seq.n_max)->check(CLI::Range(1, 100000));
  s->add_option("--dim", seq.dim)->check(CLI::Range(2, 16));
  s->add_option("--lipschitz", seq.lipschitz, "L in eps_g = L * resolution")->check(CLI::PositiveNumber);
  add_grid_flags(s, seq.grid);
  add_output_flags(s, seq.out);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "randomized invariant suites");
  c->add_option("--suite", check.suite)->check(CLI::IsMember(checks::suite_names()));
  c->add_option("--trials", check.trials)->check(CLI::Range(1, 1000000));
  c->add_option("--seed", check.seed);
  add_grid_flags(c, check.grid);
  add_output_flags(c, check.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*d) return cmd_dist(dist, args);
    if (*u) return cmd_dual(dual, args);
    if (*s) return cmd_seq(seq, args);
    return cmd_check(check, args);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DimensionMismatch& e) {
    std::cerr << e.what() << "\n";
    return kDimension;
  } catch (const NotASeed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotSeed;
  } catch (const PreconditionFailure& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}
