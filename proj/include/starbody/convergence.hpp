#pragma once

// Runs a corpus sequence against a candidate limit under five notions of
// convergence and classifies each distance trace.
//
// Verdicts. With slack eps_g = lipschitz * grid resolution, a trace
// "converges" when its last quartile stays below 10 eps_g and "diverges" when
// the last quartile stays above 20 eps_g. Traces that decay like n^(-p) with
// small p (1/sqrt(n) is common here) cannot reach the converge band at
// desk-scale n, so a log-log fit over n >= n_max/4 is tried first: an
// exponent of at least 0.15 with no rebound in the tail counts as
// convergence. Floors fit exponents near 0 and keep their verdict.
//
// Pointwise radial convergence is tested at a fixed probe set (the +-e_i and
// the normalized sign vectors) that does not grow with the grid: a fixed
// direction is what pointwise convergence quantifies over.

#include <algorithm>
#include <cmath>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "starbody/corpus.hpp"
#include "starbody/dualities.hpp"
#include "starbody/euclidean_metrics.hpp"
#include "starbody/radial_metrics.hpp"

namespace starbody {

enum class Notion { PointwiseRadial, Delta, RadialAW, Hausdorff, AW };
enum class Verdict { Converges, Diverges, Inconclusive };

inline const char* to_string(Notion n) {
  switch (n) {
    case Notion::PointwiseRadial: return "pointwise_radial";
    case Notion::Delta: return "delta";
    case Notion::RadialAW: return "radial_aw";
    case Notion::Hausdorff: return "hausdorff";
    case Notion::AW: return "aw";
  }
  return "?";
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Converges: return "converges";
    case Verdict::Diverges: return "diverges";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

inline constexpr Notion kAllNotions[] = {Notion::PointwiseRadial, Notion::Delta, Notion::RadialAW, Notion::Hausdorff,
                                         Notion::AW};

struct TracePoint {
  int n;
  double value;
};

struct NotionEntry {
  Notion notion = Notion::PointwiseRadial;
  std::vector<TracePoint> trace;
  Verdict verdict = Verdict::Inconclusive;
  double converge_threshold = 0.0;
  double diverge_threshold = 0.0;
  /// Fitted p in trace ~ C n^(-p), when the verdict needed it.
  std::optional<double> decay_exponent;
  std::string reason;
};

/// Extra traces that are not one of the five notions (flower images, probes).
struct AuxiliaryTrace {
  std::string name;
  std::vector<TracePoint> trace;
};

struct GridSpec {
  int dimension = 2;
  int count = 0;
  std::uint64_t seed = 0;
  bool symmetric = false;
  double resolution = 0.0;
};

inline GridSpec grid_spec(const SphereGrid& g) {
  return {g.dimension(), static_cast<int>(g.size()), g.seed(), g.symmetric(), g.resolution()};
}

struct ConvergenceReport {
  std::string sequence;
  std::string candidate_tag;
  std::string candidate;
  std::string candidate_source;
  int dimension = 2;
  int n_max = 0;
  GridSpec grid;
  double slack = 0.0;
  std::vector<NotionEntry> entries;
  std::vector<AuxiliaryTrace> auxiliary;
  std::vector<std::string> flags;
  std::vector<std::string> notes;

  const NotionEntry& entry(Notion n) const {
    for (const auto& e : entries)
      if (e.notion == n) return e;
    throw std::out_of_range("report has no entry for notion");
  }
  bool has_flag(const std::string& f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }
};

struct Thresholds {
  /// eps_g = lipschitz * resolution.
  double lipschitz = 1.0;
  double converge_factor = 10.0;
  double diverge_factor = 20.0;
  int j_max = kDefaultJMax;
  /// Accept slow power-law decay (exponent >= min_decay_exponent) as convergence.
  bool power_law = true;
  double min_decay_exponent = 0.15;
};

/// +-e_i and the normalized sign vectors (the latter for d <= 4).
inline std::vector<Direction> pointwise_probes(int d) {
  std::vector<Direction> out;
  for (int i = 0; i < d; ++i) {
    out.push_back(Direction::axis(d, i));
    out.push_back(-Direction::axis(d, i));
  }
  if (d <= 4) {
    for (int mask = 0; mask < (1 << d); ++mask) {
      Point p(d);
      for (int k = 0; k < d; ++k) p[k] = (mask >> k) & 1 ? -1.0 : 1.0;
      out.push_back(*Direction::of(p));
    }
  }
  return out;
}

/// Per-direction gap between rho_n(theta) and the target value. Finite
/// targets use |rho_n - target|; infinite targets compare rho_n against the
/// growth bar M_n = sqrt(n) and report the relative shortfall in [0, 1].
inline double pointwise_gap(XReal value, XReal target, int n) {
  if (xreal::is_inf(target)) {
    const double bar = std::sqrt(static_cast<double>(n));
    return value >= bar ? 0.0 : (bar - value) / bar;
  }
  return xreal::abs_diff(value, target);
}

namespace detail {

inline std::string io_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << v;
  return os.str();
}

inline double tail_value(const std::vector<TracePoint>& trace, int n) {
  for (const auto& p : trace)
    if (p.n == n) return p.value;
  return trace.back().value;
}

/// Least-squares slope of log t against log n over n >= n_max / 4, negated:
/// t ~ C n^(-p). Empty when the window holds a zero or an infinite value.
inline std::optional<double> decay_exponent(const std::vector<TracePoint>& trace) {
  if (trace.size() < 8) return std::nullopt;
  const int from = std::max(trace.front().n, trace.back().n / 4);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& p : trace) {
    if (p.n < from) continue;
    if (!(p.value > 0.0) || !std::isfinite(p.value)) return std::nullopt;
    const double x = std::log(static_cast<double>(p.n)), y = std::log(p.value);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++m;
  }
  const double den = m * sxx - sx * sx;
  if (m < 4 || den <= 0.0) return std::nullopt;
  return -(m * sxy - sx * sy) / den;
}

/// No value in the last quarter exceeds the value at the start of the last half.
inline bool no_rebound(const std::vector<TracePoint>& trace) {
  const std::size_t half = trace.size() / 2, quarter = trace.size() - trace.size() / 4;
  for (std::size_t i = quarter; i < trace.size(); ++i)
    if (trace[i].value > trace[half].value + 1e-12) return false;
  return true;
}

inline void classify(NotionEntry& e, double slack, const Thresholds& th) {
  e.converge_threshold = th.converge_factor * slack;
  e.diverge_threshold = th.diverge_factor * slack;
  if (e.trace.empty()) {
    e.verdict = Verdict::Inconclusive;
    return;
  }
  const std::size_t start = e.trace.size() - std::max<std::size_t>(1, e.trace.size() / 4);
  double tail_max = 0.0, tail_min = kInf;
  for (std::size_t i = start; i < e.trace.size(); ++i) {
    tail_max = std::max(tail_max, e.trace[i].value);
    tail_min = std::min(tail_min, e.trace[i].value);
  }
  if (tail_max < e.converge_threshold) {
    e.verdict = Verdict::Converges;
    return;
  }
  e.decay_exponent = decay_exponent(e.trace);
  const bool decaying = th.power_law && e.decay_exponent && *e.decay_exponent >= th.min_decay_exponent &&
                        no_rebound(e.trace);
  if (decaying) {
    e.verdict = Verdict::Converges;
    e.reason = "power-law decay n^(-" + io_number(*e.decay_exponent) + ")";
    return;
  }
  e.verdict = tail_min > e.diverge_threshold ? Verdict::Diverges : Verdict::Inconclusive;
}

}  // namespace detail

/// Runs seq(1..n_max) against the candidate under all five notions.
inline ConvergenceReport analyze(const SequenceSpec& seq, const CandidateLimit& candidate, int n_max,
                                 const SphereGrid& grid, const Thresholds& th = {}) {
  if (n_max < 10) throw std::invalid_argument("analyze: n_max must be >= 10");
  if (grid.dimension() != seq.dimension) throw DimensionMismatch("grid dimension does not match the sequence");
  const StarBody& limit = candidate.body;
  require_same_dimension(seq(seq.first_index), limit);

  ConvergenceReport rep;
  rep.sequence = seq.name;
  rep.candidate_tag = candidate.tag;
  rep.candidate = limit.name();
  rep.candidate_source = candidate.source;
  rep.dimension = seq.dimension;
  rep.n_max = n_max;
  rep.grid = grid_spec(grid);
  rep.slack = th.lipschitz * grid.resolution();
  if (!candidate.note.empty()) rep.notes.push_back(candidate.note);

  const auto probes = pointwise_probes(seq.dimension);
  std::vector<XReal> probe_targets;
  for (const auto& p : probes) probe_targets.push_back(limit.radial(p));

  auto entry_for = [](Notion n) {
    NotionEntry e;
    e.notion = n;
    return e;
  };
  auto pw = entry_for(Notion::PointwiseRadial), delta = entry_for(Notion::Delta), raw = entry_for(Notion::RadialAW),
       haus = entry_for(Notion::Hausdorff), aw = entry_for(Notion::AW);
  bool all_bounded = bounded_on(limit, grid);
  bool closed_unverified = false;

  const bool flower_mode = static_cast<bool>(seq.seed_generator) && candidate.seed.has_value();
  AuxiliaryTrace flower_awr{"flower_radial_aw", {}}, flower_e1{"flower_rho_e1", {}}, flower_dclubs{"flower_distance", {}};
  std::optional<FlowerBody> limit_flower;
  if (flower_mode) limit_flower = flower(*candidate.seed, grid);

  for (int n = seq.first_index; n <= n_max; ++n) {
    const StarBody an = seq(n);

    double gap = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) gap = std::max(gap, pointwise_gap(an.radial(probes[i]), probe_targets[i], n));
    pw.trace.push_back({n, gap});

    all_bounded = all_bounded && bounded_on(an, grid);
    if (all_bounded) {
      delta.trace.push_back({n, radial_metric(an, limit, grid)});
      haus.trace.push_back({n, hausdorff(an, limit, grid).value});
    }
    raw.trace.push_back({n, radial_aw_distance(an, limit, grid, th.j_max).value});
    const auto awr = aw_distance(an, limit, grid, th.j_max);
    closed_unverified = closed_unverified || awr.closedness_unverified;
    aw.trace.push_back({n, awr.value});

    if (flower_mode) {
      const auto fn = flower(seq.seed_generator(n), grid);
      flower_awr.trace.push_back({n, radial_aw_distance(fn.body, limit_flower->body, grid, th.j_max).value});
      flower_e1.trace.push_back({n, fn.body.radial(Direction::axis(seq.dimension, 0))});
      flower_dclubs.trace.push_back({n, flower_distance(fn, *limit_flower, grid, th.j_max)});
    }
  }

  if (!all_bounded) {
    for (NotionEntry* e : {&delta, &haus}) {
      e->trace.clear();
      e->reason = "unbounded body: notion defined for bounded bodies only";
    }
  }
  for (NotionEntry* e : {&pw, &delta, &raw, &haus, &aw}) {
    if (!e->trace.empty()) detail::classify(*e, rep.slack, th);
    else {
      e->converge_threshold = th.converge_factor * rep.slack;
      e->diverge_threshold = th.diverge_factor * rep.slack;
    }
  }
  if (closed_unverified)
    aw.reason = (aw.reason.empty() ? "" : aw.reason + "; ") + "closedness_unverified: truncation formula assumes closed bodies";
  rep.entries = {pw, delta, raw, haus, aw};

  if (flower_mode) {
    auto fe = entry_for(Notion::RadialAW);
    fe.trace = flower_awr.trace;
    detail::classify(fe, rep.slack, th);
    const bool all_inf = std::all_of(flower_e1.trace.begin(), flower_e1.trace.end(),
                                     [](const TracePoint& p) { return xreal::is_inf(p.value); });
    const XReal limit_e1 = limit_flower->body.radial(Direction::axis(seq.dimension, 0));
    rep.notes.push_back("rho_{K^clubs}(e_1) = " + detail::io_number(limit_e1) +
                        (all_inf ? "; rho_{K_n^clubs}(e_1) = inf for every n" : ""));
    if (rep.entry(Notion::AW).verdict == Verdict::Converges && fe.verdict != Verdict::Converges && all_inf)
      rep.flags.push_back("flower_topology_gap");
    rep.auxiliary = {flower_awr, flower_e1, flower_dclubs};
  }

  const auto& raw_entry = rep.entry(Notion::RadialAW);
  const auto& pw_entry = rep.entry(Notion::PointwiseRadial);
  if (raw_entry.verdict == Verdict::Converges && pw_entry.verdict != Verdict::Converges)
    rep.flags.push_back("implication_violation: radial_aw converges but pointwise_radial does not");

  if (seq.name == "truncated_parabolas") {
    const bool pw_converges = pw_entry.verdict == Verdict::Converges;
    const XReal at_e1 = seq(n_max).radial(Direction::axis(2, 0));
    if (candidate.source == "stated" && !pw_converges)
      rep.flags.push_back("stated_limit_rejected: rho_{P_n}(+-e_1) = " + detail::io_number(at_e1) +
                          " for every n, so the pointwise radial limit is not " + limit.name());
    if (candidate.source == "derived" && pw_converges)
      rep.flags.push_back("derived_limit_accepted: pointwise radial limit is " + limit.name());
  }
  return rep;
}

inline ConvergenceReport analyze(const SequenceSpec& seq, const std::string& candidate_tag, int n_max,
                                 const SphereGrid& grid, const Thresholds& th = {}) {
  return analyze(seq, seq.candidate(candidate_tag), n_max, grid, th);
}

/// Default analysis grid: resolves features of width ~1/n_max.
inline SphereGrid analysis_grid(int d, int n_max) {
  if (d == 2) return make_grid(2, std::max(1024, 16 * n_max), 0, true);
  return make_grid(d, default_grid_count(d), 0, true);
}

/// Every corpus sequence against each of its candidate limits. Planar-only
/// sequences are skipped when the grid is not planar.
inline std::vector<ConvergenceReport> separation_suite(const SphereGrid& grid, int n_max, const Thresholds& th = {}) {
  std::vector<ConvergenceReport> out;
  for (const auto& name : corpus_names()) {
    if (name == "truncated_parabolas" && grid.dimension() != 2) continue;
    const auto seq = corpus(name, grid.dimension());
    for (const auto& cand : seq.candidates) out.push_back(analyze(seq, cand, n_max, grid, th));
  }
  return out;
}

/// Midpoint test for convexity of a star body on the grid: for sampled pairs
/// a, b in A, (1 - shrink)(a + b)/2 must belong to A. Infinite reaches are capped at `cap`.
inline std::size_t convexity_violations(const StarBody& a, const SphereGrid& grid, std::size_t pairs,
                                        std::uint64_t seed, double shrink = 1e-6, double cap = 10.0) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  const auto s = a.sample(grid);
  std::size_t bad = 0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t i = pick(rng), j = pick(rng);
    const Point p = frac(rng) * std::min(s[i], cap) * grid[i].coords();
    const Point q = frac(rng) * std::min(s[j], cap) * grid[j].coords();
    const Point mid = (1.0 - shrink) * 0.5 * (p + q);
    if (!membership(a, mid)) ++bad;
  }
  return bad;
}

}  // namespace starbody
