#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "spanembed/embed.hpp"
#include "spanembed/generators.hpp"
#include "spanembed/host_plan.hpp"
#include "spanembed/partition.hpp"
#include "spanembed/rainbow.hpp"
#include "spanembed/random.hpp"
#include "spanembed/rational.hpp"
#include "spanembed/targets.hpp"

namespace spanembed {

enum class Mode { Embed, Rainbow };
enum class PartitionMethod { Auto, General, Girth7 };

enum class Outcome { Success, HallFail, HostPrepFail, PartitionFail, RainbowProcessFail };
inline constexpr Outcome kAllOutcomes[] = {Outcome::Success, Outcome::HallFail, Outcome::HostPrepFail,
                                           Outcome::PartitionFail, Outcome::RainbowProcessFail};

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Success: return "success";
    case Outcome::HallFail: return "hall_fail";
    case Outcome::HostPrepFail: return "host_prep_fail";
    case Outcome::PartitionFail: return "partition_fail";
    case Outcome::RainbowProcessFail: return "rainbow_process_fail";
  }
  return "?";
}

struct ExperimentConfig {
  Mode mode = Mode::Embed;
  std::string target = "spanning_tree";  // family name or path to an edge-list file
  std::optional<Graph> target_graph;     // set when `target` names a file
  std::size_t n = 100;
  std::size_t delta = 4;
  std::size_t d = 2;
  Rational eps = Rational(1, 10);
  double alpha = 0.5;
  std::vector<double> p_grid;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  bool fresh_target = true;  // new target per trial; ignored for file targets
  PartitionMethod partition = PartitionMethod::Auto;
  // Sensitivity overrides; unset means the construction as stated.
  std::optional<std::size_t> out_degree;  // rainbow phase II, default ⌈ln² n⌉
  std::optional<std::size_t> pool_size;   // rainbow phase I candidate pool s
  std::size_t min_slice = 0;              // lower bound on host slice size
  std::size_t threads = 1;
  bool record_time = false;
  // Called after the built-in verification of each success. Not synchronized.
  std::function<void(const Graph& h, const Graph& host, const std::vector<Vertex>& map)> on_embed_success;
  std::function<void(const Graph& h, const ColoredGraph& host, const RainbowState& state)> on_rainbow_success;

  /// Throws std::invalid_argument when inconsistent.
  void validate() const {
    if (p_grid.empty()) throw std::invalid_argument("p grid is empty");
    for (double p : p_grid) {
      if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p grid values must lie in (0,1]");
    }
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (!(eps > Rational(0)) || !(eps < Rational(1))) throw std::invalid_argument("eps must lie in (0,1)");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (delta < 2) throw std::invalid_argument("delta must be >= 2");
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (!target_graph && !parse_family(target)) throw std::invalid_argument("unknown target family '" + target + "'");
    if (target_graph && target_graph->n() != n) throw std::invalid_argument("target file order differs from n");
  }
};

/// "a:b:step" (inclusive) or a comma-separated list.
inline std::vector<double> parse_p_grid(const std::string& text) {
  auto round12 = [](double x) { return std::round(x * 1e12) / 1e12; };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::istringstream ss(text);
    double a, b, step;
    char c1, c2;
    if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) || b < a) {
      throw std::invalid_argument("p grid must be 'a:b:step' with a <= b and step > 0");
    }
    auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(round12(a + static_cast<double>(i) * step));
  } else {
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad p grid value '" + item + "'");
      }
    }
  }
  return out;
}

inline std::string format_p(double p) {
  std::ostringstream ss;
  ss << std::setprecision(10) << p;
  return ss.str();
}

struct TrialRecord {
  double p = 0.0;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::Success;
  std::size_t step = 0;
  std::int64_t ms = 0;
  std::string detail;  // failure reason, not part of the CSV
};

inline constexpr const char* kCsvHeader = "p,seed,outcome,step,ms";

inline void write_csv_row(std::ostream& out, const TrialRecord& r) {
  out << format_p(r.p) << ',' << r.seed << ',' << to_string(r.outcome) << ',' << r.step << ',' << r.ms << '\n';
}

/// Seed that replays trial `trial` at grid index `p_index`.
inline std::uint64_t trial_seed(std::uint64_t base, std::size_t p_index, std::size_t trial) {
  return derive_seed(base, {p_index, trial}, "trial");
}

/// Stream for one stage of a trial.
inline RandomSource stage_stream(std::uint64_t trial_seed_value, const std::string& stage) {
  return RandomSource(derive_seed(trial_seed_value, {}, stage), stage);
}

inline PartitionResult make_partition(const Graph& h, const ExperimentConfig& cfg) {
  PartitionMethod method = cfg.partition;
  if (method == PartitionMethod::Auto) {
    method = (cfg.target == "girth7_subdivided") ? PartitionMethod::Girth7 : PartitionMethod::General;
  }
  return method == PartitionMethod::Girth7 ? partition_girth7(h, cfg.delta, cfg.d, cfg.eps)
                                           : partition_general(h, cfg.delta, cfg.d, cfg.eps);
}

/// What a trial needs about its target; shared across trials when fixed.
struct PreparedTarget {
  Graph graph;
  std::optional<PartitionResult> partition;                          // embed mode
  std::optional<Expected<RainbowSplit, SplitError>> split;           // rainbow mode
};

inline std::shared_ptr<const PreparedTarget> prepare_target(Graph h, const ExperimentConfig& cfg) {
  auto t = std::make_shared<PreparedTarget>(PreparedTarget{std::move(h), std::nullopt, std::nullopt});
  if (cfg.mode == Mode::Embed) {
    t->partition = make_partition(t->graph, cfg);
  } else {
    t->split = split_target(t->graph, cfg.delta, cfg.d, cfg.alpha);
  }
  return t;
}

inline std::shared_ptr<const PreparedTarget> fixed_target(const ExperimentConfig& cfg) {
  if (cfg.target_graph) return prepare_target(*cfg.target_graph, cfg);
  if (cfg.fresh_target) return nullptr;
  RandomSource rng(derive_seed(cfg.seed, {}, "target"), "target");
  return prepare_target(generate_target(*parse_family(cfg.target), cfg.n, cfg.delta, cfg.d, rng), cfg);
}

// Step column: embed mode reports the layer step reached (0 = clique stage or
// earlier, t* on success). Rainbow mode numbers spine vertices 1..|spine|,
// then tail tuples |spine|+1..|spine|+|W|; the final matching is
// |spine|+|W|+1. Success rows carry the last step executed.

inline TrialRecord run_embed_trial(const PreparedTarget& target, double p, std::uint64_t seed,
                                   const ExperimentConfig& cfg) {
  TrialRecord rec{p, seed, Outcome::Success, 0, 0, {}};
  const auto& part_result = *target.partition;
  if (!part_result) {
    rec.outcome = Outcome::PartitionFail;
    rec.detail = to_string(part_result.error().kind);
    return rec;
  }
  const auto& part = part_result.value();
  RandomSource host_rng = stage_stream(seed, "host");
  Graph g = gnp_generate(cfg.n, p, host_rng);
  RandomSource plan_rng = stage_stream(seed, "plan");
  auto plan = build_host_plan(g, part.effective_depth, part.epsilon, cfg.d, plan_rng, cfg.min_slice);
  if (!plan) {
    rec.outcome = Outcome::HostPrepFail;
    rec.detail = to_string(plan.error().kind);
    return rec;
  }
  RandomSource embed_rng = stage_stream(seed, "embed");
  auto emb = embed(target.graph, part, g, plan.value(), embed_rng);
  if (!emb) {
    const auto& f = emb.error();
    rec.step = f.step;
    rec.detail = std::string(to_string(f.kind)) + ": " + f.detail;
    switch (f.kind) {
      case EmbedFailure::Kind::HallViolation: rec.outcome = Outcome::HallFail; break;
      case EmbedFailure::Kind::PartitionInvalid: rec.outcome = Outcome::PartitionFail; break;
      case EmbedFailure::Kind::Precondition:
      case EmbedFailure::Kind::CliqueAssignment: rec.outcome = Outcome::HostPrepFail; break;
    }
    return rec;
  }
  auto check = verify_embedding(target.graph, g, emb.value().map);
  if (!check.ok) throw std::logic_error("embed returned an invalid embedding: " + check.detail);
  if (cfg.on_embed_success) cfg.on_embed_success(target.graph, g, emb.value().map);
  rec.step = part.effective_depth;
  return rec;
}

inline TrialRecord run_rainbow_trial(const PreparedTarget& target, double p, std::uint64_t seed,
                                     const ExperimentConfig& cfg) {
  TrialRecord rec{p, seed, Outcome::Success, 0, 0, {}};
  const auto& split_result = *target.split;
  if (!split_result) {
    rec.outcome = Outcome::PartitionFail;
    rec.detail = to_string(split_result.error().kind);
    return rec;
  }
  const auto& split = split_result.value();
  const Graph& h = target.graph;
  const std::uint32_t c = rainbow_color_count(h.m(), cfg.alpha);
  auto hosts = gnp_split_generate(cfg.n, p, stage_stream(seed, "host"));
  RandomSource color_rng = stage_stream(seed, "colors");
  RandomSource c1 = color_rng.derive("G1"), c2 = color_rng.derive("G2");
  ColoredGraph g1 = color_uniformly(std::move(hosts.g1), c, c1);
  ColoredGraph g2 = color_uniformly(std::move(hosts.g2), c, c2);

  RandomSource phase1_rng = stage_stream(seed, "phase1");
  auto state = phase1_embed(h, split, g1, c, phase1_rng, cfg.pool_size);
  if (!state) {
    rec.outcome = Outcome::RainbowProcessFail;
    rec.step = state.error().step;
    rec.detail = to_string(state.error().kind);
    return rec;
  }
  const std::size_t k = cfg.out_degree.value_or(default_out_degree(cfg.n));
  RandomSource phase2_rng = stage_stream(seed, "phase2");
  auto done = phase2_extend(h, split, std::move(state).value(), g1, g2, k, phase2_rng);
  const std::size_t spine = split.spine.size();
  if (!done) {
    const auto& f = done.error();
    if (f.kind == RainbowFailure::Kind::NoPerfectMatching) {
      rec.outcome = Outcome::HallFail;
      rec.step = spine + split.tail.size() + 1;
    } else {
      rec.outcome = Outcome::RainbowProcessFail;
      rec.step = spine + f.step;
    }
    rec.detail = std::string(to_string(f.kind)) + ": " + f.detail;
    return rec;
  }
  ColoredGraph host = union_coloring(g1, g2);
  auto check = verify_rainbow(h, host, done.value().map);
  if (!check.ok) throw std::logic_error("rainbow pipeline returned an invalid embedding: " + check.detail);
  if (cfg.on_rainbow_success) cfg.on_rainbow_success(h, host, done.value());
  rec.step = spine + split.tail.size() +
             (split.tail_kind == RainbowSplit::TailKind::TwoIndependentLowDegree ? 1 : 0);
  return rec;
}

inline TrialRecord run_trial(const ExperimentConfig& cfg, const std::shared_ptr<const PreparedTarget>& fixed,
                             std::size_t p_index, std::size_t trial) {
  const double p = cfg.p_grid.at(p_index);
  const std::uint64_t seed = trial_seed(cfg.seed, p_index, trial);
  auto start = std::chrono::steady_clock::now();
  std::shared_ptr<const PreparedTarget> target = fixed;
  if (!target) {
    RandomSource rng = stage_stream(seed, "target");
    target = prepare_target(generate_target(*parse_family(cfg.target), cfg.n, cfg.delta, cfg.d, rng), cfg);
  }
  TrialRecord rec = cfg.mode == Mode::Embed ? run_embed_trial(*target, p, seed, cfg)
                                            : run_rainbow_trial(*target, p, seed, cfg);
  if (cfg.record_time) {
    rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

struct SweepSummary {
  struct Point {
    double p = 0.0;
    std::size_t trials = 0;
    std::map<Outcome, std::size_t> counts;

    double fraction(Outcome o) const {
      auto it = counts.find(o);
      return trials == 0 || it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(trials);
    }
  };
  std::vector<Point> points;
  std::vector<TrialRecord> records;  // ordered by (p index, trial)

  std::vector<double> success_curve() const {
    std::vector<double> out;
    for (const auto& pt : points) out.push_back(pt.fraction(Outcome::Success));
    return out;
  }
};

/// Runs every (p, trial) cell, in parallel when cfg.threads > 1. Rows come
/// back ordered by (p index, trial) regardless of completion order.
inline SweepSummary run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  auto fixed = fixed_target(cfg);
  const std::size_t cells = cfg.p_grid.size() * cfg.trials;
  std::vector<TrialRecord> records(cells);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells; i = next++) {
      try {
        records[i] = run_trial(cfg, fixed, i / cfg.trials, i % cfg.trials);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(cfg.threads, cells);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  SweepSummary summary;
  for (std::size_t pi = 0; pi < cfg.p_grid.size(); ++pi) {
    SweepSummary::Point pt;
    pt.p = cfg.p_grid[pi];
    pt.trials = cfg.trials;
    for (Outcome o : kAllOutcomes) pt.counts[o] = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) ++pt.counts[records[pi * cfg.trials + t].outcome];
    summary.points.push_back(std::move(pt));
  }
  summary.records = std::move(records);
  return summary;
}

inline void write_csv(std::ostream& out, const SweepSummary& summary) {
  out << kCsvHeader << '\n';
  for (const auto& r : summary.records) write_csv_row(out, r);
}

inline void write_summary(std::ostream& out, const SweepSummary& summary) {
  out << "p";
  for (Outcome o : kAllOutcomes) out << ' ' << to_string(o);
  out << '\n';
  for (const auto& pt : summary.points) {
    out << format_p(pt.p);
    for (Outcome o : kAllOutcomes) out << ' ' << std::fixed << std::setprecision(3) << pt.fraction(o);
    out << std::defaultfloat << '\n';
  }
}

}  // namespace spanembed
