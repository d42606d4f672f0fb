// spanembed: command-line front end for sweeps, target generation and validation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "spanembed/harness.hpp"
#include "spanembed/io.hpp"

using namespace spanembed;
using json = nlohmann::json;

namespace {

struct Options {
  std::size_t n = 100;
  std::size_t delta = 4;
  std::size_t d = 2;
  std::string eps = "1/10";
  double alpha = 0.5;
  std::string p_grid = "0.1:0.9:0.1";
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::string target = "spanning_tree";
  std::string out;
  std::string config;
  std::size_t threads = 1;
  std::string partition = "auto";
  std::size_t out_degree = 0;
  std::size_t pool_size = 0;
  std::size_t min_slice = 0;
  bool record_time = false;
  bool fixed_target = false;
  // validate
  std::string host;
  std::string embedding;
  std::string partition_file;
  bool girth7 = false;
};

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  }
  // decimal: exact conversion of the written digits
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(text));
  const std::string frac = text.substr(dot + 1);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::int64_t whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
  return Rational(whole * den + std::stoll(frac), den);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_graph(in);
}

/// JSON config values fill in every option not given on the command line.
/// Returns true when the config sets n.
bool apply_config(CLI::App& app, Options& o) {
  if (o.config.empty()) return false;
  std::ifstream in(o.config);
  if (!in) throw std::runtime_error("cannot open config '" + o.config + "'");
  json j = json::parse(in);
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key) && app.count(std::string("--") + key) == 0) {
      field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    }
  };
  take("n", o.n);
  take("delta", o.delta);
  take("d", o.d);
  if (j.contains("eps") && app.count("--eps") == 0) {
    o.eps = j["eps"].is_string() ? j["eps"].get<std::string>() : j["eps"].dump();
  }
  take("alpha", o.alpha);
  if (j.contains("p-grid") && app.count("--p-grid") == 0) {
    if (j["p-grid"].is_array()) {
      std::ostringstream ss;
      for (std::size_t i = 0; i < j["p-grid"].size(); ++i) ss << (i ? "," : "") << j["p-grid"][i].dump();
      o.p_grid = ss.str();
    } else {
      o.p_grid = j["p-grid"].get<std::string>();
    }
  }
  take("trials", o.trials);
  take("seed", o.seed);
  take("target", o.target);
  take("out", o.out);
  take("threads", o.threads);
  take("partition", o.partition);
  take("out-degree", o.out_degree);
  take("pool-size", o.pool_size);
  take("min-slice", o.min_slice);
  take("record-time", o.record_time);
  take("fixed-target", o.fixed_target);
  return j.contains("n");
}

ExperimentConfig to_config(const Options& o, Mode mode, bool n_given) {
  ExperimentConfig cfg;
  cfg.mode = mode;
  cfg.n = o.n;
  cfg.delta = o.delta;
  cfg.d = o.d;
  cfg.eps = parse_rational(o.eps);
  cfg.alpha = o.alpha;
  cfg.p_grid = parse_p_grid(o.p_grid);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.fresh_target = !o.fixed_target;
  cfg.record_time = o.record_time;
  cfg.min_slice = o.min_slice;
  if (o.out_degree > 0) cfg.out_degree = o.out_degree;
  if (o.pool_size > 0) cfg.pool_size = o.pool_size;
  if (o.partition == "general") {
    cfg.partition = PartitionMethod::General;
  } else if (o.partition == "girth7") {
    cfg.partition = PartitionMethod::Girth7;
  } else if (o.partition != "auto") {
    throw std::invalid_argument("--partition must be auto, general or girth7");
  }
  cfg.target = o.target;
  if (!parse_family(o.target)) {
    cfg.target_graph = load_graph(o.target);
    if (!n_given) cfg.n = cfg.target_graph->n();
  }
  cfg.validate();
  return cfg;
}

int run_sweep_command(const Options& o, Mode mode, bool n_given) {
  ExperimentConfig cfg = to_config(o, mode, n_given);
  SweepSummary summary = run_sweep(cfg);
  if (o.out.empty()) {
    write_csv(std::cout, summary);
  } else {
    std::ofstream out(o.out);
    if (!out) throw std::runtime_error("cannot write '" + o.out + "'");
    write_csv(out, summary);
  }
  write_summary(std::cerr, summary);
  return 0;
}

int gen_target(const Options& o) {
  auto family = parse_family(o.target);
  if (!family) throw std::invalid_argument("unknown target family '" + o.target + "'");
  RandomSource rng(derive_seed(o.seed, {}, "target"), "target");
  Graph h = generate_target(*family, o.n, o.delta, o.d, rng);
  if (o.out.empty()) {
    write_graph(std::cout, h);
  } else {
    std::ofstream out(o.out);
    if (!out) throw std::runtime_error("cannot write '" + o.out + "'");
    write_graph(out, h);
  }
  auto g = girth(h);
  std::cerr << "n " << h.n() << " m " << h.m() << " max_degree " << h.max_degree() << " max_density "
            << max_density(h) << " girth " << (g ? std::to_string(*g) : std::string("inf")) << '\n';
  return 0;
}

/// Membership of the target, plus optional partition and embedding checks.
/// Returns 1 when any requested check fails.
int validate(const Options& o) {
  Graph h = load_graph(o.target);
  bool ok = true;
  const Rational density = max_density(h);
  const auto g = girth(h);
  const bool degree_ok = h.max_degree() <= o.delta;
  const bool density_ok = density <= Rational(static_cast<std::int64_t>(o.d));
  const bool girth_ok = !o.girth7 || !g || *g >= 7;
  std::cout << "max_degree " << h.max_degree() << (degree_ok ? " ok" : " FAIL") << '\n'
            << "max_density " << density << (density_ok ? " ok" : " FAIL") << '\n'
            << "girth " << (g ? std::to_string(*g) : std::string("inf")) << (girth_ok ? " ok" : " FAIL") << '\n';
  ok = degree_ok && density_ok && girth_ok;
  if (!o.partition_file.empty()) {
    std::ifstream in(o.partition_file);
    if (!in) throw std::runtime_error("cannot open '" + o.partition_file + "'");
    auto report = validate_partition(h, read_partition(in));
    std::cout << "partition " << (report.passes() ? "ok" : "FAIL") << '\n';
    if (!report.passes()) std::cout << report.summary() << '\n';
    ok = ok && report.passes();
  }
  if (!o.embedding.empty()) {
    if (o.host.empty()) throw std::invalid_argument("--embedding needs --host");
    std::ifstream in(o.embedding);
    if (!in) throw std::runtime_error("cannot open '" + o.embedding + "'");
    auto map = read_embedding(in);
    std::ifstream host_in(o.host);
    if (!host_in) throw std::runtime_error("cannot open '" + o.host + "'");
    // the host may be plain or colored; colored hosts start with "c <count>"
    std::string first;
    std::getline(host_in, first);
    host_in.seekg(0);
    if (!first.empty() && first[0] == 'c') {
      auto r = verify_rainbow(h, read_colored_graph(host_in), map);
      std::cout << "rainbow embedding " << (r.ok ? "ok" : "FAIL " + r.detail) << '\n';
      ok = ok && r.ok;
    } else {
      auto r = verify_embedding(h, read_graph(host_in), map);
      std::cout << "embedding " << (r.ok ? "ok" : "FAIL " + r.detail) << '\n';
      ok = ok && r.ok;
    }
  }
  return ok ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "number of vertices");
  cmd->add_option("--delta", o.delta, "maximum degree bound");
  cmd->add_option("--d", o.d, "maximum density bound");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--target", o.target, "spanning_tree | bounded_density | girth7_subdivided | <edge-list file>");
  cmd->add_option("--out", o.out, "output path (stdout when omitted)");
}

void add_sweep(CLI::App* cmd, Options& o) {
  add_common(cmd, o);
  cmd->add_option("--eps", o.eps, "epsilon, as a fraction (1/10) or decimal (0.1)");
  cmd->add_option("--alpha", o.alpha, "rainbow color surplus");
  cmd->add_option("--p-grid", o.p_grid, "a:b:step or comma list");
  cmd->add_option("--trials", o.trials, "trials per grid point");
  cmd->add_option("--config", o.config, "JSON file with any of the above keys");
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--partition", o.partition, "auto | general | girth7");
  cmd->add_option("--out-degree", o.out_degree, "rainbow phase II out-degree (default ceil(ln^2 n))");
  cmd->add_option("--pool-size", o.pool_size, "rainbow phase I candidate pool (default from n, delta, alpha)");
  cmd->add_option("--min-slice", o.min_slice, "lower bound on host slice size (default 0)");
  cmd->add_flag("--record-time", o.record_time, "fill the ms column");
  cmd->add_flag("--fixed-target", o.fixed_target, "one target for every trial");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanning-structure embeddings into random graphs"};
  app.require_subcommand(1);
  Options o;

  auto* embed_cmd = app.add_subcommand("embed-sweep", "layered embedding into G(n,p) over a p grid");
  add_sweep(embed_cmd, o);
  auto* rainbow_cmd = app.add_subcommand("rainbow-sweep", "rainbow embedding into G_c(n,p) over a p grid");
  add_sweep(rainbow_cmd, o);
  auto* gen_cmd = app.add_subcommand("gen-target", "write a random target graph");
  add_common(gen_cmd, o);
  auto* validate_cmd = app.add_subcommand("validate", "check a target file and optional artifacts");
  validate_cmd->add_option("--target", o.target, "edge-list file")->required();
  validate_cmd->add_option("--delta", o.delta, "maximum degree bound");
  validate_cmd->add_option("--d", o.d, "maximum density bound");
  validate_cmd->add_flag("--girth7", o.girth7, "also require girth >= 7");
  validate_cmd->add_option("--partition", o.partition_file, "layered partition file");
  validate_cmd->add_option("--embedding", o.embedding, "embedding file (needs --host)");
  validate_cmd->add_option("--host", o.host, "host graph, plain or colored");

  CLI11_PARSE(app, argc, argv);
  try {
    if (embed_cmd->parsed() || rainbow_cmd->parsed()) {
      CLI::App& cmd = embed_cmd->parsed() ? *embed_cmd : *rainbow_cmd;
      const bool n_in_config = apply_config(cmd, o);
      const bool n_given = cmd.count("--n") > 0 || n_in_config;
      return run_sweep_command(o, embed_cmd->parsed() ? Mode::Embed : Mode::Rainbow, n_given);
    }
    if (gen_cmd->parsed()) return gen_target(o);
    return validate(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
