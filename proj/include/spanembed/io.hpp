#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanembed/embed.hpp"
#include "spanembed/graph.hpp"
#include "spanembed/host_plan.hpp"
#include "spanembed/partition.hpp"
#include "spanembed/rational.hpp"

namespace spanembed {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-blank line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  }

  std::string require() {
    std::string line;
    if (!next(line)) throw ParseError(number_, "unexpected end of input");
    return line;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

template <class T>
std::vector<T> parse_values(const std::string& text, std::size_t line) {
  std::istringstream ss(text);
  std::vector<T> out;
  long long x;
  while (ss >> x) {
    if (x < 0) throw ParseError(line, "negative value");
    out.push_back(static_cast<T>(x));
  }
  if (!ss.eof()) throw ParseError(line, "expected integers");
  return out;
}

/// Splits "label: values" into its two parts; label must equal `expect`.
inline std::string section_body(const std::string& line, const std::string& expect, std::size_t number) {
  auto colon = line.find(':');
  if (colon == std::string::npos || line.substr(0, colon) != expect) {
    throw ParseError(number, "expected section '" + expect + ":'");
  }
  return line.substr(colon + 1);
}

inline void write_list(std::ostream& out, const std::vector<Vertex>& items) {
  for (Vertex v : items) out << ' ' << v;
  out << '\n';
}

inline Graph read_edges(LineReader& reader, std::size_t n, std::size_t m, std::vector<std::uint32_t>* colors) {
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::string line = reader.require();
    auto vals = parse_values<std::uint64_t>(line, reader.number());
    if (vals.size() != (colors ? 3u : 2u)) throw ParseError(reader.number(), "wrong number of columns");
    if (vals[0] >= vals[1] || vals[1] >= n) throw ParseError(reader.number(), "edge must satisfy 0 <= u < v < n");
    edges.push_back({static_cast<Vertex>(vals[0]), static_cast<Vertex>(vals[1])});
    if (colors) colors->push_back(static_cast<std::uint32_t>(vals[2]));
  }
  try {
    Graph g(n, edges);
    if (colors) {
      // Graph sorts its edges; re-align colors with that order.
      std::vector<std::uint32_t> aligned(m);
      for (std::size_t i = 0; i < m; ++i) {
        auto sorted = g.edges();
        auto it = std::lower_bound(sorted.begin(), sorted.end(), edges[i]);
        aligned[static_cast<std::size_t>(it - sorted.begin())] = (*colors)[i];
      }
      *colors = std::move(aligned);
    }
    return g;
  } catch (const std::invalid_argument& e) {
    throw ParseError(reader.number(), e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Edge lists.
// ---------------------------------------------------------------------------

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline Graph read_graph(std::istream& in) {
  detail::LineReader reader(in);
  auto header = detail::parse_values<std::size_t>(reader.require(), reader.number());
  if (header.size() != 2) throw ParseError(reader.number(), "header must be 'n m'");
  return detail::read_edges(reader, header[0], header[1], nullptr);
}

inline void write_colored_graph(std::ostream& out, const ColoredGraph& g) {
  out << "c " << g.color_count() << '\n';
  const Graph& base = g.base();
  out << base.n() << ' ' << base.m() << '\n';
  for (std::size_t i = 0; i < base.m(); ++i) {
    out << base.edges()[i].u << ' ' << base.edges()[i].v << ' ' << g.colors()[i] << '\n';
  }
}

inline ColoredGraph read_colored_graph(std::istream& in) {
  detail::LineReader reader(in);
  std::istringstream cs(reader.require());
  std::string tag;
  std::uint32_t c = 0;
  if (!(cs >> tag >> c) || tag != "c") throw ParseError(reader.number(), "header must be 'c <count>'");
  auto header = detail::parse_values<std::size_t>(reader.require(), reader.number());
  if (header.size() != 2) throw ParseError(reader.number(), "header must be 'n m'");
  std::vector<std::uint32_t> colors;
  Graph g = detail::read_edges(reader, header[0], header[1], &colors);
  try {
    return ColoredGraph(std::move(g), c, std::move(colors));
  } catch (const std::invalid_argument& e) {
    throw ParseError(reader.number(), e.what());
  }
}

// ---------------------------------------------------------------------------
// Partitions and host plans.
// ---------------------------------------------------------------------------

inline void write_partition(std::ostream& out, const LayeredPartition& p) {
  out << "t " << p.nominal_depth << " t* " << p.effective_depth << " eps " << p.epsilon << " d "
      << p.back_degree_cap << '\n';
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    out << 'W' << i << ':';
    detail::write_list(out, p.layers[i]);
  }
}

inline LayeredPartition read_partition(std::istream& in) {
  detail::LineReader reader(in);
  std::istringstream hs(reader.require());
  std::string t, ts, e, dd, eps;
  LayeredPartition p;
  if (!(hs >> t >> p.nominal_depth >> ts >> p.effective_depth >> e >> eps >> dd >> p.back_degree_cap) || t != "t" ||
      ts != "t*" || e != "eps" || dd != "d") {
    throw ParseError(reader.number(), "header must be 't <nominal> t* <effective> eps <rational> d <cap>'");
  }
  try {
    p.epsilon = Rational::parse(eps);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(reader.number(), ex.what());
  }
  for (std::size_t i = 0; i <= p.effective_depth; ++i) {
    std::string line = reader.require();
    p.layers.push_back(detail::parse_values<Vertex>(
        detail::section_body(line, "W" + std::to_string(i), reader.number()), reader.number()));
  }
  return p;
}

inline void write_host_plan(std::ostream& out, const HostPlan& plan) {
  out << "t* " << plan.depth() << " eps " << plan.epsilon << " d " << plan.clique_size << " K " << plan.cliques.size()
      << '\n';
  for (std::size_t i = 0; i < plan.slices.size(); ++i) {
    out << 'V' << i << ':';
    detail::write_list(out, plan.slices[i]);
  }
  out << "K:\n";
  for (const auto& clique : plan.cliques) {
    for (std::size_t j = 0; j < clique.size(); ++j) out << (j ? " " : "") << clique[j];
    out << '\n';
  }
}

inline HostPlan read_host_plan(std::istream& in) {
  detail::LineReader reader(in);
  std::istringstream hs(reader.require());
  std::string ts, e, dd, k, eps;
  std::size_t depth = 0, count = 0;
  HostPlan plan;
  if (!(hs >> ts >> depth >> e >> eps >> dd >> plan.clique_size >> k >> count) || ts != "t*" || e != "eps" ||
      dd != "d" || k != "K") {
    throw ParseError(reader.number(), "header must be 't* <depth> eps <rational> d <size> K <count>'");
  }
  try {
    plan.epsilon = Rational::parse(eps);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(reader.number(), ex.what());
  }
  for (std::size_t i = 0; i <= depth; ++i) {
    std::string line = reader.require();
    plan.slices.push_back(detail::parse_values<Vertex>(
        detail::section_body(line, "V" + std::to_string(i), reader.number()), reader.number()));
  }
  std::string line = reader.require();
  if (!detail::section_body(line, "K", reader.number()).empty()) throw ParseError(reader.number(), "'K:' takes no values");
  for (std::size_t j = 0; j < count; ++j) {
    plan.cliques.push_back(detail::parse_values<Vertex>(reader.require(), reader.number()));
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Embeddings.
// ---------------------------------------------------------------------------

inline void write_embedding(std::ostream& out, const std::vector<Vertex>& map) {
  out << "n " << map.size() << '\n';
  for (std::size_t h = 0; h < map.size(); ++h) out << h << ' ' << map[h] << '\n';
}

/// Embedding lines plus, per target vertex h, the colors of its edges to
/// neighbors with a smaller index (the lines already written), in ascending
/// neighbor order. Every target edge appears exactly once.
inline void write_rainbow_embedding(std::ostream& out, const Graph& h, const std::vector<Vertex>& map,
                                    const ColoredGraph& g) {
  out << "n " << map.size() << '\n';
  for (Vertex v = 0; v < map.size(); ++v) {
    out << v << ' ' << map[v];
    for (Vertex u : h.neighbors(v)) {
      if (u < v) out << ' ' << g.color(map[u], map[v]);
    }
    out << '\n';
  }
}

/// Reads either variant; color columns, if any, are ignored.
inline std::vector<Vertex> read_embedding(std::istream& in) {
  detail::LineReader reader(in);
  std::istringstream hs(reader.require());
  std::string tag;
  std::size_t n = 0;
  if (!(hs >> tag >> n) || tag != "n") throw ParseError(reader.number(), "header must be 'n <count>'");
  std::vector<Vertex> map(n, kNoVertex);
  for (std::size_t i = 0; i < n; ++i) {
    auto vals = detail::parse_values<std::uint64_t>(reader.require(), reader.number());
    if (vals.size() < 2) throw ParseError(reader.number(), "expected 'h g'");
    if (vals[0] >= n) throw ParseError(reader.number(), "target vertex out of range");
    if (map[vals[0]] != kNoVertex) throw ParseError(reader.number(), "target vertex listed twice");
    map[vals[0]] = static_cast<Vertex>(vals[1]);
  }
  return map;
}

}  // namespace spanembed
