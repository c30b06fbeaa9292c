#include "imgm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "imgm/error.hpp"

namespace imgm {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges,
             std::vector<std::int64_t> original_ids)
    : node_count_(node_count), edges_(std::move(edges)), original_ids_(std::move(original_ids)) {
  if (original_ids_.empty()) {
    original_ids_.resize(node_count_);
    for (std::size_t v = 0; v < node_count_; ++v) original_ids_[v] = static_cast<std::int64_t>(v);
  }
  if (original_ids_.size() != node_count_) {
    throw ValidationError("graph: original id table size does not match node count");
  }
  for (const Edge& e : edges_) {
    if (e.src >= node_count_ || e.dst >= node_count_) {
      throw ValidationError("graph: edge endpoint out of range");
    }
    if (!(e.p >= 0.0 && e.p <= 1.0)) {
      throw ValidationError("graph: edge probability outside [0,1]");
    }
  }

  off_out_.assign(node_count_ + 1, 0);
  off_in_.assign(node_count_ + 1, 0);
  for (const Edge& e : edges_) {
    ++off_out_[e.src + 1];
    ++off_in_[e.dst + 1];
  }
  for (std::size_t v = 0; v < node_count_; ++v) {
    off_out_[v + 1] += off_out_[v];
    off_in_[v + 1] += off_in_[v];
  }
  arcs_out_.resize(edges_.size());
  arcs_in_.resize(edges_.size());
  std::vector<std::size_t> pos_out(off_out_.begin(), off_out_.end() - 1);
  std::vector<std::size_t> pos_in(off_in_.begin(), off_in_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    arcs_out_[pos_out[ed.src]++] = Arc{ed.dst, e, ed.p};
    arcs_in_[pos_in[ed.dst]++] = Arc{ed.src, e, ed.p};
  }
  in_weight_sum_.assign(node_count_, 0.0);
  for (const Edge& e : edges_) in_weight_sum_[e.dst] += e.p;
}

namespace {

bool parse_i64(std::string_view tok, std::int64_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

bool parse_f64(std::string_view tok, double& out) {
  // from_chars<double> is available on gcc 11
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

Graph parse_edge_list(const std::string& text, Weighting weighting) {
  struct RawEdge {
    NodeId src, dst;
    double p;
    bool has_p;
  };
  std::vector<RawEdge> raw;
  std::unordered_map<std::int64_t, NodeId> relabel;
  std::vector<std::int64_t> original_ids;
  std::size_t dropped_self_loops = 0;

  auto dense = [&](std::int64_t id) {
    auto it = relabel.find(id);
    if (it != relabel.end()) return it->second;
    NodeId v = static_cast<NodeId>(original_ids.size());
    relabel.emplace(id, v);
    original_ids.push_back(id);
    return v;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (pos > text.size() + 1) break;

    // strip comments and whitespace-only lines
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) toks.push_back(line.substr(i, j - i));
      i = j;
    }
    if (toks.empty()) continue;

    auto fail = [&](const char* what) -> ValidationError {
      return ValidationError("edge list line " + std::to_string(line_no) + ": " + what);
    };
    if (toks.size() < 2 || toks.size() > 3) throw fail("expected 'src dst' or 'src dst p'");
    std::int64_t s, d;
    if (!parse_i64(toks[0], s) || !parse_i64(toks[1], d)) throw fail("malformed node id");
    double p = 1.0;
    bool has_p = false;
    if (toks.size() == 3) {
      if (!parse_f64(toks[2], p)) throw fail("malformed probability");
      if (!(p >= 0.0 && p <= 1.0)) throw fail("probability outside [0,1]");
      has_p = true;
    }
    if (weighting == Weighting::explicit_column && !has_p) {
      throw fail("explicit weighting requires a probability column");
    }
    if (s == d) {
      ++dropped_self_loops;
      continue;
    }
    raw.push_back(RawEdge{dense(s), dense(d), p, has_p});
  }

  if (dropped_self_loops > 0) {
    std::fprintf(stderr, "warning: dropped %zu self-loop(s)\n", dropped_self_loops);
  }

  const std::size_t n = original_ids.size();
  if (weighting == Weighting::inverse_in_degree) {
    std::vector<std::size_t> indeg(n, 0);
    for (const RawEdge& e : raw) ++indeg[e.dst];
    for (RawEdge& e : raw) e.p = 1.0 / static_cast<double>(indeg[e.dst]);
  }
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw) edges.push_back(Edge{e.src, e.dst, e.p});
  return Graph(n, std::move(edges), std::move(original_ids));
}

Graph load_edge_list(const std::string& path, Weighting weighting) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open edge list: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return parse_edge_list(buf.str(), weighting);
}

Graph reverse(const Graph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back(Edge{e.dst, e.src, e.p});
  return Graph(g.node_count(), std::move(edges), g.original_ids());
}

Graph merge_parallel_edges(const Graph& g) {
  std::map<std::pair<NodeId, NodeId>, double> merged;
  for (const Edge& e : g.edges()) merged[{e.src, e.dst}] += e.p;
  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (const auto& [key, p] : merged) {
    if (p > 1.0 + 1e-9) {
      throw ValidationError("merged parallel edges exceed probability 1");
    }
    edges.push_back(Edge{key.first, key.second, std::min(p, 1.0)});
  }
  return Graph(g.node_count(), std::move(edges), g.original_ids());
}

bool satisfies_lt_constraint(const Graph& g, double tol) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.in_weight_sum(v) > 1.0 + tol) return false;
  }
  return true;
}

Graph remove_from_graph(const Graph& g, std::span<const NodeId> drop_nodes,
                        std::span<const EdgeId> drop_edges) {
  std::vector<bool> node_gone(g.node_count(), false);
  for (NodeId v : drop_nodes) node_gone[v] = true;
  std::vector<bool> edge_gone(g.edge_count(), false);
  for (EdgeId e : drop_edges) edge_gone[e] = true;
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (edge_gone[e] || node_gone[ed.src] || node_gone[ed.dst]) continue;
    edges.push_back(ed);
  }
  // Node ids stay stable: removed nodes become isolated, which is
  // equivalent for spread from seeds that are never removed.
  return Graph(g.node_count(), std::move(edges), g.original_ids());
}

}  // namespace imgm
