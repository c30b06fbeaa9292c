#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace imgm {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId src;
  NodeId dst;
  double p;  // activation probability in [0,1]
};

enum class Weighting {
  explicit_column,    // third column required
  inverse_in_degree,  // p = 1/|N^in(dst)|, computed after the full load
};

// Immutable directed graph with per-edge probabilities and CSR adjacency in
// both orientations. Node ids are dense; the original file ids are retained
// for reporting.
class Graph {
 public:
  struct Arc {
    NodeId node;  // neighbor (dst for out arcs, src for in arcs)
    EdgeId edge;  // index into edges()
    double p;
  };

  Graph() = default;
  Graph(std::size_t node_count, std::vector<Edge> edges,
        std::vector<std::int64_t> original_ids = {});

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Arc> out_arcs(NodeId v) const {
    return {arcs_out_.data() + off_out_[v], off_out_[v + 1] - off_out_[v]};
  }
  std::span<const Arc> in_arcs(NodeId v) const {
    return {arcs_in_.data() + off_in_[v], off_in_[v + 1] - off_in_[v]};
  }
  std::size_t in_degree(NodeId v) const { return off_in_[v + 1] - off_in_[v]; }
  std::size_t out_degree(NodeId v) const { return off_out_[v + 1] - off_out_[v]; }

  // Sum of in-edge probabilities (the LT stop rule uses 1 minus this).
  double in_weight_sum(NodeId v) const { return in_weight_sum_[v]; }

  // Dense id -> id from the input file. Identity when built synthetically.
  std::int64_t original_id(NodeId v) const { return original_ids_[v]; }
  const std::vector<std::int64_t>& original_ids() const { return original_ids_; }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> off_out_, off_in_;
  std::vector<Arc> arcs_out_, arcs_in_;
  std::vector<double> in_weight_sum_;
  std::vector<std::int64_t> original_ids_;
};

// Whitespace-separated edge list: "src dst" or "src dst p", comments start
// with '#'. Sparse ids are relabeled densely in order of first appearance.
// Self-loops are dropped (with a warning on stderr); parallel edges are kept.
Graph load_edge_list(const std::string& path, Weighting weighting);

// Parse from an already-read buffer; used by the loader and by tests.
Graph parse_edge_list(const std::string& text, Weighting weighting);

// Every edge (u,v,p) becomes (v,u,p).
Graph reverse(const Graph& g);

// Merge parallel edges with equal (src,dst) by summing p (LT semantics).
Graph merge_parallel_edges(const Graph& g);

// LT admissibility: sum of in-probabilities <= 1 + tol for every node.
bool satisfies_lt_constraint(const Graph& g, double tol = 1e-9);

// Copy with the given nodes and edges removed (used by the AdvIM oracle).
Graph remove_from_graph(const Graph& g, std::span<const NodeId> drop_nodes,
                        std::span<const EdgeId> drop_edges);

}  // namespace imgm
