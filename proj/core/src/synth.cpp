#include "imgm/synth.hpp"

#include <algorithm>
#include <unordered_set>

#include "imgm/error.hpp"
#include "imgm/rng.hpp"

namespace imgm {

namespace {

std::vector<Edge> finish_probabilities(std::size_t n, std::vector<Edge> edges,
                                       EdgeProb mode, double value, RngStream& rng) {
  switch (mode) {
    case EdgeProb::inverse_in_degree: {
      std::vector<std::size_t> indeg(n, 0);
      for (const Edge& e : edges) ++indeg[e.dst];
      for (Edge& e : edges) e.p = 1.0 / static_cast<double>(indeg[e.dst]);
      break;
    }
    case EdgeProb::constant:
      for (Edge& e : edges) e.p = value;
      break;
    case EdgeProb::uniform:
      for (Edge& e : edges) e.p = rng.next_unit() * value;
      break;
  }
  return edges;
}

}  // namespace

Graph gen_erdos_renyi(std::size_t n, std::size_t m, std::uint64_t seed,
                      EdgeProb prob_mode, double prob_value) {
  if (n < 2) throw ValidationError("gen_erdos_renyi: need at least 2 nodes");
  const std::size_t max_edges = n * (n - 1);
  if (m > max_edges) throw ValidationError("gen_erdos_renyi: too many edges requested");
  RngStream rng(seed, 0);
  std::unordered_set<std::uint64_t> used;
  used.reserve(m * 2);
  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    const NodeId s = static_cast<NodeId>(rng.next_below(n));
    const NodeId d = static_cast<NodeId>(rng.next_below(n));
    if (s == d) continue;
    const std::uint64_t key = static_cast<std::uint64_t>(s) * n + d;
    if (!used.insert(key).second) continue;
    edges.push_back(Edge{s, d, 0.0});
  }
  return Graph(n, finish_probabilities(n, std::move(edges), prob_mode, prob_value, rng));
}

Graph gen_preferential_attachment(std::size_t n, std::size_t arcs_per_node,
                                  std::uint64_t seed, EdgeProb prob_mode,
                                  double prob_value) {
  if (n < 2 || arcs_per_node < 1) {
    throw ValidationError("gen_preferential_attachment: bad parameters");
  }
  RngStream rng(seed, 0);
  std::vector<Edge> edges;
  // degree + 1 weighting via a repeated-endpoint pool
  std::vector<NodeId> pool;
  pool.push_back(0);
  for (NodeId v = 1; v < n; ++v) {
    std::unordered_set<NodeId> targets;
    const std::size_t want = std::min<std::size_t>(arcs_per_node, v);
    while (targets.size() < want) {
      NodeId t;
      if (rng.next_unit() < 0.5 || pool.empty()) {
        t = static_cast<NodeId>(rng.next_below(v));
      } else {
        t = pool[rng.next_below(pool.size())];
      }
      if (t == v) continue;
      targets.insert(t);
    }
    for (NodeId t : targets) {
      // influence flows from the established node to the newcomer
      edges.push_back(Edge{t, v, 0.0});
      pool.push_back(t);
      pool.push_back(v);
    }
  }
  return Graph(n, finish_probabilities(n, std::move(edges), prob_mode, prob_value, rng));
}

}  // namespace imgm
