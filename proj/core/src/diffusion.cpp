#include "imgm/diffusion.hpp"

#include <algorithm>
#include <cmath>

#include "imgm/error.hpp"

namespace imgm {

namespace {

void check_seeds(const Graph& g, std::span<const NodeId> seeds) {
  for (NodeId s : seeds) {
    if (s >= g.node_count()) throw ValidationError("seed node out of range");
  }
}

void spread_ic(const Graph& g, std::span<const NodeId> seeds, RngStream& rng,
               DiffusionScratch& sc, std::vector<NodeId>& out) {
  sc.ensure(g.node_count());
  sc.begin();
  out.clear();
  sc.queue.clear();
  for (NodeId s : seeds) {
    if (!sc.seen(s)) {
      sc.mark(s);
      sc.queue.push_back(s);
      out.push_back(s);
    }
  }
  for (std::size_t head = 0; head < sc.queue.size(); ++head) {
    NodeId u = sc.queue[head];
    for (const Graph::Arc& a : g.out_arcs(u)) {
      if (sc.seen(a.node)) continue;
      if (rng.next_unit() < a.p) {
        sc.mark(a.node);
        sc.queue.push_back(a.node);
        out.push_back(a.node);
      }
    }
  }
}

// Lazy LT: thresholds drawn on first touch; activation when the accumulated
// in-weight of active neighbors exceeds the threshold.
void spread_lt(const Graph& g, std::span<const NodeId> seeds, RngStream& rng,
               DiffusionScratch& sc, std::vector<NodeId>& out) {
  const std::size_t n = g.node_count();
  sc.ensure(n);
  if (sc.values.size() < 2 * n) sc.values.resize(2 * n);
  // values[v]: accumulated weight; values[n+v]: threshold
  sc.begin();
  out.clear();
  sc.queue.clear();
  std::vector<NodeId>& q = sc.queue;
  for (NodeId s : seeds) {
    if (!sc.seen(s)) {
      sc.mark(s);
      q.push_back(s);
      out.push_back(s);
    }
  }
  for (std::size_t head = 0; head < q.size(); ++head) {
    NodeId u = q[head];
    for (const Graph::Arc& a : g.out_arcs(u)) {
      NodeId v = a.node;
      if (sc.seen(v)) continue;
      if (!sc.touched(v)) {
        sc.touch(v);
        sc.values[v] = 0.0;
        sc.values[n + v] = rng.next_unit();
      }
      sc.values[v] += a.p;
      if (sc.values[v] > sc.values[n + v]) {
        sc.mark(v);
        q.push_back(v);
        out.push_back(v);
      }
    }
  }
}

}  // namespace

std::vector<NodeId> simulate_spread(const Graph& g, Model model,
                                    std::span<const NodeId> seeds, RngStream& rng) {
  DiffusionScratch sc;
  std::vector<NodeId> out;
  simulate_spread(g, model, seeds, rng, sc, out);
  return out;
}

void simulate_spread(const Graph& g, Model model, std::span<const NodeId> seeds,
                     RngStream& rng, DiffusionScratch& sc, std::vector<NodeId>& out) {
  check_seeds(g, seeds);
  if (model == Model::ic) {
    spread_ic(g, seeds, rng, sc, out);
  } else {
    spread_lt(g, seeds, rng, sc, out);
  }
}

void simulate_spread_lt_fixed(const Graph& g, std::span<const NodeId> seeds,
                              std::span<const double> lambda,
                              const std::vector<bool>* blocked_nodes,
                              const std::vector<bool>* blocked_edges,
                              DiffusionScratch& sc, std::vector<NodeId>& out) {
  check_seeds(g, seeds);
  const std::size_t n = g.node_count();
  sc.ensure(n);
  if (sc.values.size() < n) sc.values.resize(n);
  sc.begin();
  out.clear();
  sc.queue.clear();
  std::vector<NodeId>& q = sc.queue;
  for (NodeId s : seeds) {
    if (blocked_nodes && (*blocked_nodes)[s]) continue;
    if (!sc.seen(s)) {
      sc.mark(s);
      q.push_back(s);
      out.push_back(s);
    }
  }
  for (std::size_t head = 0; head < q.size(); ++head) {
    NodeId u = q[head];
    for (const Graph::Arc& a : g.out_arcs(u)) {
      NodeId v = a.node;
      if (sc.seen(v)) continue;
      if (blocked_edges && (*blocked_edges)[a.edge]) continue;
      if (blocked_nodes && (*blocked_nodes)[v]) continue;
      if (!sc.touched(v)) {
        sc.touch(v);
        sc.values[v] = 0.0;
      }
      sc.values[v] += a.p;
      if (sc.values[v] > lambda[v]) {
        sc.mark(v);
        q.push_back(v);
        out.push_back(v);
      }
    }
  }
}

SpreadEstimate estimate_spread(const Graph& g, Model model,
                               std::span<const NodeId> seeds, std::uint64_t n_sims,
                               std::uint64_t seed, std::uint64_t stream_base) {
  if (n_sims < 1) throw ValidationError("estimate_spread: n_sims must be >= 1");
  check_seeds(g, seeds);
  DiffusionScratch sc;
  std::vector<NodeId> out;
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t i = 0; i < n_sims; ++i) {
    RngStream rng(seed, stream_base + i);
    simulate_spread(g, model, seeds, rng, sc, out);
    const double v = static_cast<double>(out.size());
    sum += v;
    sum_sq += v * v;
  }
  SpreadEstimate est;
  est.sims = n_sims;
  est.mean = sum / static_cast<double>(n_sims);
  if (n_sims > 1) {
    const double var =
        std::max(0.0, (sum_sq - sum * sum / static_cast<double>(n_sims)) /
                          static_cast<double>(n_sims - 1));
    est.stderr_of_mean = std::sqrt(var / static_cast<double>(n_sims));
  }
  return est;
}

std::vector<NodeId> reverse_step_ic(const Graph& g, NodeId root, RngStream& rng) {
  DiffusionScratch sc;
  std::vector<NodeId> out;
  reverse_step_ic(g, root, rng, sc, out);
  return out;
}

void reverse_step_ic(const Graph& g, NodeId root, RngStream& rng,
                     DiffusionScratch& sc, std::vector<NodeId>& out) {
  if (root >= g.node_count()) throw ValidationError("root node out of range");
  sc.ensure(g.node_count());
  sc.begin();
  out.clear();
  sc.queue.clear();
  sc.mark(root);
  sc.queue.push_back(root);
  out.push_back(root);
  for (std::size_t head = 0; head < sc.queue.size(); ++head) {
    NodeId u = sc.queue[head];
    for (const Graph::Arc& a : g.in_arcs(u)) {
      if (sc.seen(a.node)) continue;
      if (rng.next_unit() < a.p) {
        sc.mark(a.node);
        sc.queue.push_back(a.node);
        out.push_back(a.node);
      }
    }
  }
}

LtWalk reverse_step_lt(const Graph& g, NodeId root, RngStream& rng) {
  DiffusionScratch sc;
  LtWalk w;
  reverse_step_lt(g, root, rng, sc, w);
  return w;
}

void reverse_step_lt(const Graph& g, NodeId root, RngStream& rng,
                     DiffusionScratch& sc, LtWalk& out) {
  if (root >= g.node_count()) throw ValidationError("root node out of range");
  sc.ensure(g.node_count());
  sc.begin();
  out.nodes.clear();
  out.edges.clear();
  NodeId cur = root;
  sc.mark(cur);
  out.nodes.push_back(cur);
  while (true) {
    auto arcs = g.in_arcs(cur);
    if (arcs.empty()) break;
    // pick in-neighbor b w.p. p(b,cur); stop w.p. 1 - sum
    const double draw = rng.next_unit();
    double acc = 0.0;
    const Graph::Arc* chosen = nullptr;
    for (const Graph::Arc& a : arcs) {
      acc += a.p;
      if (draw < acc) {
        chosen = &a;
        break;
      }
    }
    if (chosen == nullptr) break;  // stop probability 1 - sum p
    if (sc.seen(chosen->node)) break;  // cycle: do not append the revisit
    cur = chosen->node;
    sc.mark(cur);
    out.nodes.push_back(cur);
    out.edges.push_back(chosen->edge);
  }
}

}  // namespace imgm
