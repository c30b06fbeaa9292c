#include "imgm/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "imgm/error.hpp"

namespace imgm::oracle {

namespace {

void check_edge_cap(const Graph& g) {
  if (g.edge_count() > kMaxEdges) {
    throw ValidationError("oracle: graph exceeds the live-edge enumeration cap");
  }
}

// Reachability over a fixed live-edge subset.
std::vector<bool> live_reachable(const Graph& g, std::span<const NodeId> seeds,
                                 const std::vector<bool>& live) {
  std::vector<bool> active(g.node_count(), false);
  std::vector<NodeId> queue;
  for (NodeId s : seeds) {
    if (!active[s]) {
      active[s] = true;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Graph::Arc& a : g.out_arcs(queue[head])) {
      if (live[a.edge] && !active[a.node]) {
        active[a.node] = true;
        queue.push_back(a.node);
      }
    }
  }
  return active;
}

std::vector<double> exact_activation_ic(const Graph& g, std::span<const NodeId> seeds) {
  check_edge_cap(g);
  const std::size_t m = g.edge_count();
  std::vector<double> act(g.node_count(), 0.0);
  std::vector<bool> live(m, false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    double prob = 1.0;
    for (std::size_t e = 0; e < m; ++e) {
      const bool on = (mask >> e) & 1;
      live[e] = on;
      prob *= on ? g.edge(static_cast<EdgeId>(e)).p
                 : 1.0 - g.edge(static_cast<EdgeId>(e)).p;
    }
    if (prob == 0.0) continue;
    const std::vector<bool> active = live_reachable(g, seeds, live);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (active[v]) act[v] += prob;
    }
  }
  return act;
}

// LT live-edge equivalent: each node picks at most one in-edge (edge (b,v)
// with probability p(b,v), none with the remainder). Enumerates the product
// of per-node choices.
std::vector<double> exact_activation_lt(const Graph& g, std::span<const NodeId> seeds) {
  check_edge_cap(g);
  const std::size_t n = g.node_count();
  std::vector<NodeId> choosers;  // nodes with in-degree >= 1
  double config_count = 1.0;
  for (NodeId v = 0; v < n; ++v) {
    if (g.in_degree(v) > 0) {
      choosers.push_back(v);
      config_count *= static_cast<double>(g.in_degree(v) + 1);
      if (config_count > 4194304.0) {
        throw ValidationError("oracle: LT choice enumeration too large");
      }
    }
  }
  std::vector<double> act(n, 0.0);
  std::vector<std::size_t> choice(choosers.size(), 0);  // indeg == "none"
  std::vector<bool> is_seed(n, false);
  for (NodeId s : seeds) is_seed[s] = true;

  // parent[v]: chosen in-neighbor or sentinel
  constexpr NodeId kNone = ~NodeId{0};
  std::vector<NodeId> parent(n, kNone);
  std::vector<int> state(n);  // 0 unknown, 1 active, 2 inactive
  std::vector<NodeId> path;
  while (true) {
    double prob = 1.0;
    for (std::size_t i = 0; i < choosers.size(); ++i) {
      const NodeId v = choosers[i];
      const auto arcs = g.in_arcs(v);
      if (choice[i] < arcs.size()) {
        prob *= arcs[choice[i]].p;
        parent[v] = arcs[choice[i]].node;
      } else {
        prob *= std::max(0.0, 1.0 - g.in_weight_sum(v));
        parent[v] = kNone;
      }
    }
    if (prob > 0.0) {
      std::fill(state.begin(), state.end(), 0);
      for (NodeId v = 0; v < n; ++v) {
        if (state[v] != 0) continue;
        path.clear();
        NodeId cur = v;
        int verdict;
        while (true) {
          if (is_seed[cur]) {
            verdict = 1;
            break;
          }
          if (state[cur] == 1 || state[cur] == 2) {
            verdict = state[cur];
            break;
          }
          if (state[cur] == 3) {  // revisit within this chase: cycle
            verdict = 2;
            break;
          }
          if (parent[cur] == kNone) {
            verdict = 2;
            break;
          }
          state[cur] = 3;
          path.push_back(cur);
          cur = parent[cur];
        }
        for (NodeId u : path) state[u] = verdict;
      }
      for (NodeId v = 0; v < n; ++v) {
        if (is_seed[v] || state[v] == 1) act[v] += prob;
      }
    }
    // next mixed-radix configuration
    std::size_t i = 0;
    for (; i < choosers.size(); ++i) {
      if (++choice[i] <= g.in_degree(choosers[i])) break;
      choice[i] = 0;
    }
    if (i == choosers.size()) break;
  }
  return act;
}

}  // namespace

std::vector<double> exact_activation(const Graph& g, Model model,
                                     std::span<const NodeId> seeds) {
  for (NodeId s : seeds) {
    if (s >= g.node_count()) throw ValidationError("oracle: seed out of range");
  }
  return model == Model::ic ? exact_activation_ic(g, seeds)
                            : exact_activation_lt(g, seeds);
}

double exact_spread(const Graph& g, Model model, std::span<const NodeId> seeds) {
  double s = 0.0;
  for (double p : exact_activation(g, model, seeds)) s += p;
  return s;
}

double brute_f(const RRCollection& coll, std::span<const double> x) {
  const std::size_t n = coll.ground_size();
  if (n > kMaxGround) throw ValidationError("oracle: ground set exceeds 2^n cap");
  std::vector<std::uint32_t> rr_masks(coll.size(), 0);
  for (std::size_t r = 0; r < coll.size(); ++r) {
    for (ElementId u : coll.set(r)) rr_masks[r] |= (1u << u);
  }
  double f = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      prob *= ((mask >> i) & 1) ? x[i] : 1.0 - x[i];
    }
    if (prob == 0.0) continue;
    double lam = 0.0;
    for (std::uint32_t rm : rr_masks) {
      if (rm & mask) lam += 1.0;
    }
    f += prob * lam;
  }
  return f;
}

std::pair<std::vector<ElementId>, std::uint64_t> brute_opt_coverage(
    const RRCollection& coll, const MatroidOracle& m) {
  const std::size_t n = coll.ground_size();
  if (n > kMaxMatroidEnum) throw ValidationError("oracle: matroid enumeration cap");
  std::vector<std::uint32_t> rr_masks(coll.size(), 0);
  for (std::size_t r = 0; r < coll.size(); ++r) {
    for (ElementId u : coll.set(r)) rr_masks[r] |= (1u << u);
  }
  std::uint64_t best = 0;
  std::uint32_t best_mask = 0;
  std::vector<ElementId> members;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    members.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) members.push_back(static_cast<ElementId>(i));
    }
    if (!m.is_independent(members)) continue;
    std::uint64_t lam = 0;
    for (std::uint32_t rm : rr_masks) {
      if (rm & mask) ++lam;
    }
    if (lam > best) {
      best = lam;
      best_mask = mask;
    }
  }
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < n; ++i) {
    if ((best_mask >> i) & 1) out.push_back(static_cast<ElementId>(i));
  }
  return {out, best};
}

double exact_objective(const Instance& inst, std::span<const ElementId> solution) {
  const Graph& g = *inst.graph;
  switch (inst.kind) {
    case InstanceKind::im: {
      std::vector<NodeId> seeds(solution.begin(), solution.end());
      return exact_spread(g, inst.model, seeds);
    }
    case InstanceKind::rm: {
      std::vector<std::vector<NodeId>> per_round(inst.params.rounds);
      for (ElementId id : solution) {
        const ElementCoord c = inst.ground.decode(id);
        per_round[c.round - 1].push_back(c.node);
      }
      double total = 0.0;
      for (std::uint32_t t = 0; t < inst.params.rounds; ++t) {
        total += inst.params.alphas[t] * exact_spread(g, inst.model, per_round[t]);
      }
      return total;
    }
    case InstanceKind::mrim: {
      std::vector<std::vector<NodeId>> per_round(inst.params.rounds);
      for (ElementId id : solution) {
        const ElementCoord c = inst.ground.decode(id);
        per_round[c.round - 1].push_back(c.node);
      }
      std::vector<double> miss(g.node_count(), 1.0);
      for (std::uint32_t t = 0; t < inst.params.rounds; ++t) {
        const std::vector<double> act = exact_activation(g, inst.model, per_round[t]);
        for (NodeId v = 0; v < g.node_count(); ++v) miss[v] *= 1.0 - act[v];
      }
      double total = 0.0;
      for (double mv : miss) total += 1.0 - mv;
      return total;
    }
    case InstanceKind::advim: {
      std::vector<NodeId> blocked_nodes;
      std::vector<EdgeId> blocked_edges;
      for (ElementId id : solution) {
        const ElementCoord c = inst.ground.decode(id);
        if (c.type == ElementCoord::Type::node) {
          blocked_nodes.push_back(c.node);
        } else {
          blocked_edges.push_back(c.edge);
        }
      }
      const double base = exact_spread(g, Model::lt, inst.params.contagious);
      const Graph reduced = remove_from_graph(g, blocked_nodes, blocked_edges);
      return base - exact_spread(reduced, Model::lt, inst.params.contagious);
    }
  }
  throw ValidationError("exact_objective: unknown kind");
}

std::pair<std::vector<ElementId>, double> brute_opt_objective(const Instance& inst) {
  const std::size_t n = inst.ground.size();
  if (n > kMaxMatroidEnum) throw ValidationError("oracle: matroid enumeration cap");
  check_edge_cap(*inst.graph);
  double best = -1.0;
  std::vector<ElementId> best_set;
  std::vector<ElementId> members;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    members.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) members.push_back(static_cast<ElementId>(i));
    }
    if (!inst.matroid->is_independent(members)) continue;
    const double v = exact_objective(inst, members);
    if (v > best) {
      best = v;
      best_set = members;
    }
  }
  return {best_set, best};
}

double brute_weighted_coverage(const RRCollection& coll, std::span<const ElementId> s,
                               std::span<const double> w) {
  if (s.size() > kMaxGround) throw ValidationError("oracle: |S| exceeds 2^|S| cap");
  std::vector<ElementId> sub;
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
    sub.clear();
    double prob = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if ((mask >> i) & 1) {
        prob *= w[s[i]];
        sub.push_back(s[i]);
      } else {
        prob *= 1.0 - w[s[i]];
      }
    }
    if (prob == 0.0) continue;
    total += prob * static_cast<double>(coverage(coll, sub));
  }
  return total;
}

double brute_weighted_f(const RRCollection& coll, std::span<const double> x,
                        std::span<const double> w) {
  const std::size_t n = coll.ground_size();
  if (n > 12) throw ValidationError("oracle: weighted double enumeration cap");
  // outer expectation over Omega(x), inner over the adoption draws
  double f = 0.0;
  std::vector<ElementId> members;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double prob = 1.0;
    members.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) {
        prob *= x[i];
        members.push_back(static_cast<ElementId>(i));
      } else {
        prob *= 1.0 - x[i];
      }
    }
    if (prob == 0.0) continue;
    f += prob * brute_weighted_coverage(coll, members, w);
  }
  return f;
}

LiveEdgeWorld sample_live_edges(const Graph& g, RngStream& rng) {
  LiveEdgeWorld world{&g, std::vector<bool>(g.edge_count(), false)};
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    world.live[e] = rng.next_unit() < g.edge(e).p;
  }
  return world;
}

std::vector<NodeId> reachable(const LiveEdgeWorld& world, std::span<const NodeId> seeds) {
  const std::vector<bool> active = live_reachable(*world.g, seeds, world.live);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < world.g->node_count(); ++v) {
    if (active[v]) out.push_back(v);
  }
  return out;
}

}  // namespace imgm::oracle
