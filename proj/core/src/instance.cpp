#include "imgm/instance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "imgm/error.hpp"

namespace imgm {

const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::im: return "im";
    case InstanceKind::rm: return "rm";
    case InstanceKind::mrim: return "mrim";
    case InstanceKind::advim: return "advim";
  }
  return "?";
}

const char* to_string(Model m) { return m == Model::ic ? "ic" : "lt"; }

const char* to_string(AdvMode m) {
  return m == AdvMode::empty_miss ? "empty-miss" : "regenerate";
}

// ---------------------------------------------------------------------------
// GroundSet

GroundSet GroundSet::for_im(std::size_t num_nodes) {
  GroundSet g;
  g.kind_ = InstanceKind::im;
  g.num_nodes_ = num_nodes;
  g.size_ = num_nodes;
  return g;
}

GroundSet GroundSet::for_rounds(InstanceKind kind, std::size_t num_nodes,
                                std::uint32_t rounds) {
  GroundSet g;
  g.kind_ = kind;
  g.num_nodes_ = num_nodes;
  g.rounds_ = rounds;
  g.size_ = num_nodes * rounds;
  return g;
}

GroundSet GroundSet::for_advim(std::size_t num_nodes, std::size_t num_edges,
                               std::span<const NodeId> contagious) {
  GroundSet g;
  g.kind_ = InstanceKind::advim;
  g.num_nodes_ = num_nodes;
  g.num_edges_ = num_edges;
  g.node_to_compact_.assign(num_nodes, 0);
  for (NodeId v : contagious) {
    if (v >= num_nodes) throw ValidationError("contagious node out of range");
    g.node_to_compact_[v] = -1;
  }
  for (NodeId v = 0; v < num_nodes; ++v) {
    if (g.node_to_compact_[v] == 0) {
      g.node_to_compact_[v] = static_cast<std::int64_t>(g.compact_to_node_.size());
      g.compact_to_node_.push_back(v);
    }
  }
  g.size_ = g.compact_to_node_.size() + num_edges;
  return g;
}

ElementId GroundSet::encode_node(NodeId v) const { return v; }

ElementId GroundSet::encode_node_round(NodeId v, std::uint32_t t) const {
  return static_cast<ElementId>((t - 1) * num_nodes_ + v);
}

ElementId GroundSet::encode_adv_node(NodeId v) const {
  return static_cast<ElementId>(node_to_compact_[v]);
}

ElementId GroundSet::encode_adv_edge(EdgeId e) const {
  return static_cast<ElementId>(compact_to_node_.size() + e);
}

ElementCoord GroundSet::decode(ElementId id) const {
  ElementCoord c{};
  switch (kind_) {
    case InstanceKind::im:
      c.type = ElementCoord::Type::node;
      c.node = id;
      break;
    case InstanceKind::rm:
    case InstanceKind::mrim:
      c.type = ElementCoord::Type::node_round;
      c.node = static_cast<NodeId>(id % num_nodes_);
      c.round = static_cast<std::uint32_t>(id / num_nodes_) + 1;
      break;
    case InstanceKind::advim:
      if (id < compact_to_node_.size()) {
        c.type = ElementCoord::Type::node;
        c.node = compact_to_node_[id];
      } else {
        c.type = ElementCoord::Type::edge;
        c.edge = static_cast<EdgeId>(id - compact_to_node_.size());
      }
      break;
  }
  return c;
}

// ---------------------------------------------------------------------------
// make_instance

namespace {

double lchoose(double n, double k) {
  if (k < 0 || k > n) throw ValidationError("lchoose: k outside [0,n]");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::shared_ptr<const MatroidOracle> build_matroid(InstanceKind kind,
                                                   const GroundSet& ground,
                                                   const InstanceParams& p,
                                                   std::size_t num_nodes,
                                                   std::size_t num_edges) {
  switch (kind) {
    case InstanceKind::im:
      return PartitionMatroid::uniform(ground.size(), p.k);
    case InstanceKind::rm: {
      // one partition per node: elements (v, 1..T)
      std::vector<std::uint32_t> part(ground.size());
      for (std::size_t id = 0; id < ground.size(); ++id) {
        part[id] = static_cast<std::uint32_t>(id % num_nodes);
      }
      return std::make_shared<PartitionMatroid>(std::move(part), p.node_caps);
    }
    case InstanceKind::mrim: {
      // one partition per round
      std::vector<std::uint32_t> part(ground.size());
      for (std::size_t id = 0; id < ground.size(); ++id) {
        part[id] = static_cast<std::uint32_t>(id / num_nodes);
      }
      return std::make_shared<PartitionMatroid>(
          std::move(part), std::vector<std::uint32_t>(p.rounds, p.k));
    }
    case InstanceKind::advim: {
      const std::size_t nva = ground.num_non_contagious();
      std::vector<std::uint32_t> part(ground.size());
      for (std::size_t id = 0; id < ground.size(); ++id) {
        part[id] = id < nva ? 0u : 1u;
      }
      (void)num_edges;
      return std::make_shared<PartitionMatroid>(
          std::move(part), std::vector<std::uint32_t>{p.k_nodes, p.k_edges});
    }
  }
  throw ValidationError("unknown instance kind");
}

}  // namespace

Instance make_instance(InstanceKind kind, std::shared_ptr<const Graph> graph,
                       Model model, InstanceParams params) {
  if (!graph) throw ValidationError("make_instance: null graph");
  Instance inst;
  inst.kind = kind;
  inst.model = model;

  if (model == Model::lt) {
    // LT semantics merge parallel edges by summing p; then the per-node
    // in-weight cap must hold.
    std::size_t distinct = 0;
    {
      std::vector<std::pair<NodeId, NodeId>> pairs;
      pairs.reserve(graph->edge_count());
      for (const Edge& e : graph->edges()) pairs.emplace_back(e.src, e.dst);
      std::sort(pairs.begin(), pairs.end());
      distinct = std::unique(pairs.begin(), pairs.end()) - pairs.begin();
    }
    if (distinct != graph->edge_count()) {
      graph = std::make_shared<Graph>(merge_parallel_edges(*graph));
    }
    if (!satisfies_lt_constraint(*graph)) {
      throw ValidationError("LT model requires per-node in-probability sums <= 1");
    }
  }
  inst.graph = graph;
  const std::size_t nv = graph->node_count();
  const std::size_t ne = graph->edge_count();
  if (nv == 0) throw ValidationError("make_instance: empty graph");

  switch (kind) {
    case InstanceKind::im: {
      if (params.k < 1 || params.k > nv) {
        throw ValidationError("im: k must be in [1, |V|]");
      }
      inst.ground = GroundSet::for_im(nv);
      inst.kappa = inst.kappa_theta = static_cast<double>(nv);
      inst.sigma_l_star = static_cast<double>(params.k);
      inst.ln_num_bases = lchoose(static_cast<double>(nv), params.k);
      break;
    }
    case InstanceKind::rm: {
      const std::uint32_t t = params.rounds;
      if (t < 1) throw ValidationError("rm: T must be >= 1");
      if (params.alphas.size() != t) throw ValidationError("rm: need T unit revenues");
      for (double a : params.alphas) {
        if (!(a > 0.0)) throw ValidationError("rm: unit revenues must be positive");
      }
      if (params.node_caps.empty()) {
        params.node_caps.assign(nv, params.k);
      }
      if (params.node_caps.size() != nv) {
        throw ValidationError("rm: need one cap per node");
      }
      double ln_b = 0.0;
      for (std::uint32_t c : params.node_caps) {
        if (c < 1 || c > t) throw ValidationError("rm: node caps must be in [1, T]");
        ln_b += lchoose(t, c);
      }
      inst.ground = GroundSet::for_rounds(kind, nv, t);
      double alpha_sum = 0.0, alpha_max = 0.0;
      for (double a : params.alphas) {
        alpha_sum += a;
        alpha_max = std::max(alpha_max, a);
      }
      inst.kappa = inst.kappa_theta = alpha_sum * static_cast<double>(nv);
      inst.sigma_l_star = std::max(1.0, alpha_max * static_cast<double>(nv));
      inst.ln_num_bases = ln_b;
      break;
    }
    case InstanceKind::mrim: {
      if (params.rounds < 1) throw ValidationError("mrim: T must be >= 1");
      if (params.k < 1 || params.k > nv) {
        throw ValidationError("mrim: k must be in [1, |V|]");
      }
      inst.ground = GroundSet::for_rounds(kind, nv, params.rounds);
      inst.kappa = inst.kappa_theta = static_cast<double>(nv);
      inst.sigma_l_star = static_cast<double>(params.rounds) * params.k;
      inst.ln_num_bases = params.rounds * lchoose(static_cast<double>(nv), params.k);
      break;
    }
    case InstanceKind::advim: {
      if (model != Model::lt) {
        throw ValidationError("advim: only the LT model is supported");
      }
      if (params.contagious.empty()) throw ValidationError("advim: A must be nonempty");
      std::sort(params.contagious.begin(), params.contagious.end());
      params.contagious.erase(
          std::unique(params.contagious.begin(), params.contagious.end()),
          params.contagious.end());
      for (NodeId v : params.contagious) {
        if (v >= nv) throw ValidationError("advim: contagious node out of range");
      }
      inst.ground = GroundSet::for_advim(nv, ne, params.contagious);
      const std::size_t nva = inst.ground.num_non_contagious();
      if (nva == 0) throw ValidationError("advim: A covers the whole graph");
      if (params.k_nodes > nva) {
        throw ValidationError("advim: k_v exceeds |V \\ A|");
      }
      if (params.k_edges > ne) {
        throw ValidationError("advim: k_e exceeds |E|");
      }
      inst.kappa_theta = static_cast<double>(nva);
      if (params.adv_mode == AdvMode::empty_miss) {
        inst.kappa = static_cast<double>(nva);
      } else {
        // regenerate mode: kappa = rho_G(A) - |A|, estimated by simulation
        SpreadEstimate est =
            estimate_spread(*graph, model, params.contagious, params.adv_kappa_sims,
                            params.adv_kappa_seed);
        const double k = est.mean - static_cast<double>(params.contagious.size());
        if (!(k > 0.0)) {
          throw ValidationError(
              "advim regenerate mode: estimated rho(A)-|A| is not positive");
        }
        inst.kappa = k;
      }
      inst.sigma_l_star = 1.0;
      inst.ln_num_bases = lchoose(static_cast<double>(nva), params.k_nodes) +
                          lchoose(static_cast<double>(ne), params.k_edges);
      break;
    }
  }
  inst.params = std::move(params);
  inst.matroid = build_matroid(kind, inst.ground, inst.params, nv, ne);
  return inst;
}

// ---------------------------------------------------------------------------
// RRCollection

RRCollection::RRCollection(std::uint64_t seed, std::uint64_t stream_offset,
                           std::size_t ground_size)
    : seed_(seed), stream_offset_(stream_offset), inv_(ground_size) {
  off_.push_back(0);
}

void RRCollection::append(std::span<const ElementId> sorted_set) {
  const std::uint32_t idx = static_cast<std::uint32_t>(size());
  for (ElementId u : sorted_set) {
    if (u >= inv_.size()) throw ValidationError("RR element id out of range");
    inv_[u].push_back(idx);
  }
  data_.insert(data_.end(), sorted_set.begin(), sorted_set.end());
  off_.push_back(data_.size());
}

// ---------------------------------------------------------------------------
// RR generation

namespace {

void reverse_step(const Graph& g, Model model, NodeId root, RngStream& rng,
                  DiffusionScratch& sc, std::vector<NodeId>& nodes, LtWalk& walk) {
  if (model == Model::ic) {
    reverse_step_ic(g, root, rng, sc, nodes);
  } else {
    reverse_step_lt(g, root, rng, sc, walk);
    nodes.assign(walk.nodes.begin(), walk.nodes.end());
  }
}

std::vector<ElementId> generate_one(const Instance& inst, RngStream& rng,
                                    DiffusionScratch& sc) {
  const Graph& g = *inst.graph;
  const std::size_t nv = g.node_count();
  std::vector<ElementId> elems;
  std::vector<NodeId> nodes;
  LtWalk walk;
  switch (inst.kind) {
    case InstanceKind::im: {
      const NodeId root = static_cast<NodeId>(rng.next_below(nv));
      reverse_step(g, inst.model, root, rng, sc, nodes, walk);
      elems.assign(nodes.begin(), nodes.end());
      break;
    }
    case InstanceKind::rm: {
      const NodeId root = static_cast<NodeId>(rng.next_below(nv));
      // campaign by cumulative-sum inversion over the unit revenues
      double alpha_sum = 0.0;
      for (double a : inst.params.alphas) alpha_sum += a;
      const double draw = rng.next_unit() * alpha_sum;
      std::uint32_t campaign = 1;
      double acc = 0.0;
      for (std::uint32_t t = 0; t < inst.params.rounds; ++t) {
        acc += inst.params.alphas[t];
        if (draw < acc) {
          campaign = t + 1;
          break;
        }
        campaign = inst.params.rounds;
      }
      reverse_step(g, inst.model, root, rng, sc, nodes, walk);
      elems.reserve(nodes.size());
      for (NodeId v : nodes) elems.push_back(inst.ground.encode_node_round(v, campaign));
      break;
    }
    case InstanceKind::mrim: {
      const NodeId root = static_cast<NodeId>(rng.next_below(nv));
      for (std::uint32_t t = 1; t <= inst.params.rounds; ++t) {
        reverse_step(g, inst.model, root, rng, sc, nodes, walk);
        for (NodeId v : nodes) elems.push_back(inst.ground.encode_node_round(v, t));
      }
      break;
    }
    case InstanceKind::advim: {
      const std::size_t nva = inst.ground.num_non_contagious();
      const std::uint64_t attempt_cap =
          inst.params.adv_mode == AdvMode::regenerate ? 1000000 : 1;
      for (std::uint64_t attempt = 0; attempt < attempt_cap; ++attempt) {
        const NodeId root =
            inst.ground.compact_to_node(static_cast<std::size_t>(rng.next_below(nva)));
        reverse_step_lt(g, root, rng, sc, walk);
        // first walk node inside A decides relevance; the RR path keeps the
        // preceding nodes and the edges up to and including the A-entering one
        std::size_t hit = walk.nodes.size();
        for (std::size_t i = 1; i < walk.nodes.size(); ++i) {
          if (inst.ground.is_contagious(walk.nodes[i])) {
            hit = i;
            break;
          }
        }
        if (hit == walk.nodes.size()) continue;  // miss
        for (std::size_t i = 0; i < hit; ++i) {
          elems.push_back(inst.ground.encode_adv_node(walk.nodes[i]));
        }
        for (std::size_t i = 0; i < hit; ++i) {
          elems.push_back(inst.ground.encode_adv_edge(walk.edges[i]));
        }
        break;
      }
      if (inst.params.adv_mode == AdvMode::regenerate && elems.empty()) {
        throw ValidationError(
            "advim regenerate mode: walk failed to reach A within the attempt cap");
      }
      break;
    }
  }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

}  // namespace

std::vector<ElementId> generate_rr(const Instance& inst, std::uint64_t index,
                                   std::uint64_t rng_base, std::uint64_t stream_offset) {
  RngStream rng(rng_base, stream_offset + index);
  DiffusionScratch sc;
  return generate_one(inst, rng, sc);
}

void grow_collection(const Instance& inst, RRCollection& coll, std::size_t target,
                     unsigned threads) {
  if (target < coll.size()) {
    throw ValidationError("grow_collection: target below current size");
  }
  const std::size_t from = coll.size();
  const std::size_t count = target - from;
  if (count == 0) return;
  std::vector<std::vector<ElementId>> slots(count);
  auto worker = [&](std::size_t lo, std::size_t hi) {
    DiffusionScratch sc;
    for (std::size_t i = lo; i < hi; ++i) {
      RngStream rng(coll.seed(), coll.stream_offset() + from + i);
      slots[i] = generate_one(inst, rng, sc);
    }
  };
  if (threads <= 1 || count < 2 * threads) {
    worker(0, count);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = std::min<std::size_t>(t * chunk, count);
      const std::size_t hi = std::min<std::size_t>(lo + chunk, count);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& s : slots) coll.append(s);
}

double estimate_objective(const Instance& inst, const RRCollection& coll,
                          std::span<const ElementId> solution) {
  if (coll.size() == 0) throw ValidationError("estimate_objective: empty collection");
  std::vector<bool> hit(coll.size(), false);
  std::uint64_t covered = 0;
  for (ElementId u : solution) {
    for (std::uint32_t r : coll.sets_containing(u)) {
      if (!hit[r]) {
        hit[r] = true;
        ++covered;
      }
    }
  }
  return inst.kappa * static_cast<double>(covered) / static_cast<double>(coll.size());
}

// ---------------------------------------------------------------------------
// Monte Carlo objective

namespace {

struct RunningMean {
  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t n = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  ObjectiveEstimate finish() const {
    ObjectiveEstimate e;
    e.sims = n;
    e.mean = n ? sum / static_cast<double>(n) : 0.0;
    if (n > 1) {
      const double var = std::max(
          0.0, (sum_sq - sum * sum / static_cast<double>(n)) / static_cast<double>(n - 1));
      e.stderr_of_mean = std::sqrt(var / static_cast<double>(n));
    }
    return e;
  }
};

std::vector<std::vector<NodeId>> split_by_round(const Instance& inst,
                                                std::span<const ElementId> solution) {
  std::vector<std::vector<NodeId>> per_round(inst.params.rounds);
  for (ElementId id : solution) {
    const ElementCoord c = inst.ground.decode(id);
    per_round[c.round - 1].push_back(c.node);
  }
  return per_round;
}

}  // namespace

ObjectiveEstimate monte_carlo_objective(const Instance& inst,
                                        std::span<const ElementId> solution,
                                        std::uint64_t n_sims, std::uint64_t seed) {
  if (n_sims < 1) throw ValidationError("monte_carlo_objective: n_sims must be >= 1");
  for (ElementId u : solution) {
    if (u >= inst.ground.size()) throw ValidationError("solution element out of range");
  }
  if (!inst.matroid->is_independent(solution)) {
    throw ValidationError("solution violates the matroid constraint");
  }
  const Graph& g = *inst.graph;
  DiffusionScratch sc;
  std::vector<NodeId> out;
  RunningMean acc;

  switch (inst.kind) {
    case InstanceKind::im: {
      std::vector<NodeId> seeds(solution.begin(), solution.end());
      for (std::uint64_t i = 0; i < n_sims; ++i) {
        RngStream rng(seed, i);
        simulate_spread(g, inst.model, seeds, rng, sc, out);
        acc.add(static_cast<double>(out.size()));
      }
      break;
    }
    case InstanceKind::rm: {
      auto per_round = split_by_round(inst, solution);
      for (std::uint64_t i = 0; i < n_sims; ++i) {
        double total = 0.0;
        for (std::uint32_t t = 0; t < inst.params.rounds; ++t) {
          RngStream rng(seed, i * inst.params.rounds + t);
          simulate_spread(g, inst.model, per_round[t], rng, sc, out);
          total += inst.params.alphas[t] * static_cast<double>(out.size());
        }
        acc.add(total);
      }
      break;
    }
    case InstanceKind::mrim: {
      auto per_round = split_by_round(inst, solution);
      std::vector<std::uint32_t> mark(g.node_count(), 0);
      std::uint32_t epoch = 0;
      for (std::uint64_t i = 0; i < n_sims; ++i) {
        ++epoch;
        std::uint64_t unioned = 0;
        for (std::uint32_t t = 0; t < inst.params.rounds; ++t) {
          RngStream rng(seed, i * inst.params.rounds + t);
          simulate_spread(g, inst.model, per_round[t], rng, sc, out);
          for (NodeId v : out) {
            if (mark[v] != epoch) {
              mark[v] = epoch;
              ++unioned;
            }
          }
        }
        acc.add(static_cast<double>(unioned));
      }
      break;
    }
    case InstanceKind::advim: {
      std::vector<bool> blocked_nodes(g.node_count(), false);
      std::vector<bool> blocked_edges(g.edge_count(), false);
      for (ElementId id : solution) {
        const ElementCoord c = inst.ground.decode(id);
        if (c.type == ElementCoord::Type::node) {
          blocked_nodes[c.node] = true;
        } else {
          blocked_edges[c.edge] = true;
        }
      }
      std::vector<double> lambda(g.node_count());
      std::vector<NodeId> out2;
      for (std::uint64_t i = 0; i < n_sims; ++i) {
        RngStream rng(seed, i);
        for (double& l : lambda) l = rng.next_unit();
        // common random numbers: both runs share the thresholds
        simulate_spread_lt_fixed(g, inst.params.contagious, lambda, nullptr, nullptr,
                                 sc, out);
        simulate_spread_lt_fixed(g, inst.params.contagious, lambda, &blocked_nodes,
                                 &blocked_edges, sc, out2);
        acc.add(static_cast<double>(out.size()) - static_cast<double>(out2.size()));
      }
      break;
    }
  }
  return acc.finish();
}

// ---------------------------------------------------------------------------
// Solution text round-trip

std::string element_to_line(const Instance& inst, ElementId id) {
  const ElementCoord c = inst.ground.decode(id);
  const Graph& g = *inst.graph;
  std::ostringstream os;
  switch (c.type) {
    case ElementCoord::Type::node:
      if (inst.kind == InstanceKind::advim) {
        os << "node " << g.original_id(c.node);
      } else {
        os << g.original_id(c.node);
      }
      break;
    case ElementCoord::Type::node_round:
      os << g.original_id(c.node) << ' ' << c.round;
      break;
    case ElementCoord::Type::edge: {
      const Edge& e = g.edge(c.edge);
      os << "edge " << g.original_id(e.src) << ' ' << g.original_id(e.dst);
      break;
    }
  }
  return os.str();
}

std::vector<ElementId> parse_solution_lines(const Instance& inst,
                                            const std::string& text) {
  const Graph& g = *inst.graph;
  std::unordered_map<std::int64_t, NodeId> to_dense;
  for (NodeId v = 0; v < g.node_count(); ++v) to_dense[g.original_id(v)] = v;
  std::unordered_map<std::int64_t, EdgeId> edge_lookup;
  if (inst.kind == InstanceKind::advim) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      edge_lookup[static_cast<std::int64_t>(ed.src) * g.node_count() + ed.dst] = e;
    }
  }
  auto dense_node = [&](std::int64_t orig, std::size_t line_no) {
    auto it = to_dense.find(orig);
    if (it == to_dense.end()) {
      throw ValidationError("solution line " + std::to_string(line_no) +
                            ": unknown node id");
    }
    return it->second;
  };

  std::vector<ElementId> out;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    auto fail = [&](const char* what) {
      return ValidationError("solution line " + std::to_string(line_no) + ": " + what);
    };
    auto to_i64 = [&](const std::string& s) -> std::int64_t {
      try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
      } catch (const std::exception&) {
        throw fail("malformed node id");
      }
    };
    switch (inst.kind) {
      case InstanceKind::im: {
        out.push_back(inst.ground.encode_node(dense_node(to_i64(tok), line_no)));
        break;
      }
      case InstanceKind::rm:
      case InstanceKind::mrim: {
        std::uint32_t round;
        if (!(ls >> round)) throw fail("expected 'node round'");
        if (round < 1 || round > inst.params.rounds) throw fail("round out of range");
        out.push_back(inst.ground.encode_node_round(dense_node(to_i64(tok), line_no),
                                                    round));
        break;
      }
      case InstanceKind::advim: {
        if (tok == "node") {
          std::int64_t v;
          if (!(ls >> v)) throw fail("expected 'node v'");
          const NodeId dense = dense_node(v, line_no);
          if (inst.ground.is_contagious(dense)) throw fail("node is in A");
          out.push_back(inst.ground.encode_adv_node(dense));
        } else if (tok == "edge") {
          std::int64_t s, d;
          if (!(ls >> s >> d)) throw fail("expected 'edge s d'");
          const NodeId ds = dense_node(s, line_no), dd = dense_node(d, line_no);
          auto it = edge_lookup.find(static_cast<std::int64_t>(ds) * g.node_count() + dd);
          if (it == edge_lookup.end()) throw fail("unknown edge");
          out.push_back(inst.ground.encode_adv_edge(it->second));
        } else {
          throw fail("expected 'node v' or 'edge s d'");
        }
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace imgm
