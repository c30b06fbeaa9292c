#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "imgm/graph.hpp"
#include "imgm/rng.hpp"

namespace imgm {

enum class Model { ic, lt };

// Reusable traversal state; stamped arrays avoid per-call clears.
class DiffusionScratch {
 public:
  void ensure(std::size_t n) {
    if (stamp_.size() < n) {
      stamp_.resize(n, 0);
      stamp2_.resize(n, 0);
    }
  }
  // Begins a traversal epoch.
  void begin() {
    if (++cur_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      std::fill(stamp2_.begin(), stamp2_.end(), 0);
      cur_ = 1;
    }
  }
  bool seen(NodeId v) const { return stamp_[v] == cur_; }
  void mark(NodeId v) { stamp_[v] = cur_; }
  bool touched(NodeId v) const { return stamp2_[v] == cur_; }
  void touch(NodeId v) { stamp2_[v] = cur_; }

  std::vector<NodeId> queue;
  std::vector<double> values;  // per-node accumulator / threshold slot

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> stamp2_;
  std::uint32_t cur_ = 0;
};

// One diffusion instance; returns the eventually activated set (seeds
// included). IC samples each examined edge lazily; LT draws one threshold
// per touched node.
std::vector<NodeId> simulate_spread(const Graph& g, Model model,
                                    std::span<const NodeId> seeds, RngStream& rng);

// In-place variant for hot loops; result appended to `out` (cleared first).
void simulate_spread(const Graph& g, Model model, std::span<const NodeId> seeds,
                     RngStream& rng, DiffusionScratch& scratch,
                     std::vector<NodeId>& out);

// LT instance with externally fixed thresholds (one per node) and optional
// blocking masks; deterministic given `lambda`. Used for coupled AdvIM
// evaluation where both the intact and the blocked run share randomness.
void simulate_spread_lt_fixed(const Graph& g, std::span<const NodeId> seeds,
                              std::span<const double> lambda,
                              const std::vector<bool>* blocked_nodes,
                              const std::vector<bool>* blocked_edges,
                              DiffusionScratch& scratch, std::vector<NodeId>& out);

struct SpreadEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::uint64_t sims = 0;
};

// Sample mean and standard error of |Gamma(G,S)| over n_sims independent
// instances using consecutive stream indices of `seed`.
SpreadEstimate estimate_spread(const Graph& g, Model model,
                               std::span<const NodeId> seeds, std::uint64_t n_sims,
                               std::uint64_t seed, std::uint64_t stream_base = 0);

// Stochastic reverse BFS (IC): from each visited node every in-neighbor is
// explored independently with its edge probability. Root always included.
std::vector<NodeId> reverse_step_ic(const Graph& g, NodeId root, RngStream& rng);
void reverse_step_ic(const Graph& g, NodeId root, RngStream& rng,
                     DiffusionScratch& scratch, std::vector<NodeId>& out);

// Reverse LT walk: at node a, pick in-neighbor b with probability p(b,a) and
// stop with probability 1 - sum; also stops on revisit (the repeated node is
// not appended) and on in-degree 0. Nodes and traversed edge ids in order.
struct LtWalk {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;  // edges[i] carries nodes[i+1] -> nodes[i]
};
LtWalk reverse_step_lt(const Graph& g, NodeId root, RngStream& rng);
void reverse_step_lt(const Graph& g, NodeId root, RngStream& rng,
                     DiffusionScratch& scratch, LtWalk& out);

}  // namespace imgm
