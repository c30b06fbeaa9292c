#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "imgm/instance.hpp"

namespace imgm::oracle {

// Brute-force references for tests; hard size caps, never on hot paths.
inline constexpr std::size_t kMaxEdges = 20;       // live-edge enumeration
inline constexpr std::size_t kMaxGround = 16;      // subset enumeration
inline constexpr std::size_t kMaxMatroidEnum = 12; // independent-set scans

// Exact per-node activation probabilities by enumerating all live-edge
// (IC: 2^|E| subsets; LT: per-node in-edge choices) configurations.
std::vector<double> exact_activation(const Graph& g, Model model,
                                     std::span<const NodeId> seeds);

// Expected |Gamma(G,S)| = sum of activation probabilities.
double exact_spread(const Graph& g, Model model, std::span<const NodeId> seeds);

// Exact multilinear extension by enumerating all 2^n subsets of the ground set.
double brute_f(const RRCollection& coll, std::span<const double> x);

// Exhaustive scan of all independent sets; ties by first bitmask order.
std::pair<std::vector<ElementId>, std::uint64_t> brute_opt_coverage(
    const RRCollection& coll, const MatroidOracle& m);

// Exact objective sigma(S) for a solution, via the live-edge machinery.
double exact_objective(const Instance& inst, std::span<const ElementId> solution);

// Exhaustive argmax of exact_objective over all independent sets.
std::pair<std::vector<ElementId>, double> brute_opt_objective(const Instance& inst);

// Weighted coverage Lambda^W(S) by enumerating the 2^|S| adoption outcomes.
double brute_weighted_coverage(const RRCollection& coll, std::span<const ElementId> s,
                               std::span<const double> w);

// Exact F^W(x): expectation over Omega(x) and the per-element adoptions,
// i.e. the plain multilinear extension with marginals x[i]*w[i].
double brute_weighted_f(const RRCollection& coll, std::span<const double> x,
                        std::span<const double> w);

// Pre-sampled live-edge IC world: coupled-randomness reachability used by
// monotonicity property tests.
struct LiveEdgeWorld {
  const Graph* g;
  std::vector<bool> live;  // per edge
};
LiveEdgeWorld sample_live_edges(const Graph& g, RngStream& rng);
std::vector<NodeId> reachable(const LiveEdgeWorld& world, std::span<const NodeId> seeds);

}  // namespace imgm::oracle
