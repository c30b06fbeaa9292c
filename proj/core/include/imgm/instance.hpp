#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "imgm/diffusion.hpp"
#include "imgm/graph.hpp"
#include "imgm/matroid.hpp"

namespace imgm {

enum class InstanceKind { im, rm, mrim, advim };

// AdvIM estimator mode. empty_miss keeps walks that never reach the
// contagious set as empty RR sets, so the scale is exactly |V\A|.
// regenerate resamples until the walk hits A (the scale then has to be
// estimated by Monte Carlo).
enum class AdvMode { empty_miss, regenerate };

const char* to_string(InstanceKind k);
const char* to_string(Model m);
const char* to_string(AdvMode m);

struct InstanceParams {
  // im: cardinality; mrim: per-round cardinality
  std::uint32_t k = 1;
  // rm / mrim: number of campaigns / rounds
  std::uint32_t rounds = 1;
  // rm: unit revenues, size = rounds
  std::vector<double> alphas;
  // rm: per-node caps k_i in [1, rounds]; empty means k for every node
  std::vector<std::uint32_t> node_caps;
  // advim
  std::vector<NodeId> contagious;  // A, dense node ids
  std::uint32_t k_nodes = 0;       // k_v
  std::uint32_t k_edges = 0;       // k_e
  AdvMode adv_mode = AdvMode::empty_miss;
  // regenerate mode scale estimation (rho_G(A) - |A| by simulation)
  std::uint64_t adv_kappa_sims = 10000;
  std::uint64_t adv_kappa_seed = 1;
};

// Decoded element in natural coordinates.
struct ElementCoord {
  enum class Type { node, node_round, edge } type;
  NodeId node = 0;         // node / node_round
  std::uint32_t round = 0; // node_round, 1-based
  EdgeId edge = 0;         // edge
};

// Instance-specific bijection between natural coordinates and dense element
// ids. IM: element = node. RM/MRIM: element = (node, t), id = (t-1)*|V|+node.
// AdvIM: nodes of V\A compacted into [0, |V\A|), then the |E| edges.
class GroundSet {
 public:
  static GroundSet for_im(std::size_t num_nodes);
  static GroundSet for_rounds(InstanceKind kind, std::size_t num_nodes,
                              std::uint32_t rounds);
  static GroundSet for_advim(std::size_t num_nodes, std::size_t num_edges,
                             std::span<const NodeId> contagious);

  std::size_t size() const { return size_; }
  InstanceKind kind() const { return kind_; }
  std::size_t num_nodes() const { return num_nodes_; }
  std::uint32_t rounds() const { return rounds_; }

  ElementId encode_node(NodeId v) const;                        // im
  ElementId encode_node_round(NodeId v, std::uint32_t t) const; // rm/mrim
  ElementId encode_adv_node(NodeId v) const;                    // advim, v not in A
  ElementId encode_adv_edge(EdgeId e) const;                    // advim
  ElementCoord decode(ElementId id) const;

  bool is_contagious(NodeId v) const {
    return kind_ == InstanceKind::advim && node_to_compact_[v] < 0;
  }
  std::size_t num_non_contagious() const { return compact_to_node_.size(); }
  NodeId compact_to_node(std::size_t i) const { return compact_to_node_[i]; }

 private:
  InstanceKind kind_ = InstanceKind::im;
  std::size_t size_ = 0;
  std::size_t num_nodes_ = 0;
  std::size_t num_edges_ = 0;
  std::uint32_t rounds_ = 1;
  std::vector<std::int64_t> node_to_compact_;  // advim; -1 for A
  std::vector<NodeId> compact_to_node_;        // advim
};

// An IM-GM problem binding: graph, diffusion model, ground-set encoding,
// matroid, estimator scale kappa, optimum lower bound sigma_l(S*), and
// ln|B| (number of bases, via log-gamma).
struct Instance {
  std::shared_ptr<const Graph> graph;
  Model model = Model::ic;
  InstanceKind kind = InstanceKind::im;
  InstanceParams params;
  GroundSet ground;
  std::shared_ptr<const MatroidOracle> matroid;
  double kappa = 0.0;        // sigma(S) = kappa/theta * E[Lambda(S)]
  double kappa_theta = 0.0;  // scale used in theta_max (AdvIM: |V\A|)
  double sigma_l_star = 1.0;
  double ln_num_bases = 0.0;
};

Instance make_instance(InstanceKind kind, std::shared_ptr<const Graph> graph,
                       Model model, InstanceParams params);

// A bag of RR sets over element ids with an inverted index. Sets are stored
// sorted and deduplicated; empty sets are permitted (AdvIM empty-miss).
// Generation provenance is (seed, stream_offset + set index).
class RRCollection {
 public:
  RRCollection(std::uint64_t seed, std::uint64_t stream_offset, std::size_t ground_size);

  std::size_t size() const { return off_.size() - 1; }  // theta
  std::size_t ground_size() const { return inv_.size(); }
  std::span<const ElementId> set(std::size_t i) const {
    return {data_.data() + off_[i], off_[i + 1] - off_[i]};
  }
  std::span<const std::uint32_t> sets_containing(ElementId u) const { return inv_[u]; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_offset() const { return stream_offset_; }
  std::uint64_t total_elements() const { return data_.size(); }

  void append(std::span<const ElementId> sorted_set);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_offset_;
  std::vector<ElementId> data_;
  std::vector<std::size_t> off_;
  std::vector<std::vector<std::uint32_t>> inv_;
};

// One RR set from stream (rng_base, stream_offset + index); sorted, deduped.
std::vector<ElementId> generate_rr(const Instance& inst, std::uint64_t index,
                                   std::uint64_t rng_base, std::uint64_t stream_offset = 0);

// Appends RR sets with indices [coll.size(), target); existing sets are never
// regenerated. With threads > 1 the result is identical to sequential growth.
void grow_collection(const Instance& inst, RRCollection& coll, std::size_t target,
                     unsigned threads = 1);

// kappa/theta * Lambda_coll(S).
double estimate_objective(const Instance& inst, const RRCollection& coll,
                          std::span<const ElementId> solution);

struct ObjectiveEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::uint64_t sims = 0;
};

// Simulation estimate of sigma(S): IM spread, RM weighted per-campaign
// spread, MRIM union over independent rounds, AdvIM influence reduction with
// common random numbers. Throws ValidationError if S violates the matroid.
ObjectiveEstimate monte_carlo_objective(const Instance& inst,
                                        std::span<const ElementId> solution,
                                        std::uint64_t n_sims, std::uint64_t seed);

// Natural-coordinate views of a solution, decoded to original graph ids.
// Line formats: im "v", rm/mrim "v t", advim "node v" / "edge s d".
std::string element_to_line(const Instance& inst, ElementId id);
std::vector<ElementId> parse_solution_lines(const Instance& inst,
                                            const std::string& text);

}  // namespace imgm
