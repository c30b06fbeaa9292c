#pragma once

#include <cstdint>

#include "imgm/graph.hpp"

namespace imgm {

enum class EdgeProb {
  inverse_in_degree,  // p = 1/|N^in(dst)|
  constant,           // p = value
  uniform,            // p ~ U(0, value)
};

// Directed G(n, m): m distinct random edges (no self-loops).
Graph gen_erdos_renyi(std::size_t n, std::size_t m, std::uint64_t seed,
                      EdgeProb prob_mode = EdgeProb::inverse_in_degree,
                      double prob_value = 0.1);

// Preferential attachment: each new node receives arcs_per_node edges from
// existing nodes chosen proportionally to degree + 1.
Graph gen_preferential_attachment(std::size_t n, std::size_t arcs_per_node,
                                  std::uint64_t seed,
                                  EdgeProb prob_mode = EdgeProb::inverse_in_degree,
                                  double prob_value = 0.1);

}  // namespace imgm
