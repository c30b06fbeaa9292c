#pragma once

#include <string>

#include "imgm/instance.hpp"

namespace imgm {

// Self-contained RR-set file: a JSON header carrying the instance binding
// (kind, model, params, scales, id tables) followed by binary set records.
// load_rr rebuilds everything selection and reporting need; the graph itself
// is not stored, so a loaded file supports selection but not further growth.
struct RRFileData {
  InstanceKind kind = InstanceKind::im;
  Model model = Model::ic;
  InstanceParams params;
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  double kappa = 0.0;
  double kappa_theta = 0.0;
  double sigma_l_star = 1.0;
  double ln_num_bases = 0.0;
  std::vector<std::int64_t> original_ids;
  std::vector<std::int64_t> edge_src, edge_dst;  // advim only, original ids
  GroundSet ground;
  std::shared_ptr<const MatroidOracle> matroid;
  RRCollection coll{0, 0, 0};

  // Decoded one-line form of an element ("v", "v t", "node v", "edge s d").
  std::string element_line(ElementId id) const;
};

void save_rr(const Instance& inst, const RRCollection& coll, const std::string& path);
RRFileData load_rr(const std::string& path);

}  // namespace imgm
