#include "imgm/matroid.hpp"

#include <algorithm>
#include <numeric>

#include "imgm/error.hpp"

namespace imgm {

bool MatroidOracle::is_independent(std::span<const ElementId> set) const {
  // Downward closure makes the prefix fold exact: a set is independent iff
  // every prefix extension passes can_add.
  std::vector<ElementId> prefix;
  prefix.reserve(set.size());
  for (ElementId u : set) {
    if (u >= ground_size()) return false;
    if (std::find(prefix.begin(), prefix.end(), u) != prefix.end()) return false;
    if (!can_add(prefix, u)) return false;
    prefix.push_back(u);
  }
  return true;
}

bool MatroidOracle::is_base(std::span<const ElementId> set) const {
  return set.size() == rank() && is_independent(set);
}

namespace {

std::vector<ElementId> sorted_difference(std::span<const ElementId> a,
                                         std::span<const ElementId> b) {
  std::vector<ElementId> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<ElementId> out;
  std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out;
}

std::vector<ElementId> with_swap(std::span<const ElementId> base, ElementId out_el,
                                 ElementId in_el) {
  std::vector<ElementId> r;
  r.reserve(base.size());
  for (ElementId u : base) {
    if (u != out_el) r.push_back(u);
  }
  r.push_back(in_el);
  return r;
}

}  // namespace

ElementId MatroidOracle::find_exchange(std::span<const ElementId> b1,
                                       std::span<const ElementId> b2,
                                       ElementId u_i) const {
  for (ElementId u_j : sorted_difference(b2, b1)) {
    if (is_base(with_swap(b1, u_i, u_j)) && is_base(with_swap(b2, u_j, u_i))) {
      return u_j;
    }
  }
  throw ValidationError("find_exchange: no exchange candidate; inputs were not bases");
}

std::vector<ElementId> MatroidOracle::max_weight_base(
    std::span<const double> weights) const {
  if (weights.size() != ground_size()) {
    throw ValidationError("max_weight_base: weight vector length mismatch");
  }
  std::vector<ElementId> order(ground_size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return a < b;
  });
  std::vector<ElementId> base;
  base.reserve(rank());
  for (ElementId u : order) {
    if (base.size() == rank()) break;
    if (can_add(base, u)) base.push_back(u);
  }
  return base;
}

PartitionMatroid::PartitionMatroid(std::vector<std::uint32_t> partition_of,
                                   std::vector<std::uint32_t> capacities)
    : partition_of_(std::move(partition_of)), capacities_(std::move(capacities)) {
  std::vector<std::size_t> sizes(capacities_.size(), 0);
  for (std::uint32_t p : partition_of_) {
    if (p >= capacities_.size()) throw ValidationError("partition index out of range");
    ++sizes[p];
  }
  quotas_.resize(capacities_.size());
  for (std::size_t l = 0; l < capacities_.size(); ++l) {
    quotas_[l] = static_cast<std::uint32_t>(
        std::min<std::size_t>(capacities_[l], sizes[l]));
    rank_ += quotas_[l];
  }
  member_off_.assign(capacities_.size() + 1, 0);
  for (std::uint32_t p : partition_of_) ++member_off_[p + 1];
  for (std::size_t l = 0; l < capacities_.size(); ++l) member_off_[l + 1] += member_off_[l];
  member_data_.resize(partition_of_.size());
  std::vector<std::size_t> pos(member_off_.begin(), member_off_.end() - 1);
  for (ElementId u = 0; u < partition_of_.size(); ++u) {
    member_data_[pos[partition_of_[u]]++] = u;
  }
}

std::shared_ptr<PartitionMatroid> PartitionMatroid::uniform(std::size_t n,
                                                            std::uint32_t k) {
  return std::make_shared<PartitionMatroid>(std::vector<std::uint32_t>(n, 0),
                                            std::vector<std::uint32_t>{k});
}

bool PartitionMatroid::can_add(std::span<const ElementId> independent,
                               ElementId u) const {
  if (u >= partition_of_.size()) throw ValidationError("can_add: element out of range");
  const std::uint32_t part = partition_of_[u];
  std::uint32_t used = 0;
  for (ElementId v : independent) {
    if (partition_of_[v] == part) ++used;
  }
  return used < capacities_[part];
}

ElementId PartitionMatroid::find_exchange(std::span<const ElementId> b1,
                                          std::span<const ElementId> b2,
                                          ElementId u_i) const {
  const std::uint32_t part = partition_of_[u_i];
  std::vector<ElementId> cand = sorted_difference(b2, b1);
  for (ElementId u_j : cand) {
    if (partition_of_[u_j] == part) return u_j;
  }
  throw ValidationError("find_exchange: no candidate in partition; inputs were not bases");
}

std::span<const ElementId> PartitionMatroid::members(std::uint32_t part) const {
  return {member_data_.data() + member_off_[part],
          member_off_[part + 1] - member_off_[part]};
}

PredicateMatroid::PredicateMatroid(std::size_t n, Predicate independent)
    : n_(n), pred_(std::move(independent)) {
  // rank by greedy augmentation from the empty set
  std::vector<ElementId> acc;
  for (ElementId u = 0; u < n_; ++u) {
    acc.push_back(u);
    if (!pred_(acc)) acc.pop_back();
  }
  rank_ = acc.size();
}

bool PredicateMatroid::can_add(std::span<const ElementId> independent,
                               ElementId u) const {
  if (u >= n_) throw ValidationError("can_add: element out of range");
  std::vector<ElementId> probe(independent.begin(), independent.end());
  probe.push_back(u);
  return pred_(probe);
}

}  // namespace imgm
