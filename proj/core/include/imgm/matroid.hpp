#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace imgm {

using ElementId = std::uint32_t;

class PartitionMatroid;

// Independence oracle over a ground set [0, n). Queries are read-only and the
// oracle is safely shareable across threads.
class MatroidOracle {
 public:
  virtual ~MatroidOracle() = default;

  virtual std::size_t ground_size() const = 0;
  virtual std::size_t rank() const = 0;

  // true iff independent ∪ {u} is independent; `independent` is assumed
  // independent and must not contain u.
  virtual bool can_add(std::span<const ElementId> independent, ElementId u) const = 0;

  // Non-null when the matroid is (representable as) a partition matroid;
  // selection algorithms use it for the pruned search path.
  virtual const PartitionMatroid* partition_view() const { return nullptr; }

  bool is_independent(std::span<const ElementId> set) const;
  bool is_base(std::span<const ElementId> set) const;

  // Matroid exchange: for bases b1, b2 and u_i in b1\b2, returns u_j in b2\b1
  // such that b1\{u_i}∪{u_j} and b2\{u_j}∪{u_i} are both bases. Candidates
  // are scanned in ascending id; throws if none qualifies (a contract
  // violation upstream: b1 or b2 was not actually a base).
  virtual ElementId find_exchange(std::span<const ElementId> b1,
                                  std::span<const ElementId> b2, ElementId u_i) const;

  // Greedy over non-increasing weights (ties by smaller id); returns a
  // maximum-weight base.
  std::vector<ElementId> max_weight_base(std::span<const double> weights) const;
};

// Ground set split into h disjoint partitions with per-partition capacities.
// With h=1 this is the uniform matroid. Capacity 0 is allowed (the partition
// contributes nothing to any independent set).
class PartitionMatroid final : public MatroidOracle {
 public:
  PartitionMatroid(std::vector<std::uint32_t> partition_of,
                   std::vector<std::uint32_t> capacities);

  static std::shared_ptr<PartitionMatroid> uniform(std::size_t n, std::uint32_t k);

  std::size_t ground_size() const override { return partition_of_.size(); }
  std::size_t rank() const override { return rank_; }
  bool can_add(std::span<const ElementId> independent, ElementId u) const override;
  const PartitionMatroid* partition_view() const override { return this; }
  ElementId find_exchange(std::span<const ElementId> b1, std::span<const ElementId> b2,
                          ElementId u_i) const override;

  std::size_t num_partitions() const { return capacities_.size(); }
  std::uint32_t partition_of(ElementId u) const { return partition_of_[u]; }
  std::uint32_t capacity(std::uint32_t part) const { return capacities_[part]; }
  // Effective number of picks in a partition: min(capacity, |U_l|).
  std::uint32_t quota(std::uint32_t part) const { return quotas_[part]; }
  std::span<const ElementId> members(std::uint32_t part) const;

 private:
  std::vector<std::uint32_t> partition_of_;
  std::vector<std::uint32_t> capacities_;
  std::vector<std::uint32_t> quotas_;
  std::size_t rank_ = 0;
  // members grouped by partition (CSR)
  std::vector<ElementId> member_data_;
  std::vector<std::size_t> member_off_;
};

// General matroid backed by a caller-supplied independence predicate. The
// rank is computed once by greedy augmentation from the empty set.
class PredicateMatroid final : public MatroidOracle {
 public:
  using Predicate = std::function<bool(std::span<const ElementId>)>;
  PredicateMatroid(std::size_t n, Predicate independent);

  std::size_t ground_size() const override { return n_; }
  std::size_t rank() const override { return rank_; }
  bool can_add(std::span<const ElementId> independent, ElementId u) const override;

 private:
  std::size_t n_;
  Predicate pred_;
  std::size_t rank_ = 0;
};

}  // namespace imgm
