#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "imgm/instance.hpp"
#include "imgm/matroid.hpp"

namespace imgm {

// Factors with 1-x <= tau are tracked by count instead of entering the
// product, so a coordinate reaching 1 never causes 0/0 in the derivative.
inline constexpr double kTauZero = 1e-12;

namespace detail {

struct UnitWeightPolicy {
  double factor(ElementId, double xv) const { return 1.0 - xv; }
  double scale(ElementId) const { return 1.0; }
};

struct ElementWeightPolicy {
  std::span<const double> w;
  double factor(ElementId i, double xv) const { return 1.0 - xv * w[i]; }
  double scale(ElementId i) const { return w[i]; }
};

// Per-RR-set residual products q_R maintained incrementally under coordinate
// updates of the fractional solution.
template <class Policy>
class ProductCache {
 public:
  ProductCache(const RRCollection& coll, Policy policy)
      : coll_(&coll), policy_(policy), prod_(coll.size(), 1.0), zeros_(coll.size(), 0) {}

  void reset() {
    prod_.assign(coll_->size(), 1.0);
    zeros_.assign(coll_->size(), 0);
  }

  // Exact products for an arbitrary x (tests and cold starts).
  void rebuild(std::span<const double> x) {
    reset();
    for (std::size_t r = 0; r < coll_->size(); ++r) {
      for (ElementId i : coll_->set(r)) {
        const double f = policy_.factor(i, x[i]);
        if (f <= kTauZero) {
          ++zeros_[r];
        } else {
          prod_[r] *= f;
        }
      }
    }
  }

  // Swap the factor of coordinate i: old value out, new value in.
  void update(ElementId i, double old_x, double new_x) {
    const double fo = policy_.factor(i, old_x);
    const double fn = policy_.factor(i, new_x);
    const bool zo = fo <= kTauZero;
    const bool zn = fn <= kTauZero;
    for (std::uint32_t r : coll_->sets_containing(i)) {
      if (zo) {
        --zeros_[r];
      } else {
        prod_[r] /= fo;
      }
      if (zn) {
        ++zeros_[r];
      } else {
        prod_[r] *= fn;
      }
    }
  }

  double q(std::size_t r) const { return zeros_[r] ? 0.0 : prod_[r]; }

  // F(x) = sum_R (1 - q_R)
  double f_value() const {
    double f = 0.0;
    for (std::size_t r = 0; r < prod_.size(); ++r) {
      f += zeros_[r] ? 1.0 : 1.0 - prod_[r];
    }
    return f;
  }

  // dF/dx[i]: per R containing i, the product over the other members.
  double derivative(std::span<const double> x, ElementId i) const {
    const double fi = policy_.factor(i, x[i]);
    const bool zi = fi <= kTauZero;
    double s = 0.0;
    for (std::uint32_t r : coll_->sets_containing(i)) {
      if (zi) {
        if (zeros_[r] == 1) s += prod_[r];
      } else {
        if (zeros_[r] == 0) s += prod_[r];
      }
    }
    if (!zi) s /= fi;
    return policy_.scale(i) * s;
  }

  // sum over R containing i of q_R (tightened-bound weights).
  double q_degree(ElementId i) const {
    double s = 0.0;
    for (std::uint32_t r : coll_->sets_containing(i)) {
      if (zeros_[r] == 0) s += prod_[r];
    }
    return s;
  }

  const RRCollection& coll() const { return *coll_; }
  const Policy& policy() const { return policy_; }

 private:
  const RRCollection* coll_;
  Policy policy_;
  std::vector<double> prod_;
  std::vector<std::uint32_t> zeros_;
};

}  // namespace detail

class QCache : public detail::ProductCache<detail::UnitWeightPolicy> {
 public:
  explicit QCache(const RRCollection& coll)
      : ProductCache(coll, detail::UnitWeightPolicy{}) {}
};

// Weighted variant: factors (1 - x[i]*w[i]) and derivative scale w[i].
class WQCache : public detail::ProductCache<detail::ElementWeightPolicy> {
 public:
  WQCache(const RRCollection& coll, std::span<const double> w)
      : ProductCache(coll, detail::ElementWeightPolicy{w}) {}
};

// Number of RR sets intersecting S.
std::uint64_t coverage(const RRCollection& coll, std::span<const ElementId> s);

double multilinear_f(const RRCollection& coll, const QCache& cache);
double multilinear_f(const RRCollection& coll, const WQCache& cache);

struct SelectionResult {
  std::vector<ElementId> chosen;  // sorted
  std::uint64_t coverage = 0;     // Lambda(chosen)
  std::vector<double> f_trace;          // F(x_t), t = 0..1/eps (selection runs only)
  std::vector<double> tight_bound_trace;  // Lambda-hat(x_t) when tracked
  double wall_ms = 0.0;
};

struct AmpOptions {
  bool track_tight_bound = false;
  // Use the general-matroid search even when a partition view exists.
  bool force_general_search = false;
};

// One ascent round: r picks of the steepest feasible coordinate, each raising
// y[j] by eps_s. x itself is not mutated (the caller merges x += eps*1_B);
// the cache is left consistent with x + eps*1_B.
std::vector<ElementId> amp_search(const RRCollection& coll, const MatroidOracle& m,
                                  std::span<const double> x, double eps_s, QCache& cache);

// Partition-matroid search: partitions processed in ascending index order,
// each exhausted (quota picks) before moving on.
std::vector<ElementId> amp_search_pm(const RRCollection& coll, const PartitionMatroid& pm,
                                     std::span<const double> x, double eps_s, QCache& cache);

struct RoundStats {
  std::uint64_t swaps = 0;
  double min_f_delta = 0.0;  // most negative per-swap F change observed
};

// Deterministic pairwise-merge rounding; returns the final base. The cache
// must be consistent with x = eps * sum 1_{B_l}; afterwards it reflects the
// 0/1 indicator of the result.
std::vector<ElementId> amp_round(const RRCollection& coll, const MatroidOracle& m,
                                 double eps_s, QCache& cache,
                                 std::vector<std::vector<ElementId>> bases,
                                 RoundStats* stats = nullptr);

// Full pipeline: 1/eps_s search rounds (partition variant when the matroid
// exposes one) followed by rounding. 1/eps_s must be integral.
SelectionResult amp(const RRCollection& coll, const MatroidOracle& m, double eps_s,
                    const AmpOptions& opts = {});

// amp with the weighted objective throughout search and rounding; w must
// have ground-set length with entries in [0,1].
SelectionResult amp_weighted(const RRCollection& coll, const MatroidOracle& m,
                             double eps_s, std::span<const double> w,
                             const AmpOptions& opts = {});

// Lazy greedy (CELF-style max-heap of stale marginal-coverage bounds).
SelectionResult greedy(const RRCollection& coll, const MatroidOracle& m);

// Greedy partition by partition.
SelectionResult local_greedy(const RRCollection& coll, const PartitionMatroid& pm);

// Descending-threshold passes; threshold starts at the max single-element
// coverage and decays by (1-xi) per pass until r picks or the xi*d_max/r
// floor. May return fewer than r elements.
SelectionResult threshold_greedy(const RRCollection& coll, const MatroidOracle& m,
                                 double xi);

// F_current + max_{S in I} sum_{u in S} sum_{R: u in R} q_R, an upper bound
// on Lambda(S^o) at the cache's current point.
double tightened_upper_bound(const RRCollection& coll, const MatroidOracle& m,
                             const QCache& cache, double f_current);

}  // namespace imgm
