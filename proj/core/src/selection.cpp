#include "imgm/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "imgm/error.hpp"

namespace imgm {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Max-heap of stale derivative upper bounds; equal bounds surface the
// smaller id first, which makes lazy evaluation reproduce the exact argmax
// with ties broken by smaller element id.
struct HeapEntry {
  double bound;
  ElementId id;
};
struct HeapLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};
using LazyHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tracks partition usage so feasibility checks are O(1) for partition
// matroids; falls back to oracle calls otherwise.
class FeasibilityTracker {
 public:
  FeasibilityTracker(const MatroidOracle& m, bool use_partition_view)
      : m_(m), pm_(use_partition_view ? m.partition_view() : nullptr) {
    if (pm_) used_.assign(pm_->num_partitions(), 0);
  }
  bool can_add(ElementId u) const {
    if (pm_) return used_[pm_->partition_of(u)] < pm_->capacity(pm_->partition_of(u));
    return m_.can_add(chosen_, u);
  }
  void add(ElementId u) {
    if (pm_) ++used_[pm_->partition_of(u)];
    chosen_.push_back(u);
  }
  std::span<const ElementId> chosen() const { return chosen_; }

 private:
  const MatroidOracle& m_;
  const PartitionMatroid* pm_;
  std::vector<std::uint32_t> used_;
  std::vector<ElementId> chosen_;
};

// Pops until an entry's refreshed value is certifiably the maximum
// (value, then smaller id). `refresh` computes the current value; `feasible`
// filters; infeasible entries are pruned permanently.
template <class RefreshFn, class FeasibleFn>
bool lazy_argmax(LazyHeap& heap, RefreshFn refresh, FeasibleFn feasible,
                 ElementId& out) {
  while (!heap.empty()) {
    HeapEntry top = heap.top();
    heap.pop();
    if (!feasible(top.id)) continue;
    const double d = refresh(top.id);
    if (heap.empty() || d > heap.top().bound ||
        (d == heap.top().bound && top.id < heap.top().id)) {
      out = top.id;
      return true;
    }
    heap.push(HeapEntry{d, top.id});
  }
  return false;
}

template <class Cache>
std::vector<ElementId> search_impl(const RRCollection& coll, const MatroidOracle& m,
                                   std::span<const double> x, double eps_s,
                                   Cache& cache) {
  const std::size_t n = coll.ground_size();
  std::vector<double> y(x.begin(), x.end());
  if (y.size() != n) throw ValidationError("amp_search: x length mismatch");
  FeasibilityTracker feas(m, m.partition_view() != nullptr);

  LazyHeap heap;
  {
    std::vector<HeapEntry> init;
    init.reserve(n);
    for (ElementId u = 0; u < n; ++u) init.push_back(HeapEntry{kInf, u});
    heap = LazyHeap(HeapLess{}, std::move(init));
  }
  const std::size_t r = m.rank();
  std::vector<ElementId> base;
  base.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    ElementId u;
    if (!lazy_argmax(
            heap, [&](ElementId v) { return cache.derivative(y, v); },
            [&](ElementId v) { return feas.can_add(v); }, u)) {
      throw ValidationError("amp_search: matroid cannot supply rank additions");
    }
    const double old = y[u];
    y[u] = old + eps_s;
    cache.update(u, old, y[u]);
    feas.add(u);
    base.push_back(u);
  }
  std::sort(base.begin(), base.end());
  return base;
}

template <class Cache>
std::vector<ElementId> search_pm_impl(const RRCollection& coll,
                                      const PartitionMatroid& pm,
                                      std::span<const double> x, double eps_s,
                                      Cache& cache) {
  const std::size_t n = coll.ground_size();
  std::vector<double> y(x.begin(), x.end());
  if (y.size() != n) throw ValidationError("amp_search_pm: x length mismatch");
  std::vector<ElementId> base;
  base.reserve(pm.rank());
  // partitions in ascending index order, each exhausted before the next
  for (std::uint32_t l = 0; l < pm.num_partitions(); ++l) {
    auto members = pm.members(l);
    const std::uint32_t quota = pm.quota(l);
    if (quota == 0) continue;
    LazyHeap heap;
    {
      std::vector<HeapEntry> init;
      init.reserve(members.size());
      for (ElementId u : members) init.push_back(HeapEntry{kInf, u});
      heap = LazyHeap(HeapLess{}, std::move(init));
    }
    for (std::uint32_t pick = 0; pick < quota; ++pick) {
      ElementId u;
      if (!lazy_argmax(
              heap, [&](ElementId v) { return cache.derivative(y, v); },
              [](ElementId) { return true; }, u)) {
        throw ValidationError("amp_search_pm: partition exhausted early");
      }
      const double old = y[u];
      y[u] = old + eps_s;
      cache.update(u, old, y[u]);
      base.push_back(u);
    }
  }
  std::sort(base.begin(), base.end());
  return base;
}

template <class Cache>
std::vector<ElementId> round_impl(const RRCollection& coll, const MatroidOracle& m,
                                  double eps_s, Cache& cache,
                                  std::vector<std::vector<ElementId>> bases,
                                  RoundStats* stats) {
  (void)coll;
  const std::size_t steps = bases.size();
  const std::size_t n = cache.coll().ground_size();
  std::vector<double> y(n, 0.0);
  for (auto& b : bases) {
    std::sort(b.begin(), b.end());
    for (ElementId u : b) y[u] += eps_s;
  }
  if (stats) {
    stats->swaps = 0;
    stats->min_f_delta = 0.0;
  }
  auto apply = [&](ElementId u, double delta) {
    const double old = y[u];
    y[u] = old + delta;
    cache.update(u, old, y[u]);
  };
  std::vector<ElementId> diff;
  for (std::size_t t = 0; t + 1 < steps; ++t) {
    auto& bt = bases[t];
    auto& bt1 = bases[t + 1];
    while (true) {
      diff.clear();
      std::set_difference(bt.begin(), bt.end(), bt1.begin(), bt1.end(),
                          std::back_inserter(diff));
      if (diff.empty()) break;
      const ElementId u_i = diff.front();  // smallest id in B_t \ B_{t+1}
      const ElementId u_j = m.find_exchange(bt, bt1, u_i);
      const double d_i = cache.derivative(y, u_i);
      const double d_j = cache.derivative(y, u_j);
      const double f_before = stats ? cache.f_value() : 0.0;
      if (d_i >= d_j) {
        // keep u_i: it replaces u_j in B_{t+1}
        bt1.erase(std::lower_bound(bt1.begin(), bt1.end(), u_j));
        bt1.insert(std::lower_bound(bt1.begin(), bt1.end(), u_i), u_i);
        apply(u_i, eps_s);
        apply(u_j, -eps_s);
      } else {
        // keep u_j: it replaces u_i in B_t, undoing t merged contributions
        const double te = static_cast<double>(t + 1) * eps_s;
        bt.erase(std::lower_bound(bt.begin(), bt.end(), u_i));
        bt.insert(std::lower_bound(bt.begin(), bt.end(), u_j), u_j);
        apply(u_j, te);
        apply(u_i, -te);
      }
      if (stats) {
        ++stats->swaps;
        stats->min_f_delta = std::min(stats->min_f_delta, cache.f_value() - f_before);
      }
    }
  }
  return bases.back();
}

double lambda_hat(const MatroidOracle& m, const QCache& cache) {
  const std::size_t n = cache.coll().ground_size();
  std::vector<double> w(n);
  for (ElementId u = 0; u < n; ++u) w[u] = cache.q_degree(u);
  double best = 0.0;
  for (ElementId u : m.max_weight_base(w)) best += w[u];
  return cache.f_value() + best;
}

std::size_t steps_from_eps(double eps_s) {
  if (!(eps_s > 0.0 && eps_s <= 1.0)) {
    throw ValidationError("eps_s must be in (0, 1]");
  }
  const double inv = 1.0 / eps_s;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * rounded) {
    throw ValidationError("1/eps_s must be an integer");
  }
  return static_cast<std::size_t>(rounded);
}

template <class Cache>
SelectionResult amp_impl(const RRCollection& coll, const MatroidOracle& m,
                         double eps_s, Cache& cache, const AmpOptions& opts) {
  const auto start = Clock::now();
  const std::size_t steps = steps_from_eps(eps_s);
  eps_s = 1.0 / static_cast<double>(steps);
  const std::size_t n = coll.ground_size();
  if (m.ground_size() != n) {
    throw ValidationError("amp: matroid ground size does not match collection");
  }
  cache.reset();
  std::vector<double> x(n, 0.0);
  SelectionResult res;
  res.f_trace.push_back(cache.f_value());
  const PartitionMatroid* pm = opts.force_general_search ? nullptr : m.partition_view();
  constexpr bool kUnit = std::is_same_v<Cache, QCache>;
  if (opts.track_tight_bound) {
    if constexpr (kUnit) res.tight_bound_trace.push_back(lambda_hat(m, cache));
  }
  std::vector<std::vector<ElementId>> bases;
  bases.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    std::vector<ElementId> b = pm ? search_pm_impl(coll, *pm, x, eps_s, cache)
                                  : search_impl(coll, m, x, eps_s, cache);
    for (ElementId u : b) x[u] += eps_s;
    res.f_trace.push_back(cache.f_value());
    if (opts.track_tight_bound) {
      if constexpr (kUnit) res.tight_bound_trace.push_back(lambda_hat(m, cache));
    }
    bases.push_back(std::move(b));
  }
  res.chosen = round_impl(coll, m, eps_s, cache, std::move(bases), nullptr);
  res.coverage = coverage(coll, res.chosen);
  res.wall_ms = ms_since(start);
  return res;
}

// Lazy greedy core shared by greedy and local_greedy: marginal coverage with
// stale upper bounds, initial bound +inf.
void greedy_picks(const RRCollection& coll, std::span<const ElementId> candidates,
                  std::size_t picks, FeasibilityTracker& feas,
                  std::vector<bool>& covered, std::vector<ElementId>& chosen) {
  LazyHeap heap;
  {
    std::vector<HeapEntry> init;
    init.reserve(candidates.size());
    for (ElementId u : candidates) init.push_back(HeapEntry{kInf, u});
    heap = LazyHeap(HeapLess{}, std::move(init));
  }
  auto marginal = [&](ElementId u) {
    double gain = 0.0;
    for (std::uint32_t r : coll.sets_containing(u)) {
      if (!covered[r]) gain += 1.0;
    }
    return gain;
  };
  for (std::size_t i = 0; i < picks; ++i) {
    ElementId u;
    if (!lazy_argmax(heap, marginal, [&](ElementId v) { return feas.can_add(v); }, u)) {
      break;  // defective oracle or exhausted candidates
    }
    feas.add(u);
    chosen.push_back(u);
    for (std::uint32_t r : coll.sets_containing(u)) covered[r] = true;
  }
}

}  // namespace

std::uint64_t coverage(const RRCollection& coll, std::span<const ElementId> s) {
  std::vector<bool> hit(coll.size(), false);
  std::uint64_t covered = 0;
  for (ElementId u : s) {
    for (std::uint32_t r : coll.sets_containing(u)) {
      if (!hit[r]) {
        hit[r] = true;
        ++covered;
      }
    }
  }
  return covered;
}

double multilinear_f(const RRCollection&, const QCache& cache) { return cache.f_value(); }
double multilinear_f(const RRCollection&, const WQCache& cache) { return cache.f_value(); }

std::vector<ElementId> amp_search(const RRCollection& coll, const MatroidOracle& m,
                                  std::span<const double> x, double eps_s,
                                  QCache& cache) {
  return search_impl(coll, m, x, eps_s, cache);
}

std::vector<ElementId> amp_search_pm(const RRCollection& coll,
                                     const PartitionMatroid& pm,
                                     std::span<const double> x, double eps_s,
                                     QCache& cache) {
  return search_pm_impl(coll, pm, x, eps_s, cache);
}

std::vector<ElementId> amp_round(const RRCollection& coll, const MatroidOracle& m,
                                 double eps_s, QCache& cache,
                                 std::vector<std::vector<ElementId>> bases,
                                 RoundStats* stats) {
  const std::size_t steps = steps_from_eps(eps_s);
  if (bases.size() != steps) {
    throw ValidationError("amp_round: expected 1/eps_s bases");
  }
  return round_impl(coll, m, eps_s, cache, std::move(bases), stats);
}

SelectionResult amp(const RRCollection& coll, const MatroidOracle& m, double eps_s,
                    const AmpOptions& opts) {
  QCache cache(coll);
  return amp_impl(coll, m, eps_s, cache, opts);
}

SelectionResult amp_weighted(const RRCollection& coll, const MatroidOracle& m,
                             double eps_s, std::span<const double> w,
                             const AmpOptions& opts) {
  if (w.size() != coll.ground_size()) {
    throw ValidationError("amp_weighted: weight vector length mismatch");
  }
  for (double v : w) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("amp_weighted: weights must lie in [0,1]");
    }
  }
  WQCache cache(coll, w);
  return amp_impl(coll, m, eps_s, cache, opts);
}

SelectionResult greedy(const RRCollection& coll, const MatroidOracle& m) {
  const auto start = Clock::now();
  if (m.ground_size() != coll.ground_size()) {
    throw ValidationError("greedy: matroid ground size does not match collection");
  }
  SelectionResult res;
  std::vector<bool> covered(coll.size(), false);
  FeasibilityTracker feas(m, m.partition_view() != nullptr);
  std::vector<ElementId> all(coll.ground_size());
  for (ElementId u = 0; u < all.size(); ++u) all[u] = u;
  greedy_picks(coll, all, m.rank(), feas, covered, res.chosen);
  std::sort(res.chosen.begin(), res.chosen.end());
  res.coverage = coverage(coll, res.chosen);
  res.wall_ms = ms_since(start);
  return res;
}

SelectionResult local_greedy(const RRCollection& coll, const PartitionMatroid& pm) {
  const auto start = Clock::now();
  if (pm.ground_size() != coll.ground_size()) {
    throw ValidationError("local_greedy: matroid ground size does not match collection");
  }
  SelectionResult res;
  std::vector<bool> covered(coll.size(), false);
  FeasibilityTracker feas(pm, true);
  for (std::uint32_t l = 0; l < pm.num_partitions(); ++l) {
    greedy_picks(coll, pm.members(l), pm.quota(l), feas, covered, res.chosen);
  }
  std::sort(res.chosen.begin(), res.chosen.end());
  res.coverage = coverage(coll, res.chosen);
  res.wall_ms = ms_since(start);
  return res;
}

SelectionResult threshold_greedy(const RRCollection& coll, const MatroidOracle& m,
                                 double xi) {
  const auto start = Clock::now();
  if (!(xi > 0.0 && xi < 1.0)) throw ValidationError("threshold_greedy: xi in (0,1)");
  if (m.ground_size() != coll.ground_size()) {
    throw ValidationError("threshold_greedy: ground size mismatch");
  }
  const std::size_t n = coll.ground_size();
  SelectionResult res;
  std::vector<bool> covered(coll.size(), false);
  std::vector<bool> taken(n, false);
  FeasibilityTracker feas(m, m.partition_view() != nullptr);
  double d_max = 0.0;
  for (ElementId u = 0; u < n; ++u) {
    d_max = std::max(d_max, static_cast<double>(coll.sets_containing(u).size()));
  }
  const std::size_t r = m.rank();
  if (d_max > 0.0) {
    const double floor = xi * d_max / static_cast<double>(r);
    double threshold = d_max;
    while (res.chosen.size() < r && threshold >= floor) {
      for (ElementId u = 0; u < n && res.chosen.size() < r; ++u) {
        if (taken[u] || !feas.can_add(u)) continue;
        double marg = 0.0;
        for (std::uint32_t ri : coll.sets_containing(u)) {
          if (!covered[ri]) marg += 1.0;
        }
        if (marg >= threshold) {
          taken[u] = true;
          feas.add(u);
          res.chosen.push_back(u);
          for (std::uint32_t ri : coll.sets_containing(u)) covered[ri] = true;
        }
      }
      threshold *= (1.0 - xi);
    }
  }
  std::sort(res.chosen.begin(), res.chosen.end());
  res.coverage = coverage(coll, res.chosen);
  res.wall_ms = ms_since(start);
  return res;
}

double tightened_upper_bound(const RRCollection& coll, const MatroidOracle& m,
                             const QCache& cache, double f_current) {
  (void)coll;
  const std::size_t n = cache.coll().ground_size();
  std::vector<double> w(n);
  for (ElementId u = 0; u < n; ++u) w[u] = cache.q_degree(u);
  double best = 0.0;
  for (ElementId u : m.max_weight_base(w)) best += w[u];
  return f_current + best;
}

}  // namespace imgm
