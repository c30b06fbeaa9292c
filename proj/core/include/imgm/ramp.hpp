#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imgm/instance.hpp"
#include "imgm/selection.hpp"

namespace imgm {

struct RampConfig {
  double eps = 0.1;    // error tolerance, in (0,1)
  double delta = 0.01; // failure probability, in (0,1)
  bool tighten_bound = true;
  AdvMode adv_mode = AdvMode::empty_miss;  // informational; bound to the instance
  unsigned threads = 1;                    // RR generation fan-out
};

struct RampIteration {
  std::uint64_t theta = 0;
  std::uint64_t coverage_r1 = 0;
  std::uint64_t coverage_r2 = 0;
  double f_final = 0.0;
  double lambda_upper = 0.0;
  double sigma_lower = 0.0;
  double sigma_upper = 0.0;
  double ratio = 0.0;
};

struct RampReport {
  std::vector<ElementId> result;
  std::vector<RampIteration> iterations;
  double eps = 0.0, delta = 0.0;
  double eps_s = 0.0;
  std::uint64_t theta_max = 0;
  std::uint64_t i_max = 0;
  std::uint64_t theta_first = 0;
  double achieved_ratio = 0.0;  // sigma_l/sigma_u at the final iteration
  std::uint64_t total_rr = 0;   // across both collections
  bool tighten_bound = true;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::string algorithm = "ramp";

  std::string to_json(const Instance& inst, int indent = 2) const;
};

// Largest eps_s = 1/t with 1-(1+eps_s)^(-1/eps_s) >= 1 - 1/e - eps/2,
// found by incrementing t from 1. Throws if no t <= 1e6 qualifies.
double derive_eps_s(double eps);

// Worst-case RR budget; uses kappa_theta (AdvIM substitutes |V\A|).
std::uint64_t theta_max(const Instance& inst, double eps, double delta);

// High-probability bounds from the martingale inequalities.
double sigma_upper_bound(double lambda_upper, std::uint64_t theta, double kappa,
                         double p_f);
double sigma_lower_bound(double lambda, std::uint64_t theta, double kappa, double p_f);

// Adaptive sampling driver: doubling collections R1/R2 from disjoint stream
// ranges, AMP selection on R1, stopping once sigma_l(S)/sigma_u(S*) reaches
// 1 - 1/e - eps or the iteration cap.
RampReport ramp(const Instance& inst, const RampConfig& cfg, std::uint64_t seed);

// Baseline driver (RM instances): Greedy selection, coarse 2*Lambda(S) upper
// bound, target ratio 1/2 - eps, collections starting at size 1.
RampReport rm_a_simplified(const Instance& inst, double eps, double delta,
                           std::uint64_t seed);

}  // namespace imgm
