#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "imgm/instance.hpp"

namespace imgm::bench {

// Per (algo, theta, seed): coverage and Monte Carlo objective of the chosen
// set on a shared, incrementally grown collection. CSV columns:
// algo,theta,seed,eps_s,xi,coverage,objective_mean,objective_stderr,wall_ms
void run_quality_sweep(const Instance& inst, std::span<const std::string> algos,
                       std::span<const std::uint64_t> theta_grid,
                       std::span<const std::uint64_t> seeds, double eps_s, double xi,
                       std::uint64_t mc_sims, unsigned threads, std::ostream& csv);

// RAMP vs RM-A-Simplified across an epsilon grid. CSV columns:
// algo,eps,seed,delta,rr_total,iterations,achieved_ratio,coverage,wall_ms
void run_scaling_sweep(const Instance& inst, std::span<const double> eps_grid,
                       std::span<const std::uint64_t> seeds, double delta,
                       unsigned threads, std::ostream& csv);

}  // namespace imgm::bench
