#include "imgm/ramp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <json.hpp>

#include "imgm/error.hpp"

namespace imgm {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e

double amp_guarantee(double eps_s) {
  return 1.0 - std::pow(1.0 + eps_s, -1.0 / eps_s);
}

}  // namespace

double derive_eps_s(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ValidationError("derive_eps_s: eps must be in (0,1)");
  }
  const double need = 1.0 - kInvE - eps / 2.0;
  for (std::uint64_t t = 1; t <= 1000000; ++t) {
    const double eps_s = 1.0 / static_cast<double>(t);
    if (amp_guarantee(eps_s) >= need) return eps_s;
  }
  throw ValidationError("derive_eps_s: no feasible step below the 1e6 cap");
}

std::uint64_t theta_max(const Instance& inst, double eps, double delta) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("theta_max: eps and delta must be in (0,1)");
  }
  if (!(inst.sigma_l_star >= 1.0)) {
    throw ValidationError("theta_max: sigma_l(S*) must be >= 1");
  }
  const double beta = 1.0 - kInvE - eps / 2.0;
  const double ln6d = std::log(6.0 / delta);
  const double core = beta * std::sqrt(ln6d) +
                      std::sqrt(beta * (inst.ln_num_bases + ln6d));
  const double value =
      8.0 * inst.kappa_theta * core * core / (eps * eps * inst.sigma_l_star);
  if (!std::isfinite(value) || value >= 9.0e18) {
    throw ValidationError("theta_max: value overflows the sample counter");
  }
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(value)));
}

double sigma_upper_bound(double lambda_upper, std::uint64_t theta, double kappa,
                         double p_f) {
  if (!(p_f > 0.0 && p_f < 1.0)) throw ValidationError("sigma_upper: p_f in (0,1)");
  if (lambda_upper < 0.0 || theta == 0) {
    throw ValidationError("sigma_upper: need lambda >= 0 and theta >= 1");
  }
  const double l = -std::log(p_f);
  const double s = std::sqrt(lambda_upper + l / 2.0) + std::sqrt(l / 2.0);
  return s * s * kappa / static_cast<double>(theta);
}

double sigma_lower_bound(double lambda, std::uint64_t theta, double kappa,
                         double p_f) {
  if (!(p_f > 0.0 && p_f < 1.0)) throw ValidationError("sigma_lower: p_f in (0,1)");
  if (lambda < 0.0 || theta == 0) {
    throw ValidationError("sigma_lower: need lambda >= 0 and theta >= 1");
  }
  const double l = -std::log(p_f);
  const double s = std::sqrt(lambda + 2.0 * l / 9.0) - std::sqrt(l / 2.0);
  const double v = (s * s - l / 18.0) * kappa / static_cast<double>(theta);
  return std::max(0.0, v);
}

namespace {

// Disjoint stream-index ranges keep R1 and R2 independent.
constexpr std::uint64_t kR2StreamOffset = std::uint64_t{1} << 62;

std::uint64_t iter_cap_from_kappa(double kappa) {
  const double v = std::ceil(std::log(std::max(kappa, 1.0)));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(v));
}

}  // namespace

RampReport ramp(const Instance& inst, const RampConfig& cfg, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0) || !(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw ValidationError("ramp: eps and delta must be in (0,1)");
  }
  if (inst.kind == InstanceKind::advim && cfg.adv_mode != inst.params.adv_mode) {
    throw ValidationError("ramp: config adv_mode disagrees with the instance");
  }

  RampReport rep;
  rep.eps = cfg.eps;
  rep.delta = cfg.delta;
  rep.tighten_bound = cfg.tighten_bound;
  rep.seed = seed;
  rep.algorithm = "ramp";
  rep.eps_s = derive_eps_s(cfg.eps);
  rep.theta_max = theta_max(inst, cfg.eps, cfg.delta);
  rep.i_max = iter_cap_from_kappa(inst.kappa);
  const double pow2 = std::ldexp(1.0, static_cast<int>(std::min<std::uint64_t>(62, rep.i_max)));
  rep.theta_first = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(static_cast<double>(rep.theta_max) / pow2)));
  const double p_f = cfg.delta / (3.0 * static_cast<double>(rep.i_max));
  const double target = 1.0 - kInvE - cfg.eps;
  const double guarantee = amp_guarantee(rep.eps_s);

  RRCollection r1(seed, 0, inst.ground.size());
  RRCollection r2(seed, kR2StreamOffset, inst.ground.size());
  std::uint64_t theta = rep.theta_first;
  grow_collection(inst, r1, theta, cfg.threads);
  grow_collection(inst, r2, theta, cfg.threads);

  AmpOptions opts;
  opts.track_tight_bound = cfg.tighten_bound;
  for (std::uint64_t i = 1; i <= rep.i_max; ++i) {
    SelectionResult sel = amp(r1, *inst.matroid, rep.eps_s, opts);
    const double f_final = sel.f_trace.back();
    double lambda_u;
    if (cfg.tighten_bound) {
      double hat = *std::min_element(sel.tight_bound_trace.begin(),
                                     sel.tight_bound_trace.end());
      lambda_u = std::min({hat, f_final / guarantee, static_cast<double>(theta)});
    } else {
      lambda_u = static_cast<double>(sel.coverage) / (1.0 - kInvE - cfg.eps / 2.0);
    }
    const std::uint64_t cov2 = coverage(r2, sel.chosen);

    RampIteration it;
    it.theta = theta;
    it.coverage_r1 = sel.coverage;
    it.coverage_r2 = cov2;
    it.f_final = f_final;
    it.lambda_upper = lambda_u;
    it.sigma_upper = sigma_upper_bound(lambda_u, theta, inst.kappa, p_f);
    it.sigma_lower = sigma_lower_bound(static_cast<double>(cov2), theta, inst.kappa, p_f);
    it.ratio = it.sigma_upper > 0.0 ? it.sigma_lower / it.sigma_upper : 0.0;
    rep.iterations.push_back(it);

    if (it.ratio >= target || i == rep.i_max) {
      rep.result = std::move(sel.chosen);
      rep.achieved_ratio = it.ratio;
      break;
    }
    theta = std::min<std::uint64_t>(2 * theta, rep.theta_max);
    grow_collection(inst, r1, theta, cfg.threads);
    grow_collection(inst, r2, theta, cfg.threads);
  }
  rep.total_rr = r1.size() + r2.size();
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

RampReport rm_a_simplified(const Instance& inst, double eps, double delta,
                           std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  if (inst.kind != InstanceKind::rm) {
    throw ValidationError("rm_a_simplified: RM instances only");
  }
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("rm_a_simplified: eps and delta must be in (0,1)");
  }
  RampReport rep;
  rep.eps = eps;
  rep.delta = delta;
  rep.tighten_bound = false;
  rep.seed = seed;
  rep.algorithm = "rm-a";
  rep.eps_s = 1.0;

  const double nv = static_cast<double>(inst.graph->node_count());
  const double t_rounds = static_cast<double>(inst.params.rounds);
  const double ln16d = std::log(16.0 / delta);
  const double core = 0.5 * std::sqrt(ln16d) + std::sqrt(0.5 * (t_rounds * nv + ln16d));
  const double tmax_f = 2.0 * nv / (eps * eps) * core * core;
  if (!std::isfinite(tmax_f) || tmax_f >= 9.0e18) {
    throw ValidationError("rm_a_simplified: theta_max overflows");
  }
  rep.theta_max = static_cast<std::uint64_t>(std::max(1.0, std::ceil(tmax_f)));
  rep.i_max = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(rep.theta_max)))));
  rep.theta_first = 1;
  const double p_f =
      delta / (4.0 * (t_rounds + 2.0) * static_cast<double>(rep.i_max));
  const double target = 0.5 - eps;

  RRCollection r1(seed, 0, inst.ground.size());
  RRCollection r2(seed, kR2StreamOffset, inst.ground.size());
  std::uint64_t theta = 1;
  grow_collection(inst, r1, theta);
  grow_collection(inst, r2, theta);

  for (std::uint64_t i = 1; i <= rep.i_max; ++i) {
    SelectionResult sel = greedy(r1, *inst.matroid);
    const double lambda_u = 2.0 * static_cast<double>(sel.coverage);
    const std::uint64_t cov2 = coverage(r2, sel.chosen);

    RampIteration it;
    it.theta = theta;
    it.coverage_r1 = sel.coverage;
    it.coverage_r2 = cov2;
    it.f_final = static_cast<double>(sel.coverage);
    it.lambda_upper = lambda_u;
    it.sigma_upper = sigma_upper_bound(lambda_u, theta, inst.kappa, p_f);
    it.sigma_lower = sigma_lower_bound(static_cast<double>(cov2), theta, inst.kappa, p_f);
    it.ratio = it.sigma_upper > 0.0 ? it.sigma_lower / it.sigma_upper : 0.0;
    rep.iterations.push_back(it);

    if (it.ratio >= target || i == rep.i_max) {
      rep.result = std::move(sel.chosen);
      rep.achieved_ratio = it.ratio;
      break;
    }
    theta *= 2;
    grow_collection(inst, r1, theta);
    grow_collection(inst, r2, theta);
  }
  rep.total_rr = r1.size() + r2.size();
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

std::string RampReport::to_json(const Instance& inst, int indent) const {
  nlohmann::json j;
  j["algorithm"] = algorithm;
  j["instance"] = to_string(inst.kind);
  j["model"] = to_string(inst.model);
  j["eps"] = eps;
  j["delta"] = delta;
  j["eps_s"] = eps_s;
  j["seed"] = seed;
  j["tighten"] = tighten_bound;
  j["theta_max"] = theta_max;
  j["i_max"] = i_max;
  j["theta_first"] = theta_first;
  j["kappa"] = inst.kappa;
  nlohmann::json iters = nlohmann::json::array();
  for (const RampIteration& it : iterations) {
    iters.push_back({{"theta", it.theta},
                     {"coverage_r1", it.coverage_r1},
                     {"coverage_r2", it.coverage_r2},
                     {"f_final", it.f_final},
                     {"lambda_upper", it.lambda_upper},
                     {"sigma_lower", it.sigma_lower},
                     {"sigma_upper", it.sigma_upper},
                     {"ratio", it.ratio}});
  }
  j["iterations"] = iters;
  j["achieved_ratio"] = achieved_ratio;
  j["total_rr"] = total_rr;
  j["wall_ms"] = wall_ms;
  nlohmann::json chosen = nlohmann::json::array();
  for (ElementId id : result) {
    const ElementCoord c = inst.ground.decode(id);
    const Graph& g = *inst.graph;
    switch (c.type) {
      case ElementCoord::Type::node:
        chosen.push_back({{"node", g.original_id(c.node)}});
        break;
      case ElementCoord::Type::node_round:
        chosen.push_back({{"node", g.original_id(c.node)}, {"round", c.round}});
        break;
      case ElementCoord::Type::edge: {
        const Edge& e = g.edge(c.edge);
        chosen.push_back(
            {{"edge", {g.original_id(e.src), g.original_id(e.dst)}}});
        break;
      }
    }
  }
  j["result"] = chosen;
  return j.dump(indent);
}

}  // namespace imgm
