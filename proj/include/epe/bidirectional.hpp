#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "epe/backward.hpp"
#include "epe/rng.hpp"
#include "epe/sampler.hpp"
#include "epe/sparse_row.hpp"
#include "epe/supergraph.hpp"
#include "epe/trace.hpp"

namespace epe {

enum class TerminationMode {
  fixed_epsilon,
  /// Stop the backward stage at the first k with |U_k| n_B >= S n_F.
  dynamic,
};

struct BidirectionalConfig {
  double epsilon = 0.0;
  std::uint64_t backward_samples = 1;  // n_B
  std::uint64_t forward_walks = 1;     // n_F
  TerminationMode mode = TerminationMode::fixed_epsilon;
};

/// Residual threshold treated as exhaustion in dynamic mode, relative to
/// ||c||_inf.
inline constexpr double kDynamicExhaustion = 1e-12;

/// Geometric(1 - alpha) length on {0, 1, ...}: P(L = t) = (1 - alpha) alpha^t,
/// by inversion L = floor(log U / log alpha).
std::uint64_t geometric_length(double alpha, Rng& rng);

/// ceil(100 / (1 - alpha)); longer walks are truncated.
std::uint64_t walk_length_cap(double alpha);

/// Endpoint of a geometric-length walk from `start`; `step(state, rng)`
/// returns the next state. Distributed as (1 - alpha) e_start^T (I - alpha P)^{-1}
/// for the matrix P that `step` samples. Sets *capped when the length cap hit.
template <class Step>
StateIndex sample_geometric_endpoint(StateIndex start, double alpha, Step&& step, Rng& rng,
                                     bool* capped = nullptr) {
  std::uint64_t length = geometric_length(alpha, rng);
  const std::uint64_t cap = walk_length_cap(alpha);
  if (capped) *capped = length > cap;
  if (length > cap) length = cap;
  StateIndex state = start;
  for (std::uint64_t t = 0; t < length; ++t) state = step(state, rng);
  return state;
}

/// One step on Qunder: stored empirical row when the state was encountered
/// (no new sample), otherwise a counted draw from the true row.
class UnderStep {
 public:
  UnderStep(const EmpiricalRows& rows, CountingSampler& sampler)
      : rows_(&rows), sampler_(&sampler) {}
  StateIndex operator()(StateIndex s, Rng& rng) {
    return rows_->has(s) ? rows_->row(s).sample(rng) : sampler_->sample_next(s);
  }

 private:
  const EmpiricalRows* rows_;
  CountingSampler* sampler_;
};

/// Bidirectional EPE: backward stage, then n_F geometric walks on Qunder per
/// state, vhat_BD(s) = vhat_{k*}(s) + mean_i r_{k*}(Z_{s,i}).
EstimateReport bidirectional_epe(CountingSampler& sampler, std::span<const double> cost,
                                 double alpha, const Supergraph& graph,
                                 const BidirectionalConfig& config, Rng& rng);

/// n_F* = ceil(324 epsilon log(4S/delta) / (eps_rel^2 eps_abs)).
std::uint64_t sample_size_forward_bd(double epsilon, double epsilon_rel, double epsilon_abs,
                                     double delta, std::size_t states);

/// n_B* = ceil(3 log(4S^2/delta) / ((log(1 + eps_rel/2))^2 q_min)
///             * ceil(log(2 ||c||_inf / eps_abs) / (1 - alpha))^2).
/// The inner ceiling is clamped to at least 1.
std::uint64_t sample_size_backward_bd(double epsilon_rel, double epsilon_abs, double delta,
                                      double alpha, double cost_inf, std::size_t states,
                                      double q_min);

/// Plug-in estimator: n counted draws per state give an offline empirical
/// matrix whose value function is returned. samples_used = n S.
EstimateReport plug_in_estimate(CountingSampler& sampler, std::span<const double> cost,
                                double alpha, std::uint64_t n);

}  // namespace epe
