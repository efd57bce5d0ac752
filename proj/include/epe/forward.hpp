#pragma once

#include <cstdint>
#include <span>

#include "epe/sampler.hpp"
#include "epe/trace.hpp"

namespace epe {

struct ForwardConfig {
  std::uint64_t horizon = 1;       // T, states per trajectory including the start
  std::uint64_t trajectories = 1;  // m, per state
};

/// Forward Monte Carlo: m length-T trajectories from every state, averaging
/// the discounted partial cost. samples_used = S m (T - 1).
EstimateReport forward_epe(CountingSampler& sampler, std::span<const double> cost, double alpha,
                           const ForwardConfig& config);

/// T = ceil(log(2 ||c||_inf / eps) / (1 - alpha)) clamped to >= 1, and
/// m = ceil(||c||_inf^2 alpha^2 / (2 eps^2 (1 - alpha)^2) log(2 S T / delta)).
ForwardConfig sample_size_forward(double epsilon, double delta, double alpha, double cost_inf,
                                  std::size_t states);

}  // namespace epe
