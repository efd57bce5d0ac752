#include "epe/forward.hpp"

#include <algorithm>
#include <cmath>

#include "epe/errors.hpp"
#include "epe/matrix.hpp"

namespace epe {

EstimateReport forward_epe(CountingSampler& sampler, std::span<const double> cost, double alpha,
                           const ForwardConfig& config) {
  require(config.horizon >= 1 && config.trajectories >= 1, "forward config needs T, m >= 1");
  require(alpha > 0.0 && alpha < 1.0, "discount factor must lie in (0, 1)");
  const std::size_t n = cost.size();
  require(sampler.size() == n, "sampler and cost sizes differ");

  const std::uint64_t start = sampler.draw_count();
  EstimateReport report;
  report.estimate.assign(n, 0.0);
  for (StateIndex s = 0; s < n; ++s) {
    double total = 0.0;
    for (std::uint64_t i = 0; i < config.trajectories; ++i) {
      StateIndex state = s;
      double weight = 1.0 - alpha;
      double path = weight * cost[state];
      for (std::uint64_t t = 1; t < config.horizon; ++t) {
        state = sampler.sample_next(state);
        weight *= alpha;
        path += weight * cost[state];
      }
      total += path;
    }
    report.estimate[s] = total / static_cast<double>(config.trajectories);
  }
  report.iterations = config.trajectories * n;
  report.samples_used = sampler.draw_count() - start;
  return report;
}

ForwardConfig sample_size_forward(double epsilon, double delta, double alpha, double cost_inf,
                                  std::size_t states) {
  require(epsilon > 0.0 && delta > 0.0 && cost_inf > 0.0, "epsilon, delta, ||c|| must be positive");
  require(alpha > 0.0 && alpha < 1.0, "discount factor must lie in (0, 1)");
  require(states >= 1, "state count must be positive");

  ForwardConfig out;
  const double horizon = std::ceil(std::log(2.0 * cost_inf / epsilon) / (1.0 - alpha));
  out.horizon = static_cast<std::uint64_t>(std::max(1.0, horizon));
  const double scale = cost_inf * cost_inf * alpha * alpha /
                       (2.0 * epsilon * epsilon * (1.0 - alpha) * (1.0 - alpha));
  const double m = scale * std::log(2.0 * static_cast<double>(states) *
                                    static_cast<double>(out.horizon) / delta);
  out.trajectories = static_cast<std::uint64_t>(std::max(1.0, std::ceil(m)));
  return out;
}

}  // namespace epe
