#include "epe/bidirectional.hpp"

#include <algorithm>
#include <cmath>

#include "epe/errors.hpp"
#include "epe/matrix.hpp"

namespace epe {

std::uint64_t geometric_length(double alpha, Rng& rng) {
  require(alpha > 0.0 && alpha < 1.0, "discount factor must lie in (0, 1)");
  const double length = std::floor(std::log(rng.uniform_open()) / std::log(alpha));
  if (!(length < 1e18)) return static_cast<std::uint64_t>(1e18);
  return static_cast<std::uint64_t>(length);
}

std::uint64_t walk_length_cap(double alpha) {
  // slack keeps 100 / (1 - 0.9) from rounding up to 1001
  return static_cast<std::uint64_t>(std::ceil(100.0 / (1.0 - alpha) - 1e-9));
}

EstimateReport bidirectional_epe(CountingSampler& sampler, std::span<const double> cost,
                                 double alpha, const Supergraph& graph,
                                 const BidirectionalConfig& config, Rng& rng) {
  require(config.backward_samples >= 1 && config.forward_walks >= 1,
          "bidirectional config needs n_B, n_F >= 1");
  const std::size_t n = cost.size();
  const std::uint64_t start = sampler.draw_count();

  BackwardParams params;
  params.samples_per_state = config.backward_samples;
  std::function<bool(std::uint64_t, std::size_t)> stop_when;
  if (config.mode == TerminationMode::fixed_epsilon) {
    require(config.epsilon > 0.0, "fixed-epsilon mode needs epsilon > 0");
    params.epsilon = config.epsilon;
  } else {
    params.epsilon = kDynamicExhaustion * linf_norm(cost);
    const std::uint64_t threshold = static_cast<std::uint64_t>(n) * config.forward_walks;
    const std::uint64_t per_state = config.backward_samples;
    stop_when = [threshold, per_state](std::uint64_t, std::size_t encountered) {
      return static_cast<std::uint64_t>(encountered) * per_state >= threshold;
    };
  }
  BackwardRun run = backward_stage(sampler, cost, alpha, graph, params, rng, std::move(stop_when));

  EstimateReport report;
  report.estimate = run.report.estimate;
  report.iterations = run.report.iterations;
  report.encountered_size = run.report.encountered_size;

  // With nothing left in the residual the forward stage cannot change the estimate.
  if (linf_norm(run.residual) > 0.0) {
    Rng walk_rng = rng.split("forward-walks");
    UnderStep step(run.rows, sampler);
    const double walks = static_cast<double>(config.forward_walks);
    for (StateIndex s = 0; s < n; ++s) {
      double total = 0.0;
      for (std::uint64_t i = 0; i < config.forward_walks; ++i) {
        bool capped = false;
        const StateIndex end = sample_geometric_endpoint(s, alpha, step, walk_rng, &capped);
        if (capped) ++report.capped_walks;
        total += run.residual[end];
      }
      report.estimate[s] += total / walks;
    }
  }
  report.samples_used = sampler.draw_count() - start;
  return report;
}

std::uint64_t sample_size_forward_bd(double epsilon, double epsilon_rel, double epsilon_abs,
                                     double delta, std::size_t states) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(epsilon_rel > 0.0 && epsilon_rel < 1.0, "relative tolerance must lie in (0, 1)");
  require(epsilon_abs > 0.0 && delta > 0.0, "absolute tolerance and delta must be positive");
  require(states >= 1, "state count must be positive");
  const double value = 324.0 * epsilon * std::log(4.0 * static_cast<double>(states) / delta) /
                       (epsilon_rel * epsilon_rel * epsilon_abs);
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(value)));
}

std::uint64_t sample_size_backward_bd(double epsilon_rel, double epsilon_abs, double delta,
                                      double alpha, double cost_inf, std::size_t states,
                                      double q_min) {
  require(q_min > 0.0 && q_min <= 1.0, "q_min must lie in (0, 1]");
  require(epsilon_rel > 0.0 && epsilon_rel < 1.0, "relative tolerance must lie in (0, 1)");
  require(epsilon_abs > 0.0 && delta > 0.0, "absolute tolerance and delta must be positive");
  require(alpha > 0.0 && alpha < 1.0, "discount factor must lie in (0, 1)");
  require(cost_inf > 0.0, "||c||_inf must be positive");
  require(states >= 1, "state count must be positive");

  const double s = static_cast<double>(states);
  const double horizon =
      std::max(1.0, std::ceil(std::log(2.0 * cost_inf / epsilon_abs) / (1.0 - alpha)));
  const double shrink = std::log(1.0 + epsilon_rel / 2.0);
  const double value =
      3.0 * std::log(4.0 * s * s / delta) / (shrink * shrink * q_min) * horizon * horizon;
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(value)));
}

EstimateReport plug_in_estimate(CountingSampler& sampler, std::span<const double> cost,
                                double alpha, std::uint64_t n) {
  require(n >= 1, "plug-in needs n >= 1");
  const std::size_t size = cost.size();
  require(sampler.size() == size, "sampler and cost sizes differ");
  const std::uint64_t start = sampler.draw_count();
  DenseMatrix q_tilde(size, size);
  for (StateIndex s = 0; s < size; ++s) {
    const SparseRow row = sampler.sample_row(s, n);
    for (std::size_t i = 0; i < row.support_size(); ++i)
      q_tilde(s, row.indices()[i]) = row.probabilities()[i];
  }
  EstimateReport report;
  report.estimate = solve_discounted(q_tilde, alpha, cost);
  report.samples_used = sampler.draw_count() - start;
  report.iterations = size;
  return report;
}

}  // namespace epe
