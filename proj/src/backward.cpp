#include "epe/backward.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epe/errors.hpp"

namespace epe {

BackwardRun backward_stage(CountingSampler& sampler, std::span<const double> cost, double alpha,
                           const Supergraph& graph, const BackwardParams& params, Rng& tie_rng,
                           std::function<bool(std::uint64_t, std::size_t)> stop_when) {
  require(params.samples_per_state >= 1, "per-state sample count n must be >= 1");
  require(sampler.size() == cost.size() && graph.size() == cost.size(),
          "sampler, cost and supergraph sizes differ");

  const std::uint64_t start = sampler.draw_count();
  CachedEmpiricalRows provider(sampler, params.samples_per_state);
  PushOptions options;
  options.epsilon = params.epsilon;
  options.record_trace = params.trace;
  options.stop_when = std::move(stop_when);
  PushResult pushed = run_push(cost, alpha, graph.in_lists(), provider, tie_rng, options);

  BackwardRun run;
  run.report.estimate = std::move(pushed.estimate);
  run.report.samples_used = sampler.draw_count() - start;
  run.report.iterations = pushed.iterations;
  run.report.encountered_size = pushed.encountered_count;
  run.report.trace = std::move(pushed.trace);
  run.residual = std::move(pushed.residual);
  run.rows = provider.take_rows();
  return run;
}

BackwardRun backward_epe(CountingSampler& sampler, std::span<const double> cost, double alpha,
                         const Supergraph& graph, const BackwardParams& params, Rng& tie_rng) {
  require(params.epsilon > 0.0, "termination threshold epsilon must be > 0");
  return backward_stage(sampler, cost, alpha, graph, params, tie_rng, {});
}

std::uint64_t sample_size_backward(double epsilon, double delta, double alpha, double cost_inf,
                                   std::size_t states) {
  require(epsilon > 0.0 && delta > 0.0, "epsilon and delta must be positive");
  require(alpha > 0.0 && alpha < 1.0, "discount factor must lie in (0, 1)");
  require(cost_inf > 0.0, "||c||_inf must be positive");
  require(states >= 1, "state count must be positive");

  const double horizon = std::max(1.0, std::ceil(std::log(4.0 * cost_inf / epsilon) / (1.0 - alpha)));
  const double scale = 2.0 * cost_inf * cost_inf * alpha * alpha /
                       (epsilon * epsilon * (1.0 - alpha) * (1.0 - alpha));
  const double value = scale * std::log(2.0 * static_cast<double>(states) / delta * horizon);
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(value)));
}

DenseMatrix build_q_over(const EmpiricalRows& rows, const ProblemInstance& instance,
                         std::uint64_t n, Rng& rng) {
  require(n >= 1, "offline rows need n >= 1");
  const std::size_t size = instance.size();
  require(rows.states() == size, "row store does not match the instance");
  CountingSampler offline(instance, rng.next_u64());
  DenseMatrix out(size, size);
  for (StateIndex s = 0; s < size; ++s) {
    const SparseRow row = rows.has(s) ? rows.row(s) : offline.sample_row(s, n);
    for (std::size_t i = 0; i < row.support_size(); ++i)
      out(s, row.indices()[i]) = row.probabilities()[i];
  }
  return out;
}

DenseMatrix build_q_under(const EmpiricalRows& rows, const ProblemInstance& instance) {
  const std::size_t size = instance.size();
  require(rows.states() == size, "row store does not match the instance");
  DenseMatrix out = instance.transitions();
  for (StateIndex s = 0; s < size; ++s) {
    if (!rows.has(s)) continue;
    auto dst = out.row(s);
    std::fill(dst.begin(), dst.end(), 0.0);
    const SparseRow& row = rows.row(s);
    for (std::size_t i = 0; i < row.support_size(); ++i) dst[row.indices()[i]] = row.probabilities()[i];
  }
  return out;
}

double replay_invariant(const BackwardRun& run, const DenseMatrix& p, const Supergraph& graph) {
  require(run.report.trace.has_value(), "replay_invariant needs a traced run");
  const PushTrace& trace = *run.report.trace;
  const std::size_t n = trace.cost.size();
  require(p.rows() == n && p.cols() == n, "P must be S x S");
  require(graph.size() == n, "supergraph size mismatch");

  for (StateIndex s = 0; s < n; ++s) {
    double sum = 0.0;
    for (StateIndex t = 0; t < n; ++t) {
      const double w = p(s, t);
      require(w >= 0.0, "P has a negative entry");
      require(w == 0.0 || graph.has_edge(s, t),
              "P puts mass off the supergraph at (" + std::to_string(s) + ", " +
                  std::to_string(t) + ")");
      if (run.rows.has(s))
        require(w == run.rows.row(s).at(t),
                "P differs from the final estimate on encountered row " + std::to_string(s));
      sum += w;
    }
    require(std::abs(sum - 1.0) <= 1e-9, "P row " + std::to_string(s) + " is not stochastic");
  }

  const DenseMatrix gaps = invariant_gaps(trace, p);
  return linf_norm(gaps.data());
}

}  // namespace epe
