#include "epe/baselines.hpp"

#include "epe/errors.hpp"
#include "epe/push.hpp"

namespace epe {

EstimateReport approx_contributions(const DenseMatrix& q, std::span<const double> cost,
                                    double alpha, double epsilon, Rng& tie_rng, bool trace) {
  require(epsilon > 0.0, "termination threshold epsilon must be > 0");
  require(q.rows() == cost.size() && q.cols() == cost.size(), "Q must be S x S");
  const Supergraph support = Supergraph::from_support(q);
  ExactRows provider(q);
  PushOptions options;
  options.epsilon = epsilon;
  options.record_trace = trace;
  PushResult pushed = run_push(cost, alpha, support.in_lists(), provider, tie_rng, options);

  EstimateReport report;
  report.estimate = std::move(pushed.estimate);
  report.iterations = pushed.iterations;
  report.encountered_size = pushed.encountered_count;
  report.trace = std::move(pushed.trace);
  return report;
}

EstimateReport backward_epe_alternative(CountingSampler& sampler, std::span<const double> cost,
                                        double alpha, const Supergraph& graph, double epsilon,
                                        std::uint64_t n, Rng& tie_rng, bool trace) {
  require(epsilon > 0.0, "termination threshold epsilon must be > 0");
  require(n >= 1, "per-state sample count n must be >= 1");
  require(sampler.size() == cost.size() && graph.size() == cost.size(),
          "sampler, cost and supergraph sizes differ");
  const std::uint64_t start = sampler.draw_count();
  FreshEmpiricalRows provider(sampler, n);
  PushOptions options;
  options.epsilon = epsilon;
  options.record_trace = trace;
  PushResult pushed = run_push(cost, alpha, graph.in_lists(), provider, tie_rng, options);

  EstimateReport report;
  report.estimate = std::move(pushed.estimate);
  report.samples_used = sampler.draw_count() - start;
  report.iterations = pushed.iterations;
  report.encountered_size = pushed.encountered_count;
  report.trace = std::move(pushed.trace);
  return report;
}

ErrorProcessSample error_process(const PushTrace& trace, const DenseMatrix& q) {
  return ErrorProcessSample{invariant_gaps(trace, q)};
}

}  // namespace epe
