#pragma once

#include <cstdint>
#include <span>

#include "epe/matrix.hpp"
#include "epe/rng.hpp"
#include "epe/sampler.hpp"
#include "epe/supergraph.hpp"
#include "epe/trace.hpp"

namespace epe {

/// Known-Q push estimator. Predecessors are read off the support of Q.
/// Guarantees ||vhat - v||_inf <= epsilon; samples_used = 0.
EstimateReport approx_contributions(const DenseMatrix& q, std::span<const double> cost,
                                    double alpha, double epsilon, Rng& tie_rng,
                                    bool trace = false);

/// Backward EPE variant that draws n fresh samples from Q(s, .) for every
/// s in N_in(s_k) at every iteration. samples_used = n sum_k |N_in(s_k)|.
EstimateReport backward_epe_alternative(CountingSampler& sampler, std::span<const double> cost,
                                        double alpha, const Supergraph& graph, double epsilon,
                                        std::uint64_t n, Rng& tie_rng, bool trace = false);

/// e_k(s) = vhat_k(s) + mu_s r_k - v(s), mu_s from the true Q.
struct ErrorProcessSample {
  DenseMatrix values;  // (k* + 1) x S

  std::size_t iterations() const { return values.rows() - 1; }
  std::span<const double> at(std::size_t k) const { return values.row(k); }
  std::span<const double> final() const { return values.row(values.rows() - 1); }
};

ErrorProcessSample error_process(const PushTrace& trace, const DenseMatrix& q);

}  // namespace epe
