#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "epe/instance.hpp"
#include "epe/push.hpp"
#include "epe/rng.hpp"
#include "epe/sampler.hpp"
#include "epe/sparse_row.hpp"
#include "epe/supergraph.hpp"
#include "epe/trace.hpp"

namespace epe {

struct BackwardParams {
  double epsilon = 0.0;
  std::uint64_t samples_per_state = 1;  // n
  bool trace = false;
};

/// Backward-EPE output plus the final algorithm state needed by the
/// bidirectional forward stage and by invariant checks.
struct BackwardRun {
  EstimateReport report;
  Vector residual;        // r_{k*}
  EmpiricalRows rows;     // Qhat_{k*}; rows present exactly for s in U_{k*}
};

/// Backward empirical policy evaluation. Rows of Q are estimated from n draws
/// the first time a state enters the encountered set, then frozen.
/// samples_used = n |U_{k*}|.
BackwardRun backward_epe(CountingSampler& sampler, std::span<const double> cost, double alpha,
                         const Supergraph& graph, const BackwardParams& params, Rng& tie_rng);

/// Same loop with an extra stopping rule checked after each push with
/// (k, |U_k|). Used by the dynamic bidirectional mode; epsilon may be 0 then.
BackwardRun backward_stage(CountingSampler& sampler, std::span<const double> cost, double alpha,
                           const Supergraph& graph, const BackwardParams& params, Rng& tie_rng,
                           std::function<bool(std::uint64_t, std::size_t)> stop_when);

/// Per-state sample count n*(epsilon, delta) guaranteeing
/// P(||vhat - v||_inf >= 2 epsilon) <= delta. The inner ceiling is clamped to
/// at least 1 when epsilon >= 4 ||c||_inf.
std::uint64_t sample_size_backward(double epsilon, double delta, double alpha, double cost_inf,
                                   std::size_t states);

/// Qhat_{k*} on encountered rows; fresh n-draw empirical rows elsewhere, drawn
/// from an uncounted stream seeded by `rng`.
DenseMatrix build_q_over(const EmpiricalRows& rows, const ProblemInstance& instance,
                         std::uint64_t n, Rng& rng);

/// Qhat_{k*} on encountered rows; true rows of Q elsewhere.
DenseMatrix build_q_under(const EmpiricalRows& rows, const ProblemInstance& instance);

/// Largest |v_k(s) + nu_s r_k - nu_s c| over k = 0..k* and all s, with nu
/// computed from P. P must be row-stochastic, agree with Qhat_{k*} on
/// encountered rows and vanish off the supergraph; otherwise throws
/// ContractViolation. Requires a traced run.
double replay_invariant(const BackwardRun& run, const DenseMatrix& p, const Supergraph& graph);

}  // namespace epe
