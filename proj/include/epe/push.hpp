#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "epe/matrix.hpp"
#include "epe/rng.hpp"
#include "epe/sampler.hpp"
#include "epe/sparse_row.hpp"
#include "epe/supergraph.hpp"
#include "epe/trace.hpp"

namespace epe {

/// Supplies Qhat_k(s, s_k) for the candidate predecessors of s_k at each
/// iteration. The three push estimators differ only in this provider.
class RowProvider {
 public:
  virtual ~RowProvider() = default;
  /// Writes Qhat_k(candidates[i], target) into out[i]. Called exactly once per
  /// iteration, in iteration order.
  virtual void column(StateIndex target, std::span<const StateIndex> candidates,
                      std::span<double> out) = 0;
};

/// Exact rows of a known matrix.
class ExactRows final : public RowProvider {
 public:
  explicit ExactRows(const DenseMatrix& q) : q_(&q) {}
  void column(StateIndex target, std::span<const StateIndex> candidates,
              std::span<double> out) override;

 private:
  const DenseMatrix* q_;
};

/// Estimates row s from n draws the first time s is a candidate and reuses
/// that estimate afterwards.
class CachedEmpiricalRows final : public RowProvider {
 public:
  CachedEmpiricalRows(CountingSampler& sampler, std::uint64_t n)
      : sampler_(&sampler), n_(n), rows_(sampler.size()) {}
  void column(StateIndex target, std::span<const StateIndex> candidates,
              std::span<double> out) override;

  const EmpiricalRows& rows() const { return rows_; }
  EmpiricalRows take_rows() { return std::move(rows_); }

 private:
  CountingSampler* sampler_;
  std::uint64_t n_;
  EmpiricalRows rows_;
};

/// Draws n fresh samples of row s every time s is a candidate.
class FreshEmpiricalRows final : public RowProvider {
 public:
  FreshEmpiricalRows(CountingSampler& sampler, std::uint64_t n) : sampler_(&sampler), n_(n) {}
  void column(StateIndex target, std::span<const StateIndex> candidates,
              std::span<double> out) override;

 private:
  CountingSampler* sampler_;
  std::uint64_t n_;
};

struct PushOptions {
  /// Loop runs while max residual > epsilon. May be 0 when stop_when is set.
  double epsilon = 0.0;
  bool record_trace = false;
  /// Cross-check every heap selection against a linear scan (slow).
  bool check_selection = false;
  /// Hard cap on iterations; 0 means "use push_iteration_cap".
  std::uint64_t iteration_cap = 0;
  /// Extra stopping rule evaluated after each push with (k, |U_k|).
  std::function<bool(std::uint64_t, std::size_t)> stop_when;
};

struct PushResult {
  Vector estimate;
  Vector residual;
  std::uint64_t iterations = 0;
  std::vector<bool> encountered;
  std::size_t encountered_count = 0;
  std::optional<PushTrace> trace;
};

/// 10 * ceil(S ||c||_inf / (epsilon (1 - alpha))). Each push adds at least
/// (1 - alpha) epsilon to one estimate entry and estimates stay below
/// ||c||_inf whenever the Qbar invariant holds, so a correct run never
/// reaches this.
std::uint64_t push_iteration_cap(std::span<const double> cost, double alpha, double epsilon);

/// The residual-push loop: pick s_k uniformly among the maximal residuals
/// (ties broken with `tie_rng`), mark in_neighbors(s_k) encountered, move
/// (1 - alpha) r(s_k) into the estimate and alpha Qhat(s, s_k) r(s_k) onto
/// each predecessor s. Throws Diagnostic if the iteration cap is reached.
PushResult run_push(std::span<const double> cost, double alpha, const AdjacencyLists& in_neighbors,
                    RowProvider& rows, Rng& tie_rng, const PushOptions& options);

/// For each k = 0..k* and state s: v_k(s) + nu_s r_k - nu_s c, where
/// nu_s = (1 - alpha) e_s^T (I - alpha P)^{-1}. Result is (k* + 1) x S.
DenseMatrix invariant_gaps(const PushTrace& trace, const DenseMatrix& p);

}  // namespace epe
