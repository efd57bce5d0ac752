#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "epe/matrix.hpp"

namespace epe {

/// Residual mass moved onto predecessor s when pushing `pushed` from s_k.
inline double push_increment(double alpha, double q, double pushed) {
  return alpha * q * pushed;
}

/// Estimate mass gained by s_k when its residual `pushed` is pushed.
inline double push_gain(double alpha, double pushed) { return (1.0 - alpha) * pushed; }

/// One push of the residual-push loop.
struct PushRecord {
  StateIndex state = 0;         // s_k
  double pushed_residual = 0;   // r_{k-1}(s_k)
  /// (s, Qhat_k(s, s_k)) for every candidate predecessor s of s_k.
  std::vector<std::pair<StateIndex, double>> coefficients;
  std::size_t encountered = 0;  // |U_k| after this push
};

/// Compact history of a push run. Full estimate and residual vectors at any
/// iteration are rebuilt by replay with the same arithmetic as the live run,
/// so the replayed final state matches the run bit for bit.
struct PushTrace {
  double alpha = 0.0;
  Vector cost;  // r_0
  std::vector<PushRecord> pushes;

  std::size_t final_iteration() const { return pushes.size(); }

  /// Calls visit(k, v_k, r_k) for k = 0..k*.
  template <class Visitor>
  void replay(Visitor&& visit) const {
    Vector v(cost.size(), 0.0);
    Vector r = cost;
    visit(std::size_t{0}, std::as_const(v), std::as_const(r));
    for (std::size_t k = 0; k < pushes.size(); ++k) {
      apply(pushes[k], v, r);
      visit(k + 1, std::as_const(v), std::as_const(r));
    }
  }

  /// (v_k, r_k) at iteration k <= k*.
  std::pair<Vector, Vector> state_at(std::size_t k) const;

  /// The push update shared by every push-style estimator.
  void apply(const PushRecord& push, Vector& v, Vector& r) const {
    const double pushed = push.pushed_residual;
    v[push.state] += push_gain(alpha, pushed);
    r[push.state] = 0.0;
    for (const auto& [s, q] : push.coefficients) r[s] += push_increment(alpha, q, pushed);
  }
};

/// Estimator output.
struct EstimateReport {
  Vector estimate;
  std::uint64_t samples_used = 0;
  /// k* for push algorithms, trajectories simulated for forward ones.
  std::uint64_t iterations = 0;
  std::optional<std::size_t> encountered_size;
  std::optional<PushTrace> trace;
  /// Geometric walks truncated at the length cap (bidirectional only).
  std::uint64_t capped_walks = 0;
};

}  // namespace epe
