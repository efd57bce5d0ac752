#pragma once

#include <string>
#include <vector>

#include "epe/matrix.hpp"
#include "epe/supergraph.hpp"

namespace epe {

inline constexpr double kRowSumTolerance = 1e-12;

/// Discounted Markov chain with known costs: discount alpha, cost vector c,
/// true transition matrix Q, and supergraph A. Immutable once built.
class ProblemInstance {
 public:
  /// Throws ContractViolation on inconsistent dimensions. Value constraints
  /// (stochasticity, absolute continuity, ...) are reported by
  /// validate_instance rather than enforced here.
  ProblemInstance(double alpha, Vector cost, DenseMatrix transitions, Supergraph graph);

  std::size_t size() const { return cost_.size(); }
  double alpha() const { return alpha_; }
  const Vector& cost() const { return cost_; }
  const DenseMatrix& transitions() const { return q_; }
  const Supergraph& graph() const { return graph_; }

  /// Smallest positive entry of Q.
  double min_positive_transition() const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

 private:
  double alpha_;
  Vector cost_;
  DenseMatrix q_;
  Supergraph graph_;
};

enum class ViolationKind {
  discount_out_of_range,
  negative_cost,
  negative_transition,
  row_not_stochastic,
  absolute_continuity,
};

struct Violation {
  ViolationKind kind;
  StateIndex row = 0;
  StateIndex col = 0;
  std::string message;
};

/// Every broken instance invariant, with the offending index (pair). Empty
/// iff the instance is valid. Never throws.
std::vector<Violation> validate_instance(const ProblemInstance& instance);

/// Throws ContractViolation carrying the first violation, if any.
void require_valid(const ProblemInstance& instance);

/// v = (1 - alpha) (I - alpha Q)^{-1} c by dense linear solve.
Vector exact_value(const ProblemInstance& instance);

/// (1 - alpha) sum_{t < horizon} alpha^t Q^t c. horizon >= 1.
Vector exact_value_power_series(const ProblemInstance& instance, std::size_t horizon);

}  // namespace epe
