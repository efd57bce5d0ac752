#include "epe/instance.hpp"

#include <cmath>
#include <sstream>

#include "epe/errors.hpp"

namespace epe {

ProblemInstance::ProblemInstance(double alpha, Vector cost, DenseMatrix transitions,
                                 Supergraph graph)
    : alpha_(alpha), cost_(std::move(cost)), q_(std::move(transitions)), graph_(std::move(graph)) {
  const std::size_t n = cost_.size();
  require(n > 0, "instance needs at least one state");
  require(q_.rows() == n && q_.cols() == n, "transition matrix must be S x S");
  require(graph_.size() == n, "supergraph must cover S states");
}

double ProblemInstance::min_positive_transition() const {
  double m = 1.0;
  for (double q : q_.data())
    if (q > 0.0 && q < m) m = q;
  return m;
}

std::vector<Violation> validate_instance(const ProblemInstance& instance) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind kind, StateIndex row, StateIndex col, const std::string& what) {
    std::ostringstream msg;
    msg << what << " at (" << row << ", " << col << ")";
    out.push_back({kind, row, col, msg.str()});
  };

  const double alpha = instance.alpha();
  if (!(alpha > 0.0 && alpha < 1.0))
    report(ViolationKind::discount_out_of_range, 0, 0, "discount factor outside (0, 1)");

  const std::size_t n = instance.size();
  const auto& cost = instance.cost();
  for (StateIndex s = 0; s < n; ++s)
    if (!(cost[s] >= 0.0)) report(ViolationKind::negative_cost, s, s, "negative cost");

  const auto& q = instance.transitions();
  const auto& graph = instance.graph();
  for (StateIndex s = 0; s < n; ++s) {
    double sum = 0.0;
    for (StateIndex t = 0; t < n; ++t) {
      const double w = q(s, t);
      if (!(w >= 0.0)) report(ViolationKind::negative_transition, s, t, "negative transition");
      if (w != 0.0 && !graph.has_edge(s, t))
        report(ViolationKind::absolute_continuity, s, t,
               "Q positive where the supergraph has no edge");
      sum += w;
    }
    if (!(std::abs(sum - 1.0) <= kRowSumTolerance))
      report(ViolationKind::row_not_stochastic, s, s, "row sum " + std::to_string(sum));
  }
  return out;
}

void require_valid(const ProblemInstance& instance) {
  const auto violations = validate_instance(instance);
  if (!violations.empty()) throw ContractViolation("invalid instance: " + violations.front().message);
}

Vector exact_value(const ProblemInstance& instance) {
  return solve_discounted(instance.transitions(), instance.alpha(), instance.cost());
}

Vector exact_value_power_series(const ProblemInstance& instance, std::size_t horizon) {
  require(horizon >= 1, "power series needs horizon >= 1");
  const double alpha = instance.alpha();
  Vector term = instance.cost();
  Vector acc(term.size(), 0.0);
  double weight = 1.0 - alpha;
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * term[i];
    if (t + 1 < horizon) term = multiply(instance.transitions(), term);
    weight *= alpha;
  }
  return acc;
}

}  // namespace epe
