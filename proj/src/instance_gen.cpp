#include "epe/instance_gen.hpp"

#include <cmath>
#include <numeric>

#include "epe/errors.hpp"
#include "epe/rng.hpp"

namespace epe {

namespace {

constexpr int kMaxAttempts = 1'000'000;

}  // namespace

double EnsembleSpec::density() const {
  const double s = static_cast<double>(states);
  switch (rule) {
    case DensityRule::constant: return p;
    case DensityRule::quartic_root: return std::pow(100.0 * s, 0.25);
    case DensityRule::square_root: return std::sqrt(s);
  }
  return p;
}

void validate_spec(const EnsembleSpec& spec) {
  require(spec.states >= 1, "ensemble needs S >= 1");
  const double p = spec.density();
  require(p >= 1.0 && p <= static_cast<double>(spec.states),
          "density parameter p must satisfy 1 <= p <= S");
  if (spec.cost_model == CostModel::binary)
    require(spec.ones >= 1 && spec.ones <= spec.states, "binary costs need 1 <= H <= S");
}

ProblemInstance generate_instance(const EnsembleSpec& spec, double alpha, std::uint64_t seed) {
  validate_spec(spec);
  const std::size_t n = spec.states;
  const double prob = spec.density() / static_cast<double>(n);
  const Rng root(seed);

  Rng q_rng = root.split("transitions");
  DenseMatrix q(n, n);
  AdjacencyLists mask(n);
  for (int attempt = 0;; ++attempt) {
    if (attempt == kMaxAttempts) throw Diagnostic("transition mask resampling cap reached");
    bool all_rows = true;
    for (StateIndex s = 0; s < n; ++s) {
      mask[s].clear();
      auto row = q.row(s);
      for (StateIndex t = 0; t < n; ++t) {
        row[t] = 0.0;
        if (q_rng.bernoulli(prob)) {
          row[t] = q_rng.uniform_open();
          mask[s].push_back(t);
        }
      }
      all_rows = all_rows && !mask[s].empty();
    }
    if (all_rows) break;
  }
  for (StateIndex s = 0; s < n; ++s) {
    auto row = q.row(s);
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& w : row) w /= total;
  }

  Vector cost(n, 0.0);
  Rng c_rng = root.split("cost");
  if (spec.cost_model == CostModel::binary) {
    cost = generate_binary_cost(n, spec.ones, c_rng.next_u64());
  } else {
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxAttempts) throw Diagnostic("cost resampling cap reached");
      bool any = false;
      for (StateIndex s = 0; s < n; ++s) {
        cost[s] = c_rng.bernoulli(prob) ? 1.0 : 0.0;
        any = any || cost[s] > 0.0;
      }
      if (any) break;
    }
    for (StateIndex s = 0; s < n; ++s) cost[s] += c_rng.uniform() * prob;
  }

  return ProblemInstance(alpha, std::move(cost), std::move(q), Supergraph(std::move(mask)));
}

Vector generate_binary_cost(std::size_t states, std::size_t ones, std::uint64_t seed) {
  require(ones >= 1 && ones <= states, "binary costs need 1 <= H <= S");
  Rng rng(seed);
  std::vector<StateIndex> order(states);
  std::iota(order.begin(), order.end(), StateIndex{0});
  Vector cost(states, 0.0);
  for (std::size_t i = 0; i < ones; ++i) {
    const std::size_t j = i + rng.index(states - i);
    std::swap(order[i], order[j]);
    cost[order[i]] = 1.0;
  }
  return cost;
}

std::string to_string(CostModel model) {
  return model == CostModel::binary ? "binary" : "mixed";
}

std::string to_string(DensityRule rule) {
  switch (rule) {
    case DensityRule::constant: return "constant";
    case DensityRule::quartic_root: return "quartic_root";
    case DensityRule::square_root: return "square_root";
  }
  return "constant";
}

CostModel parse_cost_model(const std::string& text) {
  if (text == "mixed") return CostModel::mixed;
  if (text == "binary") return CostModel::binary;
  throw ContractViolation("unknown cost model '" + text + "'");
}

DensityRule parse_density_rule(const std::string& text) {
  if (text == "constant" || text == "case1") return DensityRule::constant;
  if (text == "quartic_root" || text == "case2") return DensityRule::quartic_root;
  if (text == "square_root" || text == "case3") return DensityRule::square_root;
  throw ContractViolation("unknown density rule '" + text + "'");
}

}  // namespace epe
