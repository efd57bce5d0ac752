#pragma once

#include <cmath>
#include <vector>

#include "epe/instance.hpp"
#include "epe/rng.hpp"

namespace epe::testing {

inline ProblemInstance make_instance(double alpha, Vector cost,
                                     const std::vector<std::vector<double>>& rows) {
  DenseMatrix q = DenseMatrix::from_rows(rows);
  Supergraph graph = Supergraph::from_support(q);
  return ProblemInstance(alpha, std::move(cost), std::move(q), std::move(graph));
}

// S=1 chain that stays put.
inline ProblemInstance point_mass_chain(double alpha = 0.5, double cost = 1.0) {
  return make_instance(alpha, {cost}, {{1.0}});
}

// Random valid instance built without the ensemble generator, so that
// generator bugs cannot hide behind it. extra_edges adds supergraph edges
// outside Q's support.
inline ProblemInstance random_instance(Rng& rng, std::size_t max_states, double alpha,
                                       bool extra_edges = false) {
  const std::size_t s = 1 + rng.index(max_states);
  const double density = 0.15 + 0.7 * rng.uniform();
  DenseMatrix q(s, s);
  AdjacencyLists out(s);
  for (std::size_t i = 0; i < s; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      if (rng.bernoulli(density)) {
        q(i, j) = rng.uniform_open();
        total += q(i, j);
      }
    }
    if (total == 0.0) {
      const std::size_t j = rng.index(s);
      q(i, j) = 1.0;
      total = 1.0;
    }
    for (std::size_t j = 0; j < s; ++j) {
      q(i, j) /= total;
      if (q(i, j) > 0.0 || (extra_edges && rng.bernoulli(0.2))) out[i].push_back(j);
    }
  }
  // Normalization can leave a row sum one ulp off; push it into the largest entry.
  for (std::size_t i = 0; i < s; ++i) {
    double total = 0.0;
    std::size_t big = 0;
    for (std::size_t j = 0; j < s; ++j) {
      total += q(i, j);
      if (q(i, j) > q(i, big)) big = j;
    }
    q(i, big) += 1.0 - total;
  }
  Vector cost(s);
  for (auto& c : cost) c = rng.bernoulli(0.3) ? 0.0 : 2.0 * rng.uniform();
  return ProblemInstance(alpha, std::move(cost), std::move(q), Supergraph(std::move(out)));
}

inline double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double standard_error(const std::vector<double>& xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
}

}  // namespace epe::testing
