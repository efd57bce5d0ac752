#include "epe/supergraph.hpp"

#include <algorithm>
#include <string>

#include "epe/errors.hpp"

namespace epe {

Supergraph::Supergraph(AdjacencyLists out_edges) : out_(std::move(out_edges)), in_(out_.size()) {
  const std::size_t n = out_.size();
  for (StateIndex s = 0; s < n; ++s) {
    auto& row = out_[s];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (!row.empty() && row.back() >= n)
      throw ContractViolation("supergraph edge " + std::to_string(s) + " -> " +
                              std::to_string(row.back()) + " leaves the state space");
    for (StateIndex t : row) in_[t].push_back(s);  // s increasing, so in_ stays sorted
    edges_ += row.size();
  }
  avg_degree_ = n == 0 ? 0.0 : static_cast<double>(edges_) / static_cast<double>(n);
}

Supergraph Supergraph::complete(std::size_t states) {
  AdjacencyLists out(states);
  for (auto& row : out) {
    row.resize(states);
    for (StateIndex t = 0; t < states; ++t) row[t] = t;
  }
  return Supergraph(std::move(out));
}

Supergraph Supergraph::from_support(const DenseMatrix& q) {
  AdjacencyLists out(q.rows());
  for (StateIndex s = 0; s < q.rows(); ++s)
    for (StateIndex t = 0; t < q.cols(); ++t)
      if (q(s, t) > 0.0) out[s].push_back(t);
  return Supergraph(std::move(out));
}

bool Supergraph::has_edge(StateIndex from, StateIndex to) const {
  const auto& row = out_[from];
  return std::binary_search(row.begin(), row.end(), to);
}

}  // namespace epe
