#pragma once

#include <cstddef>
#include <vector>

#include "epe/matrix.hpp"

namespace epe {

using AdjacencyLists = std::vector<std::vector<StateIndex>>;

/// Binary adjacency A over states whose support contains the support of the
/// transition matrix. Kept as sorted out-edge lists plus the transpose
/// (incoming neighbors), which is what backward exploration walks.
class Supergraph {
 public:
  Supergraph() = default;

  /// Sorts and deduplicates each list. Throws ContractViolation on an index
  /// outside [0, out_edges.size()).
  explicit Supergraph(AdjacencyLists out_edges);

  static Supergraph complete(std::size_t states);
  /// Tightest legal supergraph: A(s,s') = 1 iff Q(s,s') > 0.
  static Supergraph from_support(const DenseMatrix& q);

  std::size_t size() const { return out_.size(); }
  const std::vector<StateIndex>& out_edges(StateIndex s) const { return out_[s]; }
  const std::vector<StateIndex>& in_neighbors(StateIndex s) const { return in_[s]; }
  std::size_t in_degree(StateIndex s) const { return in_[s].size(); }
  double average_degree() const { return avg_degree_; }
  std::size_t edge_count() const { return edges_; }
  bool has_edge(StateIndex from, StateIndex to) const;

  const AdjacencyLists& out_lists() const { return out_; }
  const AdjacencyLists& in_lists() const { return in_; }

  friend bool operator==(const Supergraph& a, const Supergraph& b) { return a.out_ == b.out_; }

 private:
  AdjacencyLists out_;
  AdjacencyLists in_;
  std::size_t edges_ = 0;
  double avg_degree_ = 0.0;
};

}  // namespace epe
