#include "epe/sparse_row.hpp"

#include <algorithm>

#include "epe/errors.hpp"

namespace epe {

SparseRow SparseRow::from_counts(const std::vector<std::pair<StateIndex, std::uint64_t>>& counts,
                                 std::uint64_t total) {
  require(total > 0, "empirical row needs at least one draw");
  SparseRow row;
  std::uint64_t running = 0;
  for (const auto& [j, hits] : counts) {
    if (hits == 0) continue;
    require(row.index_.empty() || j > row.index_.back(), "row indices must increase");
    running += hits;
    row.index_.push_back(j);
    row.prob_.push_back(static_cast<double>(hits) / static_cast<double>(total));
    row.cumulative_.push_back(running);
  }
  require(running == total, "hit counts must add up to the draw total");
  return row;
}

double SparseRow::at(StateIndex j) const {
  const auto it = std::lower_bound(index_.begin(), index_.end(), j);
  if (it == index_.end() || *it != j) return 0.0;
  return prob_[static_cast<std::size_t>(it - index_.begin())];
}

double SparseRow::sum() const {
  double s = 0.0;
  for (double p : prob_) s += p;
  return s;
}

StateIndex SparseRow::sample(Rng& rng) const {
  require(!index_.empty(), "sampling from an empty row");
  const std::uint64_t u = rng.index(static_cast<std::size_t>(cumulative_.back()));
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return index_[static_cast<std::size_t>(it - cumulative_.begin())];
}

void EmpiricalRows::set(StateIndex s, SparseRow row) {
  require(s < rows_.size(), "EmpiricalRows::set: state out of range");
  require(!present_[s], "empirical rows are written once");
  rows_[s] = std::move(row);
  present_[s] = true;
  ++count_;
}

std::vector<StateIndex> EmpiricalRows::members() const {
  std::vector<StateIndex> out;
  out.reserve(count_);
  for (StateIndex s = 0; s < present_.size(); ++s)
    if (present_[s]) out.push_back(s);
  return out;
}

}  // namespace epe
