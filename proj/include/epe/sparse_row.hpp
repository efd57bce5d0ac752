#pragma once

#include <cstdint>
#include <vector>

#include "epe/matrix.hpp"
#include "epe/rng.hpp"

namespace epe {

/// Empirical transition row: support indices in increasing order with their
/// relative frequencies. Entries not listed are zero.
class SparseRow {
 public:
  SparseRow() = default;

  /// From per-index hit counts out of `total` draws; zero counts dropped.
  static SparseRow from_counts(const std::vector<std::pair<StateIndex, std::uint64_t>>& counts,
                               std::uint64_t total);

  double at(StateIndex j) const;
  std::size_t support_size() const { return index_.size(); }
  const std::vector<StateIndex>& indices() const { return index_; }
  const std::vector<double>& probabilities() const { return prob_; }
  double sum() const;

  /// Draws an index with probability equal to its stored frequency.
  StateIndex sample(Rng& rng) const;

  friend bool operator==(const SparseRow&, const SparseRow&) = default;

 private:
  std::vector<StateIndex> index_;
  std::vector<double> prob_;
  std::vector<std::uint64_t> cumulative_;  // running hit counts
};

/// Rows estimated so far, keyed by state. A row is written once and never
/// replaced; the set of written rows is the encountered set.
class EmpiricalRows {
 public:
  explicit EmpiricalRows(std::size_t states = 0) : rows_(states), present_(states, false) {}

  std::size_t states() const { return rows_.size(); }
  bool has(StateIndex s) const { return present_[s]; }
  const SparseRow& row(StateIndex s) const { return rows_[s]; }

  /// Throws ContractViolation if row s was already written.
  void set(StateIndex s, SparseRow row);

  std::size_t count() const { return count_; }
  std::vector<StateIndex> members() const;

 private:
  std::vector<SparseRow> rows_;
  std::vector<bool> present_;
  std::size_t count_ = 0;
};

}  // namespace epe
