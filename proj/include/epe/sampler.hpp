#pragma once

#include <cstdint>
#include <vector>

#include "epe/instance.hpp"
#include "epe/rng.hpp"
#include "epe/sparse_row.hpp"

namespace epe {

/// The only channel through which estimators observe Q. Every transition
/// draw is tallied; the tally is the sample-complexity meter.
///
/// Single owner, not thread-safe. The instance must outlive the sampler.
class CountingSampler {
 public:
  CountingSampler(const ProblemInstance& instance, std::uint64_t seed);

  std::size_t size() const { return instance_->size(); }
  std::uint64_t draw_count() const { return draws_; }

  /// One draw from Q(s, .). Increments the tally by one.
  StateIndex sample_next(StateIndex s);

  /// Empirical row from `n` independent draws of Q(s, .). Increments the
  /// tally by n. The hit counts are generated as one multinomial vector
  /// (sequential conditional binomials), which has the same law as n
  /// separate draws at O(support) cost.
  SparseRow sample_row(StateIndex s, std::uint64_t n);

 private:
  struct RowTable {
    std::vector<StateIndex> support;
    std::vector<double> weight;
    std::vector<double> cumulative;
  };
  const RowTable& table(StateIndex s);

  const ProblemInstance* instance_;
  Rng rng_;
  std::uint64_t draws_ = 0;
  std::vector<RowTable> tables_;
  std::vector<bool> built_;
};

}  // namespace epe
