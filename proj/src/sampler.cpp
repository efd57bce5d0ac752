#include "epe/sampler.hpp"

#include <algorithm>
#include <string>

#include "epe/errors.hpp"

namespace epe {

CountingSampler::CountingSampler(const ProblemInstance& instance, std::uint64_t seed)
    : instance_(&instance), rng_(seed), tables_(instance.size()), built_(instance.size(), false) {}

const CountingSampler::RowTable& CountingSampler::table(StateIndex s) {
  if (s >= tables_.size())
    throw ContractViolation("state " + std::to_string(s) + " out of range");
  if (!built_[s]) {
    RowTable& t = tables_[s];
    const auto row = instance_->transitions().row(s);
    double running = 0.0;
    for (StateIndex j = 0; j < row.size(); ++j) {
      if (row[j] <= 0.0) continue;
      running += row[j];
      t.support.push_back(j);
      t.weight.push_back(row[j]);
      t.cumulative.push_back(running);
    }
    require(!t.support.empty(), "transition row " + std::to_string(s) + " is empty");
    built_[s] = true;
  }
  return tables_[s];
}

StateIndex CountingSampler::sample_next(StateIndex s) {
  const RowTable& t = table(s);
  ++draws_;
  const double u = rng_.uniform() * t.cumulative.back();
  auto it = std::upper_bound(t.cumulative.begin(), t.cumulative.end(), u);
  if (it == t.cumulative.end()) --it;
  return t.support[static_cast<std::size_t>(it - t.cumulative.begin())];
}

SparseRow CountingSampler::sample_row(StateIndex s, std::uint64_t n) {
  require(n >= 1, "sample_row needs n >= 1");
  const RowTable& t = table(s);
  draws_ += n;
  std::vector<std::pair<StateIndex, std::uint64_t>> counts;
  counts.reserve(t.support.size());
  std::uint64_t remaining = n;
  double mass = t.cumulative.back();
  for (std::size_t i = 0; i < t.support.size() && remaining > 0; ++i) {
    std::uint64_t hits = remaining;
    if (i + 1 < t.support.size() && mass > t.weight[i]) {
      hits = rng_.binomial(remaining, t.weight[i] / mass);
    }
    counts.emplace_back(t.support[i], hits);
    remaining -= hits;
    mass -= t.weight[i];
  }
  return SparseRow::from_counts(counts, n);
}

}  // namespace epe
