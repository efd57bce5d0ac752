#include "epe/push.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "epe/errors.hpp"

namespace epe {

void ExactRows::column(StateIndex target, std::span<const StateIndex> candidates,
                       std::span<double> out) {
  for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = (*q_)(candidates[i], target);
}

void CachedEmpiricalRows::column(StateIndex target, std::span<const StateIndex> candidates,
                                 std::span<double> out) {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const StateIndex s = candidates[i];
    if (!rows_.has(s)) rows_.set(s, sampler_->sample_row(s, n_));
    out[i] = rows_.row(s).at(target);
  }
}

void FreshEmpiricalRows::column(StateIndex target, std::span<const StateIndex> candidates,
                                std::span<double> out) {
  for (std::size_t i = 0; i < candidates.size(); ++i)
    out[i] = sampler_->sample_row(candidates[i], n_).at(target);
}

std::uint64_t push_iteration_cap(std::span<const double> cost, double alpha, double epsilon) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (!(epsilon > 0.0)) return kMax;
  const double bound = static_cast<double>(cost.size()) * linf_norm(cost) / (epsilon * (1.0 - alpha));
  const double cap = 10.0 * std::ceil(bound);
  if (!(cap < 1.8e19)) return kMax;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(cap));
}

namespace {

struct HeapEntry {
  double value;
  StateIndex state;
  std::uint64_t version;
  bool operator<(const HeapEntry& other) const { return value < other.value; }
};

}  // namespace

PushResult run_push(std::span<const double> cost, double alpha, const AdjacencyLists& in_neighbors,
                    RowProvider& rows, Rng& tie_rng, const PushOptions& options) {
  const std::size_t n = cost.size();
  require(alpha > 0.0 && alpha < 1.0, "discount factor must lie in (0, 1)");
  require(options.epsilon >= 0.0, "termination threshold must be nonnegative");
  require(options.epsilon > 0.0 || static_cast<bool>(options.stop_when),
          "epsilon = 0 needs an explicit stopping rule");
  require(in_neighbors.size() == n, "in-neighbor lists must cover every state");
  for (double c : cost) require(c >= 0.0, "costs must be nonnegative");

  const std::uint64_t cap = options.iteration_cap != 0
                                ? options.iteration_cap
                                : push_iteration_cap(cost, alpha, options.epsilon);

  PushResult out;
  out.estimate.assign(n, 0.0);
  out.residual.assign(cost.begin(), cost.end());
  out.encountered.assign(n, false);
  if (options.record_trace) {
    out.trace.emplace();
    out.trace->alpha = alpha;
    out.trace->cost.assign(cost.begin(), cost.end());
  }
  Vector& v = out.estimate;
  Vector& r = out.residual;

  // Max-heap with lazy invalidation: an entry is live iff its version matches.
  std::vector<std::uint64_t> version(n, 0);
  std::priority_queue<HeapEntry> heap;
  for (StateIndex s = 0; s < n; ++s)
    if (r[s] > 0.0) heap.push({r[s], s, 0});

  auto live = [&](const HeapEntry& e) { return version[e.state] == e.version; };

  std::vector<HeapEntry> ties;
  std::vector<double> coeff;
  std::uint64_t k = 0;
  while (true) {
    while (!heap.empty() && !live(heap.top())) heap.pop();
    const double top = heap.empty() ? 0.0 : heap.top().value;
    if (!(top > options.epsilon)) break;
    if (k >= cap)
      throw Diagnostic("push loop hit its iteration cap of " + std::to_string(cap));

    ties.clear();
    while (!heap.empty()) {
      const HeapEntry e = heap.top();
      if (!live(e)) {
        heap.pop();
        continue;
      }
      if (e.value != top) break;
      ties.push_back(e);
      heap.pop();
    }
    const std::size_t pick = ties.size() == 1 ? 0 : tie_rng.index(ties.size());
    for (std::size_t i = 0; i < ties.size(); ++i)
      if (i != pick) heap.push(ties[i]);
    const StateIndex target = ties[pick].state;

    if (options.check_selection) {
      const double scan = *std::max_element(r.begin(), r.end());
      const auto tied = static_cast<std::size_t>(std::count(r.begin(), r.end(), scan));
      if (r[target] != scan || tied != ties.size())
        throw Diagnostic("heap selection disagrees with linear scan at iteration " +
                         std::to_string(k + 1));
    }

    ++k;
    const auto& candidates = in_neighbors[target];
    coeff.assign(candidates.size(), 0.0);
    rows.column(target, candidates, coeff);
    for (StateIndex s : candidates) {
      if (!out.encountered[s]) {
        out.encountered[s] = true;
        ++out.encountered_count;
      }
    }

    const double pushed = r[target];
    v[target] += push_gain(alpha, pushed);
    r[target] = 0.0;
    ++version[target];
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double q = coeff[i];
      if (q == 0.0) continue;
      const StateIndex s = candidates[i];
      r[s] += push_increment(alpha, q, pushed);
      heap.push({r[s], s, ++version[s]});
    }

    if (out.trace) {
      PushRecord record;
      record.state = target;
      record.pushed_residual = pushed;
      record.coefficients.reserve(candidates.size());
      for (std::size_t i = 0; i < candidates.size(); ++i)
        record.coefficients.emplace_back(candidates[i], coeff[i]);
      record.encountered = out.encountered_count;
      out.trace->pushes.push_back(std::move(record));
    }

    if (options.stop_when && options.stop_when(k, out.encountered_count)) break;
  }
  out.iterations = k;
  return out;
}

DenseMatrix invariant_gaps(const PushTrace& trace, const DenseMatrix& p) {
  const std::size_t n = trace.cost.size();
  require(p.rows() == n && p.cols() == n, "invariant_gaps: matrix size mismatch");
  const DenseMatrix nu = discounted_occupancy(p, trace.alpha);
  const Vector target = multiply(nu, trace.cost);
  DenseMatrix gaps(trace.final_iteration() + 1, n);
  trace.replay([&](std::size_t k, const Vector& v, const Vector& r) {
    const Vector mass = multiply(nu, r);
    for (StateIndex s = 0; s < n; ++s) gaps(k, s) = v[s] + mass[s] - target[s];
  });
  return gaps;
}


}  // namespace epe
