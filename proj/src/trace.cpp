#include "epe/trace.hpp"

#include "epe/errors.hpp"

namespace epe {

std::pair<Vector, Vector> PushTrace::state_at(std::size_t k) const {
  require(k <= pushes.size(), "trace has no iteration " + std::to_string(k));
  Vector v(cost.size(), 0.0);
  Vector r = cost;
  for (std::size_t i = 0; i < k; ++i) apply(pushes[i], v, r);
  return {std::move(v), std::move(r)};
}

}  // namespace epe
