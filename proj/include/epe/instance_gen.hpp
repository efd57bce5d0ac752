#pragma once

#include <cstdint>
#include <string>

#include "epe/instance.hpp"

namespace epe {

enum class CostModel {
  mixed,   // c = c1 + c2, c1 ~ Bernoulli(p/S) (nonzero), c2 ~ Uniform[0, p/S]
  binary,  // uniform over binary vectors with exactly H ones
};

/// How the density parameter p scales with S.
enum class DensityRule {
  constant,      // p fixed
  quartic_root,  // p = (100 S)^{1/4}
  square_root,   // p = sqrt(S)
};

struct EnsembleSpec {
  std::size_t states = 0;
  double p = 1.0;  // used by DensityRule::constant
  CostModel cost_model = CostModel::mixed;
  std::size_t ones = 0;  // H, binary model only
  DensityRule rule = DensityRule::constant;

  double density() const;
};

/// Throws ContractViolation unless 1 <= p <= S (and 1 <= H <= S for binary).
void validate_spec(const EnsembleSpec& spec);

/// Random instance: Q = row-normalized (Uniform(0,1) .* Bernoulli(p/S)) with
/// the mask redrawn until no row is empty; supergraph = mask support.
ProblemInstance generate_instance(const EnsembleSpec& spec, double alpha, std::uint64_t seed);

/// Uniform member of the binary vectors with exactly H ones.
Vector generate_binary_cost(std::size_t states, std::size_t ones, std::uint64_t seed);

std::string to_string(CostModel model);
std::string to_string(DensityRule rule);
CostModel parse_cost_model(const std::string& text);
DensityRule parse_density_rule(const std::string& text);

}  // namespace epe
