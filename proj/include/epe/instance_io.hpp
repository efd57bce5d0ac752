#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "epe/instance.hpp"
#include "epe/trace.hpp"

namespace epe {

/// {"S", "alpha", "cost", "Q" (rows), "supergraph" (0-based out-edge lists)}.
nlohmann::json instance_to_json(const ProblemInstance& instance);
/// Throws ContractViolation on missing fields or inconsistent sizes.
ProblemInstance instance_from_json(const nlohmann::json& doc);

void save_instance(const ProblemInstance& instance, const std::string& path);
ProblemInstance load_instance(const std::string& path);

/// One JSON object per push: {"k", "state", "residual", "coefficients", "encountered"}.
void write_trace_jsonl(const PushTrace& trace, std::ostream& out);

}  // namespace epe
