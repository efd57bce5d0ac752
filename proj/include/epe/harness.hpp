#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "epe/instance_gen.hpp"

namespace epe {

enum class AlgorithmKind {
  forward,
  backward,
  bidirectional,
  approx_contributions,
  backward_alternative,
  plug_in,
};

std::string to_string(AlgorithmKind kind);
AlgorithmKind parse_algorithm(const std::string& name);

/// Parameter that may scale with the state count: scale * S^power.
struct ScaledValue {
  double scale = 0.0;
  double power = 0.0;

  double at(std::size_t states) const;
  /// Ceiling of at(S), at least 1.
  std::uint64_t count_at(std::size_t states) const;
};

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::backward;
  std::string label;  // CSV algorithm column; defaults to the kind name
  std::map<std::string, ScaledValue> params;
  bool dynamic = false;  // bidirectional termination mode

  const ScaledValue& param(const std::string& name) const;
};

struct ExperimentConfig {
  std::vector<EnsembleSpec> ensembles;
  std::vector<AlgorithmSpec> algorithms;
  double alpha = 0.9;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::string output;
  /// Wall-clock timing makes CSVs differ between runs; off by default.
  bool record_wall_time = false;
};

/// Throws ContractViolation on any invalid field or parameter block.
void validate_config(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

/// Built-in presets: "fig1" (alpha 0.9), "fig1-alt" (alpha 0.1), "fig2".
ExperimentConfig preset(const std::string& name);

struct TrialRecord {
  std::size_t states = 0;
  double p = 0.0;
  std::string algorithm;
  std::uint64_t seed = 0;  // instance seed
  std::uint64_t samples_used = 0;
  double linf_error = 0.0;
  double mean_relative_error = 0.0;
  std::size_t zero_value_states = 0;
  std::optional<std::size_t> encountered_size;
  std::uint64_t iterations = 0;
  double wall_time_ms = 0.0;
  std::size_t trial = 0;  // not serialized
};

inline constexpr const char* kCsvHeader =
    "S,p,algorithm,seed,samples_used,linf_error,mean_relative_error,zero_value_states,"
    "encountered_size,iterations,wall_time_ms";

std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t states, std::size_t trial);

/// Runs every (ensemble, trial, algorithm) cell on up to `threads` workers
/// (0 = EPE_THREADS or hardware concurrency). Records come back in canonical
/// order (S, p, algorithm, seed) whatever the completion order.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config, std::size_t threads = 0);

void write_csv(const std::vector<TrialRecord>& records, std::ostream& out);
std::vector<TrialRecord> read_csv(std::istream& in);

struct SummaryCell {
  std::size_t states = 0;
  double p = 0.0;
  std::string algorithm;
  std::size_t trials = 0;
  double samples_mean = 0, samples_std = 0;
  double linf_mean = 0, linf_std = 0;
  double relerr_mean = 0, relerr_std = 0;
  double encountered_mean = 0;
  /// mean backward samples / mean forward samples at the same (S, p).
  std::optional<double> backward_forward_ratio;
};

struct ScalingFit {
  std::string algorithm;
  double slope = 0;
  double intercept = 0;
  std::size_t points = 0;
};

struct Summary {
  std::vector<SummaryCell> cells;
  std::vector<ScalingFit> fits;  // log(mean samples) vs log(S), per algorithm
};

/// Throws ContractViolation on empty input.
Summary summarize(const std::vector<TrialRecord>& records);
void write_summary_csv(const Summary& summary, std::ostream& out);
void write_fits_csv(const Summary& summary, std::ostream& out);

/// Least-squares fit of log y = intercept + slope log x.
ScalingFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

struct BoundCell {
  std::size_t states = 0;
  double p = 0.0;
  std::string algorithm;
  std::size_t trials = 0;
  double encountered_mean = 0;
  double avg_degree_mean = 0;  // realized dbar, averaged over instances
  double cost_bar = 0;         // cbar = beta E||C||_1 / S with beta = 1
  double bound = 0;            // S cbar dbar / (epsilon (1 - alpha))
  bool pass = false;
};

/// Checks mean |U_{k*}| against the average-case encountered-set bound for
/// every backward cell. Instances are regenerated from record seeds.
std::vector<BoundCell> bound_report(const std::vector<TrialRecord>& records,
                                    const ExperimentConfig& config);
void write_bounds_csv(const std::vector<BoundCell>& cells, std::ostream& out);

/// Expected cost of one state under the ensemble (symmetric across states).
double expected_state_cost(const EnsembleSpec& spec);

}  // namespace epe
