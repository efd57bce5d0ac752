#include "epe/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "epe/backward.hpp"
#include "epe/baselines.hpp"
#include "epe/bidirectional.hpp"
#include "epe/errors.hpp"
#include "epe/forward.hpp"
#include "epe/instance.hpp"
#include "epe/rng.hpp"
#include "epe/sampler.hpp"

namespace epe {

using nlohmann::json;

namespace {

constexpr std::uint64_t kPresetSeed = 20200617;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> required_params(const AlgorithmSpec& spec) {
  switch (spec.kind) {
    case AlgorithmKind::forward: return {"T", "m"};
    case AlgorithmKind::backward: return {"epsilon", "n"};
    case AlgorithmKind::bidirectional:
      if (spec.dynamic) return {"n_B", "n_F"};
      return {"epsilon", "n_B", "n_F"};
    case AlgorithmKind::approx_contributions: return {"epsilon"};
    case AlgorithmKind::backward_alternative: return {"epsilon", "n"};
    case AlgorithmKind::plug_in: return {"n"};
  }
  return {};
}

ScaledValue scaled_from_json(const json& j) {
  if (j.is_number()) return ScaledValue{j.get<double>(), 0.0};
  if (j.is_object()) return ScaledValue{j.at("scale").get<double>(), j.value("power", 0.0)};
  throw ContractViolation("parameter must be a number or {\"scale\", \"power\"}");
}

json scaled_to_json(const ScaledValue& v) {
  if (v.power == 0.0) return v.scale;
  return json{{"scale", v.scale}, {"power", v.power}};
}

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t threads = requested;
  if (threads == 0) {
    if (const char* env = std::getenv("EPE_THREADS")) {
      try {
        threads = std::stoul(env);
      } catch (const std::exception&) {
        throw ContractViolation(std::string("EPE_THREADS is not a count: ") + env);
      }
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(threads, jobs));
}

TrialRecord run_algorithm(const AlgorithmSpec& spec, const ProblemInstance& instance,
                          const Vector& truth, std::uint64_t master_seed, std::size_t trial,
                          bool timed) {
  const std::size_t n = instance.size();
  const double alpha = instance.alpha();
  const auto& cost = instance.cost();
  const auto& graph = instance.graph();
  const Rng stream(derive_seed(master_seed, "algorithm:" + spec.label, n, trial));
  CountingSampler sampler(instance, stream.split("sampler").seed());
  Rng rng = stream.split("ties");

  const auto started = std::chrono::steady_clock::now();
  EstimateReport report;
  switch (spec.kind) {
    case AlgorithmKind::forward:
      report = forward_epe(sampler, cost, alpha,
                           {spec.param("T").count_at(n), spec.param("m").count_at(n)});
      break;
    case AlgorithmKind::backward: {
      BackwardParams params{spec.param("epsilon").at(n), spec.param("n").count_at(n), false};
      report = backward_epe(sampler, cost, alpha, graph, params, rng).report;
      break;
    }
    case AlgorithmKind::bidirectional: {
      BidirectionalConfig config;
      config.mode = spec.dynamic ? TerminationMode::dynamic : TerminationMode::fixed_epsilon;
      config.epsilon = spec.dynamic ? 0.0 : spec.param("epsilon").at(n);
      config.backward_samples = spec.param("n_B").count_at(n);
      config.forward_walks = spec.param("n_F").count_at(n);
      report = bidirectional_epe(sampler, cost, alpha, graph, config, rng);
      break;
    }
    case AlgorithmKind::approx_contributions:
      report = approx_contributions(instance.transitions(), cost, alpha,
                                    spec.param("epsilon").at(n), rng);
      break;
    case AlgorithmKind::backward_alternative:
      report = backward_epe_alternative(sampler, cost, alpha, graph, spec.param("epsilon").at(n),
                                        spec.param("n").count_at(n), rng);
      break;
    case AlgorithmKind::plug_in:
      report = plug_in_estimate(sampler, cost, alpha, spec.param("n").count_at(n));
      break;
  }
  const auto elapsed = std::chrono::steady_clock::now() - started;

  if (report.samples_used != sampler.draw_count())
    throw Diagnostic("reported samples disagree with the sampler tally for " + spec.label);

  TrialRecord rec;
  rec.states = n;
  rec.algorithm = spec.label;
  rec.trial = trial;
  rec.samples_used = report.samples_used;
  rec.linf_error = linf_distance(report.estimate, truth);
  double rel = 0.0;
  std::size_t counted = 0;
  for (StateIndex s = 0; s < n; ++s) {
    if (truth[s] == 0.0) {
      ++rec.zero_value_states;
      continue;
    }
    rel += std::abs(report.estimate[s] - truth[s]) / truth[s];
    ++counted;
  }
  rec.mean_relative_error = counted == 0 ? 0.0 : rel / static_cast<double>(counted);
  rec.encountered_size = report.encountered_size;
  rec.iterations = report.iterations;
  if (timed) rec.wall_time_ms = std::chrono::duration<double, std::milli>(elapsed).count();
  return rec;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double std_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

const EnsembleSpec& find_ensemble(const ExperimentConfig& config, std::size_t states, double p) {
  for (const auto& e : config.ensembles)
    if (e.states == states && e.density() == p) return e;
  throw ContractViolation("no ensemble in the config matches S=" + std::to_string(states) +
                          ", p=" + format_double(p));
}

}  // namespace

std::string to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::forward: return "forward";
    case AlgorithmKind::backward: return "backward";
    case AlgorithmKind::bidirectional: return "bidirectional";
    case AlgorithmKind::approx_contributions: return "approx_contributions";
    case AlgorithmKind::backward_alternative: return "backward_alternative";
    case AlgorithmKind::plug_in: return "plug_in";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm(const std::string& name) {
  for (auto kind : {AlgorithmKind::forward, AlgorithmKind::backward, AlgorithmKind::bidirectional,
                    AlgorithmKind::approx_contributions, AlgorithmKind::backward_alternative,
                    AlgorithmKind::plug_in})
    if (to_string(kind) == name) return kind;
  throw ContractViolation("unknown algorithm '" + name + "'");
}

double ScaledValue::at(std::size_t states) const {
  return power == 0.0 ? scale : scale * std::pow(static_cast<double>(states), power);
}

std::uint64_t ScaledValue::count_at(std::size_t states) const {
  // Non-integer counts round up; the slack absorbs representation noise
  // such as 0.05 * 200 landing a hair above 10.
  const double x = std::ceil(at(states) - 1e-9);
  return x < 1.0 ? 1 : static_cast<std::uint64_t>(x);
}

const ScaledValue& AlgorithmSpec::param(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end())
    throw ContractViolation("algorithm '" + label + "' is missing parameter '" + name + "'");
  return it->second;
}

void validate_config(const ExperimentConfig& config) {
  require(config.trials >= 1, "trials must be >= 1");
  require(config.alpha > 0.0 && config.alpha < 1.0, "alpha must lie in (0, 1)");
  require(!config.ensembles.empty(), "config lists no ensembles");
  require(!config.algorithms.empty(), "config lists no algorithms");
  for (const auto& e : config.ensembles) validate_spec(e);
  std::vector<std::string> labels;
  for (const auto& a : config.algorithms) {
    require(!a.label.empty() && a.label.find(',') == std::string::npos,
            "algorithm labels must be nonempty and comma-free");
    require(std::find(labels.begin(), labels.end(), a.label) == labels.end(),
            "duplicate algorithm label '" + a.label + "'");
    labels.push_back(a.label);
    require(!a.dynamic || a.kind == AlgorithmKind::bidirectional,
            "dynamic termination applies to bidirectional only");
    for (const auto& name : required_params(a)) {
      const ScaledValue& v = a.param(name);
      for (const auto& e : config.ensembles)
        require(v.at(e.states) > 0.0, "parameter '" + name + "' of '" + a.label +
                                          "' must be positive");
    }
    for (const auto& [name, value] : a.params) {
      const auto req = required_params(a);
      require(std::find(req.begin(), req.end(), name) != req.end(),
              "algorithm '" + a.label + "' does not take parameter '" + name + "'");
    }
  }
}

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig config;
  try {
    config.alpha = doc.at("alpha").get<double>();
    config.trials = doc.value("trials", std::size_t{1});
    config.master_seed = doc.value("master_seed", std::uint64_t{0});
    config.output = doc.value("output", std::string{});
    config.record_wall_time = doc.value("record_wall_time", false);
    for (const auto& e : doc.at("ensembles")) {
      EnsembleSpec spec;
      spec.p = e.value("p", 1.0);
      spec.cost_model = parse_cost_model(e.value("cost_model", std::string{"mixed"}));
      spec.ones = e.value("H", std::size_t{0});
      spec.rule = parse_density_rule(e.value("rule", std::string{"constant"}));
      const json& sizes = e.at("S");
      if (sizes.is_array()) {
        for (const auto& s : sizes) {
          spec.states = s.get<std::size_t>();
          config.ensembles.push_back(spec);
        }
      } else {
        spec.states = sizes.get<std::size_t>();
        config.ensembles.push_back(spec);
      }
    }
    for (const auto& a : doc.at("algorithms")) {
      AlgorithmSpec spec;
      spec.kind = parse_algorithm(a.at("name").get<std::string>());
      spec.label = a.value("label", to_string(spec.kind));
      const std::string mode = a.value("termination", std::string{"fixed"});
      require(mode == "fixed" || mode == "dynamic", "termination must be fixed or dynamic");
      spec.dynamic = mode == "dynamic";
      for (const auto& [key, value] : a.items()) {
        if (key == "name" || key == "label" || key == "termination") continue;
        spec.params[key] = scaled_from_json(value);
      }
      config.algorithms.push_back(std::move(spec));
    }
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("malformed config: ") + e.what());
  }
  validate_config(config);
  return config;
}

json config_to_json(const ExperimentConfig& config) {
  json ensembles = json::array();
  for (const auto& e : config.ensembles) {
    json j{{"S", e.states}, {"cost_model", to_string(e.cost_model)}, {"rule", to_string(e.rule)}};
    if (e.rule == DensityRule::constant) j["p"] = e.p;
    if (e.cost_model == CostModel::binary) j["H"] = e.ones;
    ensembles.push_back(std::move(j));
  }
  json algorithms = json::array();
  for (const auto& a : config.algorithms) {
    json j{{"name", to_string(a.kind)}, {"label", a.label}};
    if (a.kind == AlgorithmKind::bidirectional) j["termination"] = a.dynamic ? "dynamic" : "fixed";
    for (const auto& [key, value] : a.params) j[key] = scaled_to_json(value);
    algorithms.push_back(std::move(j));
  }
  return json{{"alpha", config.alpha},
              {"trials", config.trials},
              {"master_seed", config.master_seed},
              {"output", config.output},
              {"record_wall_time", config.record_wall_time},
              {"ensembles", std::move(ensembles)},
              {"algorithms", std::move(algorithms)}};
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("malformed config JSON: ") + e.what());
  }
  return config_from_json(doc);
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig config;
  config.trials = 100;
  config.master_seed = kPresetSeed;
  if (name == "fig1" || name == "fig1-alt") {
    config.alpha = name == "fig1" ? 0.9 : 0.1;
    config.output = name + ".csv";
    for (auto rule : {DensityRule::constant, DensityRule::quartic_root, DensityRule::square_root})
      for (std::size_t s : {100, 200, 400, 800, 1600})
        config.ensembles.push_back({s, 10.0, CostModel::mixed, 0, rule});
    AlgorithmSpec backward{AlgorithmKind::backward, "backward", {}, false};
    backward.params["epsilon"] = {0.15, 0.0};
    backward.params["n"] = {20, 0.0};
    AlgorithmSpec forward{AlgorithmKind::forward, "forward", {}, false};
    forward.params["T"] = {10, 0.0};
    forward.params["m"] = {4, 0.0};
    config.algorithms = {backward, forward};
  } else if (name == "fig2") {
    config.alpha = 0.9;
    config.output = "fig2.csv";
    for (std::size_t s : {100, 200, 400, 800, 1600, 3200})
      config.ensembles.push_back({s, 10.0, CostModel::mixed, 0, DensityRule::constant});
    AlgorithmSpec forward{AlgorithmKind::forward, "forward", {}, false};
    forward.params["T"] = {15, 0.0};
    forward.params["m"] = {0.05, 1.0};
    AlgorithmSpec backward{AlgorithmKind::backward, "backward", {}, false};
    backward.params["epsilon"] = {10.0, -1.0};
    backward.params["n"] = {1.0, 1.0};
    AlgorithmSpec bidir{AlgorithmKind::bidirectional, "bidirectional", {}, true};
    bidir.params["n_B"] = {1.0, 1.0};
    bidir.params["n_F"] = {1.5, 0.5};
    config.algorithms = {forward, backward, bidir};
  } else {
    throw ContractViolation("unknown preset '" + name + "' (fig1, fig1-alt, fig2)");
  }
  validate_config(config);
  return config;
}

std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t states, std::size_t trial) {
  return derive_seed(master_seed, "instance", states, trial);
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config, std::size_t threads) {
  validate_config(config);
  const std::size_t jobs = config.ensembles.size() * config.trials;
  const std::size_t algorithms = config.algorithms.size();
  std::vector<TrialRecord> records(jobs * algorithms);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      try {
        const EnsembleSpec& spec = config.ensembles[job / config.trials];
        const std::size_t trial = job % config.trials;
        const std::uint64_t seed = instance_seed(config.master_seed, spec.states, trial);
        const ProblemInstance instance = generate_instance(spec, config.alpha, seed);
        const Vector truth = exact_value(instance);
        for (std::size_t a = 0; a < algorithms; ++a) {
          TrialRecord rec = run_algorithm(config.algorithms[a], instance, truth,
                                          config.master_seed, trial, config.record_wall_time);
          rec.p = spec.density();
          rec.seed = seed;
          records[job * algorithms + a] = std::move(rec);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs);
        return;
      }
    }
  };

  const std::size_t workers = worker_count(threads, jobs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.states, a.p, a.algorithm, a.seed, a.trial) <
           std::tie(b.states, b.p, b.algorithm, b.seed, b.trial);
  });
  return records;
}

void write_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.states << ',' << format_double(r.p) << ',' << r.algorithm << ',' << r.seed << ','
        << r.samples_used << ',' << format_double(r.linf_error) << ','
        << format_double(r.mean_relative_error) << ',' << r.zero_value_states << ',';
    if (r.encountered_size) out << *r.encountered_size;
    out << ',' << r.iterations << ',' << format_double(r.wall_time_ms) << '\n';
  }
}

std::vector<TrialRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ContractViolation("CSV header does not match the trial schema");
  std::vector<TrialRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11)
      throw ContractViolation("CSV line " + std::to_string(line_no) + " has " +
                              std::to_string(f.size()) + " fields");
    try {
      TrialRecord r;
      r.states = std::stoul(f[0]);
      r.p = std::stod(f[1]);
      r.algorithm = f[2];
      r.seed = std::stoull(f[3]);
      r.samples_used = std::stoull(f[4]);
      r.linf_error = std::stod(f[5]);
      r.mean_relative_error = std::stod(f[6]);
      r.zero_value_states = std::stoul(f[7]);
      if (!f[8].empty()) r.encountered_size = std::stoul(f[8]);
      r.iterations = std::stoull(f[9]);
      r.wall_time_ms = std::stod(f[10]);
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ContractViolation("CSV line " + std::to_string(line_no) + " is malformed");
    }
  }
  return out;
}

ScalingFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "log-log fit needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  require(denom > 0.0, "log-log fit needs two distinct x values");
  ScalingFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.points = x.size();
  return fit;
}

Summary summarize(const std::vector<TrialRecord>& records) {
  require(!records.empty(), "nothing to summarize");
  using Key = std::tuple<std::size_t, double, std::string>;
  std::vector<Key> order;
  std::map<Key, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) {
    Key key{r.states, r.p, r.algorithm};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  std::sort(order.begin(), order.end());

  Summary summary;
  for (const auto& key : order) {
    const auto& rows = groups[key];
    std::vector<double> samples, linf, rel, enc;
    for (const auto* r : rows) {
      samples.push_back(static_cast<double>(r->samples_used));
      linf.push_back(r->linf_error);
      rel.push_back(r->mean_relative_error);
      if (r->encountered_size) enc.push_back(static_cast<double>(*r->encountered_size));
    }
    SummaryCell cell;
    std::tie(cell.states, cell.p, cell.algorithm) = key;
    cell.trials = rows.size();
    cell.samples_mean = mean_of(samples);
    cell.samples_std = std_of(samples);
    cell.linf_mean = mean_of(linf);
    cell.linf_std = std_of(linf);
    cell.relerr_mean = mean_of(rel);
    cell.relerr_std = std_of(rel);
    cell.encountered_mean = mean_of(enc);
    summary.cells.push_back(std::move(cell));
  }

  for (auto& cell : summary.cells) {
    const SummaryCell* back = nullptr;
    const SummaryCell* fwd = nullptr;
    for (const auto& other : summary.cells) {
      if (other.states != cell.states || other.p != cell.p) continue;
      if (other.algorithm == "backward") back = &other;
      if (other.algorithm == "forward") fwd = &other;
    }
    if (back && fwd && fwd->samples_mean > 0.0)
      cell.backward_forward_ratio = back->samples_mean / fwd->samples_mean;
  }

  std::vector<std::string> algorithms;
  for (const auto& cell : summary.cells)
    if (std::find(algorithms.begin(), algorithms.end(), cell.algorithm) == algorithms.end())
      algorithms.push_back(cell.algorithm);
  for (const auto& name : algorithms) {
    std::vector<double> xs, ys;
    bool usable = true;
    for (const auto& cell : summary.cells) {
      if (cell.algorithm != name) continue;
      usable = usable && cell.samples_mean > 0.0;
      xs.push_back(static_cast<double>(cell.states));
      ys.push_back(cell.samples_mean);
    }
    if (!usable || xs.size() < 2 || *std::min_element(xs.begin(), xs.end()) ==
                                        *std::max_element(xs.begin(), xs.end()))
      continue;
    ScalingFit fit = fit_log_log(xs, ys);
    fit.algorithm = name;
    summary.fits.push_back(std::move(fit));
  }
  return summary;
}

void write_summary_csv(const Summary& summary, std::ostream& out) {
  out << "S,p,algorithm,trials,samples_mean,samples_std,linf_mean,linf_std,relerr_mean,"
         "relerr_std,encountered_mean,backward_forward_ratio\n";
  for (const auto& c : summary.cells) {
    out << c.states << ',' << format_double(c.p) << ',' << c.algorithm << ',' << c.trials << ','
        << format_double(c.samples_mean) << ',' << format_double(c.samples_std) << ','
        << format_double(c.linf_mean) << ',' << format_double(c.linf_std) << ','
        << format_double(c.relerr_mean) << ',' << format_double(c.relerr_std) << ','
        << format_double(c.encountered_mean) << ',';
    if (c.backward_forward_ratio) out << format_double(*c.backward_forward_ratio);
    out << '\n';
  }
}

void write_fits_csv(const Summary& summary, std::ostream& out) {
  out << "algorithm,slope,intercept,points\n";
  for (const auto& f : summary.fits)
    out << f.algorithm << ',' << format_double(f.slope) << ',' << format_double(f.intercept)
        << ',' << f.points << '\n';
}

double expected_state_cost(const EnsembleSpec& spec) {
  const double s = static_cast<double>(spec.states);
  if (spec.cost_model == CostModel::binary) return static_cast<double>(spec.ones) / s;
  const double q = spec.density() / s;
  // c1 is redrawn until nonzero, which lifts each entry's mean slightly.
  const double c1 = q / (1.0 - std::pow(1.0 - q, s));
  return c1 + q / 2.0;
}

std::vector<BoundCell> bound_report(const std::vector<TrialRecord>& records,
                                    const ExperimentConfig& config) {
  std::vector<BoundCell> cells;
  for (const auto& alg : config.algorithms) {
    if (alg.kind != AlgorithmKind::backward) continue;
    using Key = std::pair<std::size_t, double>;
    std::map<Key, std::vector<const TrialRecord*>> groups;
    for (const auto& r : records)
      if (r.algorithm == alg.label) groups[{r.states, r.p}].push_back(&r);
    for (const auto& [key, rows] : groups) {
      const auto& [states, p] = key;
      const EnsembleSpec& spec = find_ensemble(config, states, p);
      std::vector<double> enc, degree;
      for (const auto* r : rows) {
        require(r->encountered_size.has_value(), "backward record without encountered_size");
        enc.push_back(static_cast<double>(*r->encountered_size));
        degree.push_back(generate_instance(spec, config.alpha, r->seed).graph().average_degree());
      }
      BoundCell cell;
      cell.states = states;
      cell.p = p;
      cell.algorithm = alg.label;
      cell.trials = rows.size();
      cell.encountered_mean = mean_of(enc);
      cell.avg_degree_mean = mean_of(degree);
      cell.cost_bar = expected_state_cost(spec);
      const double epsilon = alg.param("epsilon").at(states);
      cell.bound = static_cast<double>(states) * cell.cost_bar * cell.avg_degree_mean /
                   (epsilon * (1.0 - config.alpha));
      cell.pass = cell.encountered_mean <= cell.bound;
      cells.push_back(cell);
    }
  }
  return cells;
}

void write_bounds_csv(const std::vector<BoundCell>& cells, std::ostream& out) {
  out << "S,p,algorithm,trials,encountered_mean,avg_degree_mean,cost_bar,bound,pass\n";
  for (const auto& c : cells)
    out << c.states << ',' << format_double(c.p) << ',' << c.algorithm << ',' << c.trials << ','
        << format_double(c.encountered_mean) << ',' << format_double(c.avg_degree_mean) << ','
        << format_double(c.cost_bar) << ',' << format_double(c.bound) << ','
        << (c.pass ? "true" : "false") << '\n';
}

}  // namespace epe
