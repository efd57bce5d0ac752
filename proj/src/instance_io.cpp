#include "epe/instance_io.hpp"

#include <fstream>
#include <ostream>

#include "epe/errors.hpp"

namespace epe {

using nlohmann::json;

json instance_to_json(const ProblemInstance& instance) {
  const std::size_t n = instance.size();
  json rows = json::array();
  for (StateIndex s = 0; s < n; ++s) {
    const auto row = instance.transitions().row(s);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return json{{"S", n},
              {"alpha", instance.alpha()},
              {"cost", instance.cost()},
              {"Q", std::move(rows)},
              {"supergraph", instance.graph().out_lists()}};
}

ProblemInstance instance_from_json(const json& doc) {
  try {
    const auto n = doc.at("S").get<std::size_t>();
    auto cost = doc.at("cost").get<Vector>();
    auto rows = doc.at("Q").get<std::vector<std::vector<double>>>();
    auto graph = doc.at("supergraph").get<AdjacencyLists>();
    require(cost.size() == n && rows.size() == n && graph.size() == n,
            "instance arrays disagree with S");
    return ProblemInstance(doc.at("alpha").get<double>(), std::move(cost),
                           DenseMatrix::from_rows(rows), Supergraph(std::move(graph)));
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("malformed instance JSON: ") + e.what());
  }
}

void save_instance(const ProblemInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(instance).dump() << '\n';
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("malformed instance JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

void write_trace_jsonl(const PushTrace& trace, std::ostream& out) {
  for (std::size_t k = 0; k < trace.pushes.size(); ++k) {
    const PushRecord& p = trace.pushes[k];
    json coeffs = json::array();
    for (const auto& [s, q] : p.coefficients) coeffs.push_back(json::array({s, q}));
    out << json{{"k", k + 1},
                {"state", p.state},
                {"residual", p.pushed_residual},
                {"coefficients", std::move(coeffs)},
                {"encountered", p.encountered}}
               .dump()
        << '\n';
  }
}

}  // namespace epe
