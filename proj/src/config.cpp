#include "stlmine/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace stlmine {

namespace {

using nlohmann::json;

std::map<std::string, std::pair<double, double>> parse_box(const json& j) {
  std::map<std::string, std::pair<double, double>> box;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& pair = it.value();
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("config: box entry '" + it.key() +
                                  "' must be [lo, hi]");
    box[it.key()] = {pair[0].get<double>(), pair[1].get<double>()};
  }
  return box;
}

template <typename T>
void read(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

void read_grammar(const json& j, GrammarConfig& g) {
  read(j, "signals", g.signals);
  read(j, "max_length", g.max_length);
  if (j.contains("operators")) {
    g.use_not = g.use_globally = g.use_eventually = false;
    g.use_and = g.use_or = g.use_implies = g.use_until = false;
    for (const auto& op : j.at("operators")) {
      std::string name = op.get<std::string>();
      if (name == "not") g.use_not = true;
      else if (name == "G") g.use_globally = true;
      else if (name == "F") g.use_eventually = true;
      else if (name == "and") g.use_and = true;
      else if (name == "or") g.use_or = true;
      else if (name == "implies") g.use_implies = true;
      else if (name == "U") g.use_until = true;
      else
        throw std::invalid_argument("config: unknown operator '" + name + "'");
    }
  }
}

void read_input_gen(const json& j, InputGenConfig& g) {
  read(j, "segments", g.segments);
  read(j, "duration", g.duration);
  read(j, "period", g.period);
  read(j, "seed", g.seed);
  if (j.contains("box")) g.box = parse_box(j.at("box"));
}

void read_classifier(const json& j, ClassifierConfig& c) {
  read(j, "split_ratio", c.split_ratio);
  read(j, "seed", c.seed);
  read(j, "feature_count", c.feature_count);
  if (j.contains("tree")) {
    const auto& t = j.at("tree");
    read(t, "max_depth", c.tree.max_depth);
    read(t, "min_leaf", c.tree.min_leaf);
    read(t, "min_impurity_decrease", c.tree.min_impurity_decrease);
  }
}

void read_falsifier(const json& j, FalsifierConfig& f) {
  read(j, "budget", f.budget);
  read(j, "k", f.k);
  read(j, "restarts", f.restarts);
  read(j, "step_scale", f.step_scale);
  read(j, "output_clamp", f.output_clamp);
  read(j, "seed", f.seed);
}

void read_control_points(const json& j, ControlPointSpec& c) {
  read(j, "points_per_signal", c.points_per_signal);
  read(j, "duration", c.duration);
  read(j, "period", c.period);
  if (j.contains("box")) c.box = parse_box(j.at("box"));
  if (j.contains("interpolation")) {
    std::string mode = j.at("interpolation").get<std::string>();
    if (mode == "constant")
      c.interpolation = Interp::PiecewiseConstant;
    else if (mode == "linear")
      c.interpolation = Interp::PiecewiseLinear;
    else
      throw std::invalid_argument("config: interpolation must be 'constant' "
                                  "or 'linear'");
  }
}

}  // namespace

AppConfig parse_config(const std::string& json_text) {
  json j = json::parse(json_text);
  AppConfig cfg;
  if (j.contains("model")) {
    const auto& m = j.at("model");
    read(m, "name", cfg.model.name);
    read(m, "delay", cfg.model.delay);
    read(m, "default_value", cfg.model.default_value);
    read(m, "command", cfg.model.command);
    read(m, "inputs", cfg.model.inputs);
    read(m, "outputs", cfg.model.outputs);
    if (m.contains("box")) cfg.model.box = parse_box(m.at("box"));
  }
  read(j, "phi_out", cfg.phi_out);
  if (j.contains("miner")) {
    const auto& m = j.at("miner");
    read(m, "n_traces", cfg.miner.n_traces);
    read(m, "max_formula_length", cfg.miner.max_formula_length);
    read(m, "epsilon", cfg.miner.epsilon);
    read(m, "resample_rounds", cfg.miner.resample_rounds);
    read(m, "max_cex_rounds", cfg.miner.max_cex_rounds);
    read(m, "seed", cfg.miner.seed);
    if (m.contains("grammar")) read_grammar(m.at("grammar"), cfg.miner.grammar);
    if (m.contains("input_gen"))
      read_input_gen(m.at("input_gen"), cfg.miner.input_gen);
    if (m.contains("classifier"))
      read_classifier(m.at("classifier"), cfg.miner.classifier);
    if (m.contains("falsifier"))
      read_falsifier(m.at("falsifier"), cfg.miner.falsifier);
    if (m.contains("control_points"))
      read_control_points(m.at("control_points"), cfg.miner.control_points);
  }
  return cfg;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::unique_ptr<Model> make_model(const ModelConfig& cfg) {
  if (cfg.name == "delay") {
    if (!cfg.box.empty())
      return std::make_unique<DelayModel>(cfg.delay, cfg.default_value,
                                          cfg.box.begin()->second);
    return std::make_unique<DelayModel>(cfg.delay, cfg.default_value);
  }
  if (cfg.name == "oscillator") return std::make_unique<OscillatorModel>();
  if (cfg.name == "subprocess") {
    if (cfg.inputs.empty() || cfg.outputs.empty() || cfg.box.empty())
      throw std::invalid_argument(
          "config: subprocess model needs inputs, outputs, and a box");
    return std::make_unique<SubprocessModel>(cfg.command, cfg.inputs, cfg.box,
                                             cfg.outputs);
  }
  throw std::invalid_argument("config: unknown model '" + cfg.name + "'");
}

std::string report_to_json(const MiningReport& report, bool include_wall_time) {
  json j;
  j["schema_version"] = 1;
  if (report.result)
    j["result"] = report.result->to_string();
  else
    j["result"] = nullptr;
  j["failure_reason"] = report.failure_reason;
  j["total_simulations"] = report.total_simulations;
  j["traces_good"] = report.traces_good;
  j["traces_bad"] = report.traces_bad;
  if (include_wall_time) j["wall_seconds"] = report.wall_seconds;
  j["log"] = json::array();
  for (const auto& rec : report.log) {
    json r;
    r["formula"] = rec.formula;
    r["length"] = rec.length;
    r["train_accuracy"] = rec.train_accuracy;
    r["test_accuracy"] = rec.test_accuracy;
    r["tree_size"] = rec.tree_size;
    r["cex_count"] = rec.cex_count;
    r["extracted"] = rec.extracted;
    r["outcome"] = rec.outcome;
    j["log"].push_back(std::move(r));
  }
  return j.dump(2);
}

}  // namespace stlmine
