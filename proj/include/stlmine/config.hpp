#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stlmine/falsification.hpp"
#include "stlmine/miner.hpp"
#include "stlmine/models.hpp"

namespace stlmine {

struct ModelConfig {
  std::string name = "delay";  // delay | oscillator | subprocess
  double delay = 1.0;
  double default_value = 1.0;
  std::map<std::string, std::pair<double, double>> box;  // delay/subprocess
  std::string command;                       // subprocess only
  std::vector<std::string> inputs, outputs;  // subprocess only
};

/* Everything a run needs, loadable from one JSON document.  Keys map onto
 * the corresponding config structs one-to-one; missing keys keep the
 * defaults from the struct definitions. */
struct AppConfig {
  ModelConfig model;
  std::string phi_out;  // formula text
  MinerConfig miner;
};

AppConfig load_config(const std::string& path);
AppConfig parse_config(const std::string& json_text);

std::unique_ptr<Model> make_model(const ModelConfig& cfg);

// JSON form of a mining report (schema_version field included); wall-clock
// time is the one non-reproducible field, so it can be suppressed
std::string report_to_json(const MiningReport& report,
                           bool include_wall_time = true);

}  // namespace stlmine
