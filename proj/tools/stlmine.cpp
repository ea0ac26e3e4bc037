// Command-line front end: monitoring, classification, assumption mining,
// falsification, template enumeration, and dataset generation.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stlmine/classifier.hpp"
#include "stlmine/config.hpp"
#include "stlmine/enumeration.hpp"
#include "stlmine/extraction.hpp"
#include "stlmine/falsification.hpp"
#include "stlmine/miner.hpp"
#include "stlmine/models.hpp"
#include "stlmine/parser.hpp"
#include "stlmine/robustness.hpp"
#include "stlmine/trace.hpp"

namespace fs = std::filesystem;
using namespace stlmine;

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::vector<TimedTrace> load_dir(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("no .csv traces in " + dir);
  std::vector<TimedTrace> traces;
  traces.reserve(files.size());
  for (const auto& f : files) traces.push_back(read_trace_csv(f.string()));
  return traces;
}

std::map<std::string, std::pair<double, double>> data_boxes(
    const std::vector<TimedTrace>& traces) {
  std::map<std::string, std::pair<double, double>> box;
  for (const auto& t : traces)
    for (const auto& name : t.channel_names()) {
      const auto& v = t.channel(name);
      auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      auto it = box.find(name);
      if (it == box.end())
        box[name] = {*lo, *hi};
      else
        it->second = {std::min(it->second.first, *lo),
                      std::max(it->second.second, *hi)};
    }
  return box;
}

std::map<std::string, std::pair<double, double>> parse_box_flags(
    const std::vector<std::string>& entries) {
  std::map<std::string, std::pair<double, double>> box;
  for (const auto& e : entries) {
    auto eq = e.find('=');
    auto colon = e.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos)
      throw std::runtime_error("bad --box entry '" + e +
                               "' (want signal=lo:hi)");
    box[e.substr(0, eq)] = {std::stod(e.substr(eq + 1, colon - eq - 1)),
                            std::stod(e.substr(colon + 1))};
  }
  return box;
}

int cmd_monitor(const std::string& formula_text, const std::string& trace_path) {
  Formula phi = parse_formula(formula_text);
  TimedTrace trace = read_trace_csv(trace_path);
  double rho = robustness(phi, trace, trace.times().front());
  bool sat = rho >= 0.0;
  std::cout << "robustness: " << fmt(rho) << "\n"
            << "verdict: " << (sat ? "SAT" : "UNSAT") << "\n";
  return sat ? 0 : 1;
}

struct ClassifyArgs {
  std::string good_dir, bad_dir;
  std::string template_text;
  bool enumerate = false;
  std::vector<std::string> operators;
  std::size_t max_length = 5;
  std::size_t feature_count = 8;
  double ratio = 0.7;
  double epsilon = 0.05;
  std::uint64_t seed = 0;
  std::string out;
};

void apply_operators(GrammarConfig& g, const std::vector<std::string>& ops) {
  if (ops.empty()) return;
  g.use_not = g.use_globally = g.use_eventually = false;
  g.use_and = g.use_or = g.use_implies = g.use_until = false;
  for (const auto& name : ops) {
    if (name == "not") g.use_not = true;
    else if (name == "G") g.use_globally = true;
    else if (name == "F") g.use_eventually = true;
    else if (name == "and") g.use_and = true;
    else if (name == "or") g.use_or = true;
    else if (name == "implies") g.use_implies = true;
    else if (name == "U") g.use_until = true;
    else throw std::runtime_error("unknown operator '" + name + "'");
  }
}

int cmd_classify(const ClassifyArgs& args) {
  LabeledTraces data{load_dir(args.good_dir), load_dir(args.bad_dir)};
  auto boxes = data_boxes(data.good);
  for (auto& [name, box] : data_boxes(data.bad)) {
    auto it = boxes.find(name);
    if (it == boxes.end())
      boxes[name] = box;
    else
      it->second = {std::min(it->second.first, box.first),
                    std::max(it->second.second, box.second)};
  }
  double t_max = data.good.front().duration();

  ClassifierConfig cfg;
  cfg.split_ratio = args.ratio;
  cfg.seed = args.seed;
  cfg.feature_count = args.feature_count;

  auto report = [&args](const ParametricFormula& psi,
                        const ClassifierResult& res,
                        const std::optional<Formula>& extracted) {
    std::string text = "{\n  \"template\": \"" + psi.to_string() + "\",\n" +
                       "  \"train_accuracy\": " + fmt(res.train_accuracy) +
                       ",\n  \"test_accuracy\": " + fmt(res.test_accuracy) +
                       ",\n  \"tree_size\": " + std::to_string(res.tree.size()) +
                       ",\n  \"formula\": " +
                       (extracted ? "\"" + extracted->to_string() + "\""
                                  : "null") +
                       "\n}\n";
    if (args.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(args.out);
      f << text;
      std::cout << "wrote " << args.out << "\n";
    }
  };

  if (!args.enumerate) {
    ParametricFormula psi =
        parse_template(args.template_text).with_default_ranges(boxes, t_max);
    ClassifierResult res = dt_based_stl_classifier(psi, data, cfg);
    auto extracted = extract_stl(res.tree, psi, res.valuations);
    report(psi, res, extracted);
    std::cout << "test accuracy " << fmt(res.test_accuracy) << "\n";
    return extracted ? 0 : 1;
  }

  GrammarConfig grammar;
  for (const auto& [name, box] : boxes) {
    (void)box;
    grammar.signals.push_back(name);
  }
  apply_operators(grammar, args.operators);
  grammar.max_length = args.max_length;
  Enumerator enumerator(grammar);
  auto [train, test] = split_dataset(data, cfg.split_ratio, cfg.seed);
  const double gate = 1.0 - args.epsilon;
  while (auto psi = enumerator.next()) {
    ParametricFormula ranged = psi->with_default_ranges(boxes, t_max);
    ClassifierResult res = classify_with_split(ranged, train, test, cfg);
    if (res.test_accuracy > gate) {
      auto extracted = extract_stl(res.tree, ranged, res.valuations);
      if (!extracted) continue;
      report(ranged, res, extracted);
      std::cout << "formula: " << extracted->to_string() << "\n";
      return 0;
    }
  }
  std::cerr << "no template of length <= " << args.max_length
            << " cleared the accuracy gate\n";
  return 1;
}

int cmd_mine(const std::string& config_path, std::optional<std::uint64_t> seed,
             std::optional<std::size_t> budget, const std::string& out_path,
             bool no_wall_time) {
  AppConfig cfg = load_config(config_path);
  if (cfg.phi_out.empty())
    throw std::runtime_error("config is missing phi_out");
  if (seed) cfg.miner.seed = *seed;
  if (budget) cfg.miner.falsifier.budget = *budget;
  auto model = make_model(cfg.model);
  Formula phi_out = parse_formula(cfg.phi_out);

  MiningReport report = mine(*model, phi_out, cfg.miner);
  std::string text = report_to_json(report, !no_wall_time);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out_path);
    f << text << "\n";
  }

  if (report.result) {
    std::cout << "mined: " << report.result->to_string() << "\n";
    return 0;
  }
  std::cerr << "mining failed: " << report.failure_reason << "\n";
  return 1;
}

int cmd_falsify(const std::string& model_name, double delay,
                double default_value, const std::vector<std::string>& box_flags,
                const std::string& phi_in_text, const std::string& phi_out_text,
                std::size_t budget, int k, std::size_t points,
                std::uint64_t seed, double duration, double period,
                const std::string& out_path) {
  ModelConfig mc;
  mc.name = model_name;
  mc.delay = delay;
  mc.default_value = default_value;
  mc.box = parse_box_flags(box_flags);
  auto model = make_model(mc);

  ControlPointSpec spec;
  spec.points_per_signal = points;
  spec.box = mc.box.empty() ? model->input_box() : mc.box;
  spec.duration = duration;
  spec.period = period;

  FalsifierConfig cfg;
  cfg.budget = budget;
  cfg.k = k;
  cfg.seed = seed;

  FalsifyOutcome outcome = falsify(*model, parse_formula(phi_in_text),
                                   parse_formula(phi_out_text), spec, cfg);
  std::cout << "simulations: " << outcome.simulations << "\n";
  if (!outcome.counterexample) {
    std::cout << "no counterexample found\n";
    return 1;
  }
  std::cout << "counterexample found\n";
  if (!out_path.empty()) {
    write_trace_csv(out_path, *outcome.counterexample);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_enumerate(const std::vector<std::string>& signals,
                  const std::vector<std::string>& operators, std::size_t count,
                  std::size_t max_length) {
  GrammarConfig grammar;
  grammar.signals = signals;
  apply_operators(grammar, operators);
  grammar.max_length = max_length;
  Enumerator enumerator(grammar);
  for (std::size_t i = 0; i < count; ++i) {
    auto psi = enumerator.next();
    if (!psi) break;
    std::cout << psi->to_string() << "\n";
  }
  return 0;
}

int cmd_gen_dataset(const std::string& out_dir, std::size_t n_good,
                    std::size_t n_bad, std::uint64_t seed) {
  LabeledTraces data = delay_pair_dataset(n_good, n_bad, seed);
  fs::create_directories(fs::path(out_dir) / "good");
  fs::create_directories(fs::path(out_dir) / "bad");
  auto dump = [&out_dir](const std::vector<TimedTrace>& traces,
                         const char* label) {
    for (std::size_t i = 0; i < traces.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "trace_%04zu.csv", i);
      write_trace_csv((fs::path(out_dir) / label / name).string(), traces[i]);
    }
  };
  dump(data.good, "good");
  dump(data.bad, "bad");
  std::cout << "wrote " << data.good.size() << " good / " << data.bad.size()
            << " bad traces under " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model assumption mining over signal temporal logic"};
  app.require_subcommand(1);

  // monitor
  auto* monitor = app.add_subcommand("monitor", "robustness of a formula on a trace");
  std::string formula_text, trace_path;
  monitor->add_option("--formula,-f", formula_text, "formula text")->required();
  monitor->add_option("--trace,-t", trace_path, "trace CSV")->required();

  // classify
  auto* classify = app.add_subcommand("classify", "learn a formula separating two trace sets");
  ClassifyArgs cargs;
  classify->add_option("--good", cargs.good_dir, "directory of label-1 CSVs")->required();
  classify->add_option("--bad", cargs.bad_dir, "directory of label-0 CSVs")->required();
  classify->add_option("--template", cargs.template_text, "fixed template, e.g. 'G[0,100](x >= 0.1 -> F[0,?t](y >= 0.1))'");
  classify->add_flag("--enumerate", cargs.enumerate, "search templates instead of fixing one");
  classify->add_option("--operators", cargs.operators, "grammar operators for --enumerate");
  classify->add_option("--max-length", cargs.max_length, "node budget for --enumerate");
  classify->add_option("--features,-m", cargs.feature_count, "valuations per template");
  classify->add_option("--ratio", cargs.ratio, "train fraction");
  classify->add_option("--epsilon", cargs.epsilon, "accuracy gate 1-epsilon");
  classify->add_option("--seed", cargs.seed, "split seed");
  classify->add_option("--out", cargs.out, "write the JSON summary here");

  // mine
  auto* mine_cmd = app.add_subcommand("mine", "mine an input assumption for a model");
  std::string mine_config, mine_out;
  std::optional<std::uint64_t> mine_seed;
  std::optional<std::size_t> mine_budget;
  bool mine_no_wall = false;
  mine_cmd->add_option("--config,-c", mine_config, "JSON config file")->required();
  mine_cmd->add_option("--seed", mine_seed, "override the config seed");
  mine_cmd->add_option("--budget", mine_budget, "override the falsifier budget");
  mine_cmd->add_option("--out", mine_out, "write the JSON report here");
  mine_cmd->add_flag("--no-wall-time", mine_no_wall, "omit wall_seconds for byte-stable reports");

  // falsify
  auto* falsify_cmd = app.add_subcommand("falsify", "search for an assumption-satisfying input violating the requirement");
  std::string f_model = "delay", f_phi_in, f_phi_out, f_out;
  double f_delay = 1.0, f_default = 1.0, f_duration = 100.0, f_period = 0.5;
  std::vector<std::string> f_box;
  std::size_t f_budget = 500, f_points = 4;
  int f_k = 2;
  std::uint64_t f_seed = 0;
  falsify_cmd->add_option("--model", f_model, "delay | oscillator");
  falsify_cmd->add_option("--delay", f_delay, "delay model lag");
  falsify_cmd->add_option("--default", f_default, "delay model default output");
  falsify_cmd->add_option("--box", f_box, "signal=lo:hi (repeatable)");
  falsify_cmd->add_option("--phi-in", f_phi_in, "candidate assumption")->required();
  falsify_cmd->add_option("--phi-out", f_phi_out, "output requirement")->required();
  falsify_cmd->add_option("--budget,-N", f_budget, "simulation budget");
  falsify_cmd->add_option("--k", f_k, "penalty exponent");
  falsify_cmd->add_option("--points", f_points, "control points per signal");
  falsify_cmd->add_option("--seed", f_seed, "optimizer seed");
  falsify_cmd->add_option("--duration", f_duration, "input time domain");
  falsify_cmd->add_option("--period", f_period, "input sample period");
  falsify_cmd->add_option("--out", f_out, "write the counterexample CSV here");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "print templates in search order");
  std::vector<std::string> e_signals, e_operators;
  std::size_t e_count = 20, e_max_length = 5;
  enum_cmd->add_option("--signals", e_signals, "signal names")->required();
  enum_cmd->add_option("--operators", e_operators, "grammar operators");
  enum_cmd->add_option("-n", e_count, "how many to print");
  enum_cmd->add_option("--max-length", e_max_length, "node budget");

  // gen-dataset
  auto* gen_cmd = app.add_subcommand("gen-dataset", "write the bundled pulse/echo benchmark");
  std::string g_out = "dataset";
  std::size_t g_good = 300, g_bad = 300;
  std::uint64_t g_seed = 0;
  gen_cmd->add_option("--out", g_out, "output directory");
  gen_cmd->add_option("--n-good", g_good, "label-1 trace count");
  gen_cmd->add_option("--n-bad", g_bad, "label-0 trace count");
  gen_cmd->add_option("--seed", g_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is 2; --help is 0
  }

  try {
    if (*monitor) return cmd_monitor(formula_text, trace_path);
    if (*classify) {
      if (cargs.enumerate != cargs.template_text.empty()) {
        std::cerr << "classify: give exactly one of --template / --enumerate\n";
        return 2;
      }
      return cmd_classify(cargs);
    }
    if (*mine_cmd)
      return cmd_mine(mine_config, mine_seed, mine_budget, mine_out,
                      mine_no_wall);
    if (*falsify_cmd)
      return cmd_falsify(f_model, f_delay, f_default, f_box, f_phi_in,
                         f_phi_out, f_budget, f_k, f_points, f_seed, f_duration,
                         f_period, f_out);
    if (*enum_cmd)
      return cmd_enumerate(e_signals, e_operators, e_count, e_max_length);
    if (*gen_cmd) return cmd_gen_dataset(g_out, g_good, g_bad, g_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
