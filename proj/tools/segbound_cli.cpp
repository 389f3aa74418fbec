// Command-line driver for the bound-vs-retrain experiment sweep.
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 containment
// violation in exact half-space mode.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "segbound/bench.hpp"
#include "segbound/error.hpp"

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified bounds on an updated linear classifier, benchmarked "
               "against retraining"};
  app.set_version_flag("--version", "segbound 0.1.0");

  std::string config_path, train, test, loss, mode, task, out_path;
  std::string format = "csv";
  std::vector<std::string> c_grid, p_up_grid;
  int trials = 0;
  long long seed = -1;
  double add_fraction = -1;
  bool no_bias = false, no_timing = false, quiet = false;
  int synthetic_n = 0, synthetic_dim = 0;

  app.add_option("--config", config_path, "key = value config file")
      ->check(CLI::ExistingFile);
  app.add_option("--train", train, "LIBSVM training file (default: synthetic)");
  app.add_option("--test", test, "LIBSVM test file");
  app.add_option("--loss", loss, "l2svm | logistic");
  app.add_option("--c", c_grid, "regularization grid, e.g. 0.2,0.5,1")
      ->delimiter(',');
  app.add_option("--pup", p_up_grid, "modification ratios, e.g. 0.1%,1%,10%")
      ->delimiter(',');
  app.add_option("--trials", trials, "repetitions per cell");
  app.add_option("--seed", seed, "base seed");
  app.add_option("--mode", mode, "half-space mode: exact | closed_form");
  app.add_option("--task", task, "coefficients | labels | both");
  app.add_option("--out", out_path, "write per-trial records here");
  app.add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--add-fraction", add_fraction,
                 "share of modified instances that are additions");
  app.add_option("--synthetic-n", synthetic_n, "synthetic base set size");
  app.add_option("--synthetic-dim", synthetic_dim, "synthetic feature count");
  app.add_flag("--no-bias", no_bias, "do not append a bias feature");
  app.add_flag("--no-timing", no_timing, "write time_ms = 0 for stable output");
  app.add_flag("-q,--quiet", quiet, "suppress the summary tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  segbound::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = segbound::load_config(config_path);
    auto set = [&cfg](const char* key, const std::string& v) {
      if (!v.empty()) segbound::apply_setting(cfg, key, v);
    };
    set("train", train);
    set("test", test);
    set("loss", loss);
    set("mode", mode);
    set("task", task);
    if (!c_grid.empty()) set("c", join(c_grid));
    if (!p_up_grid.empty()) set("pup", join(p_up_grid));
    if (trials > 0) cfg.trials = trials;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (add_fraction >= 0) cfg.add_fraction = add_fraction;
    if (synthetic_n > 0) cfg.synthetic_n0 = static_cast<std::size_t>(synthetic_n);
    if (synthetic_dim > 0) cfg.synthetic_dim = synthetic_dim;
    if (no_bias) cfg.bias = false;
    if (no_timing) cfg.timing = false;
    cfg.validate();
  } catch (const segbound::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  segbound::ExperimentOutput result;
  try {
    result = segbound::run_experiment(cfg);
    if (!out_path.empty()) {
      if (format == "json")
        segbound::emit_json(result.records, out_path);
      else
        segbound::emit_csv(result.records, out_path);
    }
  } catch (const segbound::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  if (result.records.empty()) {
    std::cerr << "no trials completed\n";
    return 1;
  }

  const auto rows = segbound::summarize(result.records);
  if (!quiet) {
    std::cout << segbound::format_summary(rows) << '\n'
              << "segment containment ("
              << segbound::to_string(cfg.half_space_mode) << " mode)\n"
              << segbound::format_containment_audit(rows);
  }

  int violations = 0;
  for (const auto& r : result.records) violations += r.containment_violations;
  if (violations > 0 && cfg.half_space_mode == segbound::HalfSpaceMode::Exact) {
    std::cerr << "containment violated " << violations
              << " times in exact mode\n";
    return 2;
  }
  return 0;
}
