#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "segbound/losses.hpp"
#include "segbound/regions.hpp"

namespace segbound {

enum class TaskKind { Coefficients, Labels, Both };
enum class Method { Sphere, Segment, Retrain };

std::string_view to_string(TaskKind task);
std::string_view to_string(Method method);
TaskKind parse_task_kind(std::string_view name);
Method parse_method(std::string_view name);

struct ExperimentConfig {
  /// Empty train_path selects the seeded two-Gaussian generator.
  std::string train_path;
  std::string test_path;
  LossKind loss = LossKind::Logistic;
  std::vector<double> c_grid{0.2, 0.5, 1.0};
  std::vector<double> p_up_grid{0.0001, 0.0002, 0.0005, 0.001, 0.002,
                                0.005,  0.01,   0.02,   0.05,  0.1};
  int trials = 30;
  std::uint64_t seed = 1;
  HalfSpaceMode half_space_mode = HalfSpaceMode::Exact;
  bool bias = true;
  TaskKind task = TaskKind::Both;
  double add_fraction = 0.5;
  double grad_tol = 1e-10;
  /// When false every time_ms is written as 0 so output is byte-stable.
  bool timing = true;

  std::size_t synthetic_n0 = 400;
  int synthetic_dim = 10;
  std::size_t synthetic_test = 200;
  double synthetic_separation = 2.0;

  void validate() const;
};

/// Parses `key = value` lines; '#' starts a comment. Lists are
/// comma-separated; a trailing '%' on a p_up entry divides it by 100.
ExperimentConfig parse_config(std::string_view text,
                              ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path,
                             ExperimentConfig base = {});
/// Applies one `key = value` setting, as used by the config file.
void apply_setting(ExperimentConfig& cfg, std::string_view key,
                   std::string_view value);

struct ExperimentRecord {
  LossKind loss = LossKind::Logistic;
  double C = 0.0;
  double p_up = 0.0;
  int trial = 0;
  Method method = Method::Sphere;
  std::optional<double> mean_tightness;
  std::optional<double> error_ratio;
  double time_ms = 0.0;
  int containment_violations = 0;

  friend bool operator==(const ExperimentRecord&,
                         const ExperimentRecord&) = default;
};

struct ExperimentOutput {
  std::vector<ExperimentRecord> records;
  /// Trials dropped because a solver failed to converge.
  int skipped_trials = 0;
  std::vector<std::string> warnings;
};

/// Per-trial seed for cell (c_index, p_index, trial).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t c_index,
                         std::size_t p_index, std::size_t trial);

/// Runs the full (C, p_up, trial) sweep. Records are ordered by
/// (C, p_up, trial, method).
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

void emit_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);
void emit_csv(const std::vector<ExperimentRecord>& records,
              const std::string& path);
std::vector<ExperimentRecord> parse_csv(std::istream& in);

void emit_json(const std::vector<ExperimentRecord>& records, std::ostream& out);
void emit_json(const std::vector<ExperimentRecord>& records,
               const std::string& path);
std::vector<ExperimentRecord> parse_json(std::istream& in);

/// Trial means for one (loss, C, p_up, method) cell.
struct SummaryRow {
  LossKind loss = LossKind::Logistic;
  double C = 0.0;
  double p_up = 0.0;
  Method method = Method::Sphere;
  int trials = 0;
  std::optional<double> mean_tightness;
  std::optional<double> error_ratio;
  double time_ms = 0.0;
  /// Fraction of trials with zero containment violations.
  double containment_rate = 1.0;
};

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);
std::string format_summary(const std::vector<SummaryRow>& rows);

/// Containment rate of the Segment method per (loss, C, p_up) cell.
std::string format_containment_audit(const std::vector<SummaryRow>& rows);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace segbound
