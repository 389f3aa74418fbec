#include "segbound/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "segbound/error.hpp"
#include "segbound/tasks.hpp"
#include "segbound/trainer.hpp"

namespace segbound {

// ---------------------------------------------------------------------------
// names

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::Coefficients: return "coefficients";
    case TaskKind::Labels: return "labels";
    case TaskKind::Both: return "both";
  }
  return "both";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Sphere: return "sphere";
    case Method::Segment: return "segment";
    case Method::Retrain: return "retrain";
  }
  return "sphere";
}

TaskKind parse_task_kind(std::string_view name) {
  if (name == "coefficients" || name == "coef") return TaskKind::Coefficients;
  if (name == "labels") return TaskKind::Labels;
  if (name == "both") return TaskKind::Both;
  throw InvalidArgument("unknown task '" + std::string(name) + "'");
}

Method parse_method(std::string_view name) {
  if (name == "sphere") return Method::Sphere;
  if (name == "segment") return Method::Segment;
  if (name == "retrain") return Method::Retrain;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// config

namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw InvalidArgument("bad number '" + v + "' for " + std::string(key));
  }
}

long long to_int(std::string_view key, const std::string& v) {
  try {
    std::size_t used = 0;
    long long i = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw InvalidArgument("bad integer '" + v + "' for " + std::string(key));
  }
}

bool to_bool(std::string_view key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw InvalidArgument("bad boolean '" + v + "' for " + std::string(key));
}

std::vector<double> to_list(std::string_view key, const std::string& v,
                            bool allow_percent) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    double scale = 1.0;
    if (allow_percent && item.back() == '%') {
      item.pop_back();
      scale = 0.01;
    }
    out.push_back(to_double(key, trim(item)) * scale);
  }
  return out;
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, std::string_view key_in,
                   std::string_view value_in) {
  const std::string key = trim(key_in);
  const std::string v = trim(value_in);
  if (key == "train") cfg.train_path = v;
  else if (key == "test") cfg.test_path = v;
  else if (key == "loss") cfg.loss = parse_loss_kind(v);
  else if (key == "c") cfg.c_grid = to_list(key, v, false);
  else if (key == "pup") cfg.p_up_grid = to_list(key, v, true);
  else if (key == "trials") cfg.trials = static_cast<int>(to_int(key, v));
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, v));
  else if (key == "mode") cfg.half_space_mode = parse_half_space_mode(v);
  else if (key == "task") cfg.task = parse_task_kind(v);
  else if (key == "bias") cfg.bias = to_bool(key, v);
  else if (key == "add_fraction") cfg.add_fraction = to_double(key, v);
  else if (key == "grad_tol") cfg.grad_tol = to_double(key, v);
  else if (key == "timing") cfg.timing = to_bool(key, v);
  else if (key == "synthetic_n") cfg.synthetic_n0 = static_cast<std::size_t>(to_int(key, v));
  else if (key == "synthetic_dim") cfg.synthetic_dim = static_cast<int>(to_int(key, v));
  else if (key == "synthetic_test") cfg.synthetic_test = static_cast<std::size_t>(to_int(key, v));
  else if (key == "synthetic_separation") cfg.synthetic_separation = to_double(key, v);
  else throw InvalidArgument("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig cfg) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(lineno) +
                            ": expected key = value");
    apply_setting(cfg, std::string_view(line).substr(0, eq),
                  std::string_view(line).substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

void ExperimentConfig::validate() const {
  if (c_grid.empty()) throw InvalidArgument("C grid is empty");
  if (p_up_grid.empty()) throw InvalidArgument("P_up grid is empty");
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  for (double c : c_grid)
    if (!(c > 0.0)) throw InvalidArgument("C values must be positive");
  for (double p : p_up_grid)
    if (!(p >= 0.0)) throw InvalidArgument("P_up values must be non-negative");
  if (!(add_fraction >= 0.0 && add_fraction <= 1.0))
    throw InvalidArgument("add_fraction must lie in [0, 1]");
  if (!(grad_tol > 0.0)) throw InvalidArgument("grad_tol must be positive");
  if (train_path.empty() && (synthetic_n0 < 2 || synthetic_dim < 1))
    throw InvalidArgument("synthetic data needs n >= 2 and dim >= 1");
  if (!train_path.empty() && task != TaskKind::Coefficients && test_path.empty())
    throw InvalidArgument("label task needs a test file");
}

// ---------------------------------------------------------------------------
// experiment

std::uint64_t trial_seed(std::uint64_t seed, std::size_t c_index,
                         std::size_t p_index, std::size_t trial) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  h = mix(h ^ c_index);
  h = mix(h ^ p_index);
  return mix(h ^ trial);
}

namespace {

struct Workspace {
  Dataset base;
  Dataset pool;
  Dataset test;
  bool positional_split = false;
};

std::size_t pool_size(double add_fraction, double max_pup, std::size_t n) {
  const double want = add_fraction * max_pup * static_cast<double>(n);
  return want > 0.0 ? static_cast<std::size_t>(std::ceil(want)) + 1 : 0;
}

Dataset take(const Dataset& src, const std::vector<std::size_t>& idx,
             std::size_t from, std::size_t to) {
  Dataset out;
  out.dim = src.dim;
  for (std::size_t i = from; i < to; ++i) out.instances.push_back(src.instances[idx[i]]);
  return out;
}

Workspace prepare_data(const ExperimentConfig& cfg) {
  const double max_pup =
      *std::max_element(cfg.p_up_grid.begin(), cfg.p_up_grid.end());
  Workspace ws;
  if (cfg.train_path.empty()) {
    const std::size_t n_pool =
        pool_size(cfg.add_fraction, max_pup, cfg.synthetic_n0);
    const std::size_t n_test = cfg.synthetic_test;
    Dataset all = make_two_gaussians(cfg.synthetic_n0 + n_pool + n_test,
                                     cfg.synthetic_dim,
                                     cfg.synthetic_separation, cfg.seed);
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    ws.base = take(all, idx, 0, cfg.synthetic_n0);
    ws.pool = take(all, idx, cfg.synthetic_n0, cfg.synthetic_n0 + n_pool);
    ws.test = take(all, idx, cfg.synthetic_n0 + n_pool, all.size());
  } else {
    Dataset train = load_libsvm(cfg.train_path);
    if (!cfg.test_path.empty()) ws.test = load_libsvm(cfg.test_path);
    align_dims({&train, &ws.test});

    std::vector<std::size_t> idx(train.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(cfg.seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t n_pool = pool_size(cfg.add_fraction, max_pup, train.size());
    if (n_pool + 1 >= train.size())
      throw InvalidArgument("training file too small for the P_up grid");
    ws.pool = take(train, idx, 0, n_pool);
    // Keep file order within the base set.
    std::sort(idx.begin() + static_cast<std::ptrdiff_t>(n_pool), idx.end());
    ws.base = take(train, idx, n_pool, train.size());
    ws.positional_split = true;
  }
  if (cfg.bias) {
    ws.base = augment_bias(ws.base);
    ws.pool = augment_bias(ws.pool);
    if (!ws.test.empty()) ws.test = augment_bias(ws.test);
  }
  return ws;
}

template <class F>
double time_ms(F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

struct TaskResult {
  std::optional<double> mean_tightness;
  std::optional<double> error_ratio;
  int violations = 0;
};

bool coefficient_ok(const BoundInterval& iv, double truth) {
  return iv.contains(truth, 1e-8 * (1.0 + std::abs(truth)));
}

bool label_ok(LabelTag tag, double score) {
  const double slack = 1e-8 * (1.0 + std::abs(score));
  if (tag == LabelTag::CertifiedPositive) return score >= -slack;
  if (tag == LabelTag::CertifiedNegative) return score <= slack;
  return true;
}

TaskResult run_tasks(const Region& region, const ExperimentConfig& cfg,
                     const Workspace& ws, CoefficientBounds& coef,
                     LabelSensitivityReport& labels) {
  TaskResult r;
  if (cfg.task != TaskKind::Labels) {
    coef = coefficient_sensitivity(region, region_dim(region));
    r.mean_tightness = coef.mean_tightness;
  }
  if (cfg.task != TaskKind::Coefficients) {
    labels = label_sensitivity(region, ws.test);
    r.error_ratio = labels.error_ratio;
  }
  return r;
}

int count_violations(const ExperimentConfig& cfg, const Workspace& ws,
                     const CoefficientBounds& coef,
                     const LabelSensitivityReport& labels, const Vector& w1) {
  int bad = 0;
  if (cfg.task != TaskKind::Labels)
    for (Eigen::Index j = 0; j < w1.size(); ++j)
      if (!coefficient_ok(coef.per_coordinate[j], w1[j])) ++bad;
  if (cfg.task != TaskKind::Coefficients)
    for (std::size_t i = 0; i < ws.test.size(); ++i)
      if (!label_ok(labels.decisions[i].tag, ws.test.instances[i].dot(w1))) ++bad;
  return bad;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Workspace ws = prepare_data(cfg);
  ExperimentOutput out;
  const TrainConfig base_train{0.0, cfg.grad_tol, 10000};

  for (std::size_t ci = 0; ci < cfg.c_grid.size(); ++ci) {
    const double C = cfg.c_grid[ci];
    TrainConfig tc = base_train;
    tc.C = C;
    TrainedModel w0;
    try {
      w0 = train(cfg.loss, ws.base, tc);
    } catch (const ConvergenceError& e) {
      out.warnings.push_back("C=" + std::to_string(C) + ": " + e.what());
      out.skipped_trials += static_cast<int>(cfg.p_up_grid.size()) * cfg.trials;
      continue;
    }

    for (std::size_t pi = 0; pi < cfg.p_up_grid.size(); ++pi) {
      const double p_up = cfg.p_up_grid[pi];
      for (int trial = 0; trial < cfg.trials; ++trial) {
        ModificationPlan plan;
        plan.p_up = p_up;
        plan.add_fraction = cfg.add_fraction;
        plan.seed = trial_seed(cfg.seed, ci, pi, static_cast<std::size_t>(trial));
        plan.require_disjoint = !ws.positional_split;
        const Modification m = plan_modification(ws.base, ws.pool, plan);

        TrainedModel w1;
        try {
          w1 = retrain_oracle(cfg.loss, ws.base, m, tc);
        } catch (const ConvergenceError& e) {
          out.warnings.push_back("trial " + std::to_string(trial) + ": " +
                                 e.what());
          ++out.skipped_trials;
          continue;
        }

        CoefficientBounds sphere_coef, seg_coef;
        LabelSensitivityReport sphere_labels, seg_labels;
        TaskResult sphere_res, seg_res;

        const double sphere_ms = time_ms([&] {
          const auto g = modification_gradients(w0, ws.base, m);
          const Region region = sphere_region(g, w0.w);
          sphere_res = run_tasks(region, cfg, ws, sphere_coef, sphere_labels);
        });
        const double segment_ms = time_ms([&] {
          const Regions regions =
              build_regions(w0, ws.base, m, cfg.half_space_mode);
          const Region region = regions.segment ? Region{*regions.segment}
                                                : Region{regions.sphere};
          seg_res = run_tasks(region, cfg, ws, seg_coef, seg_labels);
        });
        sphere_res.violations =
            count_violations(cfg, ws, sphere_coef, sphere_labels, w1.w);
        seg_res.violations =
            count_violations(cfg, ws, seg_coef, seg_labels, w1.w);

        auto record = [&](Method method, const TaskResult& r, double ms) {
          ExperimentRecord rec;
          rec.loss = cfg.loss;
          rec.C = C;
          rec.p_up = p_up;
          rec.trial = trial;
          rec.method = method;
          rec.mean_tightness = r.mean_tightness;
          rec.error_ratio = r.error_ratio;
          rec.time_ms = cfg.timing ? ms : 0.0;
          rec.containment_violations = r.violations;
          out.records.push_back(rec);
        };
        record(Method::Sphere, sphere_res, sphere_ms);
        record(Method::Segment, seg_res, segment_ms);
        record(Method::Retrain, TaskResult{}, w1.wall_time.count());
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

constexpr const char* kCsvHeader =
    "loss,C,p_up,trial,method,mean_tightness,error_ratio,time_ms,"
    "containment_violations";

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double round9(double v) { return std::stod(fmt9(v)); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  return f;
}

}  // namespace

void emit_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.loss) << ',' << fmt9(r.C) << ',' << fmt9(r.p_up) << ','
        << r.trial << ',' << to_string(r.method) << ','
        << (r.mean_tightness ? fmt9(*r.mean_tightness) : "") << ','
        << (r.error_ratio ? fmt9(*r.error_ratio) : "") << ',' << fmt9(r.time_ms)
        << ',' << r.containment_violations << '\n';
  }
}

void emit_csv(const std::vector<ExperimentRecord>& records,
              const std::string& path) {
  auto f = open_out(path);
  emit_csv(records, f);
}

std::vector<ExperimentRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ParseError("missing or unexpected CSV header", 1);
  std::vector<ExperimentRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 9) throw ParseError("expected 9 columns", lineno);
    try {
      ExperimentRecord r;
      r.loss = parse_loss_kind(cells[0]);
      r.C = std::stod(cells[1]);
      r.p_up = std::stod(cells[2]);
      r.trial = std::stoi(cells[3]);
      r.method = parse_method(cells[4]);
      if (!cells[5].empty()) r.mean_tightness = std::stod(cells[5]);
      if (!cells[6].empty()) r.error_ratio = std::stod(cells[6]);
      r.time_ms = std::stod(cells[7]);
      r.containment_violations = std::stoi(cells[8]);
      out.push_back(r);
    } catch (const std::logic_error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return out;
}

void emit_json(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(round9(*v)) : nlohmann::ordered_json(nullptr);
  };
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["loss"] = to_string(r.loss);
    j["C"] = round9(r.C);
    j["p_up"] = round9(r.p_up);
    j["trial"] = r.trial;
    j["method"] = to_string(r.method);
    j["mean_tightness"] = opt(r.mean_tightness);
    j["error_ratio"] = opt(r.error_ratio);
    j["time_ms"] = round9(r.time_ms);
    j["containment_violations"] = r.containment_violations;
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

void emit_json(const std::vector<ExperimentRecord>& records,
               const std::string& path) {
  auto f = open_out(path);
  emit_json(records, f);
}

std::vector<ExperimentRecord> parse_json(std::istream& in) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  std::vector<ExperimentRecord> out;
  for (const auto& j : arr) {
    ExperimentRecord r;
    r.loss = parse_loss_kind(j.at("loss").get<std::string>());
    r.C = j.at("C").get<double>();
    r.p_up = j.at("p_up").get<double>();
    r.trial = j.at("trial").get<int>();
    r.method = parse_method(j.at("method").get<std::string>());
    if (!j.at("mean_tightness").is_null())
      r.mean_tightness = j["mean_tightness"].get<double>();
    if (!j.at("error_ratio").is_null())
      r.error_ratio = j["error_ratio"].get<double>();
    r.time_ms = j.at("time_ms").get<double>();
    r.containment_violations = j.at("containment_violations").get<int>();
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// summary

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  using Key = std::tuple<int, double, double, int>;
  struct Acc {
    SummaryRow row;
    double tight = 0.0, err = 0.0;
    int n_tight = 0, n_err = 0, clean = 0;
  };
  std::map<Key, std::size_t> index;
  std::vector<Acc> acc;
  for (const auto& r : records) {
    const Key key{static_cast<int>(r.loss), r.C, r.p_up, static_cast<int>(r.method)};
    auto [it, fresh] = index.emplace(key, acc.size());
    if (fresh) {
      Acc a;
      a.row.loss = r.loss;
      a.row.C = r.C;
      a.row.p_up = r.p_up;
      a.row.method = r.method;
      acc.push_back(a);
    }
    Acc& a = acc[it->second];
    ++a.row.trials;
    a.row.time_ms += r.time_ms;
    if (r.mean_tightness) a.tight += *r.mean_tightness, ++a.n_tight;
    if (r.error_ratio) a.err += *r.error_ratio, ++a.n_err;
    if (r.containment_violations == 0) ++a.clean;
  }
  std::vector<SummaryRow> rows;
  rows.reserve(acc.size());
  for (auto& a : acc) {
    SummaryRow row = a.row;
    row.time_ms /= row.trials;
    if (a.n_tight) row.mean_tightness = a.tight / a.n_tight;
    if (a.n_err) row.error_ratio = a.err / a.n_err;
    row.containment_rate = static_cast<double>(a.clean) / row.trials;
    rows.push_back(row);
  }
  return rows;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-9s %6s %9s %-8s %6s %12s %12s %12s %9s\n",
                "loss", "C", "P_up(%)", "method", "trials", "tightness",
                "error_ratio", "time_ms", "contained");
  out << buf;
  auto opt = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    char b[32];
    std::snprintf(b, sizeof b, "%.3e", *v);
    return std::string(b);
  };
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-9s %6g %9g %-8s %6d %12s %12s %12.4g %9.3f\n",
                  std::string(to_string(r.loss)).c_str(), r.C, 100.0 * r.p_up,
                  std::string(to_string(r.method)).c_str(), r.trials,
                  opt(r.mean_tightness).c_str(), opt(r.error_ratio).c_str(),
                  r.time_ms, r.containment_rate);
    out << buf;
  }
  return out.str();
}

std::string format_containment_audit(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-9s %6s %9s %6s %16s\n", "loss", "C",
                "P_up(%)", "trials", "containment_rate");
  out << buf;
  for (const auto& r : rows) {
    if (r.method != Method::Segment) continue;
    std::snprintf(buf, sizeof buf, "%-9s %6g %9g %6d %16.3f\n",
                  std::string(to_string(r.loss)).c_str(), r.C, 100.0 * r.p_up,
                  r.trials, r.containment_rate);
    out << buf;
  }
  return out.str();
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidArgument("spearman needs two equal-length series, n >= 2");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace segbound
