#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "segbound/bench.hpp"
#include "segbound/tasks.hpp"

using namespace segbound;

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Verdict {
  Outcome outcome;
  std::string detail;
};

constexpr LossKind kKinds[] = {LossKind::SquaredHinge, LossKind::Logistic};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

Verdict gradients() {
  std::mt19937_64 rng(1);
  double worst = 0;
  int draws = 0;
  for (LossKind kind : kKinds) {
    for (int rep = 0; rep < 100; ++rep, ++draws) {
      const int d = 1 + static_cast<int>(rng() % 20);
      const Vector w = oracle::random_vector(rng, d, 0.7);
      const Instance x = oracle::random_instance(rng, d);
      const Vector g = loss_gradient(kind, w, x);
      const Vector fd = oracle::finite_difference(
          [&](const Vector& v) { return loss_value(kind, v, x); }, w);
      worst = std::max(worst, (g - fd).lpNorm<Eigen::Infinity>() /
                                  std::max(1.0, g.lpNorm<Eigen::Infinity>()));
    }
  }
  return {worst <= 1e-6 ? Outcome::Pass : Outcome::Fail,
          fmt("%.0f draws, worst relative error %.2e", draws, worst)};
}

Verdict trainer_optimality() {
  Dataset d;
  d.dim = 1;
  d.instances.push_back({{{1, 1.0}}, 1});
  const double hinge_root = oracle::bisect(
      [](double w) { return 2.0 * w - 2.0 * std::max(1.0 - w, 0.0); }, -10, 10);
  const double logistic_root =
      oracle::bisect([](double w) { return w - 1.0 / (1.0 + std::exp(w)); }, -10, 10);
  const double e1 =
      std::abs(train(LossKind::SquaredHinge, d, {2.0, 1e-10, 100}).w[0] - hinge_root);
  const double e2 =
      std::abs(train(LossKind::Logistic, d, {1.0, 1e-10, 100}).w[0] - logistic_root);
  return {std::max(e1, e2) <= 1e-7 ? Outcome::Pass : Outcome::Fail,
          fmt("hinge err %.1e, logistic err %.1e (root %.9f)", e1, e2, logistic_root)};
}

Verdict sphere_containment() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pu(0.01, 0.2);
  const double cs[] = {0.1, 1.0, 10.0};
  int violations = 0, trials = 0;
  double worst = -INFINITY;
  for (int rep = 0; rep < 240; ++rep, ++trials) {
    const LossKind kind = kKinds[rep % 2];
    const TrainConfig cfg{cs[(rep / 2) % 3], 1e-10, 10000};
    const auto p = oracle::make_problem(rng(), 50 + rng() % 451, 1 + rng() % 20, pu(rng),
                                        0.2 + 0.6 * ((rep / 6) % 2));
    const TrainedModel w0 = train(kind, p.base, cfg);
    const TrainedModel w1 = retrain_oracle(kind, p.base, p.mod, cfg);
    const SphereRegion s = sphere_region(modification_gradients(w0, p.base, p.mod), w0.w);
    const double excess = (w1.w - s.q).norm() - s.r;
    worst = std::max(worst, excess);
    if (excess > 1e-8) ++violations;
  }
  return {violations == 0 ? Outcome::Pass : Outcome::Fail,
          fmt("%.0f trials, %.0f violations, max(||w1-q|| - r) = %.2e", trials,
              violations, worst)};
}

Verdict segment_test_oracle() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0;
  int cases = 0;
  for (int rep = 0; rep < 300; ++rep, ++cases) {
    const int d = 2 + rep % 2;
    const Vector q = oracle::random_vector(rng, d);
    const double r = 0.2 + std::abs(u(rng));
    const Vector n = oracle::random_unit(rng, d);
    double psi = u(rng);
    if (rep % 50 == 0) psi = rep % 100 ? 1.0 : -1.0;
    const double c = n.dot(q) - psi * r;
    const SegmentRegion seg = segment_region({q, r}, {n, c});
    const Vector eta = oracle::random_vector(rng, d);
    const BoundInterval iv = segment_test(seg, eta);
    const double lo = oracle::min_over_segment(q, r, n, c, eta);
    const double hi = oracle::max_over_segment(q, r, n, c, eta);
    worst = std::max({worst, std::abs(iv.lower - lo), std::abs(iv.upper - hi)});
  }
  double jump = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const double psi = u(rng), eta_norm = 0.5 + std::abs(u(rng)), r = 0.5 + std::abs(u(rng));
    for (double sign : {1.0, -1.0}) {
      const double t0 = sign * psi * eta_norm;
      const BoundInterval a = segment_bounds(0.3, t0, eta_norm, r, psi);
      const BoundInterval b = segment_bounds(0.3, std::nextafter(t0, 10.0), eta_norm, r, psi);
      const BoundInterval c = segment_bounds(0.3, std::nextafter(t0, -10.0), eta_norm, r, psi);
      jump = std::max({jump, std::abs(a.lower - b.lower), std::abs(a.lower - c.lower),
                       std::abs(a.upper - b.upper), std::abs(a.upper - c.upper)});
    }
  }
  const bool ok = worst <= 1e-5 && jump <= 1e-10;
  return {ok ? Outcome::Pass : Outcome::Fail,
          fmt("%.0f cases, max oracle gap %.2e, branch jump %.2e", cases, worst, jump)};
}

struct TrialStats {
  double sphere_tight, segment_tight, sphere_err, segment_err;
};

std::vector<TrialStats> soundness_trials;

Verdict end_to_end_soundness() {
  std::mt19937_64 rng(5);
  const double cs[] = {0.1, 1.0, 10.0};
  const double pups[] = {0.01, 0.05, 0.1, 0.2};
  int violations = 0, trials = 0;
  double worst_agreement = 1.0;
  soundness_trials.clear();
  for (int rep = 0; rep < 120; ++rep, ++trials) {
    const LossKind kind = kKinds[rep % 2];
    const TrainConfig cfg{cs[(rep / 2) % 3], 1e-10, 10000};
    const int d = 2 + static_cast<int>(rng() % 10);
    const auto p = oracle::make_problem(rng(), 200, d, pups[(rep / 6) % 4], 0.5, 100);
    const TrainedModel w0 = train(kind, p.base, cfg);
    const TrainedModel w1 = retrain_oracle(kind, p.base, p.mod, cfg);
    const Regions reg = build_regions(w0, p.base, p.mod, HalfSpaceMode::Exact);
    const Region sphere = reg.sphere;
    const Region segment = reg.segment ? Region{*reg.segment} : sphere;

    std::vector<int> truth;
    for (const auto& x : p.test.instances) truth.push_back(x.dot(w1.w) >= 0 ? 1 : -1);

    TrialStats st{};
    for (int which = 0; which < 2; ++which) {
      const Region& region = which ? segment : sphere;
      const CoefficientBounds cb = coefficient_sensitivity(region, d);
      for (int j = 0; j < d; ++j)
        if (!cb.per_coordinate[j].contains(w1.w[j], 1e-8 * (1 + std::abs(w1.w[j]))))
          ++violations;
      const LabelSensitivityReport lr = label_sensitivity(region, p.test);
      for (std::size_t i = 0; i < p.test.size(); ++i) {
        const double score = p.test.instances[i].dot(w1.w);
        const auto tag = lr.decisions[i].tag;
        if ((tag == LabelTag::CertifiedPositive && score < -1e-8) ||
            (tag == LabelTag::CertifiedNegative && score > 1e-8))
          ++violations;
      }
      if (auto a = certified_agreement(lr, truth)) worst_agreement = std::min(worst_agreement, *a);
      (which ? st.segment_tight : st.sphere_tight) = cb.mean_tightness;
      (which ? st.segment_err : st.sphere_err) = lr.error_ratio;
    }
    soundness_trials.push_back(st);
  }
  const bool ok = violations == 0 && worst_agreement == 1.0;
  return {ok ? Outcome::Pass : Outcome::Fail,
          fmt("%.0f trials, %.0f violations, min certified agreement %.3f", trials,
              violations, worst_agreement)};
}

Verdict dominance() {
  if (soundness_trials.empty()) end_to_end_soundness();
  int dominated = 0;
  for (const auto& t : soundness_trials)
    if (t.segment_tight <= t.sphere_tight * (1 + 1e-12) && t.segment_err <= t.sphere_err)
      ++dominated;
  const bool every = dominated == static_cast<int>(soundness_trials.size());

  ExperimentConfig cfg;
  cfg.loss = LossKind::Logistic;
  cfg.c_grid = {1.0};
  cfg.p_up_grid = {0.1};
  cfg.trials = 30;
  cfg.seed = 6;
  cfg.task = TaskKind::Coefficients;
  cfg.timing = false;
  const ExperimentOutput out = run_experiment(cfg);
  std::vector<double> ratios;
  for (std::size_t i = 0; i + 1 < out.records.size(); ++i) {
    const auto& a = out.records[i];
    const auto& b = out.records[i + 1];
    if (a.method == Method::Sphere && b.method == Method::Segment && *b.mean_tightness > 0)
      ratios.push_back(*a.mean_tightness / *b.mean_tightness);
  }
  const double med = ratios.empty() ? 0.0 : median(ratios);
  const bool ok = every && med > 3.0;
  return {ok ? Outcome::Pass : Outcome::Fail,
          fmt("segment dominates in %.0f/%.0f trials; median sphere/segment "
              "tightness at 10%%, C=1, logistic = %.3f (needs > 3)",
              dominated, static_cast<double>(soundness_trials.size()), med)};
}

Verdict timing_trend() {
  const Dataset all = augment_bias(make_two_gaussians(20000 + 200 + 1000, 50, 2.0, 7));
  auto slice = [&](std::size_t a, std::size_t b) {
    Dataset d;
    d.dim = all.dim;
    d.instances.assign(all.instances.begin() + a, all.instances.begin() + b);
    return d;
  };
  const Dataset base = slice(0, 20000), pool = slice(20000, 20200),
                test = slice(20200, all.size());
  const TrainConfig cfg{1.0, 1e-10, 10000};
  const TrainedModel w0 = train(LossKind::Logistic, base, cfg);

  std::vector<double> bound_ms, retrain_ms;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Modification m = plan_modification(base, pool, {0.01, 0.5, seed});
    const auto t0 = std::chrono::steady_clock::now();
    const Regions reg = build_regions(w0, base, m, HalfSpaceMode::PaperClosedForm);
    const Region region = reg.segment ? Region{*reg.segment} : Region{reg.sphere};
    coefficient_sensitivity(region, base.dim);
    label_sensitivity(region, test);
    const auto t1 = std::chrono::steady_clock::now();
    const TrainedModel w1 = retrain_oracle(LossKind::Logistic, base, m, cfg);
    bound_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    retrain_ms.push_back(std::chrono::duration<double, std::milli>(w1.wall_time).count());
  }
  const double b = median(bound_ms), r = median(retrain_ms);
  return {r >= 5 * b ? Outcome::Pass : Outcome::Fail,
          fmt("median bound %.2f ms vs retrain %.2f ms (%.1fx)", b, r, r / b)};
}

Verdict real_data() {
  const std::pair<const char*, const char*> sets[] = {
      {"SEGBOUND_W8A", "SEGBOUND_W8A_TEST"},
      {"SEGBOUND_A9A", "SEGBOUND_A9A_TEST"},
      {"SEGBOUND_CODRNA", "SEGBOUND_CODRNA_TEST"}};
  int used = 0, failures = 0;
  std::string detail;
  for (const auto& [train_var, test_var] : sets) {
    const char* train_path = std::getenv(train_var);
    const char* test_path = std::getenv(test_var);
    if (!train_path || !test_path) continue;
    ++used;
    ExperimentConfig cfg;
    cfg.train_path = train_path;
    cfg.test_path = test_path;
    cfg.trials = 5;
    cfg.timing = false;
    for (LossKind kind : kKinds) {
      cfg.loss = kind;
      const auto rows = summarize(run_experiment(cfg).records);
      std::printf("%s", format_summary(rows).c_str());
      for (double C : cfg.c_grid) {
        for (Method m : {Method::Sphere, Method::Segment}) {
          std::vector<double> pups, tight, err;
          for (const auto& row : rows)
            if (row.C == C && row.method == m) {
              pups.push_back(row.p_up);
              tight.push_back(*row.mean_tightness);
              err.push_back(*row.error_ratio);
            }
          if (spearman(pups, tight) <= 0.9 || spearman(pups, err) <= 0.9) ++failures;
        }
        for (const auto& a : rows)
          for (const auto& b : rows)
            if (a.C == C && b.C == C && a.p_up == b.p_up && a.method == Method::Sphere &&
                b.method == Method::Segment &&
                (*b.mean_tightness > *a.mean_tightness || *b.error_ratio > *a.error_ratio))
              ++failures;
      }
    }
  }
  if (used == 0)
    return {Outcome::Skip, "no real datasets supplied (set SEGBOUND_W8A and SEGBOUND_W8A_TEST, ...)"};
  return {failures == 0 ? Outcome::Pass : Outcome::Fail,
          fmt("%.0f datasets, %.0f failed checks", used, failures)};
}

Verdict closed_form_audit() {
  ExperimentConfig cfg;
  cfg.half_space_mode = HalfSpaceMode::PaperClosedForm;
  cfg.task = TaskKind::Coefficients;
  cfg.synthetic_n0 = 4000;
  cfg.trials = 10;
  cfg.seed = 9;
  cfg.timing = false;
  std::vector<SummaryRow> rows;
  for (LossKind kind : kKinds) {
    cfg.loss = kind;
    auto part = summarize(run_experiment(cfg).records);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::printf("%s", format_containment_audit(rows).c_str());
  double worst = 1.0;
  int cells = 0;
  for (const auto& row : rows)
    if (row.method == Method::Segment && row.p_up <= 0.001 + 1e-15) {
      worst = std::min(worst, row.containment_rate);
      ++cells;
    }
  return {cells > 0 && worst == 1.0 ? Outcome::Pass : Outcome::Fail,
          fmt("%.0f cells with P_up <= 0.1%%, min containment rate %.3f", cells, worst)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks for segbound"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"gradient correctness", gradients},
      {"trainer optimality", trainer_optimality},
      {"sphere containment", sphere_containment},
      {"segment test vs oracle", segment_test_oracle},
      {"end-to-end soundness", end_to_end_soundness},
      {"segment dominance and tightening", dominance},
      {"bound vs retrain timing", timing_trend},
      {"real-data table trends", real_data},
      {"closed-form containment audit", closed_form_audit}};

  int failures = 0;
  for (int k = 1; k <= 9; ++k) {
    if (only && k != only) continue;
    const auto& [name, run] = criteria[k - 1];
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = v.outcome == Outcome::Pass ? "PASS" : v.outcome == Outcome::Fail ? "FAIL" : "SKIP";
    std::printf("[%s] criterion %d: %s: %s\n", tag, k, name, v.detail.c_str());
    std::fflush(stdout);
    if (v.outcome == Outcome::Fail) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
