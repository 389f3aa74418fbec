#include "segbound/trainer.hpp"

#include <cmath>
#include <limits>

#include "segbound/error.hpp"

namespace segbound {

namespace {

// Dense Hessians are assembled up to this dimension; beyond it the Newton
// system is solved with conjugate gradients on Hessian-vector products.
constexpr int kDenseHessianMaxDim = 2000;

// Per-instance curvature weight: d^2 l / d(score)^2 (generalized for the
// squared hinge).
double curvature(LossKind kind, double score, int label) {
  const double m = label * score;
  if (kind == LossKind::SquaredHinge) return m < 1.0 ? 2.0 : 0.0;
  const double s = sigmoid(m);
  return s * (1.0 - s);
}

class Problem {
 public:
  Problem(LossKind kind, double C, const Dataset& data)
      : kind_(kind), C_(C), data_(data), n_(static_cast<double>(data.size())) {}

  int dim() const { return data_.dim; }

  double value(const Vector& w) const { return objective(kind_, C_, data_, w); }

  Vector gradient(const Vector& w, std::vector<double>& scores) const {
    Vector g = Vector::Zero(w.size());
    scores.resize(data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) {
      const auto& inst = data_.instances[i];
      scores[i] = inst.dot(w);
      const double s = loss_gradient_scale(kind_, scores[i], inst.label);
      if (s != 0.0)
        for (const auto& f : inst.features) g[f.index - 1] += s * f.value;
    }
    g /= n_;
    g += C_ * w;
    return g;
  }

  // Solves H p = -g.
  Vector newton_direction(const Vector& g,
                          const std::vector<double>& scores) const {
    std::vector<double> weight(data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i)
      weight[i] = curvature(kind_, scores[i], data_.instances[i].label) / n_;
    if (dim() <= kDenseHessianMaxDim) return dense_solve(g, weight);
    return cg_solve(g, weight);
  }

 private:
  Vector dense_solve(const Vector& g, const std::vector<double>& weight) const {
    const int d = dim();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (weight[i] == 0.0) continue;
      const auto& fs = data_.instances[i].features;
      for (std::size_t a = 0; a < fs.size(); ++a) {
        const double wa = weight[i] * fs[a].value;
        for (std::size_t b = 0; b <= a; ++b)
          H(fs[a].index - 1, fs[b].index - 1) += wa * fs[b].value;
      }
    }
    H.diagonal().array() += C_;
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    ldlt.compute(H.selfadjointView<Eigen::Lower>());
    return ldlt.solve(-g);
  }

  Vector hess_vec(const Vector& v, const std::vector<double>& weight) const {
    Vector out = C_ * v;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (weight[i] == 0.0) continue;
      const auto& inst = data_.instances[i];
      const double s = weight[i] * inst.dot(v);
      for (const auto& f : inst.features) out[f.index - 1] += s * f.value;
    }
    return out;
  }

  Vector cg_solve(const Vector& g, const std::vector<double>& weight) const {
    Vector p = Vector::Zero(g.size());
    Vector r = -g;
    Vector dir = r;
    double rr = r.squaredNorm();
    const double stop = 1e-24 * std::max(1.0, rr);
    for (int it = 0; it < 4 * dim() && rr > stop; ++it) {
      Vector Hd = hess_vec(dir, weight);
      const double alpha = rr / dir.dot(Hd);
      p += alpha * dir;
      r -= alpha * Hd;
      const double rr_next = r.squaredNorm();
      dir = r + (rr_next / rr) * dir;
      rr = rr_next;
    }
    return p;
  }

  LossKind kind_;
  double C_;
  const Dataset& data_;
  double n_;
};

}  // namespace

TrainedModel train(LossKind kind, const Dataset& data, const TrainConfig& cfg) {
  if (data.empty()) throw InvalidArgument("cannot train on an empty dataset");
  if (!(cfg.C > 0.0)) throw InvalidArgument("C must be positive");
  if (!(cfg.grad_tol > 0.0)) throw InvalidArgument("grad_tol must be positive");
  if (cfg.max_iters < 1) throw InvalidArgument("max_iters must be positive");

  const auto start = std::chrono::steady_clock::now();
  Problem prob(kind, cfg.C, data);

  TrainedModel model;
  model.kind = kind;
  model.C = cfg.C;
  model.w = Vector::Zero(data.dim);

  std::vector<double> scores;
  Vector g = prob.gradient(model.w, scores);
  const double target = cfg.grad_tol * std::max(1.0, g.lpNorm<Eigen::Infinity>());
  double f = prob.value(model.w);
  model.objective_trace.push_back(f);

  double gnorm = g.lpNorm<Eigen::Infinity>();
  int iter = 0;
  for (; iter < cfg.max_iters && gnorm > target; ++iter) {
    const Vector p = prob.newton_direction(g, scores);
    const double slope = g.dot(p);
    if (!(slope < 0.0) || !p.allFinite())
      throw ConvergenceError("Newton direction is not a descent direction",
                             gnorm);

    // Armijo backtracking. Once the predicted decrease is below the rounding
    // floor of f, f can no longer rank steps: accept one that keeps f within
    // that floor and shrinks the gradient.
    const double noise = 64 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(f));
    double step = 1.0;
    bool accepted = false;
    Vector w_next;
    Vector g_next;
    std::vector<double> scores_next;
    double f_next = f;
    for (int k = 0; k < 60; ++k, step *= 0.5) {
      w_next = model.w + step * p;
      f_next = prob.value(w_next);
      if (!std::isfinite(f_next))
        continue;
      if (f_next <= f + 1e-4 * step * slope) {
        g_next = prob.gradient(w_next, scores_next);
        accepted = true;
        break;
      }
      if (-step * slope < noise && f_next <= f + noise) {
        g_next = prob.gradient(w_next, scores_next);
        if (g_next.lpNorm<Eigen::Infinity>() < gnorm) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted)
      throw ConvergenceError("line search stalled at ||grad||_inf = " +
                                 std::to_string(gnorm),
                             gnorm);
    if (!std::isfinite(f_next))
      throw Error("non-finite objective during training");

    model.w = std::move(w_next);
    g = std::move(g_next);
    scores = std::move(scores_next);
    f = f_next;
    gnorm = g.lpNorm<Eigen::Infinity>();
    model.objective_trace.push_back(f);
  }

  model.iterations = iter;
  model.achieved_grad_norm = gnorm;
  model.wall_time = std::chrono::steady_clock::now() - start;
  if (gnorm > target)
    throw ConvergenceError("no convergence in " + std::to_string(cfg.max_iters) +
                               " iterations (||grad||_inf = " +
                               std::to_string(gnorm) + ")",
                           gnorm);
  return model;
}

TrainedModel retrain_oracle(LossKind kind, const Dataset& base,
                            const Modification& m, const TrainConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Dataset updated = apply_modification(base, m);
  TrainedModel model = train(kind, updated, cfg);
  model.wall_time = std::chrono::steady_clock::now() - start;
  return model;
}

}  // namespace segbound
