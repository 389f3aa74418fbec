#include "segbound/losses.hpp"

#include <cmath>

#include "segbound/error.hpp"

namespace segbound {

std::string_view to_string(LossKind kind) {
  return kind == LossKind::SquaredHinge ? "l2svm" : "logistic";
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "l2svm" || name == "squared_hinge" || name == "SquaredHinge")
    return LossKind::SquaredHinge;
  if (name == "logistic" || name == "lr" || name == "Logistic")
    return LossKind::Logistic;
  throw InvalidArgument("unknown loss '" + std::string(name) + "'");
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

void check_dim(const Vector& w, const Instance& inst) {
  if (inst.max_index() > w.size())
    throw DimensionMismatch("instance has feature " +
                            std::to_string(inst.max_index()) +
                            " but w has length " + std::to_string(w.size()));
}

// log(1 + exp(-m)) without overflow.
double log1p_exp_neg(double m) {
  if (m > 0) return std::log1p(std::exp(-m));
  return -m + std::log1p(std::exp(m));
}

}  // namespace

double loss_gradient_scale(LossKind kind, double score, int label) {
  const double y = label;
  const double m = y * score;
  if (kind == LossKind::SquaredHinge) {
    double slack = 1.0 - m;
    return slack > 0 ? -2.0 * slack * y : 0.0;
  }
  // -y * sigma(-y w^T x)
  return -y * sigmoid(-m);
}

double loss_value(LossKind kind, const Vector& w, const Instance& inst) {
  check_dim(w, inst);
  const double m = inst.label * inst.dot(w);
  if (kind == LossKind::SquaredHinge) {
    double slack = std::max(1.0 - m, 0.0);
    return slack * slack;
  }
  return log1p_exp_neg(m);
}

void add_loss_gradient(LossKind kind, const Vector& w, const Instance& inst,
                       double scale, Vector& out) {
  check_dim(w, inst);
  const double g = scale * loss_gradient_scale(kind, inst.dot(w), inst.label);
  if (g == 0.0) return;
  for (const auto& f : inst.features) out[f.index - 1] += g * f.value;
}

Vector loss_gradient(LossKind kind, const Vector& w, const Instance& inst) {
  Vector g = Vector::Zero(w.size());
  add_loss_gradient(kind, w, inst, 1.0, g);
  return g;
}

double objective(LossKind kind, double C, const Dataset& data,
                 const Vector& w) {
  if (data.empty()) throw InvalidArgument("objective over empty dataset");
  double sum = 0.0;
  for (const auto& inst : data.instances) sum += loss_value(kind, w, inst);
  return 0.5 * C * w.squaredNorm() + sum / static_cast<double>(data.size());
}

Vector objective_gradient(LossKind kind, double C, const Dataset& data,
                          const Vector& w) {
  if (data.empty()) throw InvalidArgument("gradient over empty dataset");
  Vector g = Vector::Zero(w.size());
  for (const auto& inst : data.instances) add_loss_gradient(kind, w, inst, 1.0, g);
  g /= static_cast<double>(data.size());
  g += C * w;
  return g;
}

}  // namespace segbound
