#pragma once

#include <string>
#include <string_view>

#include "segbound/data_io.hpp"

namespace segbound {

enum class LossKind { SquaredHinge, Logistic };

std::string_view to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view name);

/// Numerically stable logistic function 1 / (1 + exp(-z)).
double sigmoid(double z);

/// l_i(w) for one instance; always >= 0.
double loss_value(LossKind kind, const Vector& w, const Instance& inst);

/// dl_i/dw as a dense vector of length w.size().
Vector loss_gradient(LossKind kind, const Vector& w, const Instance& inst);

/// Scalar factor g such that loss_gradient = g * x.
double loss_gradient_scale(LossKind kind, double margin_score, int label);

/// Accumulates `scale * dl_i/dw` into `out` without densifying x.
void add_loss_gradient(LossKind kind, const Vector& w, const Instance& inst,
                       double scale, Vector& out);

/// (C/2)||w||^2 + (1/n) sum_i l_i(w).
double objective(LossKind kind, double C, const Dataset& data, const Vector& w);

/// C w + (1/n) sum_i grad l_i(w).
Vector objective_gradient(LossKind kind, double C, const Dataset& data,
                          const Vector& w);

}  // namespace segbound
