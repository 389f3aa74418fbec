#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace segbound {

using Vector = Eigen::VectorXd;

struct Feature {
  int index;  // 1-based
  double value;

  friend bool operator==(const Feature&, const Feature&) = default;
};

/// One labeled sparse example. Features are kept sorted by index.
struct Instance {
  std::vector<Feature> features;
  int label = 1;  // +1 or -1

  /// x^T w, with feature j mapped to w[j - 1].
  double dot(const Vector& w) const;
  double squared_norm() const;
  /// Largest feature index, 0 for an empty instance.
  int max_index() const;
  /// Dense copy of length `dim`.
  Vector to_dense(int dim) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Dataset {
  std::vector<Instance> instances;
  int dim = 0;

  std::size_t size() const { return instances.size(); }
  bool empty() const { return instances.empty(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Batch change to a base dataset: instances in `added` join, base rows
/// listed in `removed` leave.
struct Modification {
  std::vector<Instance> added;
  std::vector<std::size_t> removed;

  std::size_t n_added() const { return added.size(); }
  std::size_t n_removed() const { return removed.size(); }
  bool empty() const { return added.empty() && removed.empty(); }
};

struct ModificationPlan {
  double p_up = 0.0;
  double add_fraction = 0.5;
  std::uint64_t seed = 0;
  /// Reject pools containing an instance value-equal to a base instance.
  /// Disable when base and pool are a positional split of one file, where
  /// duplicate rows are distinct samples.
  bool require_disjoint = true;
};

Dataset parse_libsvm(std::istream& in);
Dataset parse_libsvm(const std::string& text);
Dataset load_libsvm(const std::string& path);

/// Writes `d` in LIBSVM format with labels as "+1"/"-1" and values at full
/// round-trip precision.
void write_libsvm(std::ostream& out, const Dataset& d);
std::string to_libsvm(const Dataset& d);

/// Raises every dataset's dim to the common maximum.
void align_dims(std::vector<Dataset*> sets);

/// Appends a constant 1 feature at index dim+1. Not idempotent.
Dataset augment_bias(const Dataset& d);

/// Samples removals from `base` and additions from `pool`, uniformly without
/// replacement; deterministic for a given seed.
Modification plan_modification(const Dataset& base, const Dataset& pool,
                               const ModificationPlan& plan);

/// Validates `m` against `base` (distinct, in-range removals).
void check_modification(const Dataset& base, const Modification& m);

/// Surviving base instances in original order, then the added ones.
Dataset apply_modification(const Dataset& base, const Modification& m);

/// Two isotropic Gaussian classes with means at +/- `separation`/2 along a
/// random unit direction. Dense features 1..dim, labels balanced in
/// expectation.
Dataset make_two_gaussians(std::size_t n, int dim, double separation,
                           std::uint64_t seed);

}  // namespace segbound
