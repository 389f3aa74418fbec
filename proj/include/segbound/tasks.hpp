#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "segbound/regions.hpp"

namespace segbound {

using Region = std::variant<SphereRegion, SegmentRegion>;

/// Bound of eta^T w over whichever region is held.
BoundInterval region_test(const Region& region, const Vector& eta);
BoundInterval region_test(const Region& region, const Instance& eta);
int region_dim(const Region& region);

struct CoefficientBounds {
  std::vector<BoundInterval> per_coordinate;
  std::vector<double> tightness_per_coord;
  double mean_tightness = 0.0;
};

/// Interval for every coordinate w1*_j, using eta = e_j.
CoefficientBounds coefficient_sensitivity(const Region& region, int dim);

enum class LabelTag { CertifiedPositive, CertifiedNegative, Unknown };

struct LabelDecision {
  LabelTag tag = LabelTag::Unknown;
  BoundInterval interval;
};

/// lower >= 0 is tested first, so [0, 0] certifies +1.
LabelTag classify_interval(const BoundInterval& iv);

struct LabelSensitivityReport {
  std::vector<LabelDecision> decisions;
  std::size_t n_diff = 0;  // Unknown count
  std::size_t n_test = 0;
  double error_ratio = 0.0;
};

LabelSensitivityReport label_sensitivity(const Region& region,
                                         const Dataset& test);

/// Fraction of certified decisions whose sign matches `oracle_labels`
/// (+1/-1). Empty when nothing was certified.
std::optional<double> certified_agreement(const LabelSensitivityReport& report,
                                          const std::vector<int>& oracle_labels);

}  // namespace segbound
