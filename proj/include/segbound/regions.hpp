#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "segbound/data_io.hpp"
#include "segbound/losses.hpp"
#include "segbound/trainer.hpp"

namespace segbound {

/// Gradient summaries of the modified instances at w0*, the only data the
/// closed-form regions need.
struct ModificationGradients {
  /// (sum_A grad l_i - sum_S grad l_i) / (nA + nS); zero when nA + nS = 0.
  Vector delta_s;
  /// sum_A grad l_i + sum_S grad l_i.
  Vector delta_l;
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  std::size_t n_added = 0;
  std::size_t n_removed = 0;
  double C = 1.0;

  std::size_t n_modified() const { return n_added + n_removed; }
};

/// Ball ||w - q|| <= r.
struct SphereRegion {
  Vector q;
  double r = 0.0;
};

/// Half space n^T w <= c with unit normal n.
struct HalfSpace {
  Vector n;
  double c = 0.0;
};

/// Intersection of a sphere and a half space. psi = (n^T q - c) / r is the
/// signed, radius-normalized distance of the plane below the center.
struct SegmentRegion {
  SphereRegion sphere;
  HalfSpace plane;
  double psi = 0.0;
};

struct BoundInterval {
  double lower = 0.0;
  double upper = 0.0;

  double width() const { return upper - lower; }
  bool contains(double v, double slack = 0.0) const {
    return v >= lower - slack && v <= upper + slack;
  }
};

enum class HalfSpaceMode { Exact, PaperClosedForm };

std::string_view to_string(HalfSpaceMode mode);
HalfSpaceMode parse_half_space_mode(std::string_view name);

/// Sums per-instance gradients at w0* over the added and removed sets only.
ModificationGradients modification_gradients(const TrainedModel& w0,
                                             const Dataset& base,
                                             const Modification& m);

/// Sphere guaranteed to contain w1*. Its diameter runs from w0* to the
/// one-step point returned by closed_form_point.
SphereRegion sphere_region(const ModificationGradients& g, const Vector& w0);

/// w_C = (n0/n1) w0* - (nA+nS)/(C n1) * delta_s; lies on the sphere surface.
Vector closed_form_point(const ModificationGradients& g, const Vector& w0);

/// min / max of eta^T w over the sphere.
BoundInterval sphere_test(const SphereRegion& s, const Vector& eta);
BoundInterval sphere_test(const SphereRegion& s, const Instance& eta);

/// Half space through w_c containing w1*.
///
/// Exact: normal is grad f1(w_c) summed over the full updated dataset `d1`;
/// valid for any w_c by first-order convexity.
/// PaperClosedForm: normal is -(nA+nS)/n1 * delta_s + delta_l / n1, which
/// approximates grad f1(w_c) by freezing every loss gradient at w0*. Costs
/// O(nA + nS) and does not read `d1`; containment is not guaranteed.
///
/// Returns nullopt when the unnormalized normal has norm below 1e-14 (w_c is
/// already optimal for Exact; no usable direction for PaperClosedForm).
std::optional<HalfSpace> half_space(LossKind kind, double C, const Dataset* d1,
                                    const Vector& w_c, HalfSpaceMode mode,
                                    const ModificationGradients& g);

/// Throws RegionInconsistent if the plane misses the sphere by more than
/// 1e-9 r, or if r = 0 and the center violates the plane.
SegmentRegion segment_region(const SphereRegion& s, const HalfSpace& h);

/// psi from its closed form n^T v / ||v|| with v = q - w_C.
double closed_form_psi(const ModificationGradients& g, const Vector& w0,
                       const Vector& n);

/// min / max of eta^T w over the segment region, from the projections
/// q^T eta, t = n^T eta and ||eta||.
BoundInterval segment_bounds(double q_eta, double t, double eta_norm,
                             double r, double psi);
BoundInterval segment_test(const SegmentRegion& seg, const Vector& eta);
BoundInterval segment_test(const SegmentRegion& seg, const Instance& eta);

/// width(segment) / width(sphere); 1 when both are zero.
double interval_tightening(const BoundInterval& sphere_iv,
                           const BoundInterval& segment_iv);

/// All regions for one modification. `segment` is empty when the half space
/// is degenerate; callers then use the sphere.
struct Regions {
  ModificationGradients grads;
  SphereRegion sphere;
  std::optional<SegmentRegion> segment;
};

/// Exact mode materializes D1 = apply_modification(base, m).
Regions build_regions(const TrainedModel& w0, const Dataset& base,
                      const Modification& m, HalfSpaceMode mode);

}  // namespace segbound
