#include "segbound/regions.hpp"

#include <algorithm>
#include <cmath>

#include "segbound/error.hpp"

namespace segbound {

namespace {

constexpr double kDegenerateNorm = 1e-14;
constexpr double kPsiSlack = 1e-9;
constexpr double kSqrtSlack = 1e-12;

void check_length(const Vector& a, Eigen::Index dim, const char* what) {
  if (a.size() != dim)
    throw DimensionMismatch(std::string(what) + " has length " +
                            std::to_string(a.size()) + ", expected " +
                            std::to_string(dim));
}

void check_instance(const Instance& x, Eigen::Index dim) {
  if (x.max_index() > dim)
    throw DimensionMismatch("instance feature " + std::to_string(x.max_index()) +
                            " exceeds dimension " + std::to_string(dim));
}

// Clamp a quantity that is non-negative in exact arithmetic.
double clamp_nonneg(double v, double scale) {
  if (v >= 0.0) return v;
  if (v >= -kSqrtSlack * std::max(1.0, scale)) return 0.0;
  throw RegionInconsistent("negative radicand " + std::to_string(v));
}

}  // namespace

std::string_view to_string(HalfSpaceMode mode) {
  return mode == HalfSpaceMode::Exact ? "exact" : "closed_form";
}

HalfSpaceMode parse_half_space_mode(std::string_view name) {
  if (name == "exact" || name == "Exact") return HalfSpaceMode::Exact;
  if (name == "closed_form" || name == "closed-form" ||
      name == "PaperClosedForm" || name == "paper")
    return HalfSpaceMode::PaperClosedForm;
  throw InvalidArgument("unknown half-space mode '" + std::string(name) + "'");
}

ModificationGradients modification_gradients(const TrainedModel& w0,
                                             const Dataset& base,
                                             const Modification& m) {
  check_modification(base, m);
  const Eigen::Index d = w0.w.size();
  if (base.dim > d)
    throw DimensionMismatch("base dataset dimension exceeds w0");

  ModificationGradients g;
  g.n0 = base.size();
  g.n_added = m.n_added();
  g.n_removed = m.n_removed();
  g.n1 = g.n0 + g.n_added - g.n_removed;
  g.C = w0.C;

  Vector sum_added = Vector::Zero(d);
  Vector sum_removed = Vector::Zero(d);
  for (const auto& inst : m.added) {
    check_instance(inst, d);
    add_loss_gradient(w0.kind, w0.w, inst, 1.0, sum_added);
  }
  for (std::size_t i : m.removed)
    add_loss_gradient(w0.kind, w0.w, base.instances[i], 1.0, sum_removed);

  g.delta_l = sum_added + sum_removed;
  g.delta_s = Vector::Zero(d);
  if (g.n_modified() > 0)
    g.delta_s = (sum_added - sum_removed) / static_cast<double>(g.n_modified());
  return g;
}

SphereRegion sphere_region(const ModificationGradients& g, const Vector& w0) {
  if (g.n1 == 0) throw InvalidArgument("updated dataset is empty");
  check_length(g.delta_s, w0.size(), "delta_s");
  const double n0 = static_cast<double>(g.n0);
  const double n1 = static_cast<double>(g.n1);
  const double nA = static_cast<double>(g.n_added);
  const double nS = static_cast<double>(g.n_removed);
  const double step = (nA + nS) / (2.0 * g.C * n1);

  SphereRegion s;
  s.q = ((n0 + n1) / (2.0 * n1)) * w0 - step * g.delta_s;
  s.r = (((nA - nS) / (2.0 * n1)) * w0 + step * g.delta_s).norm();
  return s;
}

Vector closed_form_point(const ModificationGradients& g, const Vector& w0) {
  if (g.n1 == 0) throw InvalidArgument("updated dataset is empty");
  const double n1 = static_cast<double>(g.n1);
  return (static_cast<double>(g.n0) / n1) * w0 -
         (static_cast<double>(g.n_modified()) / (g.C * n1)) * g.delta_s;
}

BoundInterval sphere_test(const SphereRegion& s, const Vector& eta) {
  check_length(eta, s.q.size(), "eta");
  const double center = s.q.dot(eta);
  const double spread = s.r * eta.norm();
  return {center - spread, center + spread};
}

BoundInterval sphere_test(const SphereRegion& s, const Instance& eta) {
  check_instance(eta, s.q.size());
  const double center = eta.dot(s.q);
  const double spread = s.r * std::sqrt(eta.squared_norm());
  return {center - spread, center + spread};
}

std::optional<HalfSpace> half_space(LossKind kind, double C, const Dataset* d1,
                                    const Vector& w_c, HalfSpaceMode mode,
                                    const ModificationGradients& g) {
  Vector normal;
  if (mode == HalfSpaceMode::Exact) {
    if (d1 == nullptr)
      throw InvalidArgument("exact half space needs the updated dataset");
    normal = objective_gradient(kind, C, *d1, w_c);
  } else {
    check_length(g.delta_s, w_c.size(), "delta_s");
    const double n1 = static_cast<double>(g.n1);
    normal = (-static_cast<double>(g.n_modified()) / n1) * g.delta_s +
             g.delta_l / n1;
  }
  const double len = normal.norm();
  if (!(len >= kDegenerateNorm)) return std::nullopt;

  HalfSpace h;
  h.n = normal / len;
  h.c = h.n.dot(w_c);
  return h;
}

SegmentRegion segment_region(const SphereRegion& s, const HalfSpace& h) {
  if (s.r < 0.0) throw InvalidArgument("negative sphere radius");
  check_length(h.n, s.q.size(), "plane normal");
  SegmentRegion seg{s, h, 0.0};
  const double gap = h.n.dot(s.q) - h.c;
  if (s.r == 0.0) {
    if (gap > 1e-10)
      throw RegionInconsistent("point region lies outside the half space");
    return seg;
  }
  double psi = gap / s.r;
  if (std::abs(psi) > 1.0 + kPsiSlack)
    throw RegionInconsistent("plane does not cut the sphere (psi = " +
                             std::to_string(psi) + ")");
  seg.psi = std::clamp(psi, -1.0, 1.0);
  return seg;
}

double closed_form_psi(const ModificationGradients& g, const Vector& w0,
                       const Vector& n) {
  const double n1 = static_cast<double>(g.n1);
  const double nA = static_cast<double>(g.n_added);
  const double nS = static_cast<double>(g.n_removed);
  const Vector v = ((nA - nS) / (2.0 * n1)) * w0 +
                   ((nA + nS) / (2.0 * g.C * n1)) * g.delta_s;
  const double len = v.norm();
  return len > 0.0 ? n.dot(v) / len : 0.0;
}

BoundInterval segment_bounds(double q_eta, double t, double eta_norm,
                             double r, double psi) {
  const double eta_sq = eta_norm * eta_norm;
  const double cap = r * std::sqrt(clamp_nonneg(1.0 - psi * psi, 1.0)) *
                     std::sqrt(clamp_nonneg(eta_sq - t * t, eta_sq));
  const double on_plane = q_eta - psi * r * t;

  BoundInterval iv;
  iv.lower = t > psi * eta_norm ? q_eta - r * eta_norm : on_plane - cap;
  iv.upper = t < -psi * eta_norm ? q_eta + r * eta_norm : on_plane + cap;
  return iv;
}

BoundInterval segment_test(const SegmentRegion& seg, const Vector& eta) {
  check_length(eta, seg.sphere.q.size(), "eta");
  return segment_bounds(seg.sphere.q.dot(eta), seg.plane.n.dot(eta), eta.norm(),
                        seg.sphere.r, seg.psi);
}

BoundInterval segment_test(const SegmentRegion& seg, const Instance& eta) {
  check_instance(eta, seg.sphere.q.size());
  return segment_bounds(eta.dot(seg.sphere.q), eta.dot(seg.plane.n),
                        std::sqrt(eta.squared_norm()), seg.sphere.r, seg.psi);
}

double interval_tightening(const BoundInterval& sphere_iv,
                           const BoundInterval& segment_iv) {
  const double ws = sphere_iv.width();
  const double wd = segment_iv.width();
  if (ws <= 0.0) {
    if (wd > 1e-12)
      throw RegionInconsistent("segment interval wider than a point sphere");
    return 1.0;
  }
  const double ratio = wd / ws;
  if (ratio > 1.0 + 1e-12 || ratio < -1e-12)
    throw RegionInconsistent("segment interval is not inside sphere interval");
  return std::clamp(ratio, 0.0, 1.0);
}

Regions build_regions(const TrainedModel& w0, const Dataset& base,
                      const Modification& m, HalfSpaceMode mode) {
  Regions out;
  out.grads = modification_gradients(w0, base, m);
  out.sphere = sphere_region(out.grads, w0.w);
  const Vector w_c = closed_form_point(out.grads, w0.w);

  std::optional<HalfSpace> plane;
  if (mode == HalfSpaceMode::Exact) {
    const Dataset d1 = apply_modification(base, m);
    plane = half_space(w0.kind, w0.C, &d1, w_c, mode, out.grads);
  } else {
    plane = half_space(w0.kind, w0.C, nullptr, w_c, mode, out.grads);
  }
  if (plane) out.segment = segment_region(out.sphere, *plane);
  return out;
}

}  // namespace segbound
