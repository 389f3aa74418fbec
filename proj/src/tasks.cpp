#include "segbound/tasks.hpp"

#include <cmath>

#include "segbound/error.hpp"

namespace segbound {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

BoundInterval region_test(const Region& region, const Vector& eta) {
  return std::visit(
      overloaded{[&](const SphereRegion& s) { return sphere_test(s, eta); },
                 [&](const SegmentRegion& s) { return segment_test(s, eta); }},
      region);
}

BoundInterval region_test(const Region& region, const Instance& eta) {
  return std::visit(
      overloaded{[&](const SphereRegion& s) { return sphere_test(s, eta); },
                 [&](const SegmentRegion& s) { return segment_test(s, eta); }},
      region);
}

int region_dim(const Region& region) {
  return std::visit(
      overloaded{
          [](const SphereRegion& s) { return static_cast<int>(s.q.size()); },
          [](const SegmentRegion& s) {
            return static_cast<int>(s.sphere.q.size());
          }},
      region);
}

CoefficientBounds coefficient_sensitivity(const Region& region, int dim) {
  if (dim != region_dim(region))
    throw DimensionMismatch("coefficient dimension " + std::to_string(dim) +
                            " does not match region dimension " +
                            std::to_string(region_dim(region)));
  CoefficientBounds out;
  out.per_coordinate.reserve(dim);
  out.tightness_per_coord.reserve(dim);

  // With eta = e_j: q^T eta = q_j, t = n_j, ||eta|| = 1.
  auto bound = [&region](int j) {
    return std::visit(
        overloaded{[j](const SphereRegion& s) {
                     return BoundInterval{s.q[j] - s.r, s.q[j] + s.r};
                   },
                   [j](const SegmentRegion& s) {
                     return segment_bounds(s.sphere.q[j], s.plane.n[j], 1.0,
                                           s.sphere.r, s.psi);
                   }},
        region);
  };

  double total = 0.0;
  for (int j = 0; j < dim; ++j) {
    BoundInterval iv = bound(j);
    const double t = std::abs(iv.upper - iv.lower);
    out.per_coordinate.push_back(iv);
    out.tightness_per_coord.push_back(t);
    total += t;
  }
  out.mean_tightness = dim > 0 ? total / dim : 0.0;
  return out;
}

LabelTag classify_interval(const BoundInterval& iv) {
  if (iv.lower >= 0.0) return LabelTag::CertifiedPositive;
  if (iv.upper <= 0.0) return LabelTag::CertifiedNegative;
  return LabelTag::Unknown;
}

LabelSensitivityReport label_sensitivity(const Region& region,
                                         const Dataset& test) {
  if (test.empty()) throw InvalidArgument("test set is empty");
  LabelSensitivityReport rep;
  rep.n_test = test.size();
  rep.decisions.reserve(test.size());
  for (const auto& inst : test.instances) {
    LabelDecision dec;
    dec.interval = region_test(region, inst);
    dec.tag = classify_interval(dec.interval);
    if (dec.tag == LabelTag::Unknown) ++rep.n_diff;
    rep.decisions.push_back(dec);
  }
  rep.error_ratio =
      static_cast<double>(rep.n_diff) / static_cast<double>(rep.n_test);
  return rep;
}

std::optional<double> certified_agreement(const LabelSensitivityReport& report,
                                          const std::vector<int>& oracle_labels) {
  if (oracle_labels.size() != report.decisions.size())
    throw DimensionMismatch("oracle label count does not match report");
  std::size_t certified = 0;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < oracle_labels.size(); ++i) {
    const LabelTag tag = report.decisions[i].tag;
    if (tag == LabelTag::Unknown) continue;
    ++certified;
    const int predicted = tag == LabelTag::CertifiedPositive ? 1 : -1;
    if (predicted == oracle_labels[i]) ++agree;
  }
  if (certified == 0) return std::nullopt;
  return static_cast<double>(agree) / static_cast<double>(certified);
}

}  // namespace segbound
