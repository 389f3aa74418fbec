#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "segbound/bench.hpp"
#include "segbound/data_io.hpp"
#include "segbound/error.hpp"
#include "segbound/losses.hpp"
#include "segbound/regions.hpp"
#include "segbound/tasks.hpp"
#include "segbound/trainer.hpp"

namespace py = pybind11;
using namespace segbound;

namespace {

Eigen::MatrixXd dense_features(const Dataset& d) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d.size()), d.dim);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (const auto& f : d.instances[i].features)
      X(static_cast<Eigen::Index>(i), f.index - 1) = f.value;
  return X;
}

std::vector<int> labels(const Dataset& d) {
  std::vector<int> y;
  y.reserve(d.size());
  for (const auto& inst : d.instances) y.push_back(inst.label);
  return y;
}

}  // namespace

PYBIND11_MODULE(_segbound, m) {
  m.doc() = "Certified bounds on an updated L2-regularized linear classifier";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ConvergenceError>(m, "ConvergenceError");

  py::enum_<LossKind>(m, "LossKind")
      .value("SquaredHinge", LossKind::SquaredHinge)
      .value("Logistic", LossKind::Logistic);
  py::enum_<HalfSpaceMode>(m, "HalfSpaceMode")
      .value("Exact", HalfSpaceMode::Exact)
      .value("PaperClosedForm", HalfSpaceMode::PaperClosedForm);
  py::enum_<LabelTag>(m, "LabelTag")
      .value("CertifiedPositive", LabelTag::CertifiedPositive)
      .value("CertifiedNegative", LabelTag::CertifiedNegative)
      .value("Unknown", LabelTag::Unknown);

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("dim", &Dataset::dim)
      .def("__len__", &Dataset::size)
      .def("features", &dense_features, "Dense (n, dim) feature matrix")
      .def("labels", &labels)
      .def("to_libsvm", &to_libsvm);

  py::class_<Modification>(m, "Modification")
      .def(py::init<>())
      .def_readwrite("removed", &Modification::removed)
      .def_property_readonly("n_added", &Modification::n_added)
      .def_property_readonly("n_removed", &Modification::n_removed);

  m.def("parse_libsvm", py::overload_cast<const std::string&>(&parse_libsvm),
        py::arg("text"));
  m.def("load_libsvm", &load_libsvm, py::arg("path"));
  m.def("augment_bias", &augment_bias, py::arg("data"));
  m.def("make_two_gaussians", &make_two_gaussians, py::arg("n"), py::arg("dim"),
        py::arg("separation") = 2.0, py::arg("seed") = 0);
  m.def(
      "plan_modification",
      [](const Dataset& base, const Dataset& pool, double p_up,
         double add_fraction, std::uint64_t seed) {
        return plan_modification(base, pool,
                                 ModificationPlan{p_up, add_fraction, seed});
      },
      py::arg("base"), py::arg("pool"), py::arg("p_up"),
      py::arg("add_fraction") = 0.5, py::arg("seed") = 0);
  m.def("apply_modification", &apply_modification, py::arg("base"),
        py::arg("modification"));

  m.def("objective", &objective, py::arg("kind"), py::arg("C"), py::arg("data"),
        py::arg("w"));
  m.def("objective_gradient", &objective_gradient, py::arg("kind"),
        py::arg("C"), py::arg("data"), py::arg("w"));

  py::class_<TrainedModel>(m, "TrainedModel")
      .def_readonly("w", &TrainedModel::w)
      .def_readonly("kind", &TrainedModel::kind)
      .def_readonly("C", &TrainedModel::C)
      .def_readonly("achieved_grad_norm", &TrainedModel::achieved_grad_norm)
      .def_readonly("iterations", &TrainedModel::iterations)
      .def_property_readonly("wall_time_ms", [](const TrainedModel& t) {
        return t.wall_time.count();
      });
  m.def(
      "train",
      [](LossKind kind, const Dataset& data, double C, double grad_tol,
         int max_iters) {
        return train(kind, data, TrainConfig{C, grad_tol, max_iters});
      },
      py::arg("kind"), py::arg("data"), py::arg("C"),
      py::arg("grad_tol") = 1e-10, py::arg("max_iters") = 10000);
  m.def(
      "retrain_oracle",
      [](LossKind kind, const Dataset& base, const Modification& mod, double C,
         double grad_tol) {
        return retrain_oracle(kind, base, mod, TrainConfig{C, grad_tol, 10000});
      },
      py::arg("kind"), py::arg("base"), py::arg("modification"), py::arg("C"),
      py::arg("grad_tol") = 1e-10);

  py::class_<BoundInterval>(m, "BoundInterval")
      .def_readonly("lower", &BoundInterval::lower)
      .def_readonly("upper", &BoundInterval::upper)
      .def_property_readonly("width", &BoundInterval::width)
      .def("__repr__", [](const BoundInterval& b) {
        std::ostringstream s;
        s << "BoundInterval(" << b.lower << ", " << b.upper << ")";
        return s.str();
      });
  py::class_<SphereRegion>(m, "SphereRegion")
      .def_readonly("q", &SphereRegion::q)
      .def_readonly("r", &SphereRegion::r);
  py::class_<HalfSpace>(m, "HalfSpace")
      .def_readonly("n", &HalfSpace::n)
      .def_readonly("c", &HalfSpace::c);
  py::class_<SegmentRegion>(m, "SegmentRegion")
      .def(py::init([](const Vector& q, double r, const Vector& n, double c) {
             return segment_region(SphereRegion{q, r}, HalfSpace{n, c});
           }),
           py::arg("q"), py::arg("r"), py::arg("n"), py::arg("c"))
      .def_readonly("sphere", &SegmentRegion::sphere)
      .def_readonly("plane", &SegmentRegion::plane)
      .def_readonly("psi", &SegmentRegion::psi);
  py::class_<Regions>(m, "Regions")
      .def_readonly("sphere", &Regions::sphere)
      .def_readonly("segment", &Regions::segment);

  m.def("build_regions", &build_regions, py::arg("model"), py::arg("base"),
        py::arg("modification"), py::arg("mode") = HalfSpaceMode::Exact);
  m.def("sphere_test",
        py::overload_cast<const SphereRegion&, const Vector&>(&sphere_test),
        py::arg("sphere"), py::arg("eta"));
  m.def("segment_test",
        py::overload_cast<const SegmentRegion&, const Vector&>(&segment_test),
        py::arg("segment"), py::arg("eta"));

  py::class_<CoefficientBounds>(m, "CoefficientBounds")
      .def_readonly("per_coordinate", &CoefficientBounds::per_coordinate)
      .def_readonly("tightness_per_coord", &CoefficientBounds::tightness_per_coord)
      .def_readonly("mean_tightness", &CoefficientBounds::mean_tightness);
  py::class_<LabelDecision>(m, "LabelDecision")
      .def_readonly("tag", &LabelDecision::tag)
      .def_readonly("interval", &LabelDecision::interval);
  py::class_<LabelSensitivityReport>(m, "LabelSensitivityReport")
      .def_readonly("decisions", &LabelSensitivityReport::decisions)
      .def_readonly("n_diff", &LabelSensitivityReport::n_diff)
      .def_readonly("n_test", &LabelSensitivityReport::n_test)
      .def_readonly("error_ratio", &LabelSensitivityReport::error_ratio);

  m.def("coefficient_sensitivity", &coefficient_sensitivity, py::arg("region"),
        py::arg("dim"));
  m.def("label_sensitivity", &label_sensitivity, py::arg("region"),
        py::arg("test"));
  m.def("certified_agreement", &certified_agreement, py::arg("report"),
        py::arg("oracle_labels"));

  m.def(
      "run_experiment",
      [](const std::string& config_text) {
        const auto out = run_experiment(parse_config(config_text));
        std::ostringstream csv;
        emit_csv(out.records, csv);
        return csv.str();
      },
      py::arg("config_text"),
      "Runs a sweep from `key = value` config text and returns the CSV.");
}
