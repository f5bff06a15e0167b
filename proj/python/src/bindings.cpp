#include "cyweyl/continuity_solver.hpp"
#include "cyweyl/descriptor_io.hpp"
#include "cyweyl/errors.hpp"
#include "cyweyl/invariants.hpp"
#include "cyweyl/ma_residual.hpp"
#include "cyweyl/problem_io.hpp"
#include "cyweyl/radial_profile.hpp"
#include "cyweyl/root_data.hpp"
#include "cyweyl/transversal_operator.hpp"
#include "cyweyl/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cyweyl;

namespace {

RootType type_of(const std::string& tag) { return parse_root_type(tag); }

py::dict report_dict(const ContinuationReport& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["message"] = r.message;
  d["rejected_steps"] = r.rejected_steps;
  d["f0_integral_gap"] = r.f0_integral_gap;
  py::list t, hist;
  for (const auto& s : r.states) {
    t.append(s.t);
    hist.append(s.residual_history);
  }
  d["t"] = t;
  d["residual_history"] = hist;
  const auto& last = r.final_state();
  d["f"] = last.f.values;
  d["shape"] = py::make_tuple(last.f.grid.n2(), last.f.grid.n1());
  d["certificate_min"] = last.certificate_min;
  return d;
}

}  // namespace

PYBIND11_MODULE(_cyweyl, m) {
  m.doc() = "Weyl-invariant potentials on compact symmetric spaces";

  // Translators run most-recent first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<WallSingularityError>(m, "WallSingularityError", PyExc_ArithmeticError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);

  py::class_<SymmetricSpaceDescriptor>(m, "Descriptor")
      .def_readonly("name", &SymmetricSpaceDescriptor::name)
      .def_property_readonly("type", [](const SymmetricSpaceDescriptor& d) { return to_string(d.type); })
      .def_readonly("n", &SymmetricSpaceDescriptor::n)
      .def_readonly("rank", &SymmetricSpaceDescriptor::rank)
      .def_readonly("d", &SymmetricSpaceDescriptor::d)
      .def_readonly("curvature", &SymmetricSpaceDescriptor::curvature)
      .def_readonly("multiplicities", &SymmetricSpaceDescriptor::multiplicities)
      .def_readonly("double_multiplicities", &SymmetricSpaceDescriptor::double_multiplicities)
      .def_readonly("root_scales", &SymmetricSpaceDescriptor::root_scales)
      .def("dimension_identity_holds", &SymmetricSpaceDescriptor::dimension_identity_holds)
      .def("to_json", [](const SymmetricSpaceDescriptor& d) { return descriptor_to_json(d); })
      .def("__repr__", [](const SymmetricSpaceDescriptor& d) { return "<Descriptor " + d.name + ">"; });

  m.def("builtin_names", &builtin_names);
  m.def("descriptor", &load_descriptor, py::arg("name_or_path"));
  m.def("descriptor_from_json", [](const std::string& text) { return descriptor_from_json(text); });

  m.def("weyl_group", [](const std::string& tag) { return weyl_group(type_of(tag)); }, py::arg("type"));
  m.def("rho1", &rho1, py::arg("x"));
  m.def("rho2", [](const std::string& tag, const Eigen::Vector2d& x) { return rho2(type_of(tag), x); },
        py::arg("type"), py::arg("x"));
  m.def("jacobian_rho", [](const std::string& tag, const Eigen::Vector2d& x) { return jacobian_rho(type_of(tag), x); },
        py::arg("type"), py::arg("x"));
  m.def("symmetrize_phi", [](const std::string& tag, const Eigen::Vector2d& x) { return symmetrize_phi(type_of(tag), x); },
        py::arg("type"), py::arg("x"));
  m.def("rho_inverse", [](const std::string& tag, const Eigen::Vector2d& y) { return rho_inverse(type_of(tag), y); },
        py::arg("type"), py::arg("y"));
  m.def("image_region_contains",
        [](const std::string& tag, const Eigen::Vector2d& y) { return image_region_contains(type_of(tag), y); },
        py::arg("type"), py::arg("y"));

  m.def("transversal_rank_one",
        [](int n, int d, double c, double s) { return transversal_product_rank_one_rho1(n, d, c, s); }, py::arg("n"),
        py::arg("d"), py::arg("c"), py::arg("s"));
  m.def("transversal_rho1",
        [](const SymmetricSpaceDescriptor& desc, const Eigen::Vector2d& x) {
          return transversal_product_rho1(desc.root_system(), x);
        },
        py::arg("space"), py::arg("x"));
  m.def("transversal_rho2",
        [](const SymmetricSpaceDescriptor& desc, const Eigen::Vector2d& x) {
          return transversal_product_rho2(desc.root_system(), x);
        },
        py::arg("space"), py::arg("x"));

  py::class_<RadialProfile>(m, "RadialProfile")
      .def(py::init([](int n, int d, double c, double C1, double C2, const std::string& reading) {
             ProfileParams p;
             p.n = n;
             p.d = d;
             p.curvature = c;
             p.C1 = C1;
             p.C2 = C2;
             p.reading = parse_reading(reading);
             p.validate();
             return RadialProfile(p);
           }),
           py::arg("n"), py::arg("d") = 0, py::arg("c") = 1.0, py::arg("C1") = 1.0, py::arg("C2") = 1.0,
           py::arg("reading") = "inner")
      .def("g", &RadialProfile::integrand_g, py::arg("u"))
      .def("F", &RadialProfile::F, py::arg("u"))
      .def("f", &RadialProfile::f_value, py::arg("u"))
      .def("f_prime", &RadialProfile::f_prime, py::arg("u"))
      .def("f_second", &RadialProfile::f_second, py::arg("u"))
      .def("ode_residual", &RadialProfile::ode_residual, py::arg("s"));

  m.def("verify",
        [](const std::string& name) {
          const VerifyReport r = verify_space(load_descriptor(name));
          py::list checks;
          for (const auto& c : r.checks)
            checks.append(py::dict(py::arg("name") = c.name, py::arg("pass") = c.pass, py::arg("measured") = c.measured,
                                   py::arg("tolerance") = c.tolerance));
          return py::make_tuple(r.all_pass(), checks);
        },
        py::arg("space"));

  m.def("solve_problem",
        [](const std::string& json_text, std::optional<std::pair<int, int>> grid) {
          const ProblemFile file = problem_from_json(json_text, grid);
          return report_dict(continuation_solve(file.problem, initial_field(file)));
        },
        py::arg("problem_json"), py::arg("grid") = std::nullopt);

  m.def("convergence_study",
        [](int l, const std::vector<int>& sizes) {
          const ConvergenceStudy s = convergence_study(l, sizes);
          py::list errors;
          for (const auto& lv : s.levels) errors.append(lv.error);
          return py::make_tuple(errors, s.orders);
        },
        py::arg("l"), py::arg("sizes"));
}
