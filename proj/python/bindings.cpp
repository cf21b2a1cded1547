#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "moyal/app/checks.hpp"
#include "moyal/app/runner.hpp"
#include "moyal/app/scenario.hpp"
#include "moyal/bohm.hpp"
#include "moyal/clifford.hpp"
#include "moyal/dynamics.hpp"
#include "moyal/error.hpp"
#include "moyal/shadow.hpp"
#include "moyal/star.hpp"
#include "moyal/wigner.hpp"

namespace py = pybind11;
using namespace moyal;

namespace {

template <typename T>
py::array_t<T> array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<bool> mask(const std::vector<std::uint8_t>& v) {
  py::array_t<bool> a(static_cast<py::ssize_t>(v.size()));
  auto m = a.mutable_unchecked<1>();
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<py::ssize_t>(i)) = v[i] != 0;
  return a;
}

py::array_t<double> square(const PhaseSpaceFunction& f) {
  const auto n = static_cast<py::ssize_t>(f.n());
  py::array_t<double> a({n, n});
  std::copy(f.values().begin(), f.values().end(), a.mutable_data());
  return a;
}

Rational rational(py::handle h) {
  if (py::isinstance<py::int_>(h)) return Rational(py::cast<long long>(h));
  const std::string s = py::str(h);
  return Rational(s);
}

py::dict check_dict(const app::Check& c) {
  py::dict d;
  d["name"] = c.name;
  d["value"] = c.value;
  d["tolerance"] = c.tolerance;
  d["relation"] = c.relation;
  d["pass"] = c.pass;
  d["detail"] = c.detail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_moyal, m) {
  m.doc() = "Bindings for the moyal C++ core";

  static py::exception<Error> moyal_error(m, "MoyalError");
  static py::exception<app::ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const app::ValidationError& e) {
      py::set_error(validation_error, e.what());
    } catch (const Error& e) {
      py::set_error(moyal_error, e.what());
    }
  });

  m.def("version", [] { return std::string(app::version()); });

  py::class_<PhysicsConfig>(m, "PhysicsConfig")
      .def(py::init([](double hbar, double mass) {
             PhysicsConfig c{hbar, mass};
             c.validate();
             return c;
           }),
           py::arg("hbar") = 1.0, py::arg("mass") = 1.0)
      .def_readonly("hbar", &PhysicsConfig::hbar)
      .def_readonly("mass", &PhysicsConfig::mass);

  py::class_<Grid>(m, "Grid")
      .def(py::init<std::size_t, double, double, double>(), py::arg("n"), py::arg("x_min"), py::arg("x_max"),
           py::arg("hbar") = 1.0)
      .def_static("self_dual", &Grid::self_dual, py::arg("n"), py::arg("hbar") = 1.0)
      .def_property_readonly("n", &Grid::n)
      .def_property_readonly("dx", &Grid::dx)
      .def_property_readonly("dp", &Grid::dp)
      .def_property_readonly("x", [](const Grid& g) { return array(g.positions()); })
      .def_property_readonly("p", [](const Grid& g) { return array(g.momenta()); });

  py::class_<Wavefunction>(m, "Wavefunction")
      .def(py::init([](const Grid& g, const PhysicsConfig& c, const std::vector<cplx>& a) { return Wavefunction(g, c, a); }),
           py::arg("grid"), py::arg("config"), py::arg("amplitudes"))
      .def_property_readonly("grid", &Wavefunction::grid)
      .def_property_readonly("amplitudes", [](const Wavefunction& w) { return array(w.amplitudes()); })
      .def_property_readonly("coordinates", [](const Wavefunction& w) { return array(w.coordinates()); })
      .def_property_readonly("density", [](const Wavefunction& w) { return array(w.density()); })
      .def_property_readonly("domain", [](const Wavefunction& w) {
        switch (w.domain().kind) {
          case Domain::Kind::position: return std::string("position");
          case Domain::Kind::momentum: return std::string("momentum");
          case Domain::Kind::fractional: return "fractional:" + std::to_string(w.domain().theta);
        }
        return std::string();
      })
      .def("norm_squared", &Wavefunction::norm_squared)
      .def("mean", &Wavefunction::mean_coordinate)
      .def("variance", &Wavefunction::variance_coordinate);

  m.def("gaussian_packet", &gaussian_packet, py::arg("grid"), py::arg("x0"), py::arg("p0"), py::arg("sigma"),
        py::arg("config") = PhysicsConfig{});
  m.def("superpose", &superpose, py::arg("terms"));
  m.def("to_momentum", &to_momentum);
  m.def("from_momentum", &from_momentum);
  m.def("frft", &frft, py::arg("wf"), py::arg("theta"));

  m.def("wigner_transform", [](const Wavefunction& w) { return square(wigner_transform(w)); },
        "W[j, k] at (x_j, p_k)");
  m.def("marginals", [](const Wavefunction& w) {
    const auto mg = marginals(wigner_transform(w));
    return py::make_tuple(array(mg.position), array(mg.momentum));
  });
  m.def("purity", [](const Wavefunction& w) { return purity(wigner_transform(w)); });

  py::class_<CharacteristicFunction>(m, "CharacteristicFunction")
      .def_static("of", [](const Wavefunction& w) { return characteristic_function(wigner_transform(w)); })
      .def("__call__", [](const CharacteristicFunction& c, std::size_t l, std::size_t k) { return c(l, k); })
      .def("alpha", &CharacteristicFunction::alpha)
      .def("beta", &CharacteristicFunction::beta);

  py::class_<PolySymbol>(m, "PolySymbol")
      .def_static("parse", [](const std::string& t, double hbar) { return PolySymbol::parse(t, hbar); },
                  py::arg("text"), py::arg("hbar") = 1.0)
      .def("degree", &PolySymbol::degree)
      .def("evaluate", &PolySymbol::evaluate)
      .def("coefficient_norm", [](const PolySymbol& p) { return moyal::to_string(p.coefficient_norm()); })
      .def("__add__", &PolySymbol::operator+)
      .def("__sub__", &PolySymbol::operator-)
      .def("__eq__", &PolySymbol::operator==)
      .def("__str__", &PolySymbol::to_string)
      .def("__repr__", [](const PolySymbol& p) { return "PolySymbol('" + p.to_string() + "')"; });
  m.def("star_poly", &star_poly);
  m.def("moyal_bracket", py::overload_cast<const PolySymbol&, const PolySymbol&>(&moyal_bracket));
  m.def("poisson_bracket", &poisson_bracket);
  m.def("baker_bracket", py::overload_cast<const PolySymbol&, const PolySymbol&>(&baker_bracket));

  py::class_<ConditionalField>(m, "ConditionalField")
      .def_property_readonly("coordinates", [](const ConditionalField& f) {
        std::vector<double> c(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) c[i] = f.coordinate(i);
        return array(c);
      })
      .def_property_readonly("values", [](const ConditionalField& f) { return array(f.values); })
      .def_property_readonly("valid", [](const ConditionalField& f) { return mask(f.valid); })
      .def_readonly("route_gap", &ConditionalField::route_gap);
  m.def("conditional_momentum", &conditional_momentum, py::arg("wf"), py::arg("floor") = -1.0,
        py::arg("cross_check") = true);
  m.def("conditional_position", [](const Wavefunction& phi, double floor) { return conditional_position(phi, floor); },
        py::arg("phi"), py::arg("floor") = -1.0);
  m.def("guidance_from_phase", [](const Wavefunction& w) {
    return guidance_from_phase(polar_decompose(w, -1.0, default_refine));
  });
  m.def("polar_decompose", [](const Wavefunction& w, double floor, std::size_t refine) {
    const auto p = polar_decompose(w, floor, refine);
    return py::make_tuple(array(p.amplitude), array(p.phase), mask(p.valid));
  }, py::arg("wf"), py::arg("floor") = -1.0, py::arg("refine") = 1);
  m.def("quantum_potential", [](const Wavefunction& w) {
    const auto q = quantum_potential(polar_decompose(w), w.config());
    return py::make_tuple(array(q.values), mask(q.valid));
  });

  m.def("split_step_evolve", [](const Wavefunction& w, const std::string& kind, double omega, double dt, std::size_t steps,
                                std::size_t record_every) {
    const Potential V = kind == "harmonic" ? Potential::harmonic(w.grid(), omega, w.config()) : Potential::free(w.grid());
    if (kind != "harmonic" && kind != "free") throw app::ValidationError("potential", "expected 'free' or 'harmonic'");
    const auto s = split_step_evolve(w, V, dt, steps, record_every);
    return py::make_tuple(s.times, s.states);
  }, py::arg("wf"), py::arg("potential") = "free", py::arg("omega") = 1.0, py::arg("dt"), py::arg("steps"),
     py::arg("record_every") = 1);

  py::class_<Signature>(m, "Signature")
      .def(py::init([](int p, int q) { return Signature{p, q}; }))
      .def_readonly("p", &Signature::p)
      .def_readonly("q", &Signature::q);
  py::class_<Multivector>(m, "Multivector")
      .def_static("parse", [](const std::string& t, const Signature& s) { return Multivector::parse(t, s); },
                  py::arg("text"), py::arg("signature"))
      .def_static("scalar", [](const Signature& s, py::handle v) { return Multivector::scalar(s, rational(v)); })
      .def_static("generator", &Multivector::generator, py::arg("signature"), py::arg("index"))
      .def("__mul__", [](const Multivector& a, const Multivector& b) { return a * b; })
      .def("__add__", &Multivector::operator+)
      .def("__sub__", py::overload_cast<const Multivector&>(&Multivector::operator-, py::const_))
      .def("__neg__", py::overload_cast<>(&Multivector::operator-, py::const_))
      .def("__eq__", &Multivector::operator==)
      .def("reverse", &Multivector::reverse)
      .def("is_scalar", &Multivector::is_scalar)
      .def("grade", &Multivector::grade)
      .def("__str__", &Multivector::to_string)
      .def("__repr__", [](const Multivector& v) { return "Multivector('" + v.to_string() + "')"; });

  m.def("suite_names", &app::suite_names);
  m.def("run_suite", [](const std::string& name, double scale) {
    const auto r = app::run_suite(name, scale);
    py::list items;
    for (const auto& c : r.items) items.append(check_dict(c));
    py::dict d;
    d["suite"] = r.suite;
    d["passed"] = r.passed();
    d["items"] = items;
    return d;
  }, py::arg("name"), py::arg("tolerance_scale") = 1.0);
  m.def("run_scenario", [](const std::string& text, std::optional<std::uint64_t> seed, bool plots) {
    app::RunOptions opt;
    opt.seed = seed;
    opt.plots = plots;
    const auto r = app::run_scenario(app::parse_scenario(text), opt);
    py::list checks;
    for (const auto& c : r.checks) checks.append(check_dict(c));
    py::dict files;
    for (const auto& [name, content] : r.artifacts.files()) files[py::str(name)] = py::bytes(content);
    py::dict d;
    d["passed"] = r.passed();
    d["checks"] = checks;
    d["files"] = files;
    return d;
  }, py::arg("text"), py::arg("seed") = py::none(), py::arg("plots") = false,
     "Run a scenario given as YAML text; returns checks and artifact contents");
}
