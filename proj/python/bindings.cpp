#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "genquad/analysis.hpp"
#include "genquad/cli.hpp"
#include "genquad/error.hpp"
#include "genquad/field.hpp"
#include "genquad/forms.hpp"
#include "genquad/paperlab.hpp"
#include "genquad/report.hpp"
#include "genquad/search.hpp"
#include "genquad/text.hpp"

namespace py = pybind11;
using namespace genquad;

namespace {

// Results cross the boundary as JSON text; the Python side decodes them.
std::string dump(const report::Json& j) { return j.dump(); }

FieldElement as_element(const py::handle& x, const FieldContext& ctx) {
  if (py::isinstance<FieldElement>(x)) return x.cast<FieldElement>();
  if (py::isinstance<py::int_>(x)) return FieldElement(Rational(py::str(x).cast<std::string>()));
  return parse_element(x.cast<std::string>(), ctx);
}

std::string classify(long d, const std::string& form) {
  const FieldContext ctx(d);
  return std::string(to_string(classify_definiteness(parse_form(form, ctx))));
}

std::string delta(long d, const std::string& form) {
  const FieldContext ctx(d);
  const auto cert = generalized_delta(parse_form(form, ctx));
  report::Json j;
  j["form"] = report::form(cert.form);
  j["certificate"] = report::certificate(cert);
  j["verified"] = verify_certificate(cert);
  return dump(j);
}

std::string represent(long d, const std::string& form, const py::object& target, std::optional<long> height,
                      int parallel) {
  const FieldContext ctx(d);
  const GeneralizedForm g = parse_form(form, ctx);
  const FieldElement alpha = as_element(target, ctx);
  const SearchOptions so{parallel};
  report::Json j;
  SearchVerdict v;
  if (height) {
    j["strategy"] = "bounded";
    v = represent_bounded(ctx, g, alpha, Integer(*height), so);
  } else {
    const auto cert = generalized_delta(g);
    j["strategy"] = "definite";
    j["certificate"] = report::certificate(cert);
    v = represent_definite(ctx, g, alpha, cert, so);
  }
  j["target"] = report::element(alpha);
  j["verdict"] = report::verdict(v);
  return dump(j);
}

std::string universality(long d, const std::string& form, long trace_bound, std::optional<long> height,
                         int parallel) {
  const FieldContext ctx(d);
  const GeneralizedForm g = parse_form(form, ctx);
  Strategy strategy = height ? Strategy{BoundedStrategy{Integer(*height)}} : Strategy{DefiniteStrategy{generalized_delta(g)}};
  return dump(report::universality(universality_report(ctx, g, Integer(trace_bound), strategy, {parallel})));
}

std::vector<FieldElement> indecomposables(long d, long trace_bound) {
  return indecomposables_up_to(FieldContext(d), Integer(trace_bound)).elements;
}

std::vector<FieldElement> decompose_element(long d, const py::object& target) {
  const FieldContext ctx(d);
  return decompose(ctx, as_element(target, ctx));
}

std::string counterexample(long trace_bound, int parallel) {
  return dump(report::counterexample(paperlab::verify_counterexample(Integer(trace_bound), {parallel})));
}

std::string theorem(long d, const std::string& form, long trace_bound, int parallel) {
  const FieldContext ctx(d);
  return dump(report::theorem(paperlab::theorem_pipeline(ctx, parse_form(form, ctx), Integer(trace_bound), {parallel})));
}

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream diag;
  const int code = cli::run_command(args, out, diag);
  return py::make_tuple(code, out.str(), diag.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact generalized quadratic forms over real quadratic fields";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  static py::exception<ParseError> parse(m, "ParseError", PyExc_ValueError);
  static py::exception<PreconditionError> pre(m, "PreconditionError", PyExc_ValueError);
  static py::exception<ContractFailure> contract(m, "ContractFailure", base.ptr());
  static py::exception<BudgetExhausted> budget(m, "BudgetExhausted", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::object inst = py::reinterpret_borrow<py::object>(parse)(py::str(e.what()));
      inst.attr("position") = e.position();
      PyErr_SetObject(parse.ptr(), inst.ptr());
    } catch (const PreconditionError& e) {
      py::set_error(pre, e.what());
    } catch (const ContractFailure& e) {
      py::set_error(contract, e.what());
    } catch (const BudgetExhausted& e) {
      py::set_error(budget, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<FieldElement>(m, "FieldElement")
      .def_property_readonly("a", [](const FieldElement& x) { return x.a().get_str(); })
      .def_property_readonly("b", [](const FieldElement& x) { return x.b().get_str(); })
      .def_property_readonly("d", &FieldElement::d)
      .def("conj", [](const FieldElement& x) { return conj(x); })
      .def("norm", [](const FieldElement& x) { return norm(x).get_str(); })
      .def("trace", [](const FieldElement& x) { return trace(x).get_str(); })
      .def("is_totally_positive", [](const FieldElement& x) { return is_totally_positive(x); })
      .def("is_integral", [](const FieldElement& x) { return is_integral(x); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__pow__", [](const FieldElement& x, long e) { return pow(x, e); })
      .def("__str__", [](const FieldElement& x) { return to_string(x); })
      .def("__repr__", [](const FieldElement& x) { return "FieldElement('" + to_string(x) + "')"; })
      .def("__hash__", [](const FieldElement& x) { return py::hash(py::str(to_string(x))); });

  py::class_<FieldContext>(m, "FieldContext")
      .def(py::init<std::int64_t>(), py::arg("d"))
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("d"), py::arg("unit_ceiling"))
      .def_property_readonly("d", &FieldContext::d)
      .def_property_readonly("fundamental_unit", &FieldContext::fundamental_unit)
      .def_property_readonly("omega", &FieldContext::omega)
      .def("element", [](const FieldContext& c, const std::string& text) { return parse_element(text, c); })
      .def("from_basis", [](const FieldContext& c, long p, long q) { return c.from_basis(p, q); })
      .def("totally_positive", [](const FieldContext& c, long t) {
        return enumerate_totally_positive(c, Integer(t)).elements;
      });

  m.def("classify", &classify, py::arg("d"), py::arg("form"));
  m.def("_delta", &delta, py::arg("d"), py::arg("form"));
  m.def("_represent", &represent, py::arg("d"), py::arg("form"), py::arg("target"), py::arg("height") = py::none(),
        py::arg("parallel") = 1);
  m.def("_universality", &universality, py::arg("d"), py::arg("form"), py::arg("trace_bound"),
        py::arg("height") = py::none(), py::arg("parallel") = 1);
  m.def("indecomposables", &indecomposables, py::arg("d"), py::arg("trace_bound"));
  m.def("decompose", &decompose_element, py::arg("d"), py::arg("target"));
  m.def("_counterexample", &counterexample, py::arg("trace_bound"), py::arg("parallel") = 1);
  m.def("_theorem", &theorem, py::arg("d"), py::arg("form"), py::arg("trace_bound"), py::arg("parallel") = 1);
  m.def("run", &run, py::arg("args"), "Run a CLI subcommand; returns (exit_code, json, summary).");
}
