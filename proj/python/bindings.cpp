#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "proofforge/el_reasoner.hpp"
#include "proofforge/extract.hpp"
#include "proofforge/forgetting.hpp"
#include "proofforge/justifications.hpp"
#include "proofforge/methods.hpp"
#include "proofforge/parser.hpp"
#include "proofforge/tableau.hpp"

namespace py = pybind11;
using namespace proofforge;

namespace {

Signature namesOf(const std::vector<std::string>& names, const Ontology& o) {
  Signature sig = o.signature(), out;
  for (const auto& n : names) {
    if (sig.containsRole(n)) out.roles.insert(n);
    else out.concepts.insert(n);
  }
  return out;
}

// Accepts the file syntax or the display syntax.
Axiom goalOf(const std::string& text, const Ontology& o) {
  try {
    return parseAxiom(text);
  } catch (const ParseError&) {
    return parseDisplayAxiom(text, o.signature().roles);
  }
}

std::vector<std::string> printed(const std::vector<Axiom>& axs, bool ascii) {
  std::vector<std::string> out;
  for (const auto& a : axs) out.push_back(a.print(ascii ? PrintStyle::Ascii : PrintStyle::Unicode));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Proofs for description logic entailments";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NoProof>(m, "NoProof", base.ptr());
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", base.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());
  py::register_exception<Cancelled>(m, "Cancelled", base.ptr());

  py::class_<Axiom>(m, "Axiom")
      .def(py::init([](const std::string& text) { return parseAxiom(text); }))
      .def("ascii", [](const Axiom& a) { return a.print(PrintStyle::Ascii); })
      .def("__str__", [](const Axiom& a) { return a.print(PrintStyle::Unicode); })
      .def("__repr__", [](const Axiom& a) { return "Axiom(" + a.print(PrintStyle::Ascii) + ")"; })
      .def("__eq__", [](const Axiom& a, const Axiom& b) { return a == b; })
      .def("__hash__", [](const Axiom& a) { return std::hash<std::string>{}(a.key()); });

  py::class_<Ontology>(m, "Ontology")
      .def(py::init([](const std::string& text) { return parseOntology(text); }))
      .def("__len__", &Ontology::size)
      .def("__iter__", [](const Ontology& o) { return py::make_iterator(o.begin(), o.end()); }, py::keep_alive<0, 1>())
      .def_property_readonly("axioms", [](const Ontology& o) { return o.axioms(); })
      .def_property_readonly("concept_names", [](const Ontology& o) { return o.signature().concepts; })
      .def_property_readonly("role_names", [](const Ontology& o) { return o.signature().roles; })
      .def("entails", [](const Ontology& o, const std::string& goal) { return isEntailed(o, goalOf(goal, o)); })
      .def("classify", [](const Ontology& o, bool ascii) { return printed(classify(o), ascii); },
           py::arg("ascii") = false)
      .def(
          "justification",
          [](const Ontology& o, const std::string& goal, bool ascii) {
            return printed(computeJustification(o, goalOf(goal, o)).axioms, ascii);
          },
          py::arg("goal"), py::arg("ascii") = false)
      .def(
          "forget",
          [](const Ontology& o, const std::vector<std::string>& keep) {
            auto r = forgetSignature(o, namesOf(keep, o));
            return py::make_tuple(r.result, r.failedNames);
          },
          py::arg("keep"), "Returns the view over `keep` and the names that could not be forgotten.")
      .def(
          "explain",
          [](const Ontology& o, const std::string& goal, const std::string& method,
             const std::vector<std::string>& known, const std::optional<std::string>& measure) {
            auto mth = parseMethod(method);
            if (!mth) throw PreconditionViolation("unknown method " + method);
            ExplainRequest req(o, goalOf(goal, o), *mth);
            req.knownSig = namesOf(known, o);
            if (measure) {
              req.measure = Measure::byName(*measure);
              if (!req.measure) throw PreconditionViolation("unknown measure " + *measure);
            }
            ExplainResult r = [&] {
              py::gil_scoped_release release;
              return explain(req);
            }();
            return py::make_tuple(writeJson(r.proof), r.warnings);
          },
          py::arg("goal"), py::arg("method") = "elim-heur", py::arg("known") = std::vector<std::string>{},
          py::arg("measure") = py::none(), "Returns the proof as JSON text and a list of warnings.")
      .def(
          "check",
          [](const Ontology& o, const std::string& proofJson, const std::string& goal,
             const std::vector<std::string>& known, bool strict) {
            CheckOptions opts;
            opts.eliminationMinimality = strict;
            auto report = checkProof(readJson(proofJson, o.signature().roles), o, goalOf(goal, o), namesOf(known, o), opts);
            return py::make_tuple(report.valid(), report.valid() ? std::string() : report.summary());
          },
          py::arg("proof"), py::arg("goal"), py::arg("known") = std::vector<std::string>{},
          py::arg("strict") = false);

  m.def("methods", &methodNames);
}
