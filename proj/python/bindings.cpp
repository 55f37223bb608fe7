#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sahlkracht/correspond.hpp"
#include "sahlkracht/error.hpp"
#include "sahlkracht/parser.hpp"
#include "sahlkracht/safety.hpp"
#include "sahlkracht/semantics.hpp"
#include "sahlkracht/synthesize.hpp"
#include "sahlkracht/tree_json.hpp"

namespace py = pybind11;
using namespace sahlkracht;

namespace {

std::optional<Budget> budget(std::optional<int> max_worlds, std::optional<std::size_t> samples,
                             std::optional<std::uint64_t> seed, std::size_t relations) {
  if (!max_worlds && !samples && !seed) return std::nullopt;
  Budget b = Budget::standard(std::max<std::size_t>(relations, 1));
  if (max_worlds) b.exhaustive_worlds = *max_worlds;
  if (samples) b.samples = *samples;
  if (seed) b.seed = *seed;
  return b;
}

template <class T>
void tree_class(py::module_& m, const char* name) {
  py::class_<T>(m, name)
      .def("__str__", [](const T& t) { return print(t); })
      .def("__repr__", [name](const T& t) { return std::string(name) + "('" + print(t) + "')"; })
      .def("__eq__", [](const T& a, const T& b) { return a == b; })
      .def("__hash__", [](const T& t) { return py::hash(py::str(print(t))); })
      .def("to_json", [](const T& t) { return to_json(t).dump(); });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sahlqvist/Kracht correspondence engine";

  auto base = py::register_exception<Error>(m, "SahlkrachtError");
  py::register_exception<SyntaxError>(m, "FormulaSyntaxError", base.ptr());
  py::register_exception<NotSahlqvist>(m, "NotSahlqvist", base.ptr());
  py::register_exception<NotKracht>(m, "NotKracht", base.ptr());
  py::register_exception<VerificationFailed>(m, "VerificationFailed", base.ptr());

  tree_class<Modal>(m, "Modal");
  tree_class<Expr>(m, "Expr");
  tree_class<Fo>(m, "Fo");

  m.def("parse_modal", [](const std::string& s) { return parse_modal(s); });
  m.def("parse_expr", [](const std::string& s) { return parse_expr(s); });
  m.def("parse_fo", [](const std::string& s) { return parse_fo(s); });

  m.def("safety_status", [](const Expr& e) { return to_string(safety_status(e)); });
  m.def("analyze_safety", [](const Expr& e) { return to_json(analyze_safety(e)).dump(); });

  m.def("classify_sahlqvist", [](const Modal& f) {
    auto c = classify_sahlqvist(f);
    nlohmann::json j{{"ok", c.ok}, {"reason", c.reason}};
    j["decomposition"] = c.ok ? to_json(*c.decomposition) : nlohmann::json(nullptr);
    return j.dump();
  });
  m.def("correspond", [](const Modal& f) { return correspond(f); });

  m.def("check_kracht", [](const Fo& f) {
    KrachtVerdict v = check_kracht(f);
    return py::make_tuple(v.kracht, v.reasons);
  });
  m.def("normalize_kracht", &normalize_kracht);
  m.def("quantifier_eliminate", &quantifier_eliminate);
  m.def(
      "synthesize",
      [](const Fo& f, bool verify) {
        SynthesisOptions o;
        o.verify = verify;
        return synthesize(f, o);
      },
      py::arg("alpha"), py::arg("verify") = false);

  m.def(
      "check_correspondence",
      [](const Modal& phi, const Fo& alpha, std::optional<int> max_worlds,
         std::optional<std::size_t> samples, std::optional<std::uint64_t> seed) {
        std::set<Label> ls;
        for (Label l : labels_of(phi)) ls.insert(l);
        for (Label l : labels_of(alpha)) ls.insert(l);
        py::gil_scoped_release release;
        return to_json(check_correspondence(phi, alpha, budget(max_worlds, samples, seed, ls.size()))).dump();
      },
      py::arg("phi"), py::arg("alpha"), py::arg("max_worlds") = py::none(),
      py::arg("samples") = py::none(), py::arg("seed") = py::none());
}
