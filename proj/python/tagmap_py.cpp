#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tagmap/mapping.hpp"

namespace py = pybind11;
using namespace tagmap;

namespace {

std::string join_diagnostics(const Diagnostics& diags, const std::string& origin) {
  std::string out;
  for (const Diagnostic& d : diags) {
    if (!out.empty()) out += "\n";
    out += format_diagnostic(d, origin);
  }
  return out;
}

CorpusFormat parse_format(const std::string& name) {
  if (name == "slash") return CorpusFormat::slash;
  if (name == "tsv") return CorpusFormat::tsv;
  throw py::value_error("format must be 'slash' or 'tsv'");
}

using MappingPtr = std::shared_ptr<Mapping>;

ResolvedQuery resolve_or_throw(const Mapping& m, const std::string& spec) {
  auto r = m.query(spec);
  if (!r.ok()) throw py::value_error(join_diagnostics(r.error(), "query"));
  return std::move(r).value();
}

}  // namespace

PYBIND11_MODULE(tagmap, m) {
  m.doc() = "Physical part-of-speech tagset mapping onto a typed standard tagset";

  py::class_<Mapping, MappingPtr>(m, "Mapping")
      .def_property_readonly("tags", [](const Mapping& self) { return self.rules().inventory(); })
      .def_property_readonly("class_count", [](const Mapping& self) { return self.graph().universe_size(); })
      .def_property_readonly("warning_count", &Mapping::warning_count)
      .def("warnings",
           [](const Mapping& self) {
             std::vector<std::string> out;
             for (const Diagnostic& d : self.rules().warnings()) out.push_back(format_diagnostic(d, "rules"));
             for (const Inconsistency& inc : self.mtree().diagnostics) out.push_back(render(inc));
             return out;
           })
      .def("query", [](const Mapping& self, const std::string& spec) { return render_query(resolve_or_throw(self, spec)); },
           py::arg("spec"), "Resolved tag patterns followed by WARN lines")
      .def("patterns",
           [](const Mapping& self, const std::string& spec) { return render_patterns(resolve_or_throw(self, spec)); },
           py::arg("spec"))
      .def("explain", [](const Mapping& self) { return render_explain(self.mtree()); })
      .def("standard_reading",
           [](const Mapping& self, const std::string& word, const std::string& tag) {
             auto r = standard_reading(self.rules(), word, tag);
             if (!r.ok()) throw py::key_error(r.error().message());
             const char* prov = r.value().provenance == Provenance::exception ? "exception" : "coverage";
             return py::make_tuple(r.value().spec->text(), prov);
           },
           py::arg("word"), py::arg("tag"))
      .def("retag",
           [](const Mapping& self, const std::string& text, const std::string& format) {
             std::istringstream in(text);
             std::ostringstream out;
             Diagnostics diags;
             retag_stream(in, out, self.rules(), parse_format(format), &diags);
             return out.str();
           },
           py::arg("text"), py::arg("format") = "slash");

  m.def(
      "compile",
      [](const std::string& tagset_source, const std::string& rules_source) {
        CompileOutcome out = compile_mapping(tagset_source, rules_source);
        if (!out.mapping) {
          std::string msg = join_diagnostics(out.tagset_diagnostics, "tagset");
          std::string rules = join_diagnostics(out.rules_diagnostics, "rules");
          if (!msg.empty() && !rules.empty()) msg += "\n";
          throw py::value_error(msg + rules);
        }
        return std::const_pointer_cast<Mapping>(out.mapping);
      },
      py::arg("tagset_source"), py::arg("rules_source"), "Compile a tagset definition and a rule file");

  m.def(
      "terminal_classes",
      [](const std::string& tagset_source) {
        auto g = parse_tagset_definition(tagset_source);
        if (!g.ok()) throw py::value_error(join_diagnostics(g.error(), "tagset"));
        std::vector<std::string> out;
        for (ClassId id = 0; id < g.value().universe_size(); ++id) out.push_back(g.value().render_class(id));
        return out;
      },
      py::arg("tagset_source"));

  m.def(
      "format_spec",
      [](const std::string& spec) {
        auto e = parse_spec(spec);
        if (!e.ok()) throw py::value_error(join_diagnostics(e.error(), "spec"));
        return to_bracketed(e.value());
      },
      py::arg("spec"), "Canonical rendering of a specification");
}
