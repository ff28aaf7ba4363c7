#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "abeltoric/catalog.hpp"
#include "abeltoric/certificate.hpp"
#include "abeltoric/chow.hpp"
#include "abeltoric/classify.hpp"
#include "abeltoric/error.hpp"
#include "abeltoric/fan.hpp"
#include "abeltoric/obstruction.hpp"
#include "abeltoric/picard.hpp"
#include "abeltoric/replay.hpp"

namespace py = pybind11;
using namespace abeltoric;

namespace {

// "builtin:LABEL" or a fan file path. Returns the fan and its basis hint.
CatalogEntry resolve(const std::string& ref) {
  const std::string prefix = "builtin:";
  if (ref.rfind(prefix, 0) == 0) {
    auto e = builtin_entry(ref.substr(prefix.size()));
    if (!e) throw Error(ErrorKind::ParseError, "unknown builtin " + ref.substr(prefix.size()));
    return *e;
  }
  FanFile f = load_fan_file(ref);
  Fan fan = to_fan(f);
  return CatalogEntry{f.type.empty() ? f.name : f.type, f.provenance, f, fan};
}

std::vector<long> to_longs(const std::vector<Integer>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(static_cast<long>(to_int64(x)));
  return out;
}

Mode parse_mode(const std::string& m) {
  if (m == "finite") return Mode::FiniteMorphism;
  if (m == "embedding") return Mode::Embedding;
  throw py::value_error("mode must be 'finite' or 'embedding'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact toric 4-fold kernel and abelian-surface obstruction certifier";

  static py::exception<Error> error_type(m, "AbeltoricError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, (std::string(error_kind_name(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Fan>(m, "Fan")
      .def_property_readonly("name", &Fan::name)
      .def_property_readonly("size", &Fan::size)
      .def_property_readonly("rays",
                             [](const Fan& f) {
                               std::vector<std::vector<long>> out;
                               for (const auto& r : f.rays())
                                 out.push_back(to_longs({r.coords.begin(), r.coords.end()}));
                               return out;
                             })
      .def_property_readonly("max_cones", &Fan::max_cones)
      .def("__repr__", [](const Fan& f) { return "<Fan " + f.name() + " with " + std::to_string(f.size()) + " rays>"; });

  m.def("builtin_labels", [] {
    std::vector<std::string> out;
    for (const auto& e : builtin_catalog()) out.push_back(e.type_label);
    return out;
  });

  m.def("load_fan", [](const std::string& ref) { return resolve(ref).fan; }, py::arg("ref"),
        "Fan from a file path or 'builtin:LABEL'.");

  m.def("validate", [](const Fan& f) {
    auto r = validate(f);
    py::dict d;
    d["rays_primitive"] = r.rays_primitive;
    d["smooth"] = r.smooth;
    d["complete"] = r.complete;
    d["problems"] = r.problems;
    return d;
  });

  m.def("primitive_collections", [](const Fan& f) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& pc : primitive_collections(f)) out.push_back(pc.indices);
    return out;
  });

  m.def("intersection_number",
        [](const Fan& f, std::array<std::size_t, 4> idx) { return to_int64(intersection_number(f, idx)); },
        py::arg("fan"), py::arg("indices"), "0-based ray indices.");

  m.def("basis_relations",
        [](const Fan& f, std::array<std::size_t, 4> basis) {
          std::vector<std::vector<long>> out;
          for (const auto& r : basis_relations(f, basis)) out.push_back(to_longs(r));
          return out;
        },
        py::arg("fan"), py::arg("basis"));

  m.def("star_subdivision", [](const Fan& f, std::size_t i, std::size_t j) { return star_subdivision(f, {i, j}); });

  m.def("certify",
        [](const std::string& ref, const std::string& mode) {
          const CatalogEntry e = resolve(ref);
          CertifyOptions opts;
          opts.basis_hint = e.file.chow_basis_hint;
          Verdict v = certify(e.fan, parse_mode(mode), opts);
          py::dict d;
          d["status"] = status_name(v.status);
          d["rule"] = rule_name(v.rule);
          d["summary"] = v.summary();
          d["certificate"] = certificate_json(e.fan, v);
          return d;
        },
        py::arg("ref"), py::arg("mode") = "finite");

  m.def("replay", [](const std::string& text) {
    auto r = replay::check(text);
    py::dict d;
    d["ok"] = r.ok;
    d["steps_checked"] = r.steps_checked;
    d["errors"] = r.errors;
    return d;
  });

  m.def("classify_csv",
        [](const std::vector<std::string>& refs, unsigned jobs) {
          std::vector<CatalogEntry> entries;
          for (const auto& s : refs) entries.push_back(resolve(s));
          py::gil_scoped_release release;
          return rows_to_csv(classify(entries, ClassifyOptions{jobs, std::nullopt}));
        },
        py::arg("refs"), py::arg("jobs") = 1);
}
