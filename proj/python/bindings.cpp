#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gallai_lab/canonical.hpp"
#include "gallai_lab/constructions.hpp"
#include "gallai_lab/detectors.hpp"
#include "gallai_lab/gallai_structure.hpp"
#include "gallai_lab/search.hpp"

namespace py = pybind11;
using namespace gallai_lab;

namespace {

VertexSubset subset(const ColoredCompleteGraph& g, const std::vector<int>& members) {
  return VertexSubset(g.order(), members);
}

py::dict witness_dict(const Witness& w) {
  py::dict d;
  d["kind"] = std::string(to_string(w.kind));
  d["color"] = w.color ? py::cast(*w.color) : py::none();
  d["vertices"] = w.vertices;
  return d;
}

py::object maybe_witness(const std::optional<Witness>& w) {
  return w ? py::object(witness_dict(*w)) : py::none();
}

SimpleGraph simple_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  SimpleGraph h(n);
  for (auto [u, v] : edges) h.add_edge(u, v);
  return h;
}

SearchOptions options(int threads, std::optional<std::uint64_t> budget, const std::string& limits) {
  SearchOptions o;
  o.threads = threads;
  if (budget) o.budget = *budget;
  if (!limits.empty()) o.limits = SearchLimits::parse(limits);
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Edge-colored complete graphs, Gallai partitions and cycle Ramsey searches.";

  static py::exception<Error> error(m, "GallaiLabError", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<PreconditionError> precondition_error(m, "PreconditionError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::object exc = py::reinterpret_borrow<py::object>(parse_error.ptr())(e.what());
      exc.attr("line") = e.line();
      PyErr_SetObject(parse_error.ptr(), exc.ptr());
    } catch (const PreconditionError& e) {
      py::object exc = py::reinterpret_borrow<py::object>(precondition_error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("vertex") = e.vertex();
      exc.attr("degree") = e.degree();
      PyErr_SetObject(precondition_error.ptr(), exc.ptr());
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<ColoredCompleteGraph>(m, "Coloring")
      .def(py::init([](int n, int palette, const std::function<Color(int, int)>& color) {
             return ColoredCompleteGraph::from_function(n, palette, color);
           }),
           py::arg("n"), py::arg("palette"), py::arg("color"))
      .def_static("monochromatic", &ColoredCompleteGraph::monochromatic, py::arg("n"), py::arg("palette"),
                  py::arg("color"))
      .def_static("parse", &parse, py::arg("text"))
      .def_static("read", &read_coloring_file, py::arg("path"))
      .def_property_readonly("order", &ColoredCompleteGraph::order)
      .def_property_readonly("palette", &ColoredCompleteGraph::palette)
      .def("color", &ColoredCompleteGraph::color, py::arg("u"), py::arg("v"))
      .def("colors_used", &ColoredCompleteGraph::colors_used)
      .def("color_class_edges",
           [](const ColoredCompleteGraph& g, Color c) {
             std::vector<std::pair<int, int>> out;
             for (int u = 0; u < g.order(); ++u) {
               for_each_bit(g.neighbors(c, u) & ~low_mask(u + 1), [&](int v) { out.emplace_back(u, v); });
             }
             return out;
           },
           py::arg("color"))
      .def("induced", [](const ColoredCompleteGraph& g, const std::vector<int>& keep) { return induced(g, subset(g, keep)); },
           py::arg("vertices"))
      .def("with_palette", &ColoredCompleteGraph::with_palette, py::arg("palette"))
      .def("serialize", [](const ColoredCompleteGraph& g) { return serialize(g); })
      .def("__eq__", [](const ColoredCompleteGraph& a, const ColoredCompleteGraph& b) { return a == b; })
      .def("__repr__", [](const ColoredCompleteGraph& g) {
        return "<Coloring order=" + std::to_string(g.order()) + " palette=" + std::to_string(g.palette()) + ">";
      });

  m.def("substitute", [](const ColoredCompleteGraph& base, const std::vector<ColoredCompleteGraph>& parts) {
    return substitute(base, parts);
  }, py::arg("base"), py::arg("parts"));
  m.def("canonical_key", [](const ColoredCompleteGraph& g) { return py::bytes(canonical_form(g).key); }, py::arg("g"));

  // Detectors
  m.def("find_rainbow_triangle", [](const ColoredCompleteGraph& g) { return maybe_witness(find_rainbow_triangle(g)); },
        py::arg("g"));
  m.def("find_mono_cycle",
        [](const ColoredCompleteGraph& g, Color c, int length) { return maybe_witness(find_mono_cycle(g, c, length)); },
        py::arg("g"), py::arg("color"), py::arg("length"));
  m.def("find_mono_path",
        [](const ColoredCompleteGraph& g, Color c, int order) { return maybe_witness(find_mono_path(g, c, order)); },
        py::arg("g"), py::arg("color"), py::arg("order"));
  m.def("dirac_hamiltonian",
        [](int n, const std::vector<std::pair<int, int>>& edges) { return witness_dict(dirac_hamiltonian(simple_graph(n, edges))); },
        py::arg("n"), py::arg("edges"));
  m.def("erdos_gallai_path",
        [](int n, const std::vector<std::pair<int, int>>& edges, int k) {
          return maybe_witness(erdos_gallai_path(simple_graph(n, edges), k));
        },
        py::arg("n"), py::arg("edges"), py::arg("k"));
  m.def("colored_path_split",
        [](const ColoredCompleteGraph& g, Color red, Color blue, std::optional<std::vector<int>> host, int a, int b) {
          auto h = host ? subset(g, *host) : VertexSubset::all(g.order());
          return witness_dict(colored_path_split(g, red, blue, h, a, b));
        },
        py::arg("g"), py::arg("red"), py::arg("blue"), py::arg("host") = py::none(), py::arg("a"), py::arg("b"));

  // Gallai structure
  m.def("gallai_partition",
        [](const ColoredCompleteGraph& g, bool coarsest) {
          auto p = gallai_partition(g, coarsest);
          py::dict d;
          std::vector<std::vector<int>> parts;
          for (const auto& s : p.parts) parts.push_back(s.members());
          d["parts"] = parts;
          d["between_colors"] = p.between_colors;
          d["reduced"] = reduced_graph(g, p);
          d["part_colorings"] = part_colorings(g, p);
          return d;
        },
        py::arg("g"), py::arg("coarsest") = true);
  m.def("validate_partition",
        [](const ColoredCompleteGraph& g, const std::vector<std::vector<int>>& parts) {
          std::vector<VertexSubset> subsets;
          for (const auto& p : parts) subsets.push_back(subset(g, p));
          auto report = validate_partition(g, GallaiPartition::from_parts(g, subsets));
          return py::make_tuple(report.valid, report.reason);
        },
        py::arg("g"), py::arg("parts"));
  m.def("recolor_small_parts",
        [](const ColoredCompleteGraph& g, const std::vector<int>& a, const std::vector<std::vector<int>>& bs, int k, int mm) {
          std::vector<VertexSubset> b;
          for (const auto& s : bs) b.push_back(subset(g, s));
          return recolor_small_parts(g, subset(g, a), b, k, mm);
        },
        py::arg("g"), py::arg("a"), py::arg("bs"), py::arg("k"), py::arg("m"));

  // Constructions
  m.def("build_extremal_odd", [](int ell, int k) { return build_extremal_odd(ell, k).graph; }, py::arg("ell"), py::arg("k"));
  m.def("build_ramsey_cycle_lower", [](int mm, int n) { return build_ramsey_cycle_lower(mm, n).graph; }, py::arg("m"),
        py::arg("n"));
  m.def("random_gallai", &random_gallai, py::arg("n"), py::arg("k"), py::arg("seed") = 0);
  m.def("ramsey_formula", &ramsey_formula, py::arg("m"), py::arg("n"));
  m.def("even_cycle_bounds", &even_cycle_bounds, py::arg("n"), py::arg("k"));

  // Search
  py::class_<SearchReport>(m, "SearchReport")
      .def_property_readonly("family", [](const SearchReport& r) { return std::string(to_string(r.family)); })
      .def_property_readonly("params", [](const SearchReport& r) {
        py::dict d;
        for (const auto& [k, v] : r.params) d[py::str(k)] = v;
        return d;
      })
      .def_readonly("value", &SearchReport::value)
      .def_readonly("lower", &SearchReport::lower)
      .def_readonly("upper", &SearchReport::upper)
      .def_readonly("witness", &SearchReport::witness)
      .def_property_readonly("nodes", [](const SearchReport& r) { return r.stats.nodes; })
      .def("to_json", &SearchReport::to_json, py::arg("witness_file") = "")
      .def("same_result", &SearchReport::same_result, py::arg("other"))
      .def("verify", [](const SearchReport& r) {
        auto c = verify_certificate(r);
        return py::make_tuple(c.valid, c.reason);
      })
      .def("write", [](const SearchReport& r, const std::string& path) { write_report(r, path); }, py::arg("json_path"));
  m.def("read_report", &read_report, py::arg("json_path"));
  m.def("search_ramsey",
        [](int mm, int n, int n_max, int threads, std::optional<std::uint64_t> budget, const std::string& limits) {
          py::gil_scoped_release release;
          return search_ramsey(mm, n, n_max, options(threads, budget, limits));
        },
        py::arg("m"), py::arg("n"), py::arg("n_max"), py::arg("threads") = 1, py::arg("budget") = py::none(),
        py::arg("limits") = "");
  m.def("search_gallai_ramsey",
        [](int mm, int k, int n_max, int threads, std::optional<std::uint64_t> budget, const std::string& limits) {
          py::gil_scoped_release release;
          return search_gallai_ramsey(mm, k, n_max, options(threads, budget, limits));
        },
        py::arg("m"), py::arg("k"), py::arg("n_max"), py::arg("threads") = 1, py::arg("budget") = py::none(),
        py::arg("limits") = "");
}
