#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lagcob/curve_ops.hpp"
#include "lagcob/floer.hpp"
#include "lagcob/invariants.hpp"
#include "lagcob/render.hpp"
#include "lagcob/suites.hpp"
#include "lagcob/unobstruction.hpp"

namespace py = pybind11;
using namespace lagcob;

namespace {

py::dict class_dict(const CobordismClass& k) {
  py::dict d;
  d["hol"] = k.hol;
  d["h"] = k.h;
  d["m"] = k.m;
  d["modulus"] = k.modulus;
  return d;
}

py::dict point_dict(const IntersectionPoint& p) {
  py::dict d;
  d["x"] = p.pos.x;
  d["y"] = p.pos.y;
  d["degree"] = p.degree;
  return d;
}

py::object parse_json(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

}  // namespace

PYBIND11_MODULE(_lagcob, m) {
  m.doc() = "Curves on a closed surface: invariants, operations and Floer complexes";

  py::class_<SurfaceModel, std::shared_ptr<SurfaceModel>>(m, "Surface")
      .def_property_readonly("genus", &SurfaceModel::genus)
      .def_property_readonly("total_area", &SurfaceModel::total_area)
      .def_property_readonly("num_sides", &SurfaceModel::num_sides)
      .def("__repr__", [](const SurfaceModel& s) {
        return "Surface(genus=" + std::to_string(s.genus()) + ", total_area=" +
               std::to_string(s.total_area()) + ")";
      });

  m.def("build_surface",
        [](int genus, double area) { return std::const_pointer_cast<SurfaceModel>(build_surface(genus, area)); },
        py::arg("genus"), py::arg("total_area") = 1.0);

  auto model_of = [](const std::shared_ptr<SurfaceModel>& s) { return ModelPtr(s); };

  py::class_<CurveDiagram>(m, "Curve")
      .def_property_readonly("num_crossings", &CurveDiagram::num_crossings)
      .def_property_readonly("word", [](const CurveDiagram& c) { return format_word(c.letters()); })
      .def("reversed", &CurveDiagram::reversed)
      .def("to_json", [](const CurveDiagram& c) { return curve_to_json(c); })
      .def_static("from_json", [](const std::string& s) { return curve_from_json(s); })
      .def("__repr__", [](const CurveDiagram& c) {
        return "Curve(word='" + format_word(c.letters()) + "')";
      });

  m.def("from_word", [=](const std::string& w, const std::shared_ptr<SurfaceModel>& s) {
    return from_word(parse_word(w), model_of(s));
  });
  m.def("from_word_raw", [=](const std::string& w, const std::shared_ptr<SurfaceModel>& s) {
    return from_word_raw(parse_word(w), model_of(s));
  });
  m.def("kinked", [=](const std::string& w, const std::shared_ptr<SurfaceModel>& s) {
    return kinked(parse_word(w), model_of(s));
  });
  m.def("alpha", [=](const std::shared_ptr<SurfaceModel>& s, int i) { return lickorish_alpha(model_of(s), i); });
  m.def("beta", [=](const std::shared_ptr<SurfaceModel>& s, int i) { return lickorish_beta(model_of(s), i); });
  m.def("gamma", [=](const std::shared_ptr<SurfaceModel>& s, int i) { return lickorish_gamma(model_of(s), i); });
  m.def("torus_boundary", [=](const std::shared_ptr<SurfaceModel>& s) { return torus_boundary(model_of(s)); });
  m.def("small_circle", [=](const std::shared_ptr<SurfaceModel>& s) { return small_circle(model_of(s)); });

  m.def("homology_class", &homology_class);
  m.def("turning_number", &turning_number);
  m.def("maslov", &maslov);
  m.def("holonomy", &holonomy);
  m.def("class_of", [](const CurveDiagram& c) { return class_dict(class_of(c)); });
  m.def("self_intersections", [](const CurveDiagram& c) {
    py::list out;
    for (const auto& p : self_intersections(c)) out.append(point_dict(p));
    return out;
  });
  m.def("intersections", [](const CurveDiagram& a, const CurveDiagram& b) {
    py::list out;
    for (const auto& p : intersections(a, make_transverse(a, b))) out.append(point_dict(p));
    return out;
  });
  m.def("is_unobstructed", [](const CurveDiagram& c) { return is_unobstructed(c).unobstructed; });
  m.def("in_minimal_position", [](const CurveDiagram& a, const CurveDiagram& b) {
    return in_minimal_position(a, make_transverse(a, b));
  });

  m.def("surgery", [](const CurveDiagram& a, const CurveDiagram& b, int k) {
    auto b2 = make_transverse(a, b);
    auto pts = intersections(a, b2);
    if (k < 0 || k >= static_cast<int>(pts.size())) throw py::index_error("no such intersection point");
    return surgery(a, b2, pts[k]);
  });
  m.def("resolve", [](const CurveDiagram& c, int k) {
    auto pts = self_intersections(c);
    if (k < 0 || k >= static_cast<int>(pts.size())) throw py::index_error("no such double point");
    return resolve_double_point(c, pts[k]);
  });
  m.def("dehn_twist", &dehn_twist, py::arg("alpha"), py::arg("beta"));
  m.def("push_off", &push_off, py::arg("curve"), py::arg("x"));

  m.def("floer_rank", [](const CurveDiagram& a, const CurveDiagram& b) {
    return floer_rank(a, make_transverse(a, b));
  });
  m.def("floer_complex", [](const CurveDiagram& a, const CurveDiagram& b) {
    return parse_json(complex_to_json(build_complex(a, make_transverse(a, b))));
  });

  m.def("suite_names", &suite_names);
  m.def("run_suite",
        [](const std::string& name, int genus, std::uint64_t seed) {
          return parse_json(report_to_json(run_suite(name, genus, seed)));
        },
        py::arg("name"), py::arg("genus") = 2, py::arg("seed") = 7);
  m.def("render_svg",
        [](const std::vector<CurveDiagram>& curves, int size) {
          if (curves.empty()) throw py::value_error("need at least one curve");
          RenderOptions o;
          o.size = size;
          return render_svg(curves.front().model_ptr(), curves, o);
        },
        py::arg("curves"), py::arg("size") = 640);

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const std::out_of_range& e) {
      PyErr_SetString(PyExc_IndexError, e.what());
    }
  });
}
