#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "divide_forge/blocks.hpp"
#include "divide_forge/cycles.hpp"
#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"
#include "divide_forge/monodromy.hpp"
#include "divide_forge/puiseux.hpp"
#include "divide_forge/relations.hpp"
#include "divide_forge/render.hpp"
#include "divide_forge/report.hpp"

namespace py = pybind11;
namespace df = divide_forge;
using nlohmann::json;

namespace {

df::puiseux::PuiseuxSeq sequence(const std::vector<std::pair<long long, long long>>& pairs) {
  return df::puiseux::validate_ll(pairs);
}

std::string synth(const std::vector<std::pair<long long, long long>>& pairs, double eta) {
  df::StarParams params;
  params.eta = eta;
  return df::write_divide(df::synth(sequence(pairs), params));
}

std::string cable_data(const std::vector<std::pair<long long, long long>>& pairs) {
  const auto seq = sequence(pairs);
  const auto cd = df::puiseux::cable_data(seq);
  auto vec = [](const std::vector<df::Integer>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(df::report::integer_json(x));
    return a;
  };
  json r;
  r["lambda"] = vec(cd.lambda);
  r["delta"] = vec(cd.delta);
  r["bprime"] = vec(cd.bprime);
  r["multiplicity"] = vec(cd.mult);
  r["mu"] = df::report::integer_json(cd.mu);
  r["reduction_count"] = df::report::integer_json(df::puiseux::reduction_count(seq));
  return r.dump();
}

std::string analyze(const std::string& divide_text, unsigned long long bound, bool matrices) {
  df::report::Options opt;
  opt.order_bound = bound;
  opt.matrices = matrices;
  return df::report::analyze(df::read_divide_string(divide_text), opt).dump();
}

std::string verify(const std::string& divide_text, const std::string& lhs, const std::string& rhs,
                   const std::string& classes_text, const std::string& compose) {
  const df::Divide d = df::read_divide_string(divide_text);
  const auto b = df::cycles::basis(d);
  const auto S = df::cycles::intersection_form(d, b);
  const auto h = df::monodromy::monodromy_matrix(S, b);
  std::map<std::string, df::ClassVector> names;
  json r;
  if (!classes_text.empty()) {
    const auto fx = df::cycles::parse_named_classes(classes_text, b.size());
    const auto res = df::relations::resolve(fx, b, h);
    names = res ? res->choice.classes : fx.classes;
    r["relations_hold"] = res.has_value();
  }
  df::monodromy::WordContext ctx{S, b, h, &names,
                                 compose == "left" ? df::monodromy::Compose::LeftFirst : df::monodromy::Compose::RightFirst};
  const auto rep = df::monodromy::verify_identity(ctx, df::monodromy::parse_word(lhs), df::monodromy::parse_word(rhs));
  r["equal"] = rep.equal;
  r["first_differing_column"] = rep.equal ? json(nullptr) : json(b.elements[std::size_t(rep.first_column)].name);
  r["scope"] = rep.scope;
  return r.dump();
}

std::string render(const std::string& divide_text, bool reduction, bool orbit, bool labels, bool show_signs,
                   const std::vector<std::string>& cycles, int width, int height) {
  df::render::RenderOptions opt;
  opt.reduction = reduction;
  opt.orbit = orbit;
  opt.labels = labels;
  opt.show_signs = show_signs;
  opt.cycles = cycles;
  opt.width = width;
  opt.height = height;
  return df::render::render_divide(df::read_divide_string(divide_text), opt);
}

std::vector<std::pair<long long, long long>> cheb_crossings(int p, int q) {
  std::vector<std::pair<long long, long long>> out;
  for (const auto& c : df::blocks::cheb_crossings(p, q)) out.push_back({c.m1, c.m2});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Divides of plane curve singularities: synthesis, vanishing cycles, monodromy";
  static py::exception<df::Error> error(m, "DivideForgeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const df::Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });
  m.def("synth", &synth, py::arg("pairs"), py::arg("eta") = 0.0);
  m.def("cable_data", &cable_data, py::arg("pairs"));
  m.def("analyze", &analyze, py::arg("divide"), py::arg("bound") = 10000, py::arg("matrices") = true);
  m.def("verify", &verify, py::arg("divide"), py::arg("lhs"), py::arg("rhs") = "", py::arg("classes") = "",
        py::arg("compose") = "right");
  m.def("render", &render, py::arg("divide"), py::arg("reduction") = false, py::arg("orbit") = false,
        py::arg("labels") = false, py::arg("show_signs") = true, py::arg("cycles") = std::vector<std::string>{},
        py::arg("width") = 640, py::arg("height") = 640);
  m.def("cheb_crossings", &cheb_crossings, py::arg("p"), py::arg("q"));
}
