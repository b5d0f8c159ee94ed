#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "divide_forge/cycles.hpp"
#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"
#include "divide_forge/monodromy.hpp"
#include "divide_forge/puiseux.hpp"
#include "divide_forge/relations.hpp"
#include "divide_forge/render.hpp"
#include "divide_forge/report.hpp"

namespace df = divide_forge;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kEqual = 0;
constexpr int kUnequal = 1;
constexpr int kInputError = 2;

// Relative paths fall back to the seed directory, then to the shipped data directory.
std::string locate(const std::string& path) {
  if (path.empty() || fs::exists(path) || fs::path(path).is_absolute()) return path;
  if (const char* seed = std::getenv("DIVIDE_FORGE_SEED_DIR")) {
    const fs::path p = fs::path(seed) / path;
    if (fs::exists(p)) return p.string();
  }
  const fs::path p = fs::path(DIVIDE_FORGE_DATA_DIR) / path;
  if (fs::exists(p)) return p.string();
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw df::Error(df::ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw df::Error(df::ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

void print(const json& doc, bool as_json) {
  if (as_json) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << df::report::to_text(doc);
  }
}

json vector_json(const df::ClassVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(df::report::integer_json(x));
  return a;
}

struct SynthArgs {
  std::string pairs;
  std::string out;
  double eta = 0.0;
  bool json = false;
};

int cmd_synth(const SynthArgs& a) {
  const df::puiseux::PuiseuxSeq seq = df::puiseux::validate(df::puiseux::parse_pairs(a.pairs));
  df::StarParams params;
  params.eta = a.eta;
  const df::Divide d = df::synth(seq, params);
  if (!a.out.empty()) write_file(a.out, df::write_divide(d));
  const df::puiseux::CableData cd = df::puiseux::cable_data(seq);
  json r;
  json pairs = json::array();
  for (const auto& p : seq.pairs()) pairs.push_back({df::report::integer_json(p.a), df::report::integer_json(p.b)});
  r["pairs"] = pairs;
  r["lambda"] = vector_json(cd.lambda);
  r["delta"] = vector_json(cd.delta);
  r["bprime"] = vector_json(cd.bprime);
  r["mu"] = df::report::integer_json(cd.mu);
  r["reduction_count"] = df::report::integer_json(df::puiseux::reduction_count(seq));
  r["crossings"] = d.crossings.size();
  r["divide_mu"] = df::mu(d);
  if (!a.out.empty()) r["written"] = a.out;
  print(r, a.json);
  return kEqual;
}

struct AnalyzeArgs {
  std::string file;
  bool json = false;
  unsigned long long bound = 10000;
  bool matrices = true;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const df::Divide d = df::read_divide_file(locate(a.file));
  df::report::Options opt;
  opt.order_bound = a.bound;
  opt.matrices = a.matrices;
  print(df::report::analyze(d, opt), a.json);
  return kEqual;
}

struct VerifyArgs {
  std::string file;
  std::string lhs;
  std::string rhs;
  std::string classes;
  std::string compose = "right";
  bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
  std::optional<df::cycles::NamedClasses> fixture;
  std::string divide_path = a.file;
  if (!a.classes.empty()) {
    fixture = df::cycles::load_named_classes(locate(a.classes));
    if (divide_path.empty()) divide_path = fixture->divide_path;
  }
  if (divide_path.empty()) throw df::Error(df::ErrorCode::InvalidArgument, "no divide file given");
  const df::Divide d = df::read_divide_file(locate(divide_path));
  const df::cycles::CycleBasis b = df::cycles::basis(d);
  const df::IntMatrix S = df::cycles::intersection_form(d, b);
  const df::IntMatrix h = df::monodromy::monodromy_matrix(S, b);

  json r;
  bool ok = true;
  std::map<std::string, df::ClassVector> names;
  if (fixture) {
    for (const auto& [name, v] : fixture->classes)
      if (v.size() != b.size())
        throw df::Error(df::ErrorCode::LengthMismatch, "class " + name + " does not match the basis size");
    const auto res = df::relations::resolve(*fixture, b, h);
    if (res) {
      names = res->choice.classes;
      json signs = json::object();
      for (const auto& [n, s] : res->choice.signs) signs[n] = s;
      r["signs"] = signs;
      json checks = json::array();
      for (const auto& c : res->checks) checks.push_back({{"relation", c.name}, {"holds", c.holds}, {"detail", c.detail}});
      if (!checks.empty()) r["relations"] = checks;
    } else {
      names = fixture->classes;
      ok = false;
      json checks = json::array();
      for (const auto& c : df::relations::evaluate(fixture->relations, h, fixture->classes))
        checks.push_back({{"relation", c.name}, {"holds", c.holds}, {"detail", c.detail}});
      r["relations"] = checks;
      r["signs"] = "no assignment satisfies the relation set";
    }
  }
  df::monodromy::WordContext ctx{S, b, h, &names,
                                 a.compose == "left" ? df::monodromy::Compose::LeftFirst : df::monodromy::Compose::RightFirst};
  const df::monodromy::TwistWord lhs = df::monodromy::parse_word(a.lhs.empty() ? "" : slurp(locate(a.lhs)));
  const df::monodromy::TwistWord rhs = df::monodromy::parse_word(a.rhs.empty() ? "" : slurp(locate(a.rhs)));
  const df::monodromy::IdentityReport rep = df::monodromy::verify_identity(ctx, lhs, rhs);
  r["lhs"] = df::monodromy::format_word(lhs);
  r["rhs"] = df::monodromy::format_word(rhs);
  r["compose"] = a.compose == "left" ? "left-applied-first" : "right-applied-first";
  r["equal"] = rep.equal;
  r["scope"] = rep.scope;
  if (!rep.equal) {
    const std::size_t j = std::size_t(rep.first_column);
    r["first_differing_column"] = b.elements[j].name;
    df::ClassVector lc, rc;
    for (std::size_t i = 0; i < rep.lhs.rows(); ++i) {
      lc.push_back(rep.lhs(i, j));
      rc.push_back(rep.rhs(i, j));
    }
    r["lhs_column"] = vector_json(lc);
    r["rhs_column"] = vector_json(rc);
  }
  print(r, a.json);
  return rep.equal && ok ? kEqual : kUnequal;
}

struct RenderArgs {
  std::string file;
  std::string svg;
  std::vector<std::string> cycles;
  std::string classes;
  bool reduction = false;
  bool orbit = false;
  bool labels = false;
  bool no_signs = false;
  int width = 640;
  int height = 640;
};

int cmd_render(const RenderArgs& a) {
  std::optional<df::cycles::NamedClasses> fixture;
  std::string divide_path = a.file;
  if (!a.classes.empty()) {
    fixture = df::cycles::load_named_classes(locate(a.classes));
    if (divide_path.empty()) divide_path = fixture->divide_path;
  }
  const df::Divide d = df::read_divide_file(locate(divide_path));
  df::render::RenderOptions opt;
  opt.width = a.width;
  opt.height = a.height;
  opt.show_signs = !a.no_signs;
  opt.labels = a.labels;
  opt.cycles = a.cycles;
  opt.reduction = a.reduction;
  opt.orbit = a.orbit;
  if (fixture) {
    const df::cycles::CycleBasis b = df::cycles::basis(d);
    const df::IntMatrix S = df::cycles::intersection_form(d, b);
    const auto res = df::relations::resolve(*fixture, b, df::monodromy::monodromy_matrix(S, b));
    opt.classes = res ? res->choice.classes : fixture->classes;
  }
  const std::string svg = a.reduction ? df::render::render_reduction(d, opt) : df::render::render_divide(d, opt);
  if (a.svg.empty() || a.svg == "-") {
    std::cout << svg;
  } else {
    write_file(a.svg, svg);
  }
  return kEqual;
}

struct BlocksArgs {
  int p = 2;
  int q = 3;
  bool lissajous = false;
  int samples = 8;
  std::string svg;
  bool json = false;
};

int cmd_blocks(const BlocksArgs& a) {
  json r;
  r["p"] = a.p;
  r["q"] = a.q;
  std::string svg;
  if (a.lissajous) {
    const auto pat = df::blocks::lissajous_pattern(a.p, a.q);
    r["kind"] = "lissajous";
    r["components"] = pat.components.size();
    r["crossings"] = df::blocks::count_polyline_crossings(pat.components);
    if (!a.svg.empty()) svg = df::render::render_pattern(pat);
  } else {
    const auto pat = df::blocks::cheb_pattern(a.p, a.q, a.samples);
    r["kind"] = "chebyshev";
    r["components"] = pat.components.size();
    r["crossings"] = pat.crossings.size();
    json list = json::array();
    for (const auto& c : pat.crossings) list.push_back({{"m1", c.m1}, {"m2", c.m2}});
    r["crossing_params"] = list;
    r["param_denominator"] = a.p * a.q;
    if (!a.svg.empty()) svg = df::render::render_pattern(pat);
  }
  if (!a.svg.empty()) write_file(a.svg, svg);
  print(r, a.json);
  return kEqual;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divide-forge: divides of plane curve singularities, their vanishing cycles and monodromy"};
  app.require_subcommand(1);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "synthesize the divide of a Puiseux pair sequence");
  synth->add_option("--pairs", sa.pairs, "pairs as \"a1,b1;a2,b2;...\"")->required();
  synth->add_option("--out", sa.out, "divide file to write");
  synth->add_option("--eta", sa.eta, "band width (0 = automatic)");
  synth->add_flag("--json", sa.json);

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "basis, intersection form, monodromy and order of a divide");
  analyze->add_option("file", aa.file)->required();
  analyze->add_flag("--json", aa.json);
  analyze->add_option("--bound", aa.bound, "order search bound");
  analyze->add_flag("!--no-matrices", aa.matrices, "omit the form and monodromy matrices");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "compare two twist words on homology");
  verify->add_option("file", va.file, "divide file (defaults to the one named by --classes)");
  verify->add_option("--lhs", va.lhs, "word file (empty word when omitted)");
  verify->add_option("--rhs", va.rhs, "word file (empty word when omitted)");
  verify->add_option("--classes", va.classes, "class fixture");
  verify->add_option("--compose", va.compose, "which factor acts first")->check(CLI::IsMember({"left", "right"}));
  verify->add_flag("--json", va.json);

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "SVG figure of a divide");
  render->add_option("file", ra.file);
  render->add_option("--svg", ra.svg, "output file (stdout when omitted)");
  render->add_option("--cycles", ra.cycles, "basis names to overlay")->delimiter(',');
  render->add_option("--classes", ra.classes, "class fixture to overlay");
  render->add_flag("--reduction", ra.reduction);
  render->add_flag("--orbit", ra.orbit);
  render->add_flag("--labels", ra.labels);
  render->add_flag("--no-signs", ra.no_signs);
  render->add_option("--width", ra.width);
  render->add_option("--height", ra.height);

  BlocksArgs ba;
  auto* blocks = app.add_subcommand("blocks", "emit a single Chebyshev or Lissajous block");
  blocks->add_option("--p", ba.p)->required();
  blocks->add_option("--q", ba.q)->required();
  blocks->add_flag("--lissajous", ba.lissajous);
  blocks->add_option("--samples", ba.samples);
  blocks->add_option("--svg", ba.svg);
  blocks->add_flag("--json", ba.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*synth) return cmd_synth(sa);
    if (*analyze) return cmd_analyze(aa);
    if (*verify) return cmd_verify(va);
    if (*render) return cmd_render(ra);
    if (*blocks) return cmd_blocks(ba);
  } catch (const df::ValidationError& e) {
    for (const auto& issue : e.issues()) std::cerr << "error: " << df::to_string(issue.code) << ": " << issue.message << '\n';
    return kInputError;
  } catch (const df::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
