#include <functional>
#include <regex>
#include <set>

#include "doctest.h"

#include "divide_forge/cycles.hpp"
#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"
#include "divide_forge/render.hpp"

using namespace divide_forge;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

std::string data(const std::string& name) { return std::string(DIVIDE_FORGE_DATA_DIR) + "/" + name; }

std::set<std::string> ids_with_prefix(const std::string& svg, const std::string& prefix) {
  std::set<std::string> out;
  const std::regex re("id=\"(" + prefix + "[0-9]+)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) out.insert((*it)[1]);
  return out;
}

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("divide figure carries one id per crossing and interior region") {
  const Divide d = read_divide_file(data("q.divide"));
  const std::string svg = render::render_divide(d);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(count(svg, "<svg") == 1);
  CHECK(count(svg, "</svg>") == 1);
  CHECK(ids_with_prefix(svg, "crossing-c").size() == 8);
  std::set<std::string> want;
  for (std::size_t r = 0; r < d.regions.size(); ++r)
    if (d.regions[r].interior) want.insert("region-r" + std::to_string(r));
  CHECK(ids_with_prefix(svg, "region-r") == want);
  // Every id is a basis name.
  const auto b = cycles::basis(d);
  for (const auto& id : ids_with_prefix(svg, "crossing-c")) CHECK(b.index_of(id.substr(9)) >= 0);
  for (const auto& id : ids_with_prefix(svg, "region-r")) CHECK(b.index_of(id.substr(7)) >= 0);
}

TEST_CASE("rendering is deterministic and leaves the divide untouched") {
  const Divide d = read_divide_file(data("two_branch.divide"));
  const std::string before = write_divide(d);
  render::RenderOptions opt;
  opt.labels = true;
  opt.cycles = {"r2", "c0", "r4"};
  const std::string a = render::render_divide(d, opt);
  const std::string b = render::render_divide(read_divide_file(data("two_branch.divide")), opt);
  CHECK(a == b);
  CHECK(write_divide(d) == before);
  CHECK(a.find("id=\"cycle-r2\"") != std::string::npos);
  CHECK(a.find("id=\"cycle-c0\"") != std::string::npos);
}

TEST_CASE("empty divide renders the disk only") {
  const Divide d = build_arrangement({});
  const std::string svg = render::render_divide(d);
  CHECK(svg.find("id=\"disk\"") != std::string::npos);
  CHECK(ids_with_prefix(svg, "crossing-c").empty());
  CHECK(count(svg, "<path") == 0);
}

TEST_CASE("reduction overlay") {
  const Divide d = read_divide_file(data("q.divide"));
  render::RenderOptions opt;
  opt.orbit = true;
  const std::string svg = render::render_reduction(d, opt);
  CHECK(svg.find("id=\"reduction\"") != std::string::npos);
  CHECK(svg.find("id=\"orbit\"") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(ids_with_prefix(svg, "bridge-c").size() == 1);
  CHECK(code_of([] { render::render_reduction(build_arrangement({})); }) == ErrorCode::NoProvenance);
}

TEST_CASE("render errors") {
  const Divide d = chebyshev_divide(2, 3);
  render::RenderOptions opt;
  opt.cycles = {"r99"};
  CHECK(code_of([&] { render::render_divide(d, opt); }) == ErrorCode::UnknownName);
  opt.cycles.clear();
  opt.width = 0;
  CHECK(code_of([&] { render::render_divide(d, opt); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("block figure") {
  const std::string svg = render::render_pattern(blocks::cheb_pattern(7, 5));
  CHECK(ids_with_prefix(svg, "crossing-c").size() == 12);
  CHECK(svg.find("id=\"box\"") != std::string::npos);
  CHECK(svg == render::render_pattern(blocks::cheb_pattern(7, 5)));
  const std::string lj = render::render_pattern(blocks::lissajous_pattern(3, 5));
  CHECK(lj.find("annulus-outer") != std::string::npos);
}
