#include "doctest.h"

#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"
#include "divide_forge/puiseux.hpp"
#include "divide_forge/relations.hpp"
#include "divide_forge/report.hpp"

using namespace divide_forge;

namespace {

std::string data(const std::string& name) { return std::string(DIVIDE_FORGE_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("analysis of synthesized divides matches the recursion") {
  for (const char* pairs : {"2,3;2,7", "2,3;3,11", "2,5"}) {
    CAPTURE(pairs);
    const auto seq = puiseux::validate(puiseux::parse_pairs(pairs));
    const auto cd = puiseux::cable_data(seq);
    // Through the file format, as `analyze` sees it.
    const Divide d = read_divide_string(write_divide(synth(seq)));
    const auto r = report::analyze(d);
    REQUIRE(r.contains("puiseux"));
    CHECK(r["puiseux"]["mu"] == static_cast<long long>(cd.mu));
    CHECK(r["puiseux"]["mu_matches_divide"] == true);
    CHECK(r["puiseux"]["reduction_count"] == static_cast<long long>(puiseux::reduction_count(seq)));
    CHECK(r["puiseux"]["bprime"].back() == static_cast<long long>(cd.bprime.back()));
    CHECK(r["divide"]["mu"] == static_cast<long long>(cd.mu));
    CHECK(r["divide"]["euler_ok"] == true);
    CHECK(r["divide"]["checkerboard_ok"] == true);
    CHECK(r["basis"].size() == std::size_t(cd.mu));
    CHECK(r["monodromy"]["degree"] == static_cast<long long>(cd.mu));
    CHECK(r["monodromy"]["preserves_form"] == true);
    CHECK(r["monodromy"]["det"] == 1);
    CHECK(r["order"]["order"].is_number());
  }
}

TEST_CASE("one-branch report values") {
  const auto r = report::analyze(read_divide_file(data("q.divide")));
  CHECK(r["order"]["order"] == 156);
  CHECK(r["puiseux"]["bprime"] == nlohmann::json::array({3, 9}));
  CHECK(r["puiseux"]["reduction_count"] == 2);
}

TEST_CASE("two-branch report flags infinite order") {
  const auto r = report::analyze(read_divide_file(data("two_branch.divide")));
  CHECK(r["divide"]["mu"] == 11);
  CHECK(r["order"]["exceeds_bound"] == true);
  CHECK(r["order"]["order"].is_null());
  CHECK_FALSE(r.contains("puiseux"));
  CHECK(r["monodromy"]["char_poly"] == nlohmann::json::array({-1, 1, 0, 0, 0, -2, 2, 0, 0, 0, -1, 1}));
}

TEST_CASE("empty divide report") {
  const auto r = report::analyze(diameter_divide());
  CHECK(r["divide"]["mu"] == 0);
  CHECK(r["basis"].empty());
  CHECK(r["monodromy"]["degree"] == 0);
  CHECK(r["order"]["order"] == 1);
  CHECK_FALSE(report::to_text(r).empty());
}

TEST_CASE("text rendering aligns keys") {
  nlohmann::json j;
  j["a"] = 1;
  j["long_key"] = "x";
  j["m"] = nlohmann::json::array({nlohmann::json::array({1, 2}), nlohmann::json::array({3, 4})});
  CHECK(report::to_text(j) == "a       : 1\nlong_key: x\nm:\n  1 2\n  3 4\n");
}

TEST_CASE("large integers are strings") {
  CHECK(report::integer_json(Integer(5)) == 5);
  const Integer big = Integer(1) << 80;
  CHECK(report::integer_json(big) == big.str());
}

TEST_CASE("relation sets") {
  CHECK_THROWS_AS(relations::evaluate("nope", IntMatrix::identity(1), {}), Error);
  CHECK_THROWS_AS(relations::two_branch(IntMatrix::identity(1), {}), Error);
}
