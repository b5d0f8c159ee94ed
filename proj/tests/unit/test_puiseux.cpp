#include "doctest.h"

#include <random>

#include "../support/oracles.hpp"
#include "divide_forge/error.hpp"
#include "divide_forge/puiseux.hpp"

using namespace divide_forge;
using namespace divide_forge::puiseux;

namespace {

std::vector<long long> to_ll(const std::vector<Integer>& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(x.convert_to<long long>());
  return out;
}

std::vector<ErrorCode> codes_of(const std::vector<std::pair<long long, long long>>& raw) {
  try {
    validate_ll(raw);
  } catch (const ValidationError& e) {
    std::vector<ErrorCode> codes;
    for (const auto& issue : e.issues()) codes.push_back(issue.code);
    return codes;
  }
  return {};
}

}  // namespace

TEST_CASE("cable data of the two worked examples") {
  const auto a = cable_data(validate({{2, 3}, {2, 7}}));
  CHECK(to_ll(a.lambda) == std::vector<long long>{3, 13});
  CHECK(to_ll(a.bprime) == std::vector<long long>{3, 9});
  CHECK(a.mu == 16);

  const auto b = cable_data(validate({{2, 3}, {3, 11}}));
  CHECK(to_ll(b.lambda) == std::vector<long long>{3, 20});
  CHECK(to_ll(b.bprime) == std::vector<long long>{3, 14});
  CHECK(to_ll(b.delta) == std::vector<long long>{1, 22});
  CHECK(to_ll(b.mult) == std::vector<long long>{2, 6});
}

TEST_CASE("single pair is a torus knot") {
  const auto d = cable_data(validate({{2, 3}}));
  CHECK(d.mu == 2);
  const auto e = cable_data(validate({{7, 5 + 7}}));
  CHECK(e.mu == 6 * 11);
}

TEST_CASE("validation collects every violated condition") {
  CHECK(codes_of({{2, 4}}) == std::vector<ErrorCode>{ErrorCode::NotCoprime});
  CHECK(codes_of({{3, 2}}) == std::vector<ErrorCode>{ErrorCode::BadPair});
  CHECK(codes_of({{1, 2}}) == std::vector<ErrorCode>{ErrorCode::BadPair});
  CHECK(codes_of({{2, 3}, {2, 5}}) == std::vector<ErrorCode>{ErrorCode::ExponentOrder});
  // b_2 = 6 fails the order condition and shares a factor with a_1 a_2 = 4.
  CHECK(codes_of({{2, 3}, {2, 6}}) == std::vector<ErrorCode>{ErrorCode::ExponentOrder, ErrorCode::NotCoprime});
  CHECK(codes_of({{2, 3}, {2, 7}}).empty());
  CHECK_THROWS_AS(validate(std::vector<Pair>{}), ValidationError);
}

TEST_CASE("divide_spec lists blocks outermost first") {
  const auto blocks = divide_spec(validate({{2, 3}, {2, 7}, {3, 29}}));
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0].p == 3);
  CHECK(blocks[1].p == 2);
  CHECK(blocks[1].q == 9);
  CHECK(blocks[2].p == 2);
  CHECK(blocks[2].q == 3);
}

TEST_CASE("reduction count") {
  CHECK(reduction_count(validate({{2, 3}})) == 0);
  CHECK(reduction_count(validate({{2, 3}, {2, 7}})) == 2);
  CHECK(reduction_count(validate({{2, 3}, {2, 7}, {3, 29}})) == 3 * 2 + 2);
}

TEST_CASE("parse_pairs") {
  const auto v = parse_pairs("2,3; 2,7");
  REQUIRE(v.size() == 2);
  CHECK(v[1].b == 7);
  CHECK_THROWS_AS(parse_pairs("2-3"), Error);
  CHECK_THROWS_AS(parse_pairs("x,3"), Error);
  CHECK_THROWS_AS(parse_pairs(""), Error);
}

TEST_CASE("recursions agree with the semigroup oracle") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const int len = 1 + trial % 3;
    const auto raw = oracle::random_sequence(rng, len);
    const auto data = cable_data(validate_ll(raw));
    const auto sg = oracle::semigroup(raw);
    CHECK(data.mu == sg.conductor);
    // lambda_k is the last semigroup generator of the truncated sequence.
    for (int k = 1; k <= len; ++k) {
      const std::vector<std::pair<long long, long long>> head(raw.begin(), raw.begin() + k);
      CHECK(data.lambda[static_cast<std::size_t>(k - 1)] == oracle::semigroup(head).gens.back());
    }
  }
}
