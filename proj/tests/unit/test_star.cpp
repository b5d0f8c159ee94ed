#include <random>
#include <set>

#include "doctest.h"

#include "../support/oracles.hpp"
#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"

using namespace divide_forge;

namespace {

void check_structure(const Divide& d) {
  CHECK(euler_characteristic(d) == 1 + d.components);
  if (d.is_signed()) CHECK(checkerboard_ok(d));
}

// T(n, x) by the cosine identity, for |x| <= 1.
double cheb_ref(int n, double x) { return std::cos(n * std::acos(x)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

Divide lissajous_divide(int p, int q) {
  std::vector<Branch> brs;
  for (const auto& c : blocks::lissajous_pattern(p, q).components) brs.push_back({BranchKind::Closed, c.points});
  return build_arrangement(brs);
}

}  // namespace

TEST_CASE("Chebyshev block over the diameter") {
  const Divide d = chebyshev_divide(2, 3);
  check_structure(d);
  CHECK(d.crossings.size() == 1);
  CHECK(d.interior_count() == 1);
  CHECK(mu(d) == 2);
  CHECK(core_linking(d) == 3);
  // The loop of (cos 2t, cos 3t) surrounds the box point (-1/4, 0).
  const double want = cheb_ref(3, -0.25) - cheb_ref(2, 0.0);
  for (const auto& r : d.regions)
    if (r.interior) CHECK(r.sign == (want > 0 ? 1 : -1));
}

TEST_CASE("Chebyshev blocks over a diameter have the block crossing count") {
  for (int p = 2; p <= 7; ++p) {
    for (int q = p + 1; q <= 9; ++q) {
      if (std::gcd(p, q) != 1) continue;
      CAPTURE(p);
      CAPTURE(q);
      const Divide d = chebyshev_divide(p, q);
      check_structure(d);
      CHECK((long long)(d.crossings.size()) == (p - 1) * (q - 1) / 2);
      CHECK(mu(d) == (p - 1) * (q - 1));
      CHECK(core_linking(d) == q);
      const Divide s = star_product(blocks::cheb_pattern(p, q), diameter_divide(), 0);
      CHECK(s.crossings.size() == d.crossings.size());
    }
  }
}

TEST_CASE("P(2,9) over P(2,3)") {
  const Divide base = chebyshev_divide(2, 3);
  const Divide q = star_product(blocks::cheb_pattern(2, 9), base, base.provenance->pattern_branches.front());
  check_structure(q);
  CHECK(q.crossings.size() == 8);
  CHECK(mu(q) == 16);
  CHECK(core_linking(q) == 13);
  int grid = 0, pattern = 0;
  std::set<std::pair<int, int>> cells;
  for (const auto& c : q.crossings) {
    if (c.tag.kind == TagKind::Grid) {
      ++grid;
      cells.insert({c.tag.i, c.tag.j});
    }
    if (c.tag.kind == TagKind::Pattern) ++pattern;
  }
  CHECK(grid == 4);
  CHECK(pattern == 4);
  CHECK(cells.size() == 4);
  REQUIRE(!q.provenance->pplus.empty());
  for (const auto& [f, g] : q.provenance->pplus) {
    CHECK(q.regions[std::size_t(f)].sign == 1);
    CHECK(q.provenance->base->regions[std::size_t(g)].sign == 1);
  }
}

TEST_CASE("P(3,14) over P(2,3)") {
  const Divide base = chebyshev_divide(2, 3);
  const Divide q = star_product(blocks::cheb_pattern(3, 14), base, base.provenance->pattern_branches.front());
  check_structure(q);
  CHECK(q.crossings.size() == 13 + 9);
  CHECK(core_linking(q) == 20);
}

TEST_CASE("star product argument errors") {
  const Divide loop = lissajous_divide(1, 1);
  CHECK(code_of([&] { star_product(blocks::cheb_pattern(2, 3), loop, 0); }) == ErrorCode::WrongBranchKind);
  CHECK(code_of([&] { star_product_lissajous(blocks::lissajous_pattern(3, 5), diameter_divide(), 0); }) ==
        ErrorCode::WrongBranchKind);
  CHECK(code_of([&] { star_product(blocks::cheb_pattern(2, 4), diameter_divide(), 0); }) == ErrorCode::NotCoprime);
  CHECK(code_of([&] { star_product(blocks::cheb_pattern(2, 3), diameter_divide(), 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Lissajous star products") {
  const Divide circle = lissajous_divide(1, 1);
  const Divide trivial = star_product_lissajous(blocks::lissajous_pattern(1, 1), circle, 0);
  check_structure(trivial);
  CHECK(trivial.crossings.empty());

  const Divide over_circle = star_product_lissajous(blocks::lissajous_pattern(3, 5), circle, 0);
  CHECK(over_circle.crossings.size() == 10);

  const Divide base = lissajous_divide(2, 4);
  CHECK(base.branches.size() == 2);
  CHECK(base.crossings.size() == 4);
  const Divide fig = star_product_lissajous(blocks::lissajous_pattern(3, 5), base, 0);
  check_structure(fig);
  // 10 pattern crossings plus 3 strands through each of the 4 crossings with the other loop.
  CHECK(fig.crossings.size() == 22);
}

TEST_CASE("synthesis matches the cabling recursion") {
  const Divide one = synth(puiseux::validate_ll({{2, 3}}));
  CHECK(one.crossings.size() == 1);
  CHECK(one.interior_count() == 1);

  const Divide q = synth(puiseux::validate_ll({{2, 3}, {2, 7}}));
  CHECK(q.crossings.size() == 8);
  CHECK(q.interior_count() == 8);

  const Divide r = synth(puiseux::validate_ll({{2, 3}, {3, 11}}));
  CHECK(r.crossings.size() == 22);
}

TEST_CASE("random sequences: crossings, mu and core linking per stage") {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 6; ++trial) {
    const auto seq = oracle::random_sequence(rng, trial % 2 == 0 ? 2 : 3);
    CAPTURE(seq.size());
    const auto stages = synth_stages(puiseux::validate_ll(seq));
    REQUIRE(stages.size() == seq.size());
    for (std::size_t k = 0; k < stages.size(); ++k) {
      const std::vector<std::pair<long long, long long>> head(seq.begin(), seq.begin() + long(k) + 1);
      const auto sg = oracle::semigroup(head);
      check_structure(stages[k]);
      CHECK(mu(stages[k]) == sg.conductor);
      CHECK(2 * (long long)(stages[k].crossings.size()) == sg.conductor);
      CHECK(core_linking(stages[k]) == sg.gens.back());
    }
  }
}

TEST_CASE("divide files round-trip") {
  const Divide q = synth(puiseux::validate_ll({{2, 3}, {2, 7}}));
  const std::string text = write_divide(q);
  const Divide back = read_divide_string(text);
  CHECK(back.crossings.size() == q.crossings.size());
  CHECK(back.regions.size() == q.regions.size());
  for (std::size_t f = 0; f < q.regions.size(); ++f) {
    const int g = back.locate(to_double(q.regions[f].sample));
    REQUIRE(g >= 0);
    CHECK(back.regions[std::size_t(g)].sign == q.regions[f].sign);
  }
  for (std::size_t c = 0; c < q.crossings.size(); ++c) {
    CHECK(back.crossings[c].tag.kind == q.crossings[c].tag.kind);
    CHECK(back.crossings[c].tag.index == q.crossings[c].tag.index);
    CHECK(back.crossings[c].tag.i == q.crossings[c].tag.i);
    CHECK(back.crossings[c].tag.j == q.crossings[c].tag.j);
  }
  REQUIRE(back.provenance);
  CHECK(back.provenance->pplus == q.provenance->pplus);
  CHECK(core_linking(back) == 13);
  CHECK(write_divide(back) == text);

  CHECK(code_of([] { read_divide_string("divide v2\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_divide_string("divide v1\nbranch open 0 1 2\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_divide_string("divide v1\nbranch open -1 0 1/0 0\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("pair intersections") {
  const Divide h = build_arrangement({{BranchKind::Open, {{Rational(-1), Rational(0)}, {Rational(1), Rational(0)}}}});
  const Divide v = build_arrangement({{BranchKind::Open, {{Rational(0), Rational(-1)}, {Rational(0), Rational(1)}}}});
  const Divide far = build_arrangement(
      {{BranchKind::Open, {{Rational(3, 5), Rational(4, 5)}, {Rational(4, 5), Rational(3, 5)}}}});
  CHECK(pair_intersections(h, v) == 1);
  CHECK(pair_intersections(h, far) == 0);
  CHECK(code_of([&] { core_linking(h); }) == ErrorCode::NoCore);
}
