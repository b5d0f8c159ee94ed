#include "doctest.h"

#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"

using namespace divide_forge;

namespace {

Point P(long xn, long xd, long yn, long yd) {
  Point p{Rational(xn, xd), Rational(yn, yd)};
  p.x.canonicalize();
  p.y.canonicalize();
  return p;
}

Branch open_branch(std::vector<Point> pts) { return {BranchKind::Open, std::move(pts)}; }

ErrorCode code_of(std::vector<Branch> brs) {
  try {
    build_arrangement(std::move(brs));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("two diameters") {
  const Divide d = build_arrangement({open_branch({P(-1, 1, 0, 1), P(1, 1, 0, 1)}), open_branch({P(0, 1, -1, 1), P(0, 1, 1, 1)})});
  CHECK(d.crossings.size() == 1);
  CHECK(d.regions.size() == 4);
  CHECK(d.interior_count() == 0);
  CHECK(euler_characteristic(d) == 2);
  CHECK(mu(d) == 1);
  for (const auto& r : d.regions) {
    CHECK(r.corners.size() == 1);
    CHECK(r.neighbors.size() == 2);
    CHECK(r.area == doctest::Approx(3.14159265 / 4).epsilon(0.01));
  }
  const Divide s = assign_signs(d, {{P(1, 2, 1, 2), 1}});
  CHECK(checkerboard_ok(s));
  CHECK(s.regions[std::size_t(s.locate({-0.5, -0.5}))].sign == 1);
  CHECK(s.regions[std::size_t(s.locate({-0.5, 0.5}))].sign == -1);
}

TEST_CASE("flipping the anchor flips every sign") {
  const Divide d = build_arrangement({open_branch({P(-1, 1, 0, 1), P(1, 1, 0, 1)}), open_branch({P(0, 1, -1, 1), P(0, 1, 1, 1)})});
  const Divide a = assign_signs(d, {{P(1, 2, 1, 2), 1}});
  const Divide b = assign_signs(d, {{P(1, 2, 1, 2), -1}});
  for (std::size_t f = 0; f < d.regions.size(); ++f) CHECK(a.regions[f].sign == -b.regions[f].sign);
  CHECK_THROWS_AS(assign_signs(d, {{P(1, 2, 1, 2), 1}, {P(-1, 2, 1, 2), 1}}), Error);
}

TEST_CASE("empty and closed configurations") {
  const Divide empty = build_arrangement({});
  CHECK(empty.regions.size() == 1);
  CHECK(mu(empty) == 0);
  CHECK(euler_characteristic(empty) == 2);

  // A square loop floating in the disk.
  const Divide loop = build_arrangement(
      {{BranchKind::Closed, {P(-1, 2, -1, 2), P(1, 2, -1, 2), P(1, 2, 1, 2), P(-1, 2, 1, 2)}}});
  CHECK(loop.regions.size() == 2);
  CHECK(loop.interior_count() == 1);
  CHECK(loop.components == 2);
  CHECK(euler_characteristic(loop) == 3);
  const int inner = loop.locate({0.0, 0.0});
  const int outer = loop.locate({0.0, 0.9});
  REQUIRE(inner >= 0);
  REQUIRE(outer >= 0);
  CHECK(inner != outer);
  CHECK(loop.regions[std::size_t(outer)].cycles.size() == 2);
  CHECK(loop.regions[std::size_t(inner)].area == doctest::Approx(1.0));
}

TEST_CASE("figure eight loop has two interior lobes") {
  const Divide d = build_arrangement(
      {{BranchKind::Closed, {P(-1, 2, -1, 4), P(1, 2, 1, 4), P(1, 2, -1, 4), P(-1, 2, 1, 4)}}});
  CHECK(d.crossings.size() == 1);
  CHECK(d.interior_count() == 2);
  CHECK(mu(d) == 3);
  const Divide s = assign_signs(d, {{P(0, 1, 9, 10), 1}});
  CHECK(checkerboard_ok(s));
}

TEST_CASE("genericity violations") {
  // Shared endpoint in the open disk.
  CHECK(code_of({open_branch({P(-1, 1, 0, 1), P(0, 1, 0, 1)}), open_branch({P(0, 1, 0, 1), P(1, 1, 0, 1)})}) ==
        ErrorCode::NotGeneric);
  CHECK(code_of({open_branch({P(-1, 1, 0, 1), P(1, 2, 0, 1)})}) == ErrorCode::EndpointOnInterior);
  // Overlapping collinear pieces.
  CHECK(code_of({open_branch({P(-1, 1, 0, 1), P(1, 1, 0, 1)}), open_branch({P(3, 5, -4, 5), P(0, 1, 0, 1), P(1, 2, 0, 1), P(3, 5, 4, 5)})}) ==
        ErrorCode::Tangency);
  // Three diameters through the centre.
  CHECK(code_of({open_branch({P(-1, 1, 0, 1), P(1, 1, 0, 1)}), open_branch({P(0, 1, -1, 1), P(0, 1, 1, 1)}),
                 open_branch({P(-3, 5, -4, 5), P(3, 5, 4, 5)})}) == ErrorCode::TripleParty);
  // A vertex lying on another branch.
  CHECK(code_of({open_branch({P(-1, 1, 0, 1), P(1, 1, 0, 1)}), open_branch({P(0, 1, -1, 1), P(0, 1, 0, 1), P(3, 5, 4, 5)})}) ==
        ErrorCode::NotGeneric);
  // Vertex outside the disk.
  CHECK(code_of({open_branch({P(-1, 1, 0, 1), P(0, 1, 2, 1), P(1, 1, 0, 1)})}) == ErrorCode::NotGeneric);
}

TEST_CASE("combinatorics are invariant under rational rescaling") {
  // A zig-zag crossing a diameter three times, then the same picture scaled by 3/4 with
  // radial extensions.
  const std::vector<Point> zig{P(-3, 5, -4, 5), P(-1, 4, 1, 4), P(0, 1, -1, 4), P(1, 4, 1, 4), P(3, 5, 4, 5)};
  const Divide a = build_arrangement({open_branch({P(-1, 1, 0, 1), P(1, 1, 0, 1)}), open_branch(zig)});
  std::vector<Point> scaled;
  for (const auto& p : zig) scaled.push_back({p.x * Rational(3, 4), p.y * Rational(3, 4)});
  scaled.insert(scaled.begin(), zig.front());
  scaled.push_back(zig.back());
  const Divide b = build_arrangement({open_branch({P(-1, 1, 0, 1), P(-3, 4, 0, 1), P(3, 4, 0, 1), P(1, 1, 0, 1)}), open_branch(scaled)});
  CHECK(a.crossings.size() == 3);
  CHECK(b.crossings.size() == a.crossings.size());
  CHECK(b.regions.size() == a.regions.size());
  CHECK(b.interior_count() == a.interior_count());
}
