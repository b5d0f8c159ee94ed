#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>

#include "../support/oracles.hpp"
#include "divide_forge/blocks.hpp"
#include "divide_forge/error.hpp"

using namespace divide_forge;
using namespace divide_forge::blocks;

TEST_CASE("cheb_eval") {
  CHECK(cheb_eval(3, Rational(1, 2)) == -1);
  CHECK(cheb_eval(2, Rational(0)) == -1);
  for (int n = 0; n <= 12; ++n) CHECK(cheb_eval(n, Rational(1)) == 1);
  CHECK(cheb_eval(0, Rational(3, 7)) == 1);
}

TEST_CASE("cheb_coeffs") {
  CHECK(cheb_coeffs(1).to_string('z') == "z");
  CHECK(cheb_coeffs(2).to_string('z') == "2*z^2 - 1");
  CHECK(cheb_coeffs(7).leading() == 64);
  for (int n = 1; n <= 12; ++n) {
    const IntPoly c = cheb_coeffs(n);
    CHECK(c.leading() == Integer(1) << (n - 1));
    // Parity: T(n,-z) = (-1)^n T(n,z).
    for (std::size_t i = 0; i < c.coeffs().size(); ++i)
      if ((i + static_cast<std::size_t>(n)) % 2 == 1) CHECK(c.coeff(i) == 0);
  }
}

TEST_CASE("cheb_eval matches the coefficient form on rational grids") {
  for (int n = 0; n <= 12; ++n) {
    const IntPoly c = cheb_coeffs(n);
    for (int k = -8; k <= 8; ++k) {
      const Rational t(k, 8);
      CHECK(cheb_eval(n, t) == c.eval(t));
    }
  }
}

TEST_CASE("crossing enumeration matches the formula and a numeric oracle") {
  CHECK(cheb_crossings(2, 3).size() == 1);
  CHECK(cheb_crossings(7, 5).size() == 12);
  CHECK(cheb_crossings(1, 6).empty());
  CHECK_THROWS_AS(cheb_crossings(2, 4), Error);
  for (int p = 1; p <= 11; ++p) {
    for (int q = 1; q <= 11; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const auto cs = cheb_crossings(p, q);
      CHECK(static_cast<long long>(cs.size()) == (p - 1) * (q - 1) / 2);
      CHECK(static_cast<long long>(cs.size()) == oracle::chebyshev_double_points_numeric(p, q));
    }
  }
}

TEST_CASE("crossing points are genuine and distinct, and the set is symmetric") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 5}, {7, 5}, {4, 9}, {5, 11}}) {
    const auto cs = cheb_crossings(p, q);
    const long long N = static_cast<long long>(p) * q;
    std::set<std::pair<long long, long long>> params;
    std::set<std::pair<long long, long long>> pts;
    for (const auto& c : cs) {
      const double t1 = std::numbers::pi * static_cast<double>(c.m1) / static_cast<double>(N);
      const double t2 = std::numbers::pi * static_cast<double>(c.m2) / static_cast<double>(N);
      CHECK(std::abs(std::cos(p * t1) - std::cos(p * t2)) < 1e-12);
      CHECK(std::abs(std::cos(q * t1) - std::cos(q * t2)) < 1e-12);
      CHECK(std::abs(c.point.x - std::cos(p * t1)) < 1e-12);
      params.insert({c.m1, c.m2});
      pts.insert({std::llround(c.point.x * 1e9), std::llround(c.point.y * 1e9)});
    }
    CHECK(pts.size() == cs.size());
    // theta -> pi - theta maps {m1, m2} to {N - m2, N - m1}.
    for (const auto& c : cs) CHECK(params.count({N - c.m2, N - c.m1}) == 1);
  }
}

TEST_CASE("cheb_pattern realizes its crossings") {
  const auto pat = cheb_pattern(2, 3);
  REQUIRE(pat.components.size() == 1);
  CHECK(pat.components[0].kind == ComponentKind::Interval);
  CHECK(count_polyline_crossings(pat.components) == 1);
  const auto& pts = pat.components[0].points;
  CHECK(pts.front() == Point{1, 1});
  CHECK(pts.back() == Point{1, -1});

  const auto fig = cheb_pattern(7, 5);
  CHECK(count_polyline_crossings(fig.components) == 12);
  const Point end = fig.components[0].points.back();
  CHECK(end == Point{-1, -1});
}

TEST_CASE("cheb_pattern crossing count is stable under refinement") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 5}, {3, 4}, {3, 7}, {5, 6}}) {
    const long long a = count_polyline_crossings(cheb_pattern(p, q, 4).components);
    const long long b = count_polyline_crossings(cheb_pattern(p, q, 8).components);
    CHECK(a == (p - 1) * (q - 1) / 2);
    CHECK(a == b);
  }
}

TEST_CASE("non-coprime patterns split into components on the implicit curve") {
  const auto diag = cheb_pattern(2, 2);
  REQUIRE(diag.components.size() == 2);
  for (const auto& comp : diag.components) {
    CHECK(comp.kind == ComponentKind::Interval);
    for (const auto& pt : comp.points) CHECK(cheb_eval(2, pt.x) - cheb_eval(2, pt.y) == 0);
  }
  // gcd 4 gives two arcs and one circle.
  const auto mixed = cheb_pattern(4, 8);
  int circles = 0, intervals = 0;
  for (const auto& comp : mixed.components) {
    (comp.kind == ComponentKind::Circle ? circles : intervals)++;
    for (const auto& pt : comp.points) {
      const PointD d = to_double(pt);
      CHECK(std::abs(cheb_eval(8, d.x) - cheb_eval(4, d.y)) < 1e-4);
    }
  }
  CHECK(intervals == 2);
  CHECK(circles == 1);
}

TEST_CASE("lissajous pattern") {
  const auto loop = lissajous_pattern(1, 1);
  REQUIRE(loop.components.size() == 1);
  CHECK(count_polyline_crossings(loop.components) == 0);

  const auto l35 = lissajous_pattern(3, 5);
  REQUIRE(l35.components.size() == 1);
  for (const auto& pt : l35.components[0].points) {
    const double r = std::hypot(pt.x.get_d(), pt.y.get_d());
    CHECK(r >= 0.25 - 1e-6);
    CHECK(r <= 0.75 + 1e-6);
  }
  // Derived count q (p - 1) for coprime p < q.
  CHECK(count_polyline_crossings(l35.components) == 10);
  CHECK(count_polyline_crossings(lissajous_pattern(2, 3).components) == 3);

  const auto l46 = lissajous_pattern(4, 6);
  CHECK(l46.components.size() == 2);
}

TEST_CASE("lissajous pattern is invariant under rotation by 2 pi / q") {
  const int p = 3, q = 5, n = 360;
  const auto pat = lissajous_pattern(p, q, n);
  const auto& pts = pat.components[0].points;
  // s -> s + 2/q advances the angular fraction p s by 1/q and keeps sin(2 pi q s).
  const int shift = 2 * n / q;
  const double phi = 2.0 * std::numbers::pi / q;
  const double c = std::cos(phi), sn = std::sin(phi);
  for (int j = 0; j < n; ++j) {
    const PointD a = to_double(pts[static_cast<std::size_t>(j)]);
    const PointD b = to_double(pts[static_cast<std::size_t>((j + shift) % n)]);
    CHECK(std::hypot(c * a.x + sn * a.y - b.x, -sn * a.x + c * a.y - b.y) < 1e-6);
  }
}
