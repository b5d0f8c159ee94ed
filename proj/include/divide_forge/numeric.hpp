#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace divide_forge {

using Integer = boost::multiprecision::cpp_int;
using Rational = mpq_class;

/// Denominator exponent used when rounding constructed geometry.
inline constexpr int kDyadicBits = 24;

Rational parse_rational(std::string_view text);
/// Lowest-terms `num/den`, or just `num` when the denominator is 1.
std::string format_rational(const Rational& r);

/// Nearest rational with denominator 2^kDyadicBits.
Rational round_dyadic(double value, int bits = kDyadicBits);

Integer gcd(const Integer& a, const Integer& b);
long long gcd_ll(long long a, long long b);

struct Point {
  Rational x;
  Rational y;

  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
  bool operator<(const Point& o) const { return x < o.x || (x == o.x && y < o.y); }
};

struct PointD {
  double x = 0.0;
  double y = 0.0;
};

inline PointD to_double(const Point& p) { return {p.x.get_d(), p.y.get_d()}; }
Point round_point(PointD p, int bits = kDyadicBits);

/// Exact rational point on the unit circle closest (in angle) to direction `angle`.
/// Uses the stereographic parametrization with a dyadic slope, so x^2 + y^2 == 1 exactly.
Point circle_point(double angle, int bits = kDyadicBits);

inline Rational norm2(const Point& p) { return p.x * p.x + p.y * p.y; }

/// Sign of the cross product (b - a) x (c - a).
int orient(const Point& a, const Point& b, const Point& c);

}  // namespace divide_forge
