#pragma once

#include <vector>

#include "divide_forge/numeric.hpp"
#include "divide_forge/polynomial.hpp"

namespace divide_forge::blocks {

/// T(n, t) by the three-term recurrence.
Rational cheb_eval(int n, const Rational& t);
double cheb_eval(int n, double t);

/// Integer coefficients of T(n, z).
IntPoly cheb_coeffs(int n);

/// A double point of t -> (T(p,t), T(q,t)) at t = cos(theta), theta = m * pi / (p q).
struct ChebCrossing {
  long long m1;  // larger angle numerator
  long long m2;  // smaller angle numerator
  // Exact location: (cos(pi * m1 / q), cos(pi * m1 / p)).
  PointD point;
};

/// Exact lattice enumeration, 0 < m2 < m1 < p q. Throws NotCoprime.
std::vector<ChebCrossing> cheb_crossings(int p, int q);

enum class ComponentKind { Interval, Circle };

struct PatternComponent {
  ComponentKind kind = ComponentKind::Interval;
  std::vector<Point> points;  // circles are stored without repeating the first vertex
};

struct ChebyshevPattern {
  int p = 1;
  int q = 1;
  int samples_per_arc = 0;
  std::vector<PatternComponent> components;
  std::vector<ChebCrossing> crossings;  // coprime case only
};

struct LissajousPattern {
  int p = 1;
  int q = 1;
  std::vector<PatternComponent> components;
};

/// (T(p, cos theta), T(q, cos theta)) = (cos p theta, cos q theta).
PointD cheb_point(int p, int q, double theta);

/// Polyline pattern in the box [-1,1]^2. For coprime (p,q) the sampled polyline is verified to
/// realize exactly the enumerated crossings; resampling doubles up to four times before
/// GenericityFailure.
ChebyshevPattern cheb_pattern(int p, int q, int samples_per_arc = 8);

/// Band coordinates of L_{p,q} at parameter s: angular fraction p s mod 1 and transverse sin(2 pi q s).
struct BandCoord {
  double along;
  double v;
};
BandCoord lissajous_band(int p, int q, double s);

/// (1/2 + v/4) (sin 2 pi a, cos 2 pi a) for band coordinates (a, v).
PointD annulus_point(BandCoord c);

LissajousPattern lissajous_pattern(int p, int q, int samples = 0);

/// Number of proper crossings between non-adjacent segments of the given polylines; returns -1 if
/// any touching, overlapping or backtracking segments make the configuration non-generic.
long long count_polyline_crossings(const std::vector<PatternComponent>& components);

}  // namespace divide_forge::blocks
