#include "divide_forge/blocks.hpp"

#include <cmath>
#include <numbers>

#include "divide_forge/error.hpp"
#include "divide_forge/geometry.hpp"

namespace divide_forge::blocks {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Point> sample_arc(int p, int q, int k, double theta0, double span, long long steps, bool closed) {
  std::vector<Point> pts;
  auto at = [&](double th) {
    return round_point({std::cos(p * th), std::cos(q * th + 2.0 * kPi * k / p)});
  };
  if (!closed) pts.push_back(at(theta0));
  for (long long j = 0; j < steps; ++j) pts.push_back(at(theta0 + (static_cast<double>(j) + 0.5) * span / static_cast<double>(steps)));
  if (!closed) pts.push_back(at(theta0 + span));
  return pts;
}

}  // namespace

Rational cheb_eval(int n, const Rational& t_in) {
  if (n == 0) return 1;
  Rational t(t_in);
  t.canonicalize();
  Rational prev = 1, cur = t;
  for (int k = 1; k < n; ++k) {
    Rational next = 2 * t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  cur.canonicalize();
  return cur;
}

double cheb_eval(int n, double t) {
  if (n == 0) return 1.0;
  double prev = 1.0, cur = t;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

IntPoly cheb_coeffs(int n) {
  IntPoly prev = IntPoly::monomial(1, 0);
  if (n == 0) return prev;
  IntPoly cur = IntPoly::monomial(1, 1);
  const IntPoly two_z = IntPoly::monomial(2, 1);
  for (int k = 1; k < n; ++k) {
    IntPoly next = two_z * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<ChebCrossing> cheb_crossings(int p, int q) {
  if (p < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "pattern exponents must be positive");
  if (gcd_ll(p, q) != 1) {
    throw Error(ErrorCode::NotCoprime, "gcd(" + std::to_string(p) + "," + std::to_string(q) + ") != 1");
  }
  const long long P = p, Q = q, N = P * Q;
  std::vector<ChebCrossing> out;
  for (long long m1 = 2; m1 < N; ++m1) {
    for (long long m2 = 1; m2 < m1; ++m2) {
      const long long s = m1 + m2, d = m1 - m2;
      const bool hit = (s % (2 * Q) == 0 && d % (2 * P) == 0) || (d % (2 * Q) == 0 && s % (2 * P) == 0);
      if (!hit) continue;
      out.push_back({m1, m2, {std::cos(kPi * static_cast<double>(m1) / q), std::cos(kPi * static_cast<double>(m1) / p)}});
    }
  }
  return out;
}

PointD cheb_point(int p, int q, double theta) { return {std::cos(p * theta), std::cos(q * theta)}; }

long long count_polyline_crossings(const std::vector<PatternComponent>& components) {
  struct Ref {
    std::size_t comp, idx;
  };
  std::vector<Segment> segs;
  std::vector<Ref> refs;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& pts = components[c].points;
    const bool closed = components[c].kind == ComponentKind::Circle;
    const std::size_t n = closed ? pts.size() : pts.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
      segs.push_back({pts[i], pts[(i + 1) % pts.size()]});
      refs.push_back({c, i});
    }
  }
  auto adjacent = [&](std::size_t a, std::size_t b) {
    if (refs[a].comp != refs[b].comp) return false;
    const auto& comp = components[refs[a].comp];
    const std::size_t i = refs[a].idx, j = refs[b].idx;
    if (i + 1 == j || j + 1 == i) return true;
    if (comp.kind == ComponentKind::Circle) {
      const std::size_t n = comp.points.size();
      return (i == 0 && j == n - 1) || (j == 0 && i == n - 1);
    }
    return false;
  };
  long long count = 0;
  for (auto [a, b] : candidate_pairs(segs)) {
    if (adjacent(a, b)) {
      if (folds_back(segs[a], segs[b])) return -1;
      continue;
    }
    const SegIntersection hit = intersect(segs[a], segs[b]);
    if (hit.rel == SegRel::Proper) ++count;
    if (hit.rel == SegRel::Touch || hit.rel == SegRel::Overlap) return -1;
  }
  return count;
}

ChebyshevPattern cheb_pattern(int p, int q, int samples_per_arc) {
  if (p < 1 || q < 1 || samples_per_arc < 1) throw Error(ErrorCode::InvalidArgument, "cheb_pattern needs p, q, samples >= 1");
  const int r = static_cast<int>(gcd_ll(p, q));
  ChebyshevPattern pat;
  pat.p = p;
  pat.q = q;
  if (r == 1) pat.crossings = cheb_crossings(p, q);
  for (int attempt = 0; attempt < 5; ++attempt) {
    const int s = samples_per_arc << attempt;
    pat.samples_per_arc = s;
    pat.components.clear();
    const long long steps = static_cast<long long>(p) * q * s;
    for (int k = 0; 2 * k <= r; ++k) {
      if (2 * k == r && r % 2 != 0) continue;
      if (k == 0 || 2 * k == r) {
        // Find m with q m = 2k (mod p); the reflection about theta0 = -pi m / p fixes the component.
        int m = 0;
        while ((static_cast<long long>(q) * m - 2 * k) % p != 0) ++m;
        const double theta0 = -kPi * m / p;
        pat.components.push_back({ComponentKind::Interval, sample_arc(p, q, k, theta0, kPi, steps, false)});
      } else {
        pat.components.push_back({ComponentKind::Circle, sample_arc(p, q, k, 0.0, 2.0 * kPi, 2 * steps, true)});
      }
    }
    if (r != 1) return pat;
    if (count_polyline_crossings(pat.components) == static_cast<long long>(pat.crossings.size())) return pat;
  }
  throw Error(ErrorCode::GenericityFailure,
              "sampled P_{" + std::to_string(p) + "," + std::to_string(q) + "} does not realize its crossings");
}

BandCoord lissajous_band(int p, int q, double s) {
  double a = std::fmod(p * s, 1.0);
  if (a < 0) a += 1.0;
  return {a, std::sin(2.0 * kPi * q * s)};
}

PointD annulus_point(BandCoord c) {
  const double rad = 0.5 + 0.25 * c.v;
  return {rad * std::sin(2.0 * kPi * c.along), rad * std::cos(2.0 * kPi * c.along)};
}

LissajousPattern lissajous_pattern(int p, int q, int samples) {
  if (p < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "lissajous_pattern needs p, q >= 1");
  const int r = static_cast<int>(gcd_ll(p, q));
  const int pp = p / r, qq = q / r;
  if (samples <= 0) samples = 24 * pp * qq + 24;
  LissajousPattern pat;
  pat.p = p;
  pat.q = q;
  for (int k = 0; k < r; ++k) {
    const double phi = 2.0 * kPi * k / q;
    const double c = std::cos(phi), sn = std::sin(phi);
    PatternComponent comp{ComponentKind::Circle, {}};
    for (int j = 0; j < samples; ++j) {
      const PointD pt = annulus_point(lissajous_band(pp, qq, (j + 0.5) / samples));
      comp.points.push_back(round_point({c * pt.x - sn * pt.y, sn * pt.x + c * pt.y}));
    }
    pat.components.push_back(std::move(comp));
  }
  return pat;
}

}  // namespace divide_forge::blocks
