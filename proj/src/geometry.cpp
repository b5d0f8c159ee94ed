#include "divide_forge/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace divide_forge {

namespace {

Rational cross(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
  return ax * by - ay * bx;
}

struct Box {
  double x0, y0, x1, y1;
};

Box bbox(const Segment& s) {
  const PointD a = to_double(s.a);
  const PointD b = to_double(s.b);
  // Inflate so that double rounding never drops a touching pair.
  const double pad = 1e-9;
  return {std::min(a.x, b.x) - pad, std::min(a.y, b.y) - pad, std::max(a.x, b.x) + pad, std::max(a.y, b.y) + pad};
}

bool overlaps(const Box& u, const Box& v) { return u.x0 <= v.x1 && v.x0 <= u.x1 && u.y0 <= v.y1 && v.y0 <= u.y1; }

}  // namespace

SegIntersection intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  SegIntersection out;
  const Rational rx = b.x - a.x, ry = b.y - a.y;
  const Rational sx = d.x - c.x, sy = d.y - c.y;
  const Rational qx = c.x - a.x, qy = c.y - a.y;
  const Rational den = cross(rx, ry, sx, sy);
  if (den != 0) {
    Rational t = cross(qx, qy, sx, sy) / den;
    Rational u = cross(qx, qy, rx, ry) / den;
    if (t < 0 || t > 1 || u < 0 || u > 1) return out;
    out.ta = t;
    out.tb = u;
    out.point = {a.x + t * rx, a.y + t * ry};
    out.point.x.canonicalize();
    out.point.y.canonicalize();
    const bool interior = t > 0 && t < 1 && u > 0 && u < 1;
    out.rel = interior ? SegRel::Proper : SegRel::Touch;
    return out;
  }
  if (cross(qx, qy, rx, ry) != 0) return out;  // parallel, not collinear
  // Collinear: project onto the first segment's direction.
  const Rational len2 = rx * rx + ry * ry;
  if (len2 == 0) return out;
  Rational t0 = (qx * rx + qy * ry) / len2;
  Rational t1 = ((d.x - a.x) * rx + (d.y - a.y) * ry) / len2;
  if (t0 > t1) std::swap(t0, t1);
  const Rational lo = std::max(t0, Rational(0));
  const Rational hi = std::min(t1, Rational(1));
  if (lo > hi) return out;
  out.ta = lo;
  out.point = {a.x + lo * rx, a.y + lo * ry};
  out.rel = lo == hi ? SegRel::Touch : SegRel::Overlap;
  return out;
}

bool folds_back(const Segment& s, const Segment& t) {
  const Point* shared = nullptr;
  const Point* u = nullptr;
  const Point* w = nullptr;
  if (s.b == t.a) shared = &s.b, u = &s.a, w = &t.b;
  else if (s.a == t.b) shared = &s.a, u = &s.b, w = &t.a;
  else if (s.a == t.a) shared = &s.a, u = &s.b, w = &t.b;
  else if (s.b == t.b) shared = &s.b, u = &s.a, w = &t.a;
  if (shared == nullptr) return false;
  if (orient(*u, *shared, *w) != 0) return false;
  const Rational dot = (u->x - shared->x) * (w->x - shared->x) + (u->y - shared->y) * (w->y - shared->y);
  return dot > 0;
}

std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const std::vector<Segment>& segs) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = segs.size();
  if (n < 2) return out;
  std::vector<Box> boxes(n);
  Box all{1e300, 1e300, -1e300, -1e300};
  for (std::size_t i = 0; i < n; ++i) {
    boxes[i] = bbox(segs[i]);
    all.x0 = std::min(all.x0, boxes[i].x0);
    all.y0 = std::min(all.y0, boxes[i].y0);
    all.x1 = std::max(all.x1, boxes[i].x1);
    all.y1 = std::max(all.y1, boxes[i].y1);
  }
  const std::size_t g = std::clamp<std::size_t>(static_cast<std::size_t>(std::sqrt(static_cast<double>(n))), 1, 512);
  const double cw = (all.x1 - all.x0) / static_cast<double>(g) + 1e-300;
  const double ch = (all.y1 - all.y0) / static_cast<double>(g) + 1e-300;
  auto cell_x = [&](double x) {
    return std::min(g - 1, static_cast<std::size_t>(std::max(0.0, (x - all.x0) / cw)));
  };
  auto cell_y = [&](double y) {
    return std::min(g - 1, static_cast<std::size_t>(std::max(0.0, (y - all.y0) / ch)));
  };
  std::vector<std::vector<std::size_t>> cells(g * g);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t cx = cell_x(boxes[i].x0); cx <= cell_x(boxes[i].x1); ++cx) {
      for (std::size_t cy = cell_y(boxes[i].y0); cy <= cell_y(boxes[i].y1); ++cy) cells[cx * g + cy].push_back(i);
    }
  }
  for (std::size_t cx = 0; cx < g; ++cx) {
    for (std::size_t cy = 0; cy < g; ++cy) {
      const auto& bucket = cells[cx * g + cy];
      for (std::size_t u = 0; u < bucket.size(); ++u) {
        for (std::size_t v = u + 1; v < bucket.size(); ++v) {
          const std::size_t i = bucket[u], j = bucket[v];
          if (!overlaps(boxes[i], boxes[j])) continue;
          // Report each pair only from the cell holding the corner of the box overlap.
          const double ox = std::max(boxes[i].x0, boxes[j].x0);
          const double oy = std::max(boxes[i].y0, boxes[j].y0);
          if (cell_x(ox) != cx || cell_y(oy) != cy) continue;
          out.emplace_back(std::min(i, j), std::max(i, j));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational signed_area2(const std::vector<Point>& ring) {
  Rational acc = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % ring.size()];
    acc += p.x * q.y - p.y * q.x;
  }
  return acc;
}

bool contains(const std::vector<PointD>& ring, PointD p) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const PointD& a = ring[i];
    const PointD& b = ring[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside;
}

double dist2_point_segment(PointD p, PointD a, PointD b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = a.x + t * dx - p.x, ey = a.y + t * dy - p.y;
  return ex * ex + ey * ey;
}

}  // namespace divide_forge
