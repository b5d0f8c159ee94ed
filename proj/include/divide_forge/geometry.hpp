#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "divide_forge/numeric.hpp"

namespace divide_forge {

struct Segment {
  Point a;
  Point b;
};

enum class SegRel {
  Disjoint,
  Proper,   // single crossing interior to both segments
  Touch,    // single common point that is an endpoint of at least one segment
  Overlap,  // collinear with a common sub-segment of positive length
};

struct SegIntersection {
  SegRel rel = SegRel::Disjoint;
  Rational ta;  // parameter along the first segment
  Rational tb;  // parameter along the second segment
  Point point;
};

SegIntersection intersect(const Point& a, const Point& b, const Point& c, const Point& d);
inline SegIntersection intersect(const Segment& s, const Segment& t) { return intersect(s.a, s.b, t.a, t.b); }

/// Two segments sharing a vertex that fold back onto each other (collinear, same side).
bool folds_back(const Segment& s, const Segment& t);

/// Index pairs (i < j) whose bounding boxes overlap; a superset of all intersecting pairs.
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const std::vector<Segment>& segs);

/// Signed twice-area of a closed polygon.
Rational signed_area2(const std::vector<Point>& ring);

/// Point-in-polygon by ray casting (double precision, for region containment only).
bool contains(const std::vector<PointD>& ring, PointD p);

/// Squared distance from p to segment ab.
double dist2_point_segment(PointD p, PointD a, PointD b);

}  // namespace divide_forge
