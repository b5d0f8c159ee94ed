#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"
#include "divide_forge/geometry.hpp"

namespace divide_forge {

namespace {

struct SegD {
  PointD a, b;
};

bool inside_region(const Region& r, PointD p) {
  if (p.x * p.x + p.y * p.y >= 1.0) return false;
  if (!contains(r.rings.front(), p)) return false;
  for (std::size_t k = 1; k < r.rings.size(); ++k)
    if (contains(r.rings[k], p)) return false;
  return true;
}

// Distance to the nearest boundary segment, giving up once it drops below `floor`.
double clearance(const std::vector<SegD>& segs, PointD p, double floor) {
  double best2 = std::numeric_limits<double>::infinity();
  const double floor2 = floor * floor;
  for (const auto& s : segs) {
    best2 = std::min(best2, dist2_point_segment(p, s.a, s.b));
    if (best2 <= floor2) return std::sqrt(best2);
  }
  return std::sqrt(best2);
}

void sample_region(Region& r) {
  std::vector<SegD> segs;
  double x0 = 1e9, y0 = 1e9, x1 = -1e9, y1 = -1e9;
  for (const auto& ring : r.rings) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      segs.push_back({ring[i], ring[(i + 1) % ring.size()]});
      x0 = std::min(x0, ring[i].x);
      y0 = std::min(y0, ring[i].y);
      x1 = std::max(x1, ring[i].x);
      y1 = std::max(y1, ring[i].y);
    }
  }
  std::vector<PointD> cands;
  const double size = std::sqrt(std::max(std::abs(r.area), 1e-30));
  for (const auto& ring : r.rings) {
    const std::size_t n = ring.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 120);
    for (std::size_t i = 0; i < n; i += stride) {
      const PointD a = ring[i], b = ring[(i + 1) % n];
      const double dx = b.x - a.x, dy = b.y - a.y;
      const double len = std::hypot(dx, dy);
      if (len == 0.0) continue;
      const PointD mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
      const PointD nrm{-dy / len, dx / len};  // the region lies to the left
      for (double dist : {0.3 * len, len, 3.0 * len, 0.05 * size, 0.2 * size, 0.5 * size}) {
        cands.push_back({mid.x + dist * nrm.x, mid.y + dist * nrm.y});
      }
      // Halfway to the first boundary hit along the normal; this finds thin slivers.
      double hit = std::numeric_limits<double>::infinity();
      for (const auto& sg : segs) {
        const double ex = sg.b.x - sg.a.x, ey = sg.b.y - sg.a.y;
        const double den = nrm.x * ey - nrm.y * ex;
        if (den == 0.0) continue;
        const double wx = sg.a.x - mid.x, wy = sg.a.y - mid.y;
        const double t = (wx * ey - wy * ex) / den;
        const double u = (wx * nrm.y - wy * nrm.x) / den;
        if (t > 1e-15 && u >= 0.0 && u <= 1.0) hit = std::min(hit, t);
      }
      if (std::isfinite(hit)) cands.push_back({mid.x + 0.5 * hit * nrm.x, mid.y + 0.5 * hit * nrm.y});
    }
  }
  const int g = 12;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) cands.push_back({x0 + (x1 - x0) * (i + 0.5) / g, y0 + (y1 - y0) * (j + 0.5) / g});

  std::vector<std::pair<double, PointD>> scored;
  double best = 0.0;
  for (const auto& c : cands) {
    if (!inside_region(r, c)) continue;
    const double cl = std::min(clearance(segs, c, best), 1.0 - std::hypot(c.x, c.y));
    if (cl > best) best = cl;
    scored.push_back({cl, c});
  }
  std::sort(scored.begin(), scored.end(), [](const auto& u, const auto& v) { return u.first > v.first; });
  for (const auto& [cl, c] : scored) {
    const int bits = std::clamp(int(std::ceil(std::log2(8.0 / std::max(cl, 1e-300)))), kDyadicBits, 60);
    const Point exact = round_point(c, bits);
    const PointD back = to_double(exact);
    if (!inside_region(r, back)) continue;
    const double cl2 = std::min(clearance(segs, back, 0.0), 1.0 - std::hypot(back.x, back.y));
    if (cl2 <= 0.0) continue;
    r.sample = exact;
    r.clearance = cl2;
    return;
  }
  throw Error(ErrorCode::NotGeneric, "could not place a sample point inside a region (area " + std::to_string(r.area * 1e12) + "e-12 at " + std::to_string(x0) + "," + std::to_string(y0) + " size " + std::to_string(x1 - x0) + "x" + std::to_string(y1 - y0) + " ring " + std::to_string(r.rings.front().size()) +
                                         ", " + std::to_string(cands.size()) + " candidates, " +
                                         std::to_string(scored.size()) + " inside)");
}

}  // namespace

void compute_samples(Divide& d) {
  for (auto& r : d.regions) sample_region(r);
}

bool Divide::is_signed() const {
  return std::all_of(regions.begin(), regions.end(), [](const Region& r) { return r.sign != 0; });
}

int Divide::interior_count() const {
  return int(std::count_if(regions.begin(), regions.end(), [](const Region& r) { return r.interior; }));
}

int Divide::locate(PointD p) const {
  for (std::size_t f = 0; f < regions.size(); ++f)
    if (inside_region(regions[f], p)) return int(f);
  return -1;
}

Divide assign_signs(Divide divide, const std::vector<Anchor>& anchors) {
  if (anchors.empty()) throw Error(ErrorCode::InconsistentAnchors, "no sign anchors given");
  std::vector<int> sign(divide.regions.size(), 0);
  std::deque<int> queue;
  for (const auto& a : anchors) {
    if (a.sign != 1 && a.sign != -1) throw Error(ErrorCode::InconsistentAnchors, "anchor sign must be + or -");
    const int f = divide.locate(to_double(a.point));
    if (f < 0) throw Error(ErrorCode::InconsistentAnchors, "anchor point lies on the divide or outside the disk");
    if (sign[std::size_t(f)] == -a.sign) throw Error(ErrorCode::InconsistentAnchors, "anchors disagree on one region");
    if (sign[std::size_t(f)] == 0) queue.push_back(f);
    sign[std::size_t(f)] = a.sign;
  }
  // Propagate; any anchored region reached with the wrong parity is a conflict.
  std::vector<bool> seen(sign.size(), false);
  for (int f : queue) seen[std::size_t(f)] = true;
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (int g : divide.regions[std::size_t(f)].neighbors) {
      const int want = -sign[std::size_t(f)];
      if (sign[std::size_t(g)] == 0) {
        sign[std::size_t(g)] = want;
        seen[std::size_t(g)] = true;
        queue.push_back(g);
      } else if (sign[std::size_t(g)] != want) {
        throw Error(ErrorCode::InconsistentAnchors, "anchors force two adjacent regions to share a sign");
      }
    }
  }
  for (std::size_t f = 0; f < sign.size(); ++f) {
    if (sign[f] == 0) throw Error(ErrorCode::InconsistentAnchors, "region " + std::to_string(f) + " is not reached by any anchor");
    divide.regions[f].sign = sign[f];
  }
  divide.anchors = anchors;
  return divide;
}

int chebyshev_sign(int p, int q, PointD box) {
  const double v = blocks::cheb_eval(q, box.x) - blocks::cheb_eval(p, box.y);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

bool checkerboard_ok(const Divide& d) {
  if (!d.is_signed()) return false;
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    if (d.edges[e].kind != EdgeKind::Branch) continue;
    const int f = d.half_edges[2 * e].face, g = d.half_edges[2 * e + 1].face;
    if (f < 0 || g < 0) return false;
    if (d.regions[std::size_t(f)].sign != -d.regions[std::size_t(g)].sign) return false;
  }
  return true;
}

long long mu(const Divide& d) { return static_cast<long long>(d.crossings.size()) + d.interior_count(); }

namespace {

std::vector<Segment> segments_of(const Branch& br) {
  std::vector<Segment> out;
  const auto& pts = br.points;
  const std::size_t n = br.kind == BranchKind::Closed ? pts.size() : pts.size() - 1;
  for (std::size_t i = 0; i < n; ++i) out.push_back({pts[i], pts[(i + 1) % pts.size()]});
  return out;
}

long long count_between(const std::vector<Segment>& a, const std::vector<Segment>& b) {
  std::vector<Segment> all(a);
  all.insert(all.end(), b.begin(), b.end());
  long long count = 0;
  for (auto [i, j] : candidate_pairs(all)) {
    if ((i < a.size()) == (j < a.size())) continue;
    const SegIntersection hit = intersect(all[i], all[j]);
    if (hit.rel == SegRel::Proper) ++count;
    if (hit.rel == SegRel::Touch || hit.rel == SegRel::Overlap) {
      throw Error(ErrorCode::NotGeneric, "divides meet non-transversally");
    }
  }
  return count;
}

}  // namespace

long long pair_intersections(const Divide& a, const Divide& b) {
  std::vector<Segment> sa, sb;
  for (const auto& br : a.branches) {
    auto s = segments_of(br);
    sa.insert(sa.end(), s.begin(), s.end());
  }
  for (const auto& br : b.branches) {
    auto s = segments_of(br);
    sb.insert(sb.end(), s.begin(), s.end());
  }
  return count_between(sa, sb);
}

long long core_linking(const Divide& composed) {
  if (!composed.provenance || composed.provenance->core.size() < 2) {
    throw Error(ErrorCode::NoCore, "divide carries no core curve");
  }
  const auto& prov = *composed.provenance;
  std::vector<Segment> pattern;
  for (int b : prov.pattern_branches) {
    auto s = segments_of(composed.branches[std::size_t(b)]);
    pattern.insert(pattern.end(), s.begin(), s.end());
  }
  const BranchKind kind = prov.core.front() == prov.core.back() ? BranchKind::Closed : BranchKind::Open;
  Branch core{kind, prov.core};
  if (kind == BranchKind::Closed) core.points.pop_back();
  return count_between(pattern, segments_of(core));
}

}  // namespace divide_forge
