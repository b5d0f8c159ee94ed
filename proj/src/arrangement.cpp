#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"
#include "divide_forge/geometry.hpp"

namespace divide_forge {

void compute_samples(Divide& d);  // samples.cpp

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Dir {
  Rational x, y;
};

int half_plane(const Dir& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; }

// Strict counterclockwise order of directions starting at angle 0.
bool ccw_less(const Dir& a, const Dir& b) {
  const int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return a.x * b.y - a.y * b.x > 0;
}

bool same_direction(const Dir& a, const Dir& b) {
  return half_plane(a) == half_plane(b) && a.x * b.y - a.y * b.x == 0;
}

[[noreturn]] void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

std::string where(int branch, int seg) {
  return "branch " + std::to_string(branch) + " segment " + std::to_string(seg);
}

struct SegRef {
  int branch;
  int seg;
};

struct RawCrossing {
  Point point;
  std::array<Incidence, 2> passes;
};

bool incidence_less(const Incidence& a, const Incidence& b) {
  if (a.branch != b.branch) return a.branch < b.branch;
  if (a.segment != b.segment) return a.segment < b.segment;
  return a.t < b.t;
}

void validate_branches(const std::vector<Branch>& branches) {
  std::vector<Point> ends;
  for (const auto& br : branches) {
    if (br.kind == BranchKind::Open && !br.points.empty()) {
      ends.push_back(br.points.front());
      ends.push_back(br.points.back());
    }
  }
  std::sort(ends.begin(), ends.end());
  if (std::adjacent_find(ends.begin(), ends.end()) != ends.end()) fail(ErrorCode::NotGeneric, "two branch endpoints coincide");
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto& br = branches[b];
    const bool open = br.kind == BranchKind::Open;
    const std::size_t need = open ? 2 : 3;
    if (br.points.size() < need) fail(ErrorCode::NotGeneric, "branch " + std::to_string(b) + " has too few vertices");
    const std::size_t n = br.points.size();
    const std::size_t segs = open ? n - 1 : n;
    for (std::size_t i = 0; i < segs; ++i) {
      if (br.points[i] == br.points[(i + 1) % n]) fail(ErrorCode::NotGeneric, where(int(b), int(i)) + " has zero length");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const bool end = open && (i == 0 || i + 1 == n);
      const Rational r2 = norm2(br.points[i]);
      if (end && r2 != 1) {
        fail(ErrorCode::EndpointOnInterior, "endpoint of branch " + std::to_string(b) + " is not on the unit circle");
      }
      if (!end && r2 >= 1) {
        fail(ErrorCode::NotGeneric, "vertex " + std::to_string(i) + " of branch " + std::to_string(b) + " is not inside the open disk");
      }
    }
  }
}

std::vector<RawCrossing> find_crossings(const std::vector<Branch>& branches) {
  std::vector<Segment> segs;
  std::vector<SegRef> refs;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto& pts = branches[b].points;
    const bool closed = branches[b].kind == BranchKind::Closed;
    const std::size_t count = closed ? pts.size() : pts.size() - 1;
    for (std::size_t i = 0; i < count; ++i) {
      segs.push_back({pts[i], pts[(i + 1) % pts.size()]});
      refs.push_back({int(b), int(i)});
    }
  }
  auto adjacent = [&](const SegRef& a, const SegRef& c) {
    if (a.branch != c.branch) return false;
    if (std::abs(a.seg - c.seg) == 1) return true;
    const auto& br = branches[std::size_t(a.branch)];
    const int n = int(br.points.size());
    return br.kind == BranchKind::Closed && ((a.seg == 0 && c.seg == n - 1) || (c.seg == 0 && a.seg == n - 1));
  };
  std::vector<RawCrossing> out;
  std::string touch;  // overlaps take precedence
  for (auto [i, j] : candidate_pairs(segs)) {
    const SegRef& a = refs[i];
    const SegRef& c = refs[j];
    if (adjacent(a, c)) {
      if (folds_back(segs[i], segs[j])) fail(ErrorCode::Tangency, where(a.branch, a.seg) + " folds back onto its neighbour");
      continue;
    }
    const SegIntersection hit = intersect(segs[i], segs[j]);
    switch (hit.rel) {
      case SegRel::Disjoint:
        break;
      case SegRel::Overlap:
        fail(ErrorCode::Tangency, where(a.branch, a.seg) + " overlaps " + where(c.branch, c.seg));
      case SegRel::Touch:
        if (touch.empty()) touch = where(a.branch, a.seg) + " touches " + where(c.branch, c.seg) + " at a vertex";
        break;
      case SegRel::Proper: {
        RawCrossing rc;
        rc.point = hit.point;
        rc.passes[0] = {a.branch, a.seg, hit.ta};
        rc.passes[1] = {c.branch, c.seg, hit.tb};
        if (incidence_less(rc.passes[1], rc.passes[0])) std::swap(rc.passes[0], rc.passes[1]);
        out.push_back(std::move(rc));
        break;
      }
    }
  }
  if (!touch.empty()) fail(ErrorCode::NotGeneric, touch);
  std::sort(out.begin(), out.end(), [](const RawCrossing& u, const RawCrossing& v) { return u.point < v.point; });
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (out[k].point == out[k - 1].point) fail(ErrorCode::TripleParty, "three or more strands meet at one point");
  }
  std::sort(out.begin(), out.end(),
            [](const RawCrossing& u, const RawCrossing& v) { return incidence_less(u.passes[0], v.passes[0]); });
  return out;
}

// Exact angular comparison of two points on the unit circle, counterclockwise from angle 0.
bool circle_less(const Point& a, const Point& b) { return ccw_less({a.x, a.y}, {b.x, b.y}); }

double angle_of(const Point& p) {
  double a = std::atan2(p.y.get_d(), p.x.get_d());
  return a < 0 ? a + kTwoPi : a;
}

struct Stop {
  Rational pos;  // segment index + t
  int vertex;
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
  return x;
}

}  // namespace

Divide build_arrangement(std::vector<Branch> branches) {
  validate_branches(branches);
  std::vector<RawCrossing> raw = find_crossings(branches);

  Divide d;
  d.branches = std::move(branches);
  const auto& brs = d.branches;

  // Vertices.
  std::vector<std::vector<Stop>> stops(brs.size());
  for (std::size_t c = 0; c < raw.size(); ++c) {
    Vertex v;
    v.kind = VertexKind::Crossing;
    v.point = raw[c].point;
    v.crossing = int(c);
    d.vertices.push_back(v);
    Crossing cr;
    cr.point = raw[c].point;
    cr.passes = raw[c].passes;
    cr.vertex = int(c);
    d.crossings.push_back(cr);
    for (const auto& inc : raw[c].passes) stops[std::size_t(inc.branch)].push_back({Rational(inc.segment) + inc.t, int(c)});
  }
  std::vector<int> endpoint_vertices;
  for (std::size_t b = 0; b < brs.size(); ++b) {
    const auto& br = brs[b];
    if (br.kind == BranchKind::Open) {
      for (int end = 0; end < 2; ++end) {
        Vertex v;
        v.kind = VertexKind::Endpoint;
        v.point = end == 0 ? br.points.front() : br.points.back();
        d.vertices.push_back(v);
        const int id = int(d.vertices.size()) - 1;
        endpoint_vertices.push_back(id);
        stops[b].push_back({end == 0 ? Rational(0) : Rational(int(br.points.size()) - 1), id});
      }
    } else if (stops[b].empty()) {
      Vertex v;
      v.kind = VertexKind::Dummy;
      v.point = br.points.front();
      d.vertices.push_back(v);
      stops[b].push_back({Rational(0), int(d.vertices.size()) - 1});
    }
    std::sort(stops[b].begin(), stops[b].end(), [](const Stop& u, const Stop& w) { return u.pos < w.pos; });
  }

  // Branch edges between consecutive stops.
  for (std::size_t b = 0; b < brs.size(); ++b) {
    const auto& br = brs[b];
    const int n = int(br.points.size());
    const bool closed = br.kind == BranchKind::Closed;
    const std::size_t m = stops[b].size();
    const std::size_t count = closed ? m : m - 1;
    for (std::size_t k = 0; k < count; ++k) {
      const Stop& s0 = stops[b][k];
      Stop s1 = stops[b][(k + 1) % m];
      if (closed && k + 1 == m) s1.pos += n;
      Edge e;
      e.kind = EdgeKind::Branch;
      e.branch = int(b);
      e.chain.push_back(d.vertices[std::size_t(s0.vertex)].point);
      mpz_class lo = s0.pos.get_num() / s0.pos.get_den();
      for (long idx = lo.get_si() + 1; Rational(idx) < s1.pos; ++idx) e.chain.push_back(br.points[std::size_t(idx % n)]);
      e.chain.push_back(d.vertices[std::size_t(s1.vertex)].point);
      d.edges.push_back(std::move(e));
      HalfEdge fwd, rev;
      fwd.origin = s0.vertex;
      fwd.target = s1.vertex;
      rev.origin = s1.vertex;
      rev.target = s0.vertex;
      d.half_edges.push_back(fwd);
      d.half_edges.push_back(rev);
    }
  }

  // Boundary arcs.
  if (endpoint_vertices.empty()) {
    Vertex v;
    v.kind = VertexKind::Dummy;
    v.point = {Rational(1), Rational(0)};
    d.vertices.push_back(v);
    endpoint_vertices.push_back(int(d.vertices.size()) - 1);
  }
  std::sort(endpoint_vertices.begin(), endpoint_vertices.end(),
            [&](int u, int w) { return circle_less(d.vertices[std::size_t(u)].point, d.vertices[std::size_t(w)].point); });
  for (std::size_t k = 0; k < endpoint_vertices.size(); ++k) {
    const int u = endpoint_vertices[k];
    const int w = endpoint_vertices[(k + 1) % endpoint_vertices.size()];
    Edge e;
    e.kind = EdgeKind::Arc;
    e.angle_from = angle_of(d.vertices[std::size_t(u)].point);
    e.angle_to = angle_of(d.vertices[std::size_t(w)].point);
    if (e.angle_to <= e.angle_from) e.angle_to += kTwoPi;
    d.edges.push_back(e);
    HalfEdge fwd, rev;
    fwd.origin = u;
    fwd.target = w;
    rev.origin = w;
    rev.target = u;
    d.half_edges.push_back(fwd);
    d.half_edges.push_back(rev);
  }

  // Outgoing directions in counterclockwise order.
  const int H = int(d.half_edges.size());
  std::vector<Dir> dir(static_cast<std::size_t>(H));
  for (int h = 0; h < H; ++h) {
    const Edge& e = d.edges[std::size_t(h / 2)];
    const bool fwd = h % 2 == 0;
    if (e.kind == EdgeKind::Branch) {
      const Point& a = fwd ? e.chain[0] : e.chain.back();
      const Point& b = fwd ? e.chain[1] : e.chain[e.chain.size() - 2];
      dir[std::size_t(h)] = {b.x - a.x, b.y - a.y};
    } else {
      const Point& o = d.vertices[std::size_t(d.half_edges[std::size_t(h)].origin)].point;
      dir[std::size_t(h)] = fwd ? Dir{-o.y, o.x} : Dir{o.y, -o.x};
    }
    d.vertices[std::size_t(d.half_edges[std::size_t(h)].origin)].out.push_back(h);
  }
  for (auto& v : d.vertices) {
    std::sort(v.out.begin(), v.out.end(), [&](int a, int b) { return ccw_less(dir[std::size_t(a)], dir[std::size_t(b)]); });
    for (std::size_t k = 1; k < v.out.size(); ++k) {
      if (same_direction(dir[std::size_t(v.out[k - 1])], dir[std::size_t(v.out[k])])) {
        fail(ErrorCode::Tangency, "two edges leave a vertex in the same direction");
      }
    }
  }
  for (int h = 0; h < H; ++h) {
    const Vertex& v = d.vertices[std::size_t(d.half_edges[std::size_t(h)].target)];
    const auto it = std::find(v.out.begin(), v.out.end(), h ^ 1);
    const std::size_t k = std::size_t(it - v.out.begin());
    d.half_edges[std::size_t(h)].next = v.out[(k + v.out.size() - 1) % v.out.size()];
  }

  // Faces.
  struct Cycle {
    std::vector<int> hs;
    double area2;
    bool outside;
  };
  std::vector<Cycle> cycles;
  std::vector<int> cycle_of(std::size_t(H), -1);
  for (int h0 = 0; h0 < H; ++h0) {
    if (cycle_of[std::size_t(h0)] >= 0) continue;
    Cycle cyc;
    Rational exact = 0;
    double sweep = 0.0;
    bool all_cw_arcs = true;
    bool has_arc = false;
    int h = h0;
    do {
      cycle_of[std::size_t(h)] = int(cycles.size());
      cyc.hs.push_back(h);
      const Edge& e = d.edges[std::size_t(h / 2)];
      if (e.kind == EdgeKind::Branch) {
        all_cw_arcs = false;
        const auto& ch = e.chain;
        for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
          const Point& a = h % 2 == 0 ? ch[i] : ch[ch.size() - 1 - i];
          const Point& b = h % 2 == 0 ? ch[i + 1] : ch[ch.size() - 2 - i];
          exact += a.x * b.y - a.y * b.x;
        }
      } else {
        has_arc = true;
        if (h % 2 == 0) all_cw_arcs = false;
        const double span = e.angle_to - e.angle_from;
        sweep += h % 2 == 0 ? span : -span;
      }
      h = d.half_edges[std::size_t(h)].next;
    } while (h != h0);
    cyc.outside = all_cw_arcs;
    cyc.area2 = exact.get_d() + sweep;
    if (!has_arc && exact == 0) fail(ErrorCode::NotGeneric, "degenerate face with zero area");
    cycles.push_back(std::move(cyc));
  }
  std::vector<int> face_of_cycle(cycles.size(), -1);
  std::vector<int> holes;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (cycles[c].outside) continue;
    if (cycles[c].area2 > 0) {
      face_of_cycle[c] = int(d.regions.size());
      Region r;
      r.cycles.push_back(cycles[c].hs);
      r.area = cycles[c].area2 / 2.0;
      d.regions.push_back(std::move(r));
    } else {
      holes.push_back(int(c));
    }
  }
  for (auto& r : d.regions) r.rings.push_back(d.cycle_polygon(r.cycles.front()));

  // Connected components.
  std::vector<int> parent(d.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (int h = 0; h < H; h += 2) {
    const int a = find_root(parent, d.half_edges[std::size_t(h)].origin);
    const int b = find_root(parent, d.half_edges[std::size_t(h)].target);
    if (a != b) parent[std::size_t(a)] = b;
  }
  std::map<int, int> roots;
  for (std::size_t v = 0; v < d.vertices.size(); ++v) roots.emplace(find_root(parent, int(v)), 0);
  d.components = int(roots.size());

  for (int c : holes) {
    const Cycle& cyc = cycles[std::size_t(c)];
    const PointD probe = to_double(d.vertices[std::size_t(d.half_edges[std::size_t(cyc.hs.front())].origin)].point);
    const int comp = find_root(parent, d.half_edges[std::size_t(cyc.hs.front())].origin);
    int best = -1;
    for (std::size_t f = 0; f < d.regions.size(); ++f) {
      const int fc = find_root(parent, d.half_edges[std::size_t(d.regions[f].cycles.front().front())].origin);
      if (fc == comp) continue;
      if (!contains(d.regions[f].rings.front(), probe)) continue;
      if (best < 0 || d.regions[f].area < d.regions[std::size_t(best)].area) best = int(f);
    }
    if (best < 0) fail(ErrorCode::NotGeneric, "closed component outside every face");
    face_of_cycle[std::size_t(c)] = best;
    auto& r = d.regions[std::size_t(best)];
    r.cycles.push_back(cyc.hs);
    r.rings.push_back(d.cycle_polygon(cyc.hs));
    r.area += cyc.area2 / 2.0;
  }
  for (int h = 0; h < H; ++h) d.half_edges[std::size_t(h)].face = face_of_cycle[std::size_t(cycle_of[std::size_t(h)])];

  // Corners, neighbours, interior flags.
  for (std::size_t f = 0; f < d.regions.size(); ++f) {
    Region& r = d.regions[f];
    r.interior = true;
    for (const auto& cyc : r.cycles) {
      for (int h : cyc) {
        const Edge& e = d.edges[std::size_t(h / 2)];
        if (e.kind == EdgeKind::Arc) r.interior = false;
        const Vertex& v = d.vertices[std::size_t(d.half_edges[std::size_t(h)].origin)];
        if (v.kind == VertexKind::Endpoint) r.interior = false;
        if (v.kind == VertexKind::Crossing) {
          const int slot = int(std::find(v.out.begin(), v.out.end(), h) - v.out.begin());
          r.corners.push_back({v.crossing, slot});
        }
        if (e.kind == EdgeKind::Branch) {
          const int other = d.half_edges[std::size_t(h ^ 1)].face;
          if (other >= 0) r.neighbors.push_back(other);
        }
      }
    }
    std::sort(r.neighbors.begin(), r.neighbors.end());
  }

  if (euler_characteristic(d) != 1 + d.components) fail(ErrorCode::NotGeneric, "Euler characteristic mismatch");
  compute_samples(d);
  return d;
}

std::vector<PointD> Divide::cycle_polygon(const std::vector<int>& cycle, double arc_step) const {
  std::vector<PointD> ring;
  for (int h : cycle) {
    const Edge& e = edges[std::size_t(h / 2)];
    if (e.kind == EdgeKind::Branch) {
      const auto& ch = e.chain;
      for (std::size_t i = 0; i + 1 < ch.size(); ++i) ring.push_back(to_double(h % 2 == 0 ? ch[i] : ch[ch.size() - 1 - i]));
    } else {
      const double span = e.angle_to - e.angle_from;
      const int steps = std::max(1, int(std::ceil(span / arc_step)));
      for (int k = 0; k < steps; ++k) {
        const double a = h % 2 == 0 ? e.angle_from + span * k / steps : e.angle_to - span * k / steps;
        ring.push_back({std::cos(a), std::sin(a)});
      }
    }
  }
  return ring;
}

long long euler_characteristic(const Divide& d) {
  // Faces: every region plus the outside of the disk.
  return static_cast<long long>(d.vertices.size()) - static_cast<long long>(d.edges.size()) +
         static_cast<long long>(d.regions.size()) + 1;
}

}  // namespace divide_forge
