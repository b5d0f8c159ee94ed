#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"
#include "divide_forge/geometry.hpp"

namespace divide_forge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kStarBits = 40;

PointD operator+(PointD a, PointD b) { return {a.x + b.x, a.y + b.y}; }
PointD operator-(PointD a, PointD b) { return {a.x - b.x, a.y - b.y}; }
PointD operator*(double k, PointD a) { return {k * a.x, k * a.y}; }
double dot(PointD a, PointD b) { return a.x * b.x + a.y * b.y; }
double cross(PointD a, PointD b) { return a.x * b.y - a.y * b.x; }
double len(PointD a) { return std::hypot(a.x, a.y); }

Rational rho() { return Rational(23, 25); }

// ---------------------------------------------------------------------------
// Polylines in double precision with cumulative arclength.

struct Path {
  std::vector<PointD> pts;
  bool closed = false;
  std::vector<double> S;  // S[k] = arclength at vertex k; closed paths carry S[n] = total

  Path(std::vector<PointD> p, bool c) : pts(std::move(p)), closed(c) {
    S.assign(1, 0.0);
    const std::size_t n = pts.size();
    const std::size_t m = closed ? n : n - 1;
    for (std::size_t k = 0; k < m; ++k) S.push_back(S.back() + len(pts[(k + 1) % n] - pts[k]));
  }
  double length() const { return S.back(); }
  std::size_t segments() const { return S.size() - 1; }
  PointD vertex(std::size_t k) const { return pts[k % pts.size()]; }
  double at_incidence(int seg, double t) const {
    return S[std::size_t(seg)] + t * (S[std::size_t(seg) + 1] - S[std::size_t(seg)]);
  }
  PointD point(double s) const {
    if (closed) {
      s = std::fmod(s, length());
      if (s < 0) s += length();
    }
    s = std::clamp(s, 0.0, length());
    std::size_t k = std::size_t(std::upper_bound(S.begin(), S.end(), s) - S.begin());
    k = std::clamp<std::size_t>(k, 1, segments()) - 1;
    const double span = S[k + 1] - S[k];
    const double t = span > 0 ? (s - S[k]) / span : 0.0;
    return (1 - t) * vertex(k) + t * vertex(k + 1);
  }
};

std::vector<PointD> to_doubles(const std::vector<Point>& pts) {
  std::vector<PointD> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(divide_forge::to_double(p));
  return out;
}

// ---------------------------------------------------------------------------
// Guide curves: the base scaled by rho, open branches extended radially to the circle, and every
// branch replaced by a straight chord near each of its crossings.

struct Guide {
  std::vector<Branch> branches;
  std::vector<std::vector<int>> chord;  // per branch, the middle segment of each chord
  Divide arrangement;
};

Branch scaled_extended(const Branch& br) {
  const Rational r = rho();
  Branch out{br.kind, {}};
  auto scale = [&](const Point& p) {
    Point q{p.x * r, p.y * r};
    q.x.canonicalize();
    q.y.canonicalize();
    return q;
  };
  auto mid = [&](const Point& e) {
    Point q{e.x * (1 + r) / 2, e.y * (1 + r) / 2};
    q.x.canonicalize();
    q.y.canonicalize();
    return q;
  };
  if (br.kind == BranchKind::Open) {
    out.points.push_back(br.points.front());
    out.points.push_back(mid(br.points.front()));
  }
  for (const auto& p : br.points) out.points.push_back(scale(p));
  if (br.kind == BranchKind::Open) {
    out.points.push_back(mid(br.points.back()));
    out.points.push_back(br.points.back());
  }
  return out;
}

// Straightens `br` around the given arclength positions. Returns the middle chord segments.
std::vector<int> straighten(Branch& br, std::vector<double> marks, double shrink) {
  if (marks.empty()) return {};
  Path path(to_doubles(br.points), br.kind == BranchKind::Closed);
  const double L = path.length();
  std::sort(marks.begin(), marks.end());

  if (path.closed) {
    // Restart the loop at the vertex nearest the middle of the widest gap between marks.
    double best_gap = -1, start_s = 0;
    for (std::size_t i = 0; i < marks.size(); ++i) {
      const double a = marks[i];
      const double b = i + 1 < marks.size() ? marks[i + 1] : marks.front() + L;
      if (b - a > best_gap) {
        best_gap = b - a;
        start_s = std::fmod((a + b) / 2, L);
      }
    }
    std::size_t k0 = 0;
    double dk = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < br.points.size(); ++k) {
      if (std::abs(path.S[k] - start_s) < dk) {
        dk = std::abs(path.S[k] - start_s);
        k0 = k;
      }
    }
    std::rotate(br.points.begin(), br.points.begin() + long(k0), br.points.end());
    const double shift = path.S[k0];
    for (auto& m : marks) {
      m = std::fmod(m - shift, L);
      if (m < 0) m += L;
    }
    std::sort(marks.begin(), marks.end());
    path = Path(to_doubles(br.points), true);
  }

  const std::size_t n = br.points.size();
  const double lo = path.closed ? 0.0 : path.S[2];
  const double hi = path.closed ? L : path.S[n - 3];
  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const double prev = i > 0 ? marks[i - 1] : (path.closed ? marks.back() - L : lo);
    const double next = i + 1 < marks.size() ? marks[i + 1] : (path.closed ? marks.front() + L : hi);
    double w = 0.3 * std::min(marks[i] - prev, next - marks[i]) * shrink;
    if (path.closed && marks.size() == 1) w = 0.15 * L * shrink;
    // Keep the chord close to the curve it replaces.
    for (int it = 0; it < 40; ++it) {
      const PointD a = path.point(marks[i] - w), b = path.point(marks[i] + w);
      double dev = 0.0;
      for (std::size_t k = 0; k < path.segments(); ++k) {
        if (path.S[k] <= marks[i] - w || path.S[k] >= marks[i] + w) continue;
        const PointD v = path.vertex(k);
        dev = std::max(dev, std::sqrt(dist2_point_segment(v, a, b)));
      }
      if (dev <= 0.05 * w) break;
      w *= 0.5;
    }
    spans.push_back({marks[i] - w, marks[i] + w});
  }

  std::vector<Point> out;
  std::vector<int> middles;
  std::size_t next_span = 0;
  const std::size_t last = path.closed ? n : n - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    const double s = path.S[k];
    while (next_span < spans.size() && spans[next_span].second < s) {
      const auto [a, b] = spans[next_span++];
      const Point A = round_point(path.point(a), kStarBits), B = round_point(path.point(b), kStarBits);
      Point q1{A.x + (B.x - A.x) / 4, A.y + (B.y - A.y) / 4};
      Point q3{A.x + 3 * (B.x - A.x) / 4, A.y + 3 * (B.y - A.y) / 4};
      q1.x.canonicalize();
      q1.y.canonicalize();
      q3.x.canonicalize();
      q3.y.canonicalize();
      out.push_back(A);
      middles.push_back(int(out.size()));
      out.push_back(q1);
      out.push_back(q3);
      out.push_back(B);
    }
    if (k == n) break;  // closing vertex of a loop
    bool inside = false;
    for (const auto& [a, b] : spans) inside = inside || (s >= a && s <= b);
    if (!inside) out.push_back(br.points[k]);
  }
  br.points = std::move(out);
  return middles;
}

Guide make_guide(const Divide& base, double shrink) {
  Guide g;
  std::vector<std::vector<double>> marks(base.branches.size());
  std::vector<Path> paths;
  for (const auto& br : base.branches) {
    g.branches.push_back(scaled_extended(br));
    paths.emplace_back(to_doubles(g.branches.back().points), br.kind == BranchKind::Closed);
  }
  for (const auto& c : base.crossings) {
    for (const auto& inc : c.passes) {
      const std::size_t b = std::size_t(inc.branch);
      const int off = base.branches[b].kind == BranchKind::Open ? 2 : 0;
      marks[b].push_back(paths[b].at_incidence(inc.segment + off, inc.t.get_d()));
    }
  }
  for (std::size_t b = 0; b < g.branches.size(); ++b) g.chord.push_back(straighten(g.branches[b], marks[b], shrink));
  g.arrangement = build_arrangement(g.branches);
  if (g.arrangement.crossings.size() != base.crossings.size()) {
    throw Error(ErrorCode::NotGeneric, "straightening the base changed its crossings");
  }
  for (const auto& c : g.arrangement.crossings) {
    for (const auto& inc : c.passes) {
      const auto& mids = g.chord[std::size_t(inc.branch)];
      if (std::find(mids.begin(), mids.end(), inc.segment) == mids.end()) {
        throw Error(ErrorCode::NotGeneric, "a base crossing fell outside its straightened chord");
      }
    }
  }
  if (base.is_signed()) {
    std::size_t best = 0;
    for (std::size_t f = 1; f < base.regions.size(); ++f)
      if (base.regions[f].clearance > base.regions[best].clearance) best = f;
    const Rational r = rho();
    Point a{base.regions[best].sample.x * r, base.regions[best].sample.y * r};
    a.x.canonicalize();
    a.y.canonicalize();
    g.arrangement = assign_signs(std::move(g.arrangement), {{a, base.regions[best].sign}});
  }
  return g;
}

Guide make_guide_retrying(const Divide& base) {
  double shrink = 1.0;
  for (int attempt = 0;; ++attempt) {
    try {
      return make_guide(base, shrink);
    } catch (const Error&) {
      if (attempt >= 5) throw;
      shrink *= 0.5;
    }
  }
}


// ---------------------------------------------------------------------------
// The band around the core: B(s) + v eta N(s), miter normals at the vertices, linear in between.

struct Band {
  Path core;
  std::vector<PointD> seg_n;  // unit left normals of the segments
  std::vector<PointD> N;      // per vertex
  double eta = 0.0;
  double nmax = 1.0;

  explicit Band(Path c) : core(std::move(c)) {
    const std::size_t n = core.pts.size(), m = core.segments();
    for (std::size_t k = 0; k < m; ++k) {
      const PointD d = core.vertex(k + 1) - core.vertex(k);
      seg_n.push_back({-d.y / len(d), d.x / len(d)});
    }
    N.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (!core.closed && k == 0) {
        N[k] = seg_n.front();
      } else if (!core.closed && k == n - 1) {
        N[k] = seg_n.back();
      } else {
        const PointD a = seg_n[(k + m - 1) % m], b = seg_n[k % m];
        N[k] = (1.0 / (1.0 + dot(a, b))) * (a + b);
      }
      nmax = std::max(nmax, len(N[k]));
    }
  }

  PointD at(double s, double v) const {
    const double L = core.length();
    if (core.closed) {
      s = std::fmod(s, L);
      if (s < 0) s += L;
    }
    s = std::clamp(s, 0.0, L);
    std::size_t k = std::size_t(std::upper_bound(core.S.begin(), core.S.end(), s) - core.S.begin());
    k = std::clamp<std::size_t>(k, 1, core.segments()) - 1;
    const double t = (s - core.S[k]) / (core.S[k + 1] - core.S[k]);
    const std::size_t n = core.pts.size();
    const PointD p0 = core.vertex(k) + (v * eta) * N[k % n];
    const PointD p1 = core.vertex(k + 1) + (v * eta) * N[(k + 1) % n];
    return (1 - t) * p0 + t * p1;
  }
};

// ---------------------------------------------------------------------------
// Piecewise linear reparametrization between the pattern's along-coordinate and core arclength.
// Open cores map [-1, 1] into [a, L - a]; closed cores map the circle [0, 1) onto [0, L).

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  std::size_t k = std::size_t(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
  k = std::clamp<std::size_t>(k, 1, xs.size() - 1) - 1;
  const double t = (x - xs[k]) / (xs[k + 1] - xs[k]);
  return ys[k] + t * (ys[k + 1] - ys[k]);
}

struct Reparam {
  bool closed = false;
  double L = 0.0;
  std::vector<double> al, s;  // closed: al ascending in [0,1), s ascending within one period

  double forward(double a) const {
    if (!closed) return interpolate(al, s, a);
    auto xs = al, ys = s;
    xs.push_back(al.front() + 1);
    ys.push_back(s.front() + L);
    double x = a - std::floor(a);
    if (x < al.front()) x += 1;
    double r = std::fmod(interpolate(xs, ys, x), L);
    return r < 0 ? r + L : r;
  }
  double inverse(double arc) const {
    if (!closed) return interpolate(s, al, arc);
    auto xs = s, ys = al;
    xs.push_back(s.front() + L);
    ys.push_back(al.front() + 1);
    double x = std::fmod(arc, L);
    if (x < 0) x += L;
    while (x < s.front()) x += L;
    while (x >= s.front() + L) x -= L;
    const double r = interpolate(xs, ys, x);
    return r - std::floor(r);
  }
};

struct Event {
  double s = 0.0;
  int crossing = -1;
  int slot = 0;       // which pass of the guide crossing runs along the core
  bool self = false;  // both passes on the core
  int seg = -1;       // middle chord segment of the core holding the crossing
  double sin_angle = 0.0;
  double along = 0.0;
  double half = 0.0;  // window half-width in the along coordinate
};

std::vector<Event> collect_events(const Guide& g, int core, const Path& path) {
  std::vector<Event> out;
  const auto& arr = g.arrangement;
  for (std::size_t c = 0; c < arr.crossings.size(); ++c) {
    const auto& cr = arr.crossings[c];
    auto direction = [&](const Incidence& inc) {
      const auto& pts = g.branches[std::size_t(inc.branch)].points;
      const PointD a = to_double(pts[std::size_t(inc.segment)]);
      const PointD b = to_double(pts[(std::size_t(inc.segment) + 1) % pts.size()]);
      return (1.0 / len(b - a)) * (b - a);
    };
    const double sn = std::abs(cross(direction(cr.passes[0]), direction(cr.passes[1])));
    const bool self = cr.passes[0].branch == core && cr.passes[1].branch == core;
    for (int slot = 0; slot < 2; ++slot) {
      const auto& inc = cr.passes[std::size_t(slot)];
      if (inc.branch != core) continue;
      Event e;
      e.s = path.at_incidence(inc.segment, inc.t.get_d());
      e.crossing = int(c);
      e.slot = slot;
      e.self = self;
      e.seg = inc.segment;
      e.sin_angle = sn;
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end(), [](const Event& x, const Event& y) { return x.s < y.s; });
  return out;
}

// Puts each event's window into the gap of forbidden along-values nearest to its natural
// position, spreading events that share a gap evenly.
Reparam place_events(std::vector<Event>& ev, std::vector<double> forbidden, const Path& path, double a) {
  Reparam r;
  r.closed = path.closed;
  r.L = path.length();
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  if (forbidden.empty()) forbidden.push_back(0.0);
  const std::size_t nf = forbidden.size();

  std::vector<std::size_t> gap(ev.size());
  std::vector<double> lifted(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    double x = r.closed ? ev[i].s / r.L : -1.0 + 2.0 * (ev[i].s - a) / (r.L - 2.0 * a);
    std::size_t k = std::size_t(std::upper_bound(forbidden.begin(), forbidden.end(), x) - forbidden.begin());
    if (r.closed) {
      k = (k == 0 ? nf : k) - 1;
      if (x < forbidden[k]) x += 1;
    } else {
      k = std::clamp<std::size_t>(k, 1, nf - 1) - 1;
    }
    gap[i] = k;
    lifted[i] = x;
  }
  std::vector<std::vector<std::size_t>> members(nf);
  for (std::size_t i = 0; i < ev.size(); ++i) members[gap[i]].push_back(i);
  for (std::size_t k = 0; k < nf; ++k) {
    auto& m = members[k];
    if (m.empty()) continue;
    std::sort(m.begin(), m.end(), [&](std::size_t x, std::size_t y) { return lifted[x] < lifted[y]; });
    const double lo = forbidden[k];
    const double hi = k + 1 < nf ? forbidden[k + 1] : forbidden.front() + 1;
    const double step = (hi - lo) / double(m.size() + 1);
    for (std::size_t j = 0; j < m.size(); ++j) {
      double x = lo + double(j + 1) * step;
      if (r.closed) x -= std::floor(x);
      ev[m[j]].along = x;
      ev[m[j]].half = 0.25 * step;
    }
  }

  const auto& S = path.S;
  std::vector<std::pair<double, double>> ctrl;
  if (!r.closed) ctrl.push_back({-1.0, a});
  for (const auto& e : ev) {
    double lo = e.along - e.half, hi = e.along + e.half;
    if (r.closed) {
      lo -= std::floor(lo);
      hi -= std::floor(hi);
    }
    ctrl.push_back({lo, S[std::size_t(e.seg)]});
    ctrl.push_back({hi, S[std::size_t(e.seg) + 1]});
  }
  if (!r.closed) ctrl.push_back({1.0, r.L - a});
  if (r.closed && ctrl.empty()) ctrl.push_back({0.0, 0.0});
  std::sort(ctrl.begin(), ctrl.end());
  for (const auto& [x, y] : ctrl) {
    r.al.push_back(x);
    r.s.push_back(y);
  }
  if (r.closed) {
    // Unwrap the arclengths into one increasing period.
    for (std::size_t i = 1; i < r.s.size(); ++i)
      while (r.s[i] <= r.s[i - 1]) r.s[i] += r.L;
    if (r.s.back() >= r.s.front() + r.L) throw Error(ErrorCode::NotGeneric, "windows out of cyclic order");
  }
  for (std::size_t i = 1; i < r.al.size(); ++i) {
    if (!(r.al[i] > r.al[i - 1]) || !(r.s[i] > r.s[i - 1])) {
      throw Error(ErrorCode::NotGeneric, "crossing windows overlap");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Automatic band width.

double segment_distance(PointD a, PointD b, PointD c, PointD d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 0.0;
  return std::sqrt(std::min({dist2_point_segment(a, c, d), dist2_point_segment(b, c, d), dist2_point_segment(c, a, b),
                             dist2_point_segment(d, a, b)}));
}

double auto_eta(const Band& band, const std::vector<Event>& ev, const Guide& g, int core) {
  double eta = 0.25;
  const Path& path = band.core;
  for (const auto& e : ev) {
    const double w = std::min(e.s - path.S[std::size_t(e.seg)], path.S[std::size_t(e.seg) + 1] - e.s);
    eta = std::min(eta, w * e.sin_angle / 3.0);
  }
  const std::size_t m = path.segments();
  auto seg_len = [&](std::size_t k) { return path.S[k + 1] - path.S[k]; };
  for (std::size_t k = 0; k < path.pts.size(); ++k) {
    if (!path.closed && (k == 0 || k + 1 == path.pts.size())) continue;
    const std::size_t prev = (k + m - 1) % m, next = k % m;
    const PointD a = band.seg_n[prev], b = band.seg_n[next];
    const double c = 1.0 + dot(a, b);
    if (c < 1e-12) return 0.0;
    const double tan_half = std::abs(cross(a, b)) / c;
    if (tan_half > 0) eta = std::min(eta, 0.45 * std::min(seg_len(prev), seg_len(next)) / tan_half);
  }

  // Clearance between the core and everything not meeting it at a shared crossing.
  struct Rec {
    PointD a, b;
    int branch;
    int seg;
  };
  std::vector<Rec> recs;
  for (std::size_t b = 0; b < g.branches.size(); ++b) {
    const auto& pts = g.branches[b].points;
    const std::size_t ns = g.branches[b].kind == BranchKind::Closed ? pts.size() : pts.size() - 1;
    for (std::size_t k = 0; k < ns; ++k) recs.push_back({to_double(pts[k]), to_double(pts[(k + 1) % pts.size()]), int(b), int(k)});
  }
  std::unordered_map<long long, std::vector<std::pair<int, int>>> near;  // (branch, seg) -> (crossing, slot)
  auto key = [](long long b, long long s) { return b * 1000000007LL + s; };
  for (std::size_t c = 0; c < g.arrangement.crossings.size(); ++c) {
    for (int slot = 0; slot < 2; ++slot) {
      const auto& inc = g.arrangement.crossings[c].passes[std::size_t(slot)];
      const int nseg = int(g.branches[std::size_t(inc.branch)].points.size());
      for (int d = -1; d <= 1; ++d) {
        int s = inc.segment + d;
        if (g.branches[std::size_t(inc.branch)].kind == BranchKind::Closed) s = (s + nseg) % nseg;
        near[key(inc.branch, s)].push_back({int(c), slot});
      }
    }
  }
  auto shares_crossing = [&](const Rec& x, const Rec& y) {
    const auto ix = near.find(key(x.branch, x.seg)), iy = near.find(key(y.branch, y.seg));
    if (ix == near.end() || iy == near.end()) return false;
    for (const auto& [c1, s1] : ix->second)
      for (const auto& [c2, s2] : iy->second)
        if (c1 == c2 && s1 != s2) return true;
    return false;
  };

  auto excluded = [&](const Rec& r, const Rec& o) {
    if (o.branch == core && r.branch == core) {
      const long long ds = std::abs(o.seg - r.seg);
      if (ds <= 1 || (path.closed && ds == (long long)(m) - 1)) return true;
      const double R = 2.5 * eta;
      double gap = std::abs(path.S[std::size_t(std::min(o.seg, r.seg)) + 1] - path.S[std::size_t(std::max(o.seg, r.seg))]);
      if (path.closed) gap = std::min(gap, path.length() - gap);
      if (gap < 4.0 * R) return true;
    }
    return shares_crossing(r, o);
  };
  for (int round = 0; round < 2; ++round) {
    const double R = 2.5 * eta;
    if (R <= 0) return 0.0;
    // Sweep over x with boxes padded by R.
    std::vector<std::size_t> order(recs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto xlo = [&](std::size_t i) { return std::min(recs[i].a.x, recs[i].b.x) - R; };
    auto xhi = [&](std::size_t i) { return std::max(recs[i].a.x, recs[i].b.x) + R; };
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return xlo(i) < xlo(j); });
    double dmin = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> active;
    for (std::size_t i : order) {
      const double x0 = xlo(i);
      active.erase(std::remove_if(active.begin(), active.end(), [&](std::size_t j) { return xhi(j) < x0; }), active.end());
      const auto& r = recs[i];
      const double y0 = std::min(r.a.y, r.b.y) - R, y1 = std::max(r.a.y, r.b.y) + R;
      for (std::size_t j : active) {
        const auto& o = recs[j];
        if (r.branch != core && o.branch != core) continue;
        if (std::max(o.a.y, o.b.y) + R < y0 || std::min(o.a.y, o.b.y) - R > y1) continue;
        if (r.branch == core ? excluded(r, o) : excluded(o, r)) continue;
        dmin = std::min(dmin, segment_distance(r.a, r.b, o.a, o.b));
      }
      active.push_back(i);
    }
    if (!(0.45 * dmin < eta)) break;
    eta = 0.45 * dmin;
  }
  return eta;
}

// ---------------------------------------------------------------------------
// Pattern strands in band coordinates. Each pass is monotone in the along-coordinate.

struct Pass {
  double begin = 0.0, end = 0.0;
  std::vector<double> regular;
  std::function<double(double)> v;
};

struct Expected {
  int pa, pb;
  double u, v;
};

struct PatternSpec {
  int p = 1, q = 1;
  bool closed = false;                   // strands are loops (one pass each)
  std::vector<std::vector<Pass>> strands;
  std::vector<double> forbidden;         // along-values where strands may cross each other
  long long pattern_crossings = 0;
  std::vector<Expected> expected;        // per pattern crossing, when known
};

PatternSpec chebyshev_spec(int p, int q, int samples) {
  PatternSpec spec;
  spec.p = p;
  spec.q = q;
  std::vector<Pass> passes;
  const int steps = q * samples;
  for (int j = 0; j < p; ++j) {
    Pass ps;
    ps.begin = j % 2 == 0 ? 1.0 : -1.0;
    ps.end = -ps.begin;
    for (int i = 0; i < steps; ++i) ps.regular.push_back(std::cos(p * (j + (i + 0.5) / steps) * kPi / p));
    ps.v = [p, q, j](double u) {
      const double ac = std::acos(std::clamp(u, -1.0, 1.0));
      const double theta = (j * kPi + (j % 2 == 0 ? ac : kPi - ac)) / p;
      return std::cos(q * theta);
    };
    passes.push_back(std::move(ps));
  }
  spec.strands.push_back(std::move(passes));
  for (int j = 0; j <= q; ++j) spec.forbidden.push_back(std::cos(kPi * j / q));
  spec.pattern_crossings = static_cast<long long>(p - 1) * (q - 1) / 2;
  for (const auto& c : blocks::cheb_crossings(p, q)) {
    spec.expected.push_back({int(c.m1 / q), int(c.m2 / q), std::cos(kPi * double(c.m1) / q), std::cos(kPi * double(c.m1) / p)});
  }
  return spec;
}

PatternSpec lissajous_spec(int p, int q, int samples) {
  PatternSpec spec;
  spec.p = p;
  spec.q = q;
  spec.closed = true;
  const int r = int(gcd_ll(p, q)), pp = p / r, qq = q / r;
  const int n_reg = 6 * samples * qq + 24;
  for (int k = 0; k < r; ++k) {
    Pass ps;
    const double shift = double(k) / q;
    ps.begin = -shift;
    ps.end = pp - shift;
    for (int i = 0; i < n_reg; ++i) ps.regular.push_back(ps.begin + pp * (i + 0.5) / n_reg);
    ps.v = [pp, qq, shift](double a) { return std::sin(2.0 * kPi * qq * (a + shift) / pp); };
    spec.strands.push_back({std::move(ps)});
  }
  // Lift (k, m) sits at s = (a + k/q + m) / pp; two lifts meet where their phases sum to an odd
  // multiple of pi.
  std::vector<double> c;
  for (int k = 0; k < r; ++k)
    for (int m = 0; m < pp; ++m) c.push_back(double(k) / q + m);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double C = (c[i] + c[j]) / 2;
      const double scale = double(pp) / (4.0 * qq);
      const long long lo = static_cast<long long>(std::floor((C / scale - 1) / 2)) - 1;
      const long long hi = static_cast<long long>(std::ceil(((C + 1) / scale - 1) / 2)) + 1;
      for (long long n = lo; n <= hi; ++n) {
        const double a = scale * double(1 + 2 * n) - C;
        if (a < 0 || a >= 1) continue;
        spec.forbidden.push_back(a);
        ++spec.pattern_crossings;
      }
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Composition.

struct Composed {
  Divide divide;
  double eta = 0.0;
  Reparam rep;
};

enum class SignMode { PPlus, None };

double window_offset(const Event& e, double x, bool closed) {
  double d = x - e.along;
  if (closed) d -= std::round(d);
  return d;
}

Composed compose(const Guide& guide, int core, const PatternSpec& spec, double eta, SignMode mode) {
  const Branch& core_br = guide.branches[std::size_t(core)];
  const bool closed = core_br.kind == BranchKind::Closed;
  Band band(Path(to_doubles(core_br.points), closed));
  band.eta = eta;
  const Path& path = band.core;
  const double a = closed ? 0.0 : 1.0 - std::sqrt(1.0 - eta * eta);
  if (!closed && !(a < path.S[1])) throw Error(ErrorCode::EtaTooLarge, "band corners miss the radial extension");

  std::vector<Event> events = collect_events(guide, core, path);
  const Reparam rep = place_events(events, spec.forbidden, path, a);

  std::vector<double> breaks;
  for (std::size_t k = 0; k < path.pts.size(); ++k) {
    const double s = path.S[k];
    if (!closed && (s <= a || s >= path.length() - a)) continue;
    breaks.push_back(rep.inverse(s));
  }

  struct Sample {
    PointD plane;
    double v;
    int pass;
  };
  struct SegInfo {
    int pass = -1;
    int window = -1;
    double v_entry = 0.0;
  };
  std::vector<Branch> branches;
  std::vector<int> others;
  for (std::size_t b = 0; b < guide.branches.size(); ++b) {
    if (int(b) == core) continue;
    others.push_back(int(b));
    branches.push_back(guide.branches[b]);
  }
  const int first_strand = int(branches.size());
  std::vector<std::vector<SegInfo>> seg_info;
  int pass_id = 0;

  for (const auto& strand : spec.strands) {
    std::vector<Sample> samples;
    std::vector<double> alongs_all;
    std::vector<int> pass_of;
    for (std::size_t pi = 0; pi < strand.size(); ++pi) {
      const Pass& ps = strand[pi];
      const double lo = std::min(ps.begin, ps.end), hi = std::max(ps.begin, ps.end);
      std::vector<double> xs = ps.regular;
      // Turning points between passes are left out so the strand crosses the core there properly.
      if (pi == 0) xs.push_back(ps.begin);
      if (!spec.closed && pi + 1 == strand.size()) xs.push_back(ps.end);
      auto add_lifted = [&](double x) {
        if (!closed) {
          xs.push_back(x);
          return;
        }
        for (double y = x + std::floor(lo) - 1; y <= hi + 1; y += 1.0) xs.push_back(y);
      };
      for (double b : breaks) add_lifted(b);
      for (const auto& e : events) {
        add_lifted(e.along - e.half);
        add_lifted(e.along + e.half);
      }
      std::vector<double> kept;
      for (double x : xs) {
        if (x < lo || x > hi) continue;
        if (spec.closed && x >= hi) continue;
        bool inside = false;
        for (const auto& e : events) inside = inside || std::abs(window_offset(e, x, closed)) < e.half * (1 - 1e-9);
        if (!inside) kept.push_back(x);
      }
      std::sort(kept.begin(), kept.end());
      kept.erase(std::unique(kept.begin(), kept.end(), [](double x, double y) { return std::abs(x - y) < 1e-13; }),
                 kept.end());
      if (ps.begin > ps.end) std::reverse(kept.begin(), kept.end());
      if (!alongs_all.empty() && !kept.empty() && std::abs(kept.front() - alongs_all.back()) < 1e-13) {
        kept.erase(kept.begin());
      }
      for (double x : kept) {
        const double v = ps.v(x);
        samples.push_back({band.at(rep.forward(x), v), v, pass_id});
        alongs_all.push_back(x);
        pass_of.push_back(pass_id);
      }
      ++pass_id;
    }

    Branch br{spec.closed ? BranchKind::Closed : BranchKind::Open, {}};
    std::vector<SegInfo> info;
    const std::size_t n = samples.size();
    for (std::size_t i = 0; i < n; ++i) {
      Point pt;
      if (!spec.closed && (i == 0 || i + 1 == n)) {
        pt = circle_point(std::atan2(samples[i].plane.y, samples[i].plane.x), kStarBits);
      } else {
        pt = round_point(samples[i].plane, kStarBits);
      }
      if (!br.points.empty() && br.points.back() == pt) continue;
      if (!br.points.empty()) {
        // Segment from the previous kept sample.
        const std::size_t prev = i - 1;
        double mid = (alongs_all[prev] + alongs_all[i]) / 2;
        SegInfo si;
        si.pass = pass_of[i];
        for (std::size_t e = 0; e < events.size(); ++e) {
          if (std::abs(window_offset(events[e], mid, closed)) < events[e].half) si.window = int(e);
        }
        const bool forward = alongs_all[i] > alongs_all[prev];
        si.v_entry = forward ? samples[prev].v : samples[i].v;
        info.push_back(si);
      }
      br.points.push_back(std::move(pt));
    }
    if (spec.closed) {
      SegInfo si;
      si.pass = pass_of.back();
      const double mid = (alongs_all.back() + alongs_all.front() + (strand.front().end - strand.front().begin)) / 2;
      for (std::size_t e = 0; e < events.size(); ++e) {
        if (std::abs(window_offset(events[e], mid, closed)) < events[e].half) si.window = int(e);
      }
      si.v_entry = samples.back().v;
      info.push_back(si);
    }
    branches.push_back(std::move(br));
    seg_info.push_back(std::move(info));
  }

  Divide composed = build_arrangement(branches);

  // Window ranks by transverse position at entry.
  std::vector<std::vector<std::pair<double, long long>>> occupants(events.size());
  for (std::size_t b = 0; b < seg_info.size(); ++b) {
    for (std::size_t k = 0; k < seg_info[b].size(); ++k) {
      const auto& si = seg_info[b][k];
      if (si.window >= 0) occupants[std::size_t(si.window)].push_back({si.v_entry, (long long)(b) << 32 | (long long)(k)});
    }
  }
  std::unordered_map<long long, int> rank;
  for (auto& occ : occupants) {
    if (int(occ.size()) != spec.p) throw Error(ErrorCode::GenericityFailure, "a crossing window does not hold p strands");
    std::sort(occ.begin(), occ.end());
    for (std::size_t i = 0; i < occ.size(); ++i) rank[occ[i].second] = int(i);
  }

  long long n_self = 0, n_other = 0, n_rest = 0;
  for (const auto& c : guide.arrangement.crossings) {
    const int on_core = (c.passes[0].branch == core) + (c.passes[1].branch == core);
    (on_core == 2 ? n_self : on_core == 1 ? n_other : n_rest) += 1;
  }
  const long long want =
      spec.pattern_crossings + n_self * spec.p * spec.p + n_other * spec.p + n_rest;
  if ((long long)(composed.crossings.size()) != want) {
    throw Error(ErrorCode::EtaTooLarge, "star product has " + std::to_string(composed.crossings.size()) +
                                            " crossings, expected " + std::to_string(want));
  }

  // Provenance tags.
  std::vector<std::vector<std::pair<int, int>>> grid_seen(guide.arrangement.crossings.size());
  std::vector<int> pattern_ids;
  std::vector<std::pair<int, int>> pattern_passes;
  int next_pattern = 0;
  for (std::size_t c = 0; c < composed.crossings.size(); ++c) {
    auto& cr = composed.crossings[c];
    const auto& i0 = cr.passes[0];
    const auto& i1 = cr.passes[1];
    const bool s0 = i0.branch >= first_strand, s1 = i1.branch >= first_strand;
    auto info_of = [&](const Incidence& inc) -> const SegInfo& {
      return seg_info[std::size_t(inc.branch - first_strand)][std::size_t(inc.segment)];
    };
    auto rank_of = [&](const Incidence& inc) {
      return rank.at((long long)(inc.branch - first_strand) << 32 | (long long)(inc.segment));
    };
    if (!s0 && !s1) continue;
    if (s0 && s1) {
      const SegInfo &a0 = info_of(i0), &a1 = info_of(i1);
      if (a0.window < 0 && a1.window < 0) {
        cr.tag = {TagKind::Pattern, next_pattern++, -1, -1};
        pattern_ids.push_back(int(c));
        pattern_passes.push_back({std::min(a0.pass, a1.pass), std::max(a0.pass, a1.pass)});
        continue;
      }
      if (a0.window < 0 || a1.window < 0) throw Error(ErrorCode::GenericityFailure, "strand crossing half inside a window");
      const Event &e0 = events[std::size_t(a0.window)], &e1 = events[std::size_t(a1.window)];
      if (e0.crossing != e1.crossing || e0.slot == e1.slot) {
        throw Error(ErrorCode::GenericityFailure, "strands of unrelated windows cross");
      }
      const int ri = e0.slot == 0 ? rank_of(i0) : rank_of(i1);
      const int rj = e0.slot == 0 ? rank_of(i1) : rank_of(i0);
      cr.tag = {TagKind::Grid, e0.crossing, ri, rj};
      grid_seen[std::size_t(e0.crossing)].push_back({ri, rj});
    } else {
      const Incidence& st = s0 ? i0 : i1;
      const SegInfo& a = info_of(st);
      if (a.window < 0) throw Error(ErrorCode::GenericityFailure, "strand meets another branch outside a window");
      const Event& e = events[std::size_t(a.window)];
      if (e.self) throw Error(ErrorCode::GenericityFailure, "strand meets another branch in a self-crossing window");
      cr.tag = {TagKind::Grid, e.crossing, rank_of(st), 0};
      grid_seen[std::size_t(e.crossing)].push_back({rank_of(st), 0});
    }
  }
  for (std::size_t c = 0; c < grid_seen.size(); ++c) {
    auto& seen = grid_seen[c];
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      throw Error(ErrorCode::GenericityFailure, "grid crossing repeated");
    }
  }

  // Match pattern crossings to the enumerated ones by pass pair and position.
  if (!spec.expected.empty()) {
    std::vector<bool> used(spec.expected.size(), false);
    for (std::size_t k = 0; k < pattern_ids.size(); ++k) {
      auto& cr = composed.crossings[std::size_t(pattern_ids[k])];
      const PointD at = to_double(cr.point);
      int best = -1;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t x = 0; x < spec.expected.size(); ++x) {
        const auto& ex = spec.expected[x];
        if (used[x] || std::min(ex.pa, ex.pb) != pattern_passes[k].first || std::max(ex.pa, ex.pb) != pattern_passes[k].second) {
          continue;
        }
        const double d = len(band.at(rep.forward(ex.u), ex.v) - at);
        if (d < bd) {
          bd = d;
          best = int(x);
        }
      }
      if (best < 0) throw Error(ErrorCode::GenericityFailure, "pattern crossing without a counterpart");
      used[std::size_t(best)] = true;
      cr.tag.index = best;
    }
  }

  auto prov = std::make_shared<Provenance>();
  prov->p = spec.p;
  prov->q = spec.q;
  for (const auto& pt : core_br.points) prov->core.push_back(pt);
  if (closed) prov->core.push_back(core_br.points.front());
  prov->core_branch = core;
  for (int b = first_strand; b < int(branches.size()); ++b) prov->pattern_branches.push_back(b);

  if (mode == SignMode::PPlus && guide.arrangement.is_signed()) {
    std::vector<Anchor> anchors;
    for (std::size_t g = 0; g < guide.arrangement.regions.size(); ++g) {
      const Region& r = guide.arrangement.regions[g];
      if (r.sign != 1 || r.clearance <= 1.5 * eta * band.nmax) continue;
      const int f = composed.locate(to_double(r.sample));
      if (f < 0) continue;
      anchors.push_back({r.sample, 1});
      prov->pplus.push_back({f, int(g)});
    }
    if (anchors.empty()) throw Error(ErrorCode::EtaTooLarge, "no positive base region clears the band");
    composed = assign_signs(std::move(composed), anchors);
  }
  prov->base = std::make_shared<Divide>(guide.arrangement);
  composed.provenance = prov;
  return {std::move(composed), eta, rep};
}

using SpecFn = std::function<PatternSpec(int samples)>;

Composed compose_retrying(const Guide& guide, int core, const SpecFn& make_spec, const StarParams& params,
                          SignMode mode) {
  const Branch& core_br = guide.branches[std::size_t(core)];
  Band band(Path(to_doubles(core_br.points), core_br.kind == BranchKind::Closed));
  const std::vector<Event> events = collect_events(guide, core, band.core);
  double eta = params.eta > 0 ? params.eta : auto_eta(band, events, guide, core);
  if (!(eta > 1e-12)) throw Error(ErrorCode::EtaTooLarge, "no admissible band width for this base");
  int samples = std::max(2, params.samples);
  std::string last;
  for (int attempt = 0; attempt <= params.retries; ++attempt) {
    try {
      return compose(guide, core, make_spec(samples), eta, mode);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InconsistentAnchors) throw;
      last = e.what();
    }
    eta *= 0.5;
    if (attempt % 2 == 1) samples *= 2;
  }
  throw Error(ErrorCode::EtaTooLarge, "star product failed after retries: " + last);
}

void check_branch(const Divide& base, int branch, BranchKind want) {
  if (branch < 0 || std::size_t(branch) >= base.branches.size()) {
    throw Error(ErrorCode::InvalidArgument, "branch index " + std::to_string(branch) + " out of range");
  }
  if (base.branches[std::size_t(branch)].kind != want) {
    throw Error(ErrorCode::WrongBranchKind, want == BranchKind::Open ? "star_product needs an open branch"
                                                                     : "star_product_lissajous needs a closed branch");
  }
}

}  // namespace

Divide star_product(const blocks::ChebyshevPattern& pattern, const Divide& base, int branch, const StarParams& params) {
  check_branch(base, branch, BranchKind::Open);
  if (gcd_ll(pattern.p, pattern.q) != 1) throw Error(ErrorCode::NotCoprime, "star products need a coprime pattern");
  const Guide guide = make_guide_retrying(base);
  const int p = pattern.p, q = pattern.q;
  return compose_retrying(guide, branch, [p, q](int s) { return chebyshev_spec(p, q, s); }, params, SignMode::PPlus).divide;
}

Divide star_product_lissajous(const blocks::LissajousPattern& pattern, const Divide& base, int branch,
                              const StarParams& params) {
  check_branch(base, branch, BranchKind::Closed);
  const Guide guide = make_guide_retrying(base);
  const int p = pattern.p, q = pattern.q;
  return compose_retrying(guide, branch, [p, q](int s) { return lissajous_spec(p, q, s); }, params, SignMode::PPlus)
      .divide;
}

Divide diameter_divide() {
  Divide d = build_arrangement({{BranchKind::Open, {{Rational(-1), Rational(0)}, {Rational(1), Rational(0)}}}});
  return assign_signs(std::move(d), {{{Rational(0), Rational(1, 2)}, 1}});
}

Divide chebyshev_divide(int p, int q, const StarParams& params) {
  if (p < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "chebyshev_divide needs p, q >= 1");
  if (gcd_ll(p, q) != 1) throw Error(ErrorCode::NotCoprime, "chebyshev_divide needs coprime p, q");
  const Guide guide = make_guide_retrying(diameter_divide());
  Composed c = compose_retrying(guide, 0, [p, q](int s) { return chebyshev_spec(p, q, s); }, params, SignMode::None);
  // The guide is the straight diameter: arclength is x + 1 and the band offset is eta * y.
  std::vector<Anchor> anchors;
  for (const auto& r : c.divide.regions) {
    const PointD at = to_double(r.sample);
    const double u = c.rep.inverse(std::clamp(at.x + 1.0, c.rep.s.front(), c.rep.s.back()));
    const int sign = chebyshev_sign(p, q, {u, at.y / c.eta});
    if (sign != 0) anchors.push_back({r.sample, sign});
  }
  c.divide = assign_signs(std::move(c.divide), anchors);
  return c.divide;
}

std::vector<Divide> synth_stages(const puiseux::PuiseuxSeq& seq, const StarParams& params) {
  std::vector<puiseux::Block> blocks = puiseux::divide_spec(seq);
  std::reverse(blocks.begin(), blocks.end());
  std::vector<Divide> stages;
  for (const auto& b : blocks) {
    const int p = static_cast<int>(b.p), q = static_cast<int>(b.q);
    if (stages.empty()) {
      stages.push_back(chebyshev_divide(p, q, params));
      continue;
    }
    const Divide& prev = stages.back();
    const int branch = prev.provenance ? prev.provenance->pattern_branches.front() : 0;
    stages.push_back(star_product(blocks::cheb_pattern(p, q, std::max(2, params.samples)), prev, branch, params));
  }
  for (std::size_t k = 0; k < stages.size(); ++k)
    stages[k].puiseux.assign(seq.pairs().begin(), seq.pairs().begin() + std::ptrdiff_t(k + 1));
  return stages;
}

Divide synth(const puiseux::PuiseuxSeq& seq, const StarParams& params) { return synth_stages(seq, params).back(); }

}  // namespace divide_forge
