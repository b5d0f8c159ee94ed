#include "divide_forge/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>

#include "divide_forge/cycles.hpp"
#include "divide_forge/error.hpp"

namespace divide_forge::render {

namespace {

struct Style {
  const char* branch = "#1a1a1a";
  const char* crossing = "#1a1a1a";
  const char* plus = "#b22222";
  const char* minus = "#1f4e9c";
  const char* max_cycle = "#d2691e";
  const char* saddle_cycle = "#2e8b57";
  const char* min_cycle = "#6a3d9a";
  const char* bridge = "#e0b000";
  const char* pplus_fill = "#fbe7a1";
  const char* reduction = "#c0392b";
  const char* disk = "#808080";
  double branch_width = 0.008;
  double cycle_width = 0.006;
  double dot = 0.012;
  double glyph = 0.05;
  const char* dotted = "0.02 0.015";
};

constexpr Style kStyle;

std::string num(double v) {
  if (std::fabs(v) < 5e-5) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// SVG y grows downwards.
std::string xy(PointD p) { return num(p.x) + ',' + num(-p.y); }

PointD add(PointD a, PointD b) { return {a.x + b.x, a.y + b.y}; }
PointD sub(PointD a, PointD b) { return {a.x - b.x, a.y - b.y}; }
PointD scale(PointD a, double k) { return {a.x * k, a.y * k}; }
PointD mid(PointD a, PointD b) { return scale(add(a, b), 0.5); }
double norm(PointD a) { return std::hypot(a.x, a.y); }
PointD unit(PointD a) {
  const double n = norm(a);
  return n > 0 ? scale(a, 1.0 / n) : PointD{};
}

// Quadratic smoothing through the midpoints; vertices act as control points.
std::string smooth_path(const std::vector<PointD>& pts, bool closed) {
  std::ostringstream out;
  if (pts.size() < 3) {
    for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? " L" : "M") << xy(pts[i]);
    if (closed) out << " Z";
    return out.str();
  }
  const std::size_t n = pts.size();
  if (closed) {
    out << 'M' << xy(mid(pts[n - 1], pts[0]));
    for (std::size_t i = 0; i < n; ++i) out << " Q" << xy(pts[i]) << ' ' << xy(mid(pts[i], pts[(i + 1) % n]));
    out << " Z";
  } else {
    out << 'M' << xy(pts[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) out << " Q" << xy(pts[i]) << ' ' << xy(i + 2 == n ? pts[n - 1] : mid(pts[i], pts[i + 1]));
  }
  return out.str();
}

std::string polyline_path(const std::vector<PointD>& pts) {
  std::ostringstream out;
  for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? " L" : "M") << xy(pts[i]);
  return out.str();
}

std::string polygon_path(const std::vector<PointD>& pts) { return polyline_path(pts) + " Z"; }

std::vector<PointD> to_doubles(const std::vector<Point>& pts) {
  std::vector<PointD> r;
  r.reserve(pts.size());
  for (const auto& p : pts) r.push_back(to_double(p));
  return r;
}

class Svg {
 public:
  Svg(const RenderOptions& opt, double half) {
    if (opt.width <= 0 || opt.height <= 0) throw Error(ErrorCode::InvalidArgument, "figure dimensions must be positive");
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.width << "\" height=\""
         << opt.height << "\" viewBox=\"" << num(-half) << ' ' << num(-half) << ' ' << num(2 * half) << ' '
         << num(2 * half) << "\">\n";
  }
  std::ostringstream& raw() { return out_; }
  void open(const std::string& id) { out_ << "<g id=\"" << id << "\">\n"; }
  void close() { out_ << "</g>\n"; }
  void path(const std::string& d, const std::string& attrs, const std::string& id = "") {
    out_ << "<path";
    if (!id.empty()) out_ << " id=\"" << id << '"';
    out_ << " d=\"" << d << "\" " << attrs << "/>\n";
  }
  void circle(PointD c, double r, const std::string& attrs, const std::string& id = "") {
    out_ << "<circle";
    if (!id.empty()) out_ << " id=\"" << id << '"';
    out_ << " cx=\"" << num(c.x) << "\" cy=\"" << num(-c.y) << "\" r=\"" << num(r) << "\" " << attrs << "/>\n";
  }
  void text(PointD at, const std::string& s, double size, const std::string& attrs, const std::string& id = "") {
    out_ << "<text";
    if (!id.empty()) out_ << " id=\"" << id << '"';
    out_ << " x=\"" << num(at.x) << "\" y=\"" << num(-at.y) << "\" font-size=\"" << num(size)
         << "\" text-anchor=\"middle\" dominant-baseline=\"central\" font-family=\"serif\" " << attrs << '>' << s
         << "</text>\n";
  }
  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

std::string stroke(const char* color, double width, bool dotted = false) {
  std::string s = "fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"" + num(width) +
                  "\" stroke-linejoin=\"round\" stroke-linecap=\"round\"";
  if (dotted) s += " stroke-dasharray=\"" + std::string(kStyle.dotted) + '"';
  return s;
}

PointD crossing_point(const Divide& d, int c) { return to_double(d.crossings[std::size_t(c)].point); }

// Direction of the half-edge leaving its origin.
PointD leaving(const Divide& d, int h) {
  const Edge& e = d.edges[std::size_t(h / 2)];
  const auto& ch = e.chain;
  const PointD a = to_double(h % 2 == 0 ? ch.front() : ch.back());
  const PointD b = to_double(h % 2 == 0 ? ch[1] : ch[ch.size() - 2]);
  return unit(sub(b, a));
}

// Bisector of the sector between out[slot] and out[slot + 1] at a crossing.
PointD sector_direction(const Divide& d, const Corner& k) {
  const Vertex& v = d.vertices[std::size_t(d.crossings[std::size_t(k.crossing)].vertex)];
  const std::size_t n = v.out.size();
  const PointD a = leaving(d, v.out[std::size_t(k.slot) % n]);
  const PointD b = leaving(d, v.out[(std::size_t(k.slot) + 1) % n]);
  PointD s = add(a, b);
  if (norm(s) < 1e-9) s = {-a.y, a.x};
  return unit(s);
}

double local_scale(const Divide& d, int c) {
  // Half the distance to the nearest other crossing, capped.
  const PointD p = crossing_point(d, c);
  double best = 0.12;
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    if (int(i) == c) continue;
    best = std::min(best, 0.5 * norm(sub(crossing_point(d, int(i)), p)));
  }
  return best;
}

void draw_max(Svg& svg, const Divide& d, int r, const char* color, bool dotted) {
  const Region& g = d.regions[std::size_t(r)];
  const double rad = std::max(0.01, std::min(0.08, 0.6 * g.clearance));
  svg.circle(to_double(g.sample), rad, stroke(color, kStyle.cycle_width, dotted));
}

// Spliced double tear through the two + sectors of a saddle.
void draw_saddle(Svg& svg, const Divide& d, int c, const char* color, bool dotted) {
  std::vector<Corner> plus;
  for (const auto& g : d.regions)
    for (const auto& k : g.corners)
      if (k.crossing == c && g.sign > 0) plus.push_back(k);
  const PointD x = crossing_point(d, c);
  const double L = local_scale(d, c);
  std::vector<PointD> dirs;
  for (const auto& k : plus) dirs.push_back(sector_direction(d, k));
  if (dirs.size() < 2) {
    // Boundary saddles: use the + sector and its opposite.
    const PointD u = dirs.empty() ? PointD{1, 0} : dirs.front();
    dirs = {u, scale(u, -1)};
  }
  const PointD u = dirs[0], w = dirs[1];
  const PointD A = add(x, scale(u, 1.6 * L)), B = add(x, scale(w, 1.6 * L));
  const PointD n = unit(PointD{-(A.y - B.y), A.x - B.x});
  const double wide = 0.35 * L;
  const std::vector<PointD> loop{A, add(mid(A, x), scale(n, wide)), add(x, scale(n, 0.3 * wide)),
                                 add(mid(B, x), scale(n, wide)), B, add(mid(B, x), scale(n, -wide)),
                                 add(x, scale(n, -0.3 * wide)), add(mid(A, x), scale(n, -wide))};
  svg.path(smooth_path(loop, true), stroke(color, kStyle.cycle_width, dotted));
}

// Loop through the neighbouring regions across each corner of a minimum.
void draw_min(Svg& svg, const Divide& d, int r, const char* color, bool dotted) {
  const Region& g = d.regions[std::size_t(r)];
  const PointD s = to_double(g.sample);
  std::vector<std::pair<double, PointD>> pts;
  for (const auto& k : g.corners) {
    const PointD x = crossing_point(d, k.crossing);
    const PointD out = scale(sector_direction(d, k), -0.5 * local_scale(d, k.crossing));
    const PointD p = add(x, out);
    pts.push_back({std::atan2(p.y - s.y, p.x - s.x), p});
  }
  if (pts.size() < 2) {
    draw_max(svg, d, r, color, dotted);
    return;
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PointD> loop;
  for (const auto& [angle, p] : pts) loop.push_back(p);
  svg.path(smooth_path(loop, true), stroke(color, kStyle.cycle_width, dotted));
}

void draw_element(Svg& svg, const Divide& d, const cycles::CycleElement& e, bool dotted = false) {
  switch (e.kind) {
    case cycles::CycleKind::Max: draw_max(svg, d, e.id, kStyle.max_cycle, dotted); break;
    case cycles::CycleKind::Saddle: draw_saddle(svg, d, e.id, kStyle.saddle_cycle, dotted); break;
    case cycles::CycleKind::Min: draw_min(svg, d, e.id, kStyle.min_cycle, dotted); break;
  }
}

void draw_reduction(Svg& svg, const Divide& d, const cycles::CycleBasis& b, bool orbit) {
  if (!d.provenance) throw Error(ErrorCode::NoProvenance, "reduction overlay needs a composed divide");
  const Provenance& pv = *d.provenance;
  svg.open("reduction");
  std::set<int> pplus;
  for (const auto& [f, g] : pv.pplus) pplus.insert(f);
  for (int f : pplus)
    for (const auto& ring : d.regions[std::size_t(f)].rings)
      svg.path(polygon_path(ring), "fill=\"" + std::string(kStyle.pplus_fill) + "\" stroke=\"none\"", "pplus-r" + std::to_string(f));
  std::set<int> base_crossings;
  for (const auto& c : d.crossings)
    if (c.tag.kind == TagKind::Grid) base_crossings.insert(c.tag.index);
  for (int bc : base_crossings) {
    const cycles::Diagonal diag = cycles::bridge_diagonal(d, b, bc);
    std::vector<PointD> pts;
    for (int i : diag.crossings) pts.push_back(crossing_point(d, b.elements[std::size_t(i)].id));
    if (pts.size() < 2) continue;
    const PointD ext = scale(sub(pts.back(), pts.front()), 0.5 / double(pts.size() - 1));
    pts.front() = sub(pts.front(), ext);
    pts.back() = add(pts.back(), ext);
    svg.path(polyline_path(pts),
             stroke(kStyle.bridge, 4 * kStyle.branch_width) + " stroke-opacity=\"0.6\"", "bridge-c" + std::to_string(bc));
  }
  for (int f : pplus)
    for (const auto& ring : d.regions[std::size_t(f)].rings) svg.path(polygon_path(ring), stroke(kStyle.reduction, kStyle.cycle_width));
  if (orbit) {
    // The orbit image runs parallel to R, one grid step further along the core.
    svg.open("orbit");
    for (int f : pplus) {
      const Region& g = d.regions[std::size_t(f)];
      const PointD c = to_double(g.sample);
      for (const auto& ring : g.rings) {
        std::vector<PointD> shrunk;
        for (const auto& p : ring) shrunk.push_back(add(c, scale(sub(p, c), 0.8)));
        svg.path(polygon_path(shrunk), stroke(kStyle.reduction, kStyle.cycle_width, true));
      }
    }
    svg.close();
  }
  svg.close();
}

}  // namespace

std::string render_divide(const Divide& d, const RenderOptions& opt) {
  Svg svg(opt, 1.08);
  svg.circle({0, 0}, 1.0, stroke(kStyle.disk, kStyle.branch_width / 2), "disk");

  std::optional<cycles::CycleBasis> b;
  const bool need_basis = opt.reduction || !opt.cycles.empty() || !opt.classes.empty();
  if (need_basis) b = cycles::basis(d);
  if (opt.reduction) draw_reduction(svg, d, *b, opt.orbit);

  svg.open("branches");
  for (std::size_t i = 0; i < d.branches.size(); ++i) {
    const Branch& br = d.branches[i];
    svg.path(smooth_path(to_doubles(br.points), br.kind == BranchKind::Closed), stroke(kStyle.branch, kStyle.branch_width),
             "branch-" + std::to_string(i));
  }
  svg.close();

  svg.open("crossings");
  for (std::size_t c = 0; c < d.crossings.size(); ++c)
    svg.circle(crossing_point(d, int(c)), kStyle.dot, "fill=\"" + std::string(kStyle.crossing) + "\"", "crossing-c" + std::to_string(c));
  svg.close();

  if (opt.show_signs || opt.labels) {
    svg.open("regions");
    for (std::size_t r = 0; r < d.regions.size(); ++r) {
      const Region& g = d.regions[r];
      if (!g.interior) continue;
      const std::string glyph = !opt.show_signs ? "" : g.sign > 0 ? "+" : g.sign < 0 ? "&#8722;" : "";
      const std::string label = opt.labels ? "r" + std::to_string(r) : "";
      const std::string body = glyph.empty() ? label : label.empty() ? glyph : glyph + "<tspan font-size=\"" + num(0.6 * kStyle.glyph) + "\">" + label + "</tspan>";
      const char* color = g.sign > 0 ? kStyle.plus : kStyle.minus;
      svg.text(to_double(g.sample), body, kStyle.glyph, "fill=\"" + std::string(color) + '"', "region-r" + std::to_string(r));
    }
    svg.close();
  }
  if (opt.labels) {
    svg.open("crossing-labels");
    for (std::size_t c = 0; c < d.crossings.size(); ++c)
      svg.text(add(crossing_point(d, int(c)), {0.03, 0.03}), "c" + std::to_string(c), 0.03, "fill=\"#555555\"");
    svg.close();
  }

  if (!opt.cycles.empty()) {
    svg.open("cycles");
    for (const auto& name : opt.cycles) {
      const int i = b->index_of(name);
      if (i < 0) throw Error(ErrorCode::UnknownName, "no basis element named `" + name + "`");
      svg.open("cycle-" + name);
      draw_element(svg, d, b->elements[std::size_t(i)]);
      svg.close();
    }
    svg.close();
  }
  if (!opt.classes.empty()) {
    svg.open("classes");
    for (const auto& [name, v] : opt.classes) {
      if (v.size() != b->size()) throw Error(ErrorCode::LengthMismatch, "class " + name + " has the wrong length");
      svg.open("class-" + name);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) draw_element(svg, d, b->elements[i], v[i] < 0);
      svg.close();
    }
    svg.close();
  }
  return svg.finish();
}

std::string render_reduction(const Divide& d, const RenderOptions& opt) {
  if (!d.provenance) throw Error(ErrorCode::NoProvenance, "reduction overlay needs a composed divide");
  RenderOptions o = opt;
  o.reduction = true;
  return render_divide(d, o);
}

namespace {

std::string render_components(const std::vector<blocks::PatternComponent>& comps, const std::vector<PointD>& dots,
                              const RenderOptions& opt, bool box) {
  Svg svg(opt, box ? 1.12 : 1.08);
  if (box) {
    svg.path("M-1.0000,-1.0000 L1.0000,-1.0000 L1.0000,1.0000 L-1.0000,1.0000 Z", stroke(kStyle.disk, kStyle.branch_width / 2), "box");
  } else {
    svg.circle({0, 0}, 0.25, stroke(kStyle.disk, kStyle.branch_width / 2), "annulus-inner");
    svg.circle({0, 0}, 0.75, stroke(kStyle.disk, kStyle.branch_width / 2), "annulus-outer");
  }
  svg.open("branches");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::vector<PointD> pts = to_doubles(comps[i].points);
    const bool closed = comps[i].kind == blocks::ComponentKind::Circle;
    svg.path(closed ? polygon_path(pts) : polyline_path(pts), stroke(kStyle.branch, kStyle.branch_width), "branch-" + std::to_string(i));
  }
  svg.close();
  svg.open("crossings");
  for (std::size_t c = 0; c < dots.size(); ++c)
    svg.circle(dots[c], kStyle.dot, "fill=\"" + std::string(kStyle.crossing) + "\"", "crossing-c" + std::to_string(c));
  svg.close();
  return svg.finish();
}

}  // namespace

std::string render_pattern(const blocks::ChebyshevPattern& pattern, const RenderOptions& opt) {
  std::vector<PointD> dots;
  for (const auto& c : pattern.crossings) dots.push_back(c.point);
  return render_components(pattern.components, dots, opt, true);
}

std::string render_pattern(const blocks::LissajousPattern& pattern, const RenderOptions& opt) {
  return render_components(pattern.components, {}, opt, false);
}

}  // namespace divide_forge::render
