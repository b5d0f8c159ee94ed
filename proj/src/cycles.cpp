#include "divide_forge/cycles.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "divide_forge/error.hpp"
#include "divide_forge/monodromy.hpp"

namespace divide_forge::cycles {

namespace {

std::string region_name(int id) { return "r" + std::to_string(id); }
std::string crossing_name(int id) { return "c" + std::to_string(id); }

int corners_at(const Region& r, int crossing) {
  return int(std::count_if(r.corners.begin(), r.corners.end(), [&](const Corner& c) { return c.crossing == crossing; }));
}

int shared_crossings(const Region& a, const Region& b) {
  std::set<int> ca, cb;
  for (const auto& c : a.corners) ca.insert(c.crossing);
  for (const auto& c : b.corners) cb.insert(c.crossing);
  int n = 0;
  for (int c : ca) n += cb.count(c) ? 1 : 0;
  return n;
}

// Every region having a corner at crossing c, with repetition.
std::vector<int> regions_at(const Divide& d, int c) {
  std::vector<int> out;
  for (std::size_t f = 0; f < d.regions.size(); ++f)
    for (const auto& k : d.regions[f].corners)
      if (k.crossing == c) out.push_back(int(f));
  return out;
}

}  // namespace

const char* to_string(CycleKind k) {
  switch (k) {
    case CycleKind::Min: return "min";
    case CycleKind::Saddle: return "saddle";
    case CycleKind::Max: return "max";
  }
  return "?";
}

int CycleBasis::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].name == name) return int(i);
  return -1;
}

int CycleBasis::index_of(CycleKind kind, int id) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].kind == kind && elements[i].id == id) return int(i);
  return -1;
}

CycleBasis basis(const Divide& d) {
  if (!d.is_signed()) throw Error(ErrorCode::UnsignedDivide, "the divide has no region signs");
  CycleBasis b;
  for (std::size_t f = 0; f < d.regions.size(); ++f)
    if (d.regions[f].interior && d.regions[f].sign < 0) b.elements.push_back({CycleKind::Min, int(f), region_name(int(f))});
  for (std::size_t c = 0; c < d.crossings.size(); ++c) b.elements.push_back({CycleKind::Saddle, int(c), crossing_name(int(c))});
  for (std::size_t f = 0; f < d.regions.size(); ++f)
    if (d.regions[f].interior && d.regions[f].sign > 0) b.elements.push_back({CycleKind::Max, int(f), region_name(int(f))});
  return b;
}

const FormConvention& calibrated_convention() {
  // P(2,3) and P(2,5) have no minima; the min-max entry is pinned by the other torus knots.
  static const FormConvention conv{1, 1, 1, MinMaxRule::SharedEdges};
  return conv;
}

void check_calibration() {
  static std::once_flag once;
  std::call_once(once, [] {
    const std::vector<std::pair<int, int>> targets{{2, 3}, {2, 5}};
    for (auto [p, q] : targets) {
      const Divide d = chebyshev_divide(p, q);
      const CycleBasis b = basis(d);
      const IntMatrix S = intersection_form(d, b, calibrated_convention());
      const IntPoly want = (IntPoly::binomial(std::size_t(p * q)) * IntPoly::binomial(1))
                               .exact_div(IntPoly::binomial(std::size_t(p)))
                               .exact_div(IntPoly::binomial(std::size_t(q)));
      if (monodromy::char_poly(monodromy::monodromy_matrix(S, b)) != want) {
        throw std::logic_error("intersection form calibration failed for P(" + std::to_string(p) + "," +
                               std::to_string(q) + ")");
      }
    }
  });
}

IntMatrix intersection_form(const Divide& d, const CycleBasis& b) {
  check_calibration();
  return intersection_form(d, b, calibrated_convention());
}

IntMatrix intersection_form(const Divide& d, const CycleBasis& b, const FormConvention& conv) {
  const std::size_t n = b.size();
  IntMatrix S(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const CycleElement& u = b.elements[i];
      const CycleElement& v = b.elements[j];
      long long value = 0;
      if (u.kind == CycleKind::Min && v.kind == CycleKind::Saddle) {
        value = conv.min_saddle * corners_at(d.regions[std::size_t(u.id)], v.id);
      } else if (u.kind == CycleKind::Saddle && v.kind == CycleKind::Max) {
        value = conv.saddle_max * corners_at(d.regions[std::size_t(v.id)], u.id);
      } else if (u.kind == CycleKind::Min && v.kind == CycleKind::Max) {
        const Region& m = d.regions[std::size_t(u.id)];
        const Region& M = d.regions[std::size_t(v.id)];
        const long long k = conv.rule == MinMaxRule::SharedEdges
                                ? std::count(m.neighbors.begin(), m.neighbors.end(), v.id)
                                : shared_crossings(m, M);
        value = conv.min_max * k;
      }
      S(i, j) = value;
      S(j, i) = -value;
    }
  }
  return S;
}

ClassVector twist(const IntMatrix& S, const ClassVector& v, const ClassVector& x, int power) {
  ClassVector r = x;
  const int steps = power < 0 ? -power : power;
  for (int k = 0; k < steps; ++k) {
    const Integer c = pairing(S, r, v);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += (power < 0 ? c : -c) * v[i];
  }
  return r;
}

ClassVector walk_class(const IntMatrix& S, const CycleBasis& b, const Walk& w) {
  if (w.steps.empty()) throw Error(ErrorCode::ParseError, "walk " + w.name + " is empty");
  auto at = [&](const std::string& name) {
    const int i = b.index_of(name);
    if (i < 0) throw Error(ErrorCode::UnknownName, "walk " + w.name + " names unknown element " + name);
    return unit_vector(b.size(), std::size_t(i));
  };
  ClassVector x = at(w.steps.front());
  for (std::size_t k = 1; k < w.steps.size(); ++k) x = twist(S, at(w.steps[k]), x);
  return x;
}

Diagonal bridge_diagonal(const Divide& composed, const CycleBasis& b, int base_crossing) {
  if (!composed.provenance || !composed.provenance->base) throw Error(ErrorCode::NoProvenance, "no star-product provenance");
  const Provenance& pv = *composed.provenance;
  const int p = pv.p;
  std::map<std::pair<int, int>, int> grid;
  for (std::size_t c = 0; c < composed.crossings.size(); ++c) {
    const CrossingTag& t = composed.crossings[c].tag;
    if (t.kind == TagKind::Grid && t.index == base_crossing) grid[{t.i, t.j}] = int(c);
  }
  if (int(grid.size()) != p * p) {
    throw Error(ErrorCode::NoProvenance, "base crossing " + std::to_string(base_crossing) + " has " +
                                             std::to_string(grid.size()) + " grid crossings, expected p^2");
  }
  // The diagonal runs between the two + quadrants of the base crossing.
  PointD centre{};
  for (const auto& [key, c] : grid) {
    const PointD q = to_double(composed.crossings[std::size_t(c)].point);
    centre.x += q.x / (p * p);
    centre.y += q.y / (p * p);
  }
  const PointD corner = to_double(composed.crossings[std::size_t(grid.at({0, 0}))].point);
  const PointD beyond{centre.x + 3.0 * (corner.x - centre.x), centre.y + 3.0 * (corner.y - centre.y)};
  const int g = pv.base->locate(beyond);
  if (g < 0) throw Error(ErrorCode::NoProvenance, "grid corner quadrant not found in the base divide");
  const bool main = pv.base->regions[std::size_t(g)].sign > 0;

  Diagonal diag;
  std::vector<int> cs;
  for (int k = 0; k < p; ++k) cs.push_back(grid.at({k, main ? k : p - 1 - k}));
  for (int c : cs) diag.crossings.push_back(b.index_of(CycleKind::Saddle, c));
  for (int k = 1; k < p; ++k) {
    const auto a = regions_at(composed, cs[std::size_t(k - 1)]);
    const auto z = regions_at(composed, cs[std::size_t(k)]);
    int cell = -1;
    for (int f : a)
      if (std::find(z.begin(), z.end(), f) != z.end()) cell = f;
    const int idx = cell < 0 ? -1 : b.index_of(CycleKind::Max, cell);
    if (idx < 0) throw Error(ErrorCode::NoProvenance, "diagonal cell is not a maximum");
    diag.cells.push_back(idx);
  }
  return diag;
}

CompanionClasses companion_classes(const Divide& composed, const CycleBasis& b, const IntMatrix& S, bool with_minima,
                                   const std::vector<Walk>& walks) {
  if (!composed.provenance || !composed.provenance->base) throw Error(ErrorCode::NoProvenance, "no star-product provenance");
  const Provenance& pv = *composed.provenance;
  CompanionClasses out;
  out.base = *pv.base;
  out.base_basis = basis(out.base);
  out.base_form = intersection_form(out.base, out.base_basis);
  const std::size_t n = b.size();

  for (std::size_t i = 0; i < out.base_basis.size(); ++i) {
    const CycleElement& e = out.base_basis.elements[i];
    ClassVector x;
    if (e.kind == CycleKind::Max) {
      int f = -1;
      for (const auto& [cf, g] : pv.pplus)
        if (g == e.id) f = cf;
      const int idx = f < 0 ? -1 : b.index_of(CycleKind::Max, f);
      if (idx < 0) throw Error(ErrorCode::NoProvenance, "base maximum " + e.name + " has no P+ region");
      x = unit_vector(n, std::size_t(idx));
    } else if (e.kind == CycleKind::Saddle) {
      const Diagonal diag = bridge_diagonal(composed, b, e.id);
      // Under the calibrated form the grid saddles enter with inverse twists; with direct
      // twists the copy and its monodromy image do not pair to zero.
      x = unit_vector(n, std::size_t(diag.crossings.front()));
      for (std::size_t k = 1; k < diag.crossings.size(); ++k) {
        x = twist(S, unit_vector(n, std::size_t(diag.cells[k - 1])), x);
        x = twist(S, unit_vector(n, std::size_t(diag.crossings[k])), x, -1);
      }
    } else {
      if (!with_minima) continue;
      const auto w = std::find_if(walks.begin(), walks.end(), [&](const Walk& k) { return k.name == e.name; });
      if (w == walks.end()) throw Error(ErrorCode::MissingWalkSpec, "no walk for base minimum " + e.name);
      x = walk_class(S, b, *w);
    }
    out.base_index.push_back(int(i));
    out.classes.push_back(std::move(x));
    out.labels.push_back(e.name);
  }
  return out;
}

NamedClasses parse_named_classes(const std::string& text, std::size_t mu, const std::string& base_dir) {
  NamedClasses nc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "divide") {
      std::string path;
      if (!(ls >> path)) fail("expected a divide path");
      std::filesystem::path fp(path);
      nc.divide_path = fp.is_absolute() || base_dir.empty() ? path : (std::filesystem::path(base_dir) / fp).string();
    } else if (key == "relations") {
      if (!(ls >> nc.relations)) fail("expected a relation set name");
    } else if (key == "signs") {
      for (std::string s; ls >> s;) nc.free_signs.push_back(s);
      if (nc.free_signs.size() > 16) fail("too many free signs");
    } else if (key == "class" || key == "walk") {
      std::string name, eq;
      if (!(ls >> name >> eq) || eq != "=") fail("expected `" + key + " <name> = ...`");
      if (key == "walk") {
        Walk w{name, {}};
        for (std::string s; ls >> s;) w.steps.push_back(s);
        if (w.steps.empty()) fail("empty walk");
        nc.walks.push_back(std::move(w));
        continue;
      }
      ClassVector v;
      for (std::string s; ls >> s;) {
        try {
          std::size_t used = 0;
          const long long x = std::stoll(s, &used);
          if (used != s.size()) fail("bad integer `" + s + "`");
          v.push_back(x);
        } catch (const std::logic_error&) {
          fail("bad integer `" + s + "`");
        }
      }
      if (mu > 0 && v.size() != mu) {
        throw Error(ErrorCode::LengthMismatch, "class " + name + " has " + std::to_string(v.size()) +
                                                   " entries, expected " + std::to_string(mu));
      }
      if (nc.classes.count(name)) fail("duplicate class " + name);
      nc.order.push_back(name);
      nc.classes[name] = std::move(v);
    } else {
      fail("unknown keyword `" + key + "`");
    }
  }
  return nc;
}

NamedClasses load_named_classes(const std::string& path, std::size_t mu) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_named_classes(ss.str(), mu, std::filesystem::path(path).parent_path().string());
}

std::optional<SignChoice> search_signs(const NamedClasses& fixture, const CycleBasis& b,
                                       const std::function<bool(const std::map<std::string, ClassVector>&)>& ok) {
  std::vector<int> idx;
  for (const auto& s : fixture.free_signs) {
    const int i = b.index_of(s);
    if (i < 0) throw Error(ErrorCode::UnknownName, "free sign names unknown element " + s);
    idx.push_back(i);
  }
  const unsigned total = 1u << idx.size();
  for (unsigned mask = 0; mask < total; ++mask) {
    SignChoice choice;
    choice.classes = fixture.classes;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const int s = (mask >> k) & 1 ? -1 : 1;
      choice.signs[fixture.free_signs[k]] = s;
      for (auto& [name, v] : choice.classes)
        if (std::size_t(idx[k]) < v.size()) v[std::size_t(idx[k])] *= s;
    }
    if (ok(choice.classes)) return choice;
  }
  return std::nullopt;
}

}  // namespace divide_forge::cycles
