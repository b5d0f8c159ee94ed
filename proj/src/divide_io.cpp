#include <fstream>
#include <sstream>

#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"

namespace divide_forge {

namespace {

void write_points(std::ostream& out, const std::vector<Point>& pts) {
  for (const auto& p : pts) out << ' ' << format_rational(p.x) << ' ' << format_rational(p.y);
}

void write_branch(std::ostream& out, const char* keyword, const Branch& br) {
  out << keyword << (br.kind == BranchKind::Open ? " open" : " closed");
  write_points(out, br.points);
  out << '\n';
}

std::vector<Point> read_points(std::istringstream& in, int line) {
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.size() % 2 != 0) throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": odd number of coordinates");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < tok.size(); i += 2) pts.push_back({parse_rational(tok[i]), parse_rational(tok[i + 1])});
  return pts;
}

Branch read_branch(std::istringstream& in, int line) {
  std::string kind;
  in >> kind;
  if (kind != "open" && kind != "closed") throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": expected open|closed");
  return {kind == "open" ? BranchKind::Open : BranchKind::Closed, read_points(in, line)};
}

Anchor read_anchor(std::istringstream& in, int line) {
  std::string x, y, s;
  if (!(in >> x >> y >> s) || (s != "+" && s != "-")) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": expected `x y +|-`");
  }
  return {{parse_rational(x), parse_rational(y)}, s == "+" ? 1 : -1};
}

void write_anchors(std::ostream& out, const char* keyword, const Divide& d) {
  if (!d.is_signed()) return;
  std::vector<Anchor> anchors = d.anchors;
  if (anchors.empty()) anchors.push_back({d.regions.front().sample, d.regions.front().sign});
  for (const auto& a : anchors) {
    out << keyword << ' ' << format_rational(a.point.x) << ' ' << format_rational(a.point.y) << ' '
        << (a.sign > 0 ? '+' : '-') << '\n';
  }
}

}  // namespace

void write_divide(const Divide& d, std::ostream& out) {
  out << "divide v1\n";
  for (const auto& br : d.branches) write_branch(out, "branch", br);
  write_anchors(out, "sign", d);
  if (!d.puiseux.empty()) {
    out << "puiseux";
    for (const auto& pr : d.puiseux) out << ' ' << pr.a << ' ' << pr.b;
    out << '\n';
  }
  if (!d.provenance) return;
  const Provenance& pv = *d.provenance;
  out << "pattern " << pv.p << ' ' << pv.q << '\n';
  out << "core";
  write_points(out, pv.core);
  out << '\n';
  out << "corebranch " << pv.core_branch << '\n';
  out << "patternbranches";
  for (int b : pv.pattern_branches) out << ' ' << b;
  out << '\n';
  if (pv.base) {
    for (const auto& br : pv.base->branches) write_branch(out, "base", br);
    write_anchors(out, "basesign", *pv.base);
  }
  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    const CrossingTag& t = d.crossings[c].tag;
    if (t.kind == TagKind::Grid) {
      out << "provenance crossing " << c << " grid " << t.index << ' ' << t.i << ' ' << t.j << '\n';
    } else if (t.kind == TagKind::Pattern) {
      out << "provenance crossing " << c << " pattern " << t.index << '\n';
    }
  }
  for (const auto& [f, g] : pv.pplus) out << "provenance region " << f << " pplus " << g << '\n';
}

std::string write_divide(const Divide& d) {
  std::ostringstream out;
  write_divide(d, out);
  return out.str();
}

Divide read_divide(std::istream& in) {
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || line.substr(0, 9) != "divide v1") {
    throw Error(ErrorCode::ParseError, "missing `divide v1` header");
  }
  std::vector<Branch> branches, base_branches;
  std::vector<Anchor> anchors, base_anchors;
  std::vector<std::pair<int, CrossingTag>> tags;
  std::vector<puiseux::Pair> pairs;
  auto prov = std::make_shared<Provenance>();
  bool has_prov = false;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto need_int = [&](std::istringstream& s) {
      long long v;
      if (!(s >> v)) throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected an integer");
      return int(v);
    };
    if (key == "branch") {
      branches.push_back(read_branch(ls, lineno));
    } else if (key == "sign") {
      anchors.push_back(read_anchor(ls, lineno));
    } else if (key == "puiseux") {
      for (long long a, b; ls >> a;) {
        if (!(ls >> b)) throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": odd puiseux entry count");
        pairs.push_back({Integer(a), Integer(b)});
      }
    } else if (key == "pattern") {
      has_prov = true;
      prov->p = need_int(ls);
      prov->q = need_int(ls);
    } else if (key == "core") {
      has_prov = true;
      prov->core = read_points(ls, lineno);
    } else if (key == "corebranch") {
      prov->core_branch = need_int(ls);
    } else if (key == "patternbranches") {
      for (long long b; ls >> b;) prov->pattern_branches.push_back(int(b));
    } else if (key == "base") {
      base_branches.push_back(read_branch(ls, lineno));
    } else if (key == "basesign") {
      base_anchors.push_back(read_anchor(ls, lineno));
    } else if (key == "provenance") {
      has_prov = true;
      std::string what, kind;
      ls >> what;
      const int id = need_int(ls);
      ls >> kind;
      if (what == "crossing" && kind == "grid") {
        CrossingTag t{TagKind::Grid, need_int(ls), 0, 0};
        t.i = need_int(ls);
        t.j = need_int(ls);
        tags.push_back({id, t});
      } else if (what == "crossing" && kind == "pattern") {
        tags.push_back({id, {TagKind::Pattern, need_int(ls), -1, -1}});
      } else if (what == "region" && kind == "pplus") {
        prov->pplus.push_back({id, need_int(ls)});
      } else {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": unknown provenance record");
      }
    } else {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": unknown keyword `" + key + "`");
    }
  }

  Divide d = build_arrangement(std::move(branches));
  if (!anchors.empty()) d = assign_signs(std::move(d), anchors);
  d.puiseux = std::move(pairs);
  if (has_prov) {
    if (!base_branches.empty()) {
      Divide base = build_arrangement(std::move(base_branches));
      if (!base_anchors.empty()) base = assign_signs(std::move(base), base_anchors);
      prov->base = std::make_shared<Divide>(std::move(base));
    }
    for (const auto& [id, t] : tags) {
      if (id < 0 || std::size_t(id) >= d.crossings.size()) {
        throw Error(ErrorCode::ParseError, "provenance names crossing " + std::to_string(id) + " which does not exist");
      }
      d.crossings[std::size_t(id)].tag = t;
    }
    for (const auto& [f, g] : prov->pplus) {
      if (f < 0 || std::size_t(f) >= d.regions.size()) throw Error(ErrorCode::ParseError, "pplus names a missing region");
      (void)g;
    }
    d.provenance = prov;
  }
  return d;
}

Divide read_divide_string(const std::string& text) {
  std::istringstream in(text);
  return read_divide(in);
}

Divide read_divide_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_divide(in);
}

}  // namespace divide_forge
