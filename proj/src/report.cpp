#include "divide_forge/report.hpp"

#include <limits>
#include <sstream>

#include "divide_forge/cycles.hpp"
#include "divide_forge/monodromy.hpp"
#include "divide_forge/puiseux.hpp"

namespace divide_forge::report {

using nlohmann::json;

json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

namespace {

json vector_json(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json divide_section(const Divide& d) {
  int plus = 0, minus = 0;
  for (const auto& r : d.regions) {
    if (r.interior && r.sign > 0) ++plus;
    if (r.interior && r.sign < 0) ++minus;
  }
  json s;
  s["branches"] = d.branches.size();
  s["crossings"] = d.crossings.size();
  s["regions"] = d.regions.size();
  s["interior_regions"] = d.interior_count();
  s["plus_regions"] = plus;
  s["minus_regions"] = minus;
  s["signed"] = d.is_signed();
  s["components"] = d.components;
  s["euler"] = euler_characteristic(d);
  s["euler_expected"] = 1 + d.components;
  s["euler_ok"] = euler_characteristic(d) == 1 + d.components;
  s["checkerboard_ok"] = d.is_signed() ? checkerboard_ok(d) : false;
  s["mu"] = mu(d);
  s["provenance"] = bool(d.provenance);
  if (d.provenance) s["pattern"] = {d.provenance->p, d.provenance->q};
  return s;
}

json puiseux_section(const Divide& d) {
  const puiseux::PuiseuxSeq seq = puiseux::validate(d.puiseux);
  const puiseux::CableData cd = puiseux::cable_data(seq);
  json s;
  json pairs = json::array();
  for (const auto& p : seq.pairs()) pairs.push_back({integer_json(p.a), integer_json(p.b)});
  s["pairs"] = pairs;
  s["lambda"] = vector_json(cd.lambda);
  s["delta"] = vector_json(cd.delta);
  s["bprime"] = vector_json(cd.bprime);
  s["multiplicity"] = vector_json(cd.mult);
  s["mu"] = integer_json(cd.mu);
  s["reduction_count"] = integer_json(puiseux::reduction_count(seq));
  s["mu_matches_divide"] = cd.mu == Integer(mu(d));
  return s;
}

}  // namespace

json analyze(const Divide& d, const Options& opt) {
  json r;
  r["divide"] = divide_section(d);
  if (!d.puiseux.empty()) r["puiseux"] = puiseux_section(d);
  const cycles::CycleBasis b = cycles::basis(d);
  json names = json::array();
  for (const auto& e : b.elements) names.push_back({{"name", e.name}, {"kind", cycles::to_string(e.kind)}});
  r["basis"] = names;
  const IntMatrix S = cycles::intersection_form(d, b);
  const IntMatrix h = monodromy::monodromy_matrix(S, b);
  if (opt.matrices) r["form"] = matrix_json(S);
  json m;
  if (opt.matrices) m["matrix"] = matrix_json(h);
  const IntPoly cp = monodromy::char_poly(h);
  m["char_poly"] = vector_json(cp.coeffs());
  m["char_poly_text"] = cp.to_string();
  m["degree"] = cp.degree();
  Integer det = cp.coeff(0);
  if (b.size() % 2) det = -det;
  m["det"] = integer_json(det);
  m["preserves_form"] = h.transpose() * S * h == S;
  r["monodromy"] = m;
  const monodromy::OrderReport o = monodromy::matrix_order(h, opt.order_bound);
  json os;
  os["bound"] = opt.order_bound;
  os["order"] = o.order ? json(*o.order) : json(nullptr);
  os["exceeds_bound"] = o.exceeds_bound;
  os["cyclotomic"] = o.cyclotomic;
  json f = json::array();
  for (auto [n, k] : o.factors) f.push_back({n, k});
  os["cyclotomic_factors"] = f;
  os["semisimple_candidate"] = o.semisimple_candidate;
  r["order"] = os;
  return r;
}

namespace {

bool is_matrix(const json& v) {
  return v.is_array() && !v.empty() && v.front().is_array() && !v.front().empty() && !v.front().front().is_array() &&
         !v.front().front().is_object();
}

void emit(std::ostringstream& out, const json& v, const std::string& indent) {
  std::size_t width = 0;
  for (auto it = v.begin(); it != v.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = v.begin(); it != v.end(); ++it) {
    const json& x = it.value();
    out << indent << it.key();
    if (x.is_object()) {
      out << ":\n";
      emit(out, x, indent + "  ");
    } else if (is_matrix(x)) {
      out << ":\n";
      for (const auto& row : x) {
        out << indent << "  ";
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j].dump();
        out << '\n';
      }
    } else if (x.is_array() && !x.empty() && x.front().is_object()) {
      out << ":\n";
      for (const auto& e : x) {
        out << indent << "  -";
        for (auto jt = e.begin(); jt != e.end(); ++jt) out << ' ' << jt.key() << '=' << (jt->is_string() ? jt->get<std::string>() : jt->dump());
        out << '\n';
      }
    } else {
      out << std::string(width - it.key().size(), ' ') << ": " << (x.is_string() ? x.get<std::string>() : x.dump()) << '\n';
    }
  }
}

}  // namespace

std::string to_text(const json& report) {
  std::ostringstream out;
  emit(out, report, "");
  return out.str();
}

}  // namespace divide_forge::report
