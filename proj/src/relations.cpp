#include "divide_forge/relations.hpp"

#include "divide_forge/error.hpp"
#include "divide_forge/monodromy.hpp"

namespace divide_forge::relations {

namespace {

const ClassVector& need(const ClassMap& c, const std::string& name) {
  const auto it = c.find(name);
  if (it == c.end()) throw Error(ErrorCode::UnknownName, "relation needs class `" + name + "`");
  return it->second;
}

Check equal(std::string name, const ClassVector& got, const ClassVector& want) {
  Check c{std::move(name), got == want, {}};
  if (!c.holds) c.detail = "got [" + format_vector(got) + "], expected [" + format_vector(want) + "]";
  return c;
}

Check shifted(std::string name, const ClassVector& got, const ClassVector& base, const ClassVector& step) {
  const ClassVector diff = got - base;
  Check c{std::move(name), diff == step || diff == Integer(-1) * step, {}};
  if (c.holds) {
    c.detail = diff == step ? "sign +" : "sign -";
  } else {
    c.detail = "difference [" + format_vector(diff) + "]";
  }
  return c;
}

}  // namespace

std::vector<Check> two_branch(const IntMatrix& h, const ClassMap& classes) {
  const ClassVector& R = need(classes, "R");
  const ClassVector& S = need(classes, "S");
  const ClassVector& k = need(classes, "k");
  const ClassVector& dm = need(classes, "dm");
  const IntMatrix h10 = h.pow(10);
  const ClassVector sum = R + S;
  std::vector<Check> out;
  out.push_back(equal("h(R) = -S", h * R, Integer(-1) * S));
  out.push_back(equal("h(S) = -R", h * S, Integer(-1) * R));
  out.push_back(equal("h(R-S) = R-S", h * (R - S), R - S));
  out.push_back(shifted("h^10(k) = k +- (R+S)", h10 * k, k, sum));
  out.push_back(shifted("h^10(dm) = dm +- 2(R+S)", h10 * dm, dm, Integer(2) * sum));
  return out;
}

std::vector<Check> evaluate(const std::string& set, const IntMatrix& h, const ClassMap& classes) {
  if (set == "two-branch") return two_branch(h, classes);
  throw Error(ErrorCode::InvalidArgument, "unknown relation set `" + set + "`");
}

bool all_hold(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return true;
}

std::optional<Resolution> resolve(const cycles::NamedClasses& fixture, const cycles::CycleBasis& b,
                                  const IntMatrix& h) {
  if (fixture.relations.empty()) return Resolution{{{}, fixture.classes}, {}};
  std::vector<Check> checks;
  auto ok = [&](const ClassMap& c) {
    checks = evaluate(fixture.relations, h, c);
    return all_hold(checks);
  };
  auto choice = cycles::search_signs(fixture, b, ok);
  if (!choice) return std::nullopt;
  return Resolution{std::move(*choice), std::move(checks)};
}

}  // namespace divide_forge::relations
