#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divide_forge/cycles.hpp"
#include "divide_forge/matrix.hpp"

namespace divide_forge::relations {

struct Check {
  std::string name;
  bool holds = false;
  std::string detail;
};

using ClassMap = std::map<std::string, ClassVector>;

/// Homological relations of the two-branch example, over classes R, S, k and dm:
/// h R = -S, h S = -R, h(R - S) = R - S, h^10 k = k +- (R + S), h^10 dm = dm +- 2(R + S).
std::vector<Check> two_branch(const IntMatrix& h, const ClassMap& classes);

/// Dispatches on the set name; throws InvalidArgument for an unknown set.
std::vector<Check> evaluate(const std::string& set, const IntMatrix& h, const ClassMap& classes);

bool all_hold(const std::vector<Check>& checks);

struct Resolution {
  cycles::SignChoice choice;
  std::vector<Check> checks;
};

/// First sign assignment of the fixture under which every relation of its set holds.
std::optional<Resolution> resolve(const cycles::NamedClasses& fixture, const cycles::CycleBasis& b,
                                  const IntMatrix& h);

}  // namespace divide_forge::relations
