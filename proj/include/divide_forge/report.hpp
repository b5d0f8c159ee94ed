#pragma once

#include <string>

#include <json.hpp>

#include "divide_forge/divide.hpp"
#include "divide_forge/numeric.hpp"

namespace divide_forge::report {

struct Options {
  unsigned long long order_bound = 10000;
  bool matrices = true;  // include S and h
};

/// Numbers that fit in 64 bits become JSON integers, larger ones decimal strings.
nlohmann::json integer_json(const Integer& x);

/// Sections: divide, puiseux (when the file records pairs), basis, form, monodromy, order.
nlohmann::json analyze(const Divide& d, const Options& opt = {});

/// Aligned plain text rendering of any report document.
std::string to_text(const nlohmann::json& report);

}  // namespace divide_forge::report
