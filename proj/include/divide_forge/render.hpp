#pragma once

#include <map>
#include <string>
#include <vector>

#include "divide_forge/blocks.hpp"
#include "divide_forge/divide.hpp"
#include "divide_forge/matrix.hpp"

namespace divide_forge::render {

struct RenderOptions {
  int width = 640;
  int height = 640;
  bool show_signs = true;
  bool labels = false;
  std::vector<std::string> cycles;                 // basis names to overlay
  std::map<std::string, ClassVector> classes;      // named classes, drawn through their support
  bool reduction = false;                          // bridge strips and P+ outline
  bool orbit = false;                              // dotted orbit image of the reduction curve
};

/// Throws InvalidArgument for non-positive dimensions, UnknownName for unknown cycle names.
std::string render_divide(const Divide& d, const RenderOptions& opt = {});

/// render_divide with the reduction overlay forced on. Throws NoProvenance.
std::string render_reduction(const Divide& d, const RenderOptions& opt = {});

/// Box figure of a Chebyshev pattern with its crossings.
std::string render_pattern(const blocks::ChebyshevPattern& pattern, const RenderOptions& opt = {});
std::string render_pattern(const blocks::LissajousPattern& pattern, const RenderOptions& opt = {});

}  // namespace divide_forge::render
