#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divide_forge/divide.hpp"
#include "divide_forge/matrix.hpp"

namespace divide_forge::cycles {

enum class CycleKind { Min, Saddle, Max };

struct CycleElement {
  CycleKind kind = CycleKind::Saddle;
  int id = -1;       // region id for extrema, crossing id for saddles
  std::string name;  // r<id> or c<id>
};

/// Distinguished basis: minima, then saddles, then maxima; ids ascending inside a block.
struct CycleBasis {
  std::vector<CycleElement> elements;

  std::size_t size() const noexcept { return elements.size(); }
  int index_of(const std::string& name) const;
  int index_of(CycleKind kind, int id) const;
};

/// Throws UnsignedDivide.
CycleBasis basis(const Divide& d);

enum class MinMaxRule { SharedEdges, SharedCrossings };

/// Entry signs for the upper triangle (earlier element, later element) of the form.
struct FormConvention {
  int min_saddle = 1;
  int saddle_max = 1;
  int min_max = 1;
  MinMaxRule rule = MinMaxRule::SharedEdges;
};

/// The convention pinned by the torus-knot calibration.
const FormConvention& calibrated_convention();

/// Recomputes the calibration targets with the frozen convention; throws std::logic_error
/// if they no longer hold. Runs once per process, on first use of `intersection_form`.
void check_calibration();

IntMatrix intersection_form(const Divide& d, const CycleBasis& b);
IntMatrix intersection_form(const Divide& d, const CycleBasis& b, const FormConvention& conv);

/// x |-> x - <x,v> v with <x,v> = x^T S v.
ClassVector twist(const IntMatrix& S, const ClassVector& v, const ClassVector& x, int power = 1);

/// A chain of basis names; its class is the last twist applied first to the class of the
/// first name: walk [x0, x1, ..., xk] -> T_{xk}( ... T_{x1}(x0)).
struct Walk {
  std::string name;
  std::vector<std::string> steps;
};

ClassVector walk_class(const IntMatrix& S, const CycleBasis& b, const Walk& w);

struct CompanionClasses {
  Divide base;                     // the base divide as carried by the provenance
  CycleBasis base_basis;
  IntMatrix base_form;
  std::vector<int> base_index;     // position in base_basis of each class
  std::vector<ClassVector> classes;
  std::vector<std::string> labels;
};

/// One class per base maximum and per base crossing, plus one per base minimum when walks
/// are supplied (keyed by the base region name). Throws NoProvenance, MissingWalkSpec.
CompanionClasses companion_classes(const Divide& composed, const CycleBasis& b, const IntMatrix& S,
                                   bool with_minima = false, const std::vector<Walk>& walks = {});

/// The grid crossings along the bridge diagonal through the Manhattan block of a base
/// crossing, followed by the intermediate cells: {c_1..c_p}, {M_2..M_p} as basis indices.
struct Diagonal {
  std::vector<int> crossings;
  std::vector<int> cells;
};
Diagonal bridge_diagonal(const Divide& composed, const CycleBasis& b, int base_crossing);

struct NamedClasses {
  std::string divide_path;  // as written in the fixture, resolved against the fixture directory
  std::vector<std::string> order;
  std::map<std::string, ClassVector> classes;
  std::vector<std::string> free_signs;  // basis names whose coordinate sign is unresolved
  std::vector<Walk> walks;
  std::string relations;  // named relation set the signs are searched against
};

/// Parses `divide <path>`, `class <name> = <ints>`, `walk <name> = <names>`,
/// `signs <basis names>` and `relations <set>` lines. Throws ParseError, LengthMismatch (when mu > 0).
NamedClasses parse_named_classes(const std::string& text, std::size_t mu = 0, const std::string& base_dir = "");
NamedClasses load_named_classes(const std::string& path, std::size_t mu = 0);

struct SignChoice {
  std::map<std::string, int> signs;  // basis name -> +1/-1
  std::map<std::string, ClassVector> classes;
};

/// Tries every sign assignment of the free coordinates (first satisfying one wins).
std::optional<SignChoice> search_signs(const NamedClasses& fixture, const CycleBasis& b,
                                       const std::function<bool(const std::map<std::string, ClassVector>&)>& ok);

const char* to_string(CycleKind k);

}  // namespace divide_forge::cycles
