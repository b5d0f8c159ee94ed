#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divide_forge/cycles.hpp"
#include "divide_forge/matrix.hpp"
#include "divide_forge/polynomial.hpp"

namespace divide_forge::monodromy {

IntMatrix transvection(const IntMatrix& S, const ClassVector& v);
IntMatrix inverse_transvection(const IntMatrix& S, const ClassVector& v);

/// Product of the basis transvections; the first basis element is applied first.
IntMatrix monodromy_matrix(const IntMatrix& S, const cycles::CycleBasis& b);

/// det(tI - h), by the division-free Berkowitz recursion.
IntPoly char_poly(const IntMatrix& h);

struct Token {
  enum class Kind { Name, Vector, Mono, Group };
  Kind kind = Kind::Name;
  std::string name;
  ClassVector vector;
  std::vector<Token> group;
  long long exponent = 1;
};

struct TwistWord {
  std::vector<Token> tokens;
  long long power = 1;
};

/// Tokens: Tw(name), Tw^-1(name), Tw([v1,...]), Mono, ( ... ), postfix ^k. `#` starts a
/// comment. Throws ParseError.
TwistWord parse_word(const std::string& text);
std::string format_word(const TwistWord& w);

enum class Compose { RightFirst, LeftFirst };

struct WordContext {
  const IntMatrix& S;
  const cycles::CycleBasis& basis;
  const IntMatrix& h;
  const std::map<std::string, ClassVector>* names = nullptr;  // consulted before basis names
  Compose order = Compose::RightFirst;
};

ClassVector resolve_name(const WordContext& ctx, const std::string& name);

/// Throws UnknownName, LengthMismatch.
IntMatrix word_matrix(const WordContext& ctx, const TwistWord& w);

struct IdentityReport {
  bool equal = false;
  int first_column = -1;  // first differing column when unequal
  IntMatrix lhs;
  IntMatrix rhs;
  std::string scope = "equality checked on H_1 with integer coefficients only";
};

IdentityReport verify_identity(const WordContext& ctx, const TwistWord& lhs, const TwistWord& rhs);

/// h^power v; negative powers are not supported.
ClassVector class_action(const IntMatrix& h, const ClassVector& v, long long power = 1);

struct OrderReport {
  std::optional<unsigned long long> order;  // set when some h^k = I with k <= bound
  bool exceeds_bound = false;
  bool cyclotomic = false;  // char poly factors into cyclotomic polynomials
  std::vector<std::pair<std::size_t, int>> factors;  // (n, multiplicity) of Phi_n
  bool semisimple_candidate = false;  // h^lcm = I for the cyclotomic orders
};

OrderReport matrix_order(const IntMatrix& h, unsigned long long bound);

}  // namespace divide_forge::monodromy
