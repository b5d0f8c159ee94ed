#include "divide_forge/monodromy.hpp"

#include <cassert>
#include <cctype>
#include <numeric>
#include <sstream>

#include "divide_forge/error.hpp"

namespace divide_forge::monodromy {

IntMatrix transvection(const IntMatrix& S, const ClassVector& v) {
  const std::size_t n = v.size();
  if (S.rows() != n) throw Error(ErrorCode::LengthMismatch, "class length differs from the form size");
  const ClassVector Sv = S * v;
  IntMatrix T = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) T(i, j) -= v[i] * Sv[j];
  }
  return T;
}

IntMatrix inverse_transvection(const IntMatrix& S, const ClassVector& v) {
  const std::size_t n = v.size();
  if (S.rows() != n) throw Error(ErrorCode::LengthMismatch, "class length differs from the form size");
  const ClassVector Sv = S * v;
  IntMatrix T = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) T(i, j) += v[i] * Sv[j];
  }
  return T;
}

IntMatrix monodromy_matrix(const IntMatrix& S, const cycles::CycleBasis& b) {
  const std::size_t n = b.size();
  IntMatrix h = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) h = transvection(S, unit_vector(n, i)) * h;
  return h;
}

IntPoly char_poly(const IntMatrix& A) {
  const std::size_t n = A.rows();
  if (A.cols() != n) throw Error(ErrorCode::InvalidArgument, "characteristic polynomial of a non-square matrix");
  if (n == 0) return IntPoly({Integer(1)});
  // Coefficients from the leading one down.
  std::vector<Integer> vect{1, -A(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<Integer> q(r + 2);
    q[0] = 1;
    q[1] = -A(r, r);
    ClassVector col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = A(i, r);
    for (std::size_t k = 2; k < r + 2; ++k) {
      Integer s = 0;
      for (std::size_t j = 0; j < r; ++j) s += A(r, j) * col[j];
      q[k] = -s;
      if (k + 1 < r + 2) {
        ClassVector next(r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) next[i] += A(i, j) * col[j];
        col = std::move(next);
      }
    }
    std::vector<Integer> out(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) out[i] += q[i - j] * vect[j];
    vect = std::move(out);
  }
  std::reverse(vect.begin(), vect.end());
  return IntPoly(std::move(vect));
}

namespace {

class WordParser {
 public:
  explicit WordParser(const std::string& s) : s_(s) {}

  std::vector<Token> sequence(bool nested) {
    std::vector<Token> out;
    while (true) {
      skip();
      if (at_end()) {
        if (nested) fail("unclosed parenthesis");
        return out;
      }
      if (s_[i_] == ')') {
        if (!nested) fail("unbalanced `)`");
        ++i_;
        return out;
      }
      out.push_back(term());
    }
  }

 private:
  Token term() {
    Token t = atom();
    skip();
    while (!at_end() && s_[i_] == '^') {
      ++i_;
      t.exponent *= integer();
      skip();
    }
    if (t.exponent == 0) fail("zero exponent");
    return t;
  }

  Token atom() {
    Token t;
    if (s_[i_] == '(') {
      ++i_;
      t.kind = Token::Kind::Group;
      t.group = sequence(true);
      return t;
    }
    const std::string word = identifier();
    if (word == "Mono") {
      t.kind = Token::Kind::Mono;
      return t;
    }
    if (word != "Tw") fail("expected Tw, Mono or `(`, found `" + word + "`");
    skip();
    if (!at_end() && s_[i_] == '^') {
      ++i_;
      t.exponent = integer();
      skip();
    }
    expect('(');
    skip();
    if (!at_end() && s_[i_] == '[') {
      ++i_;
      t.kind = Token::Kind::Vector;
      while (true) {
        skip();
        t.vector.push_back(integer());
        skip();
        if (!at_end() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        expect(']');
        break;
      }
    } else {
      t.kind = Token::Kind::Name;
      t.name = identifier();
    }
    skip();
    expect(')');
    return t;
  }

  std::string identifier() {
    const std::size_t start = i_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\'')) ++i_;
    if (i_ == start) fail("expected a name");
    return s_.substr(start, i_ - start);
  }

  long long integer() {
    skip();
    std::size_t start = i_;
    if (!at_end() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == start || !std::isdigit(static_cast<unsigned char>(s_[i_ - 1]))) fail("expected an integer");
    return std::stoll(s_.substr(start, i_ - start));
  }

  void expect(char c) {
    if (at_end() || s_[i_] != c) fail(std::string("expected `") + c + "`");
    ++i_;
  }

  void skip() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == '#') {
        while (!at_end() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  bool at_end() const { return i_ >= s_.size(); }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "word offset " + std::to_string(i_) + ": " + msg);
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

void format_tokens(std::ostream& out, const std::vector<Token>& ts) {
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const Token& t = ts[k];
    if (k) out << ' ';
    const bool inverse_twist = t.exponent == -1 && (t.kind == Token::Kind::Name || t.kind == Token::Kind::Vector);
    if (inverse_twist) {
      out << "Tw^-1(";
      if (t.kind == Token::Kind::Name) {
        out << t.name;
      } else {
        out << '[';
        for (std::size_t i = 0; i < t.vector.size(); ++i) out << (i ? "," : "") << t.vector[i];
        out << ']';
      }
      out << ')';
      continue;
    }
    switch (t.kind) {
      case Token::Kind::Name: out << "Tw(" << t.name << ')'; break;
      case Token::Kind::Vector:
        out << "Tw([";
        for (std::size_t i = 0; i < t.vector.size(); ++i) out << (i ? "," : "") << t.vector[i];
        out << "])";
        break;
      case Token::Kind::Mono: out << "Mono"; break;
      case Token::Kind::Group:
        out << '(';
        format_tokens(out, t.group);
        out << ')';
        break;
    }
    if (t.exponent != 1) out << '^' << t.exponent;
  }
}

IntMatrix sequence_matrix(const WordContext& ctx, const std::vector<Token>& ts);

IntMatrix token_matrix(const WordContext& ctx, const Token& t) {
  const std::size_t n = ctx.basis.size();
  const unsigned long long e = static_cast<unsigned long long>(t.exponent < 0 ? -t.exponent : t.exponent);
  switch (t.kind) {
    case Token::Kind::Name:
    case Token::Kind::Vector: {
      const ClassVector v = t.kind == Token::Kind::Name ? resolve_name(ctx, t.name) : t.vector;
      if (v.size() != n) throw Error(ErrorCode::LengthMismatch, "twist class has the wrong length");
      return (t.exponent < 0 ? inverse_transvection(ctx.S, v) : transvection(ctx.S, v)).pow(e);
    }
    case Token::Kind::Mono:
      if (t.exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative powers of Mono are not supported");
      return ctx.h.pow(e);
    case Token::Kind::Group: {
      if (t.exponent > 0) return sequence_matrix(ctx, t.group).pow(e);
      std::vector<Token> inv(t.group.rbegin(), t.group.rend());
      for (auto& x : inv) x.exponent = -x.exponent;
      return sequence_matrix(ctx, inv).pow(e);
    }
  }
  return IntMatrix::identity(n);
}

IntMatrix sequence_matrix(const WordContext& ctx, const std::vector<Token>& ts) {
  IntMatrix m = IntMatrix::identity(ctx.basis.size());
  for (const auto& t : ts) {
    const IntMatrix f = token_matrix(ctx, t);
    m = ctx.order == Compose::RightFirst ? m * f : f * m;
  }
  return m;
}

}  // namespace

TwistWord parse_word(const std::string& text) {
  WordParser p(text);
  TwistWord w;
  w.tokens = p.sequence(false);
  return w;
}

std::string format_word(const TwistWord& w) {
  std::ostringstream out;
  format_tokens(out, w.tokens);
  if (w.power != 1) out << " [^" << w.power << ']';
  return out.str();
}

ClassVector resolve_name(const WordContext& ctx, const std::string& name) {
  if (ctx.names) {
    const auto it = ctx.names->find(name);
    if (it != ctx.names->end()) return it->second;
  }
  const int i = ctx.basis.index_of(name);
  if (i < 0) throw Error(ErrorCode::UnknownName, "unknown cycle name `" + name + "`");
  return unit_vector(ctx.basis.size(), std::size_t(i));
}

IntMatrix word_matrix(const WordContext& ctx, const TwistWord& w) {
  if (w.power < 0) throw Error(ErrorCode::InvalidArgument, "negative word power");
  IntMatrix m = sequence_matrix(ctx, w.tokens).pow(static_cast<unsigned long long>(w.power));
#ifndef NDEBUG
  assert(m.transpose() * ctx.S * m == ctx.S || m.rows() == 0);
#endif
  return m;
}

IdentityReport verify_identity(const WordContext& ctx, const TwistWord& lhs, const TwistWord& rhs) {
  IdentityReport r;
  r.lhs = word_matrix(ctx, lhs);
  r.rhs = word_matrix(ctx, rhs);
  r.equal = r.lhs == r.rhs;
  if (!r.equal) {
    for (std::size_t j = 0; j < r.lhs.cols() && r.first_column < 0; ++j)
      if (r.lhs.column(j) != r.rhs.column(j)) r.first_column = int(j);
  }
  return r;
}

ClassVector class_action(const IntMatrix& h, const ClassVector& v, long long power) {
  if (power < 0) throw Error(ErrorCode::InvalidArgument, "negative powers are not supported");
  if (v.size() != h.cols()) throw Error(ErrorCode::LengthMismatch, "class length differs from the matrix size");
  ClassVector x = v;
  for (long long k = 0; k < power; ++k) x = h * x;
  return x;
}

OrderReport matrix_order(const IntMatrix& h, unsigned long long bound) {
  if (bound < 1) throw Error(ErrorCode::InvalidArgument, "order bound must be positive");
  OrderReport rep;
  const std::size_t mu = h.rows();
  IntPoly rest = char_poly(h);
  const std::size_t limit = std::max<std::size_t>(4 * mu * mu, 1);
  for (std::size_t n = 1; n <= limit && rest.degree() > 0; ++n) {
    if (totient(n) > std::size_t(rest.degree())) continue;
    const IntPoly phi = cyclotomic(n);
    int mult = 0;
    while (rest.degree() >= phi.degree()) {
      IntPoly quo, rem;
      rest.divmod_monic(phi, quo, rem);
      if (!rem.is_zero()) break;
      rest = quo;
      ++mult;
    }
    if (mult > 0) rep.factors.push_back({n, mult});
  }
  rep.cyclotomic = rest.degree() == 0;
  if (rep.cyclotomic) {
    unsigned long long L = 1;
    for (auto [n, m] : rep.factors) L = std::lcm(L, static_cast<unsigned long long>(n));
    rep.semisimple_candidate = h.pow(L).is_identity();
    if (rep.semisimple_candidate) {
      unsigned long long best = L;
      for (unsigned long long d = 1; d <= L; ++d)
        if (L % d == 0 && d < best && h.pow(d).is_identity()) {
          best = d;
          break;
        }
      if (best <= bound) rep.order = best;
    }
  }
  rep.exceeds_bound = !rep.order.has_value();
  return rep;
}

}  // namespace divide_forge::monodromy
