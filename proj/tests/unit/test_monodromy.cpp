#include <functional>
#include <random>

#include "doctest.h"

#include "../support/oracles.hpp"
#include "divide_forge/cycles.hpp"
#include "divide_forge/divide.hpp"
#include "divide_forge/error.hpp"
#include "divide_forge/monodromy.hpp"

using namespace divide_forge;
using namespace divide_forge::monodromy;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

oracle::Poly to_oracle(const IntPoly& p) {
  oracle::Poly r;
  for (const auto& c : p.coeffs()) r.push_back(static_cast<long long>(c));
  return r;
}

IntMatrix from_oracle(const oracle::Mat& m) { return IntMatrix::from_rows(m); }

struct Torus {
  Divide d;
  cycles::CycleBasis b;
  IntMatrix S;
  IntMatrix h;
};

Torus torus(int p, int q) {
  Torus t{chebyshev_divide(p, q), {}, {}, {}};
  t.b = cycles::basis(t.d);
  t.S = cycles::intersection_form(t.d, t.b);
  t.h = monodromy_matrix(t.S, t.b);
  return t;
}

// A small named system over a random skew form.
struct Toy {
  IntMatrix S;
  cycles::CycleBasis b;
  IntMatrix h;
};

Toy toy(const oracle::Mat& s) {
  Toy t{from_oracle(s), {}, {}};
  for (std::size_t i = 0; i < s.size(); ++i) t.b.elements.push_back({cycles::CycleKind::Saddle, int(i), "c" + std::to_string(i)});
  t.h = monodromy_matrix(t.S, t.b);
  return t;
}

}  // namespace

TEST_CASE("char poly of the identity") {
  CHECK(char_poly(IntMatrix::identity(2)).coeffs() == std::vector<Integer>{1, -2, 1});
  CHECK(char_poly(IntMatrix(0, 0)).coeffs() == std::vector<Integer>{1});
}

TEST_CASE("char poly agrees with the trace recursion") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(-3, 3);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      oracle::Mat a(n, std::vector<long long>(n));
      for (auto& row : a)
        for (auto& x : row) x = e(rng);
      CHECK(to_oracle(char_poly(from_oracle(a))) == oracle::char_poly_leverrier(a));
    }
  }
}

TEST_CASE("torus knot monodromy") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}}) {
    CAPTURE(p);
    CAPTURE(q);
    const Torus t = torus(p, q);
    CHECK(to_oracle(char_poly(t.h)) == oracle::torus_alexander(p, q));
    CHECK(t.h.pow(static_cast<unsigned long long>(p * q)).is_identity());
    CHECK(t.h.transpose() * t.S * t.h == t.S);
    const auto o = matrix_order(t.h, 10000);
    REQUIRE(o.order.has_value());
    CHECK((p * q) % static_cast<long long>(*o.order) == 0);
  }
  const Torus cusp = torus(2, 3);
  CHECK(char_poly(cusp.h).coeffs() == std::vector<Integer>{1, -1, 1});
  CHECK(*matrix_order(cusp.h, 100).order == 6);
}

TEST_CASE("transvections") {
  const Torus t = torus(3, 4);
  const std::size_t n = t.b.size();
  for (std::size_t i = 0; i < n; ++i) {
    const ClassVector v = unit_vector(n, i);
    const IntMatrix T = transvection(t.S, v);
    CHECK(T * v == v);
    CHECK(T.transpose() * t.S * T == t.S);
    CHECK(T * inverse_transvection(t.S, v) == IntMatrix::identity(n));
    for (std::size_t j = 0; j < n; ++j) {
      const ClassVector x = unit_vector(n, j);
      CHECK(T * x == x - pairing(t.S, x, v) * v);
    }
  }
  IntMatrix zero(3, 3);
  CHECK(transvection(zero, {1, 2, 3}).is_identity());
  CHECK(code_of([&] { transvection(zero, {1, 2}); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("monodromy is the ordered product of transvections") {
  const Torus t = torus(2, 5);
  const std::size_t n = t.b.size();
  IntMatrix h = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) h = transvection(t.S, unit_vector(n, i)) * h;
  CHECK(h == t.h);
}

TEST_CASE("conjugation law on random forms") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> e(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + std::size_t(trial % 4);
    const Toy t = toy(oracle::random_skew(rng, n, 2));
    ClassVector v(n), w(n);
    for (auto& x : v) x = e(rng);
    for (auto& x : w) x = e(rng);
    std::map<std::string, ClassVector> names{{"v", v}, {"w", w}};
    WordContext ctx{t.S, t.b, t.h, &names};
    const IntMatrix lhs = word_matrix(ctx, parse_word("Tw(w) Tw(v) Tw^-1(w)"));
    CHECK(lhs == transvection(t.S, transvection(t.S, w) * v));
    CHECK(lhs.transpose() * t.S * lhs == t.S);
  }
}

TEST_CASE("word parsing") {
  const auto w = parse_word("Tw(a) Tw^-1(b)  # trailing\n (Tw(c) Mono)^3 Tw([1,-2,0])^2");
  REQUIRE(w.tokens.size() == 4);
  CHECK(w.tokens[0].kind == Token::Kind::Name);
  CHECK(w.tokens[1].exponent == -1);
  CHECK(w.tokens[2].kind == Token::Kind::Group);
  CHECK(w.tokens[2].exponent == 3);
  CHECK(w.tokens[2].group[1].kind == Token::Kind::Mono);
  CHECK(w.tokens[3].vector == ClassVector{1, -2, 0});
  CHECK(w.tokens[3].exponent == 2);
  CHECK(parse_word("").tokens.empty());
  CHECK(parse_word("# only a comment").tokens.empty());
  const auto again = parse_word(format_word(w));
  CHECK(format_word(again) == format_word(w));
  for (const char* bad : {"Tw(", "Foo(a)", "Tw(a)^0", ")", "(Tw(a)", "Tw([1,2)", "Tw(a)^x", "Tw a"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { parse_word(bad); }) == ErrorCode::ParseError);
  }
}

TEST_CASE("word evaluation") {
  const Torus t = torus(2, 3);
  WordContext ctx{t.S, t.b, t.h};
  const std::size_t n = t.b.size();
  CHECK(word_matrix(ctx, parse_word("")).is_identity());
  CHECK(word_matrix(ctx, parse_word("Mono")) == t.h);
  CHECK(word_matrix(ctx, parse_word("Mono^6")).is_identity());
  const std::string c = t.b.elements[0].name, r = t.b.elements[1].name;
  // The rightmost factor acts first.
  CHECK(word_matrix(ctx, parse_word("Tw(" + r + ") Tw(" + c + ")")) == t.h);
  WordContext left{t.S, t.b, t.h, nullptr, Compose::LeftFirst};
  CHECK(word_matrix(left, parse_word("Tw(" + c + ") Tw(" + r + ")")) == t.h);
  CHECK(word_matrix(ctx, parse_word("(Tw(" + r + ") Tw(" + c + "))^-1")) * t.h == IntMatrix::identity(n));
  CHECK(word_matrix(ctx, parse_word("Tw([1,0])")) == transvection(t.S, unit_vector(n, 0)));
  CHECK(code_of([&] { word_matrix(ctx, parse_word("Tw(zz)")); }) == ErrorCode::UnknownName);
  CHECK(code_of([&] { word_matrix(ctx, parse_word("Tw([1,0,0])")); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([&] { word_matrix(ctx, parse_word("Mono^-1")); }) == ErrorCode::InvalidArgument);
  std::map<std::string, ClassVector> names{{c, unit_vector(n, 1)}};
  WordContext shadow{t.S, t.b, t.h, &names};
  CHECK(resolve_name(shadow, c) == unit_vector(n, 1));
}

TEST_CASE("identity verification") {
  const Torus t = torus(2, 3);
  WordContext ctx{t.S, t.b, t.h};
  const auto same = verify_identity(ctx, parse_word("Mono^2"), parse_word("Mono Mono"));
  CHECK(same.equal);
  CHECK(same.first_column == -1);
  CHECK(same.scope.find("H_1") != std::string::npos);
  const auto diff = verify_identity(ctx, parse_word("Mono"), parse_word(""));
  CHECK_FALSE(diff.equal);
  CHECK(diff.first_column == 0);
}

TEST_CASE("class action") {
  const Torus t = torus(2, 3);
  const ClassVector v{1, 0};
  CHECK(class_action(t.h, v, 0) == v);
  CHECK(class_action(t.h, v, 1) == t.h * v);
  CHECK(class_action(t.h, v, 6) == v);
  CHECK(code_of([&] { class_action(t.h, v, -1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { class_action(t.h, {1, 0, 0}, 1); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("matrix order") {
  CHECK(*matrix_order(IntMatrix::identity(3), 5).order == 1);
  CHECK(*matrix_order(-IntMatrix::identity(2), 5).order == 2);
  const Torus t = torus(2, 5);
  CHECK(*matrix_order(t.h, 100).order == 10);
  CHECK(matrix_order(t.h, 9).exceeds_bound);
  // A unipotent Jordan block has a cyclotomic char poly but infinite order.
  const auto j = matrix_order(IntMatrix::from_rows({{1, 1}, {0, 1}}), 10000);
  CHECK(j.cyclotomic);
  CHECK_FALSE(j.semisimple_candidate);
  CHECK(j.exceeds_bound);
  const auto hyp = matrix_order(IntMatrix::from_rows({{2, 1}, {1, 1}}), 10000);
  CHECK_FALSE(hyp.cyclotomic);
  CHECK(hyp.exceeds_bound);
  CHECK(code_of([&] { matrix_order(t.h, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("one-branch divides have symplectic monodromy") {
  for (const auto& pairs : std::vector<std::vector<std::pair<long long, long long>>>{{{2, 3}, {2, 7}}, {{2, 3}, {3, 11}}, {{3, 4}}}) {
    const Divide d = synth(puiseux::validate_ll(pairs));
    const auto b = cycles::basis(d);
    const IntMatrix S = cycles::intersection_form(d, b);
    const IntMatrix h = monodromy_matrix(S, b);
    CHECK(h.transpose() * S * h == S);
    const IntPoly cp = char_poly(h);
    CHECK(cp.coeff(0) * (b.size() % 2 ? -1 : 1) == 1);
  }
}
