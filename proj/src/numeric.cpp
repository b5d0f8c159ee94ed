#include "divide_forge/numeric.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "divide_forge/error.hpp"

namespace divide_forge {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadPair: return "BadPair";
    case ErrorCode::ExponentOrder: return "ExponentOrder";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::GenericityFailure: return "GenericityFailure";
    case ErrorCode::TripleParty: return "TripleParty";
    case ErrorCode::Tangency: return "Tangency";
    case ErrorCode::EndpointOnInterior: return "EndpointOnInterior";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::InconsistentAnchors: return "InconsistentAnchors";
    case ErrorCode::EtaTooLarge: return "EtaTooLarge";
    case ErrorCode::WrongBranchKind: return "WrongBranchKind";
    case ErrorCode::NoCore: return "NoCore";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsignedDivide: return "UnsignedDivide";
    case ErrorCode::NoProvenance: return "NoProvenance";
    case ErrorCode::MissingWalkSpec: return "MissingWalkSpec";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string join_issues(const std::vector<ValidationError::Issue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(issue.code)) + " (" + issue.message + ")";
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(issues.empty() ? ErrorCode::InvalidArgument : issues.front().code, join_issues(issues)),
      issues_(std::move(issues)) {}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  Rational r;
  std::string s(text);
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/')) {
      throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    }
  }
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (r.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
  if (r.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str(10);
}

Rational round_dyadic(double value, int bits) {
  const double scaled = std::nearbyint(std::ldexp(value, bits));
  mpz_class num;
  num.set_str(std::to_string(static_cast<long long>(scaled)), 10);
  mpz_class den = 1;
  den <<= bits;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

long long gcd_ll(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Point round_point(PointD p, int bits) { return {round_dyadic(p.x, bits), round_dyadic(p.y, bits)}; }

Point circle_point(double angle, int bits) {
  // (cos a, sin a) = ((1 - m^2) / (1 + m^2), 2m / (1 + m^2)) with m = tan(a / 2).
  double a = std::remainder(angle, 2.0 * std::numbers::pi);
  if (std::abs(std::abs(a) - std::numbers::pi) < 1e-12) return {Rational(-1), Rational(0)};
  const Rational m = round_dyadic(std::tan(a / 2.0), bits);
  const Rational m2 = m * m;
  Point p{(1 - m2) / (1 + m2), 2 * m / (1 + m2)};
  p.x.canonicalize();
  p.y.canonicalize();
  return p;
}

int orient(const Point& a, const Point& b, const Point& c) {
  const Rational v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(v);
}

}  // namespace divide_forge
