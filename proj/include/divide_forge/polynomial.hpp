#pragma once

#include <string>
#include <vector>

#include "divide_forge/numeric.hpp"

namespace divide_forge {

/// Dense integer polynomial, coefficient i multiplies t^i. Always trimmed (no trailing zeros).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  static IntPoly monomial(const Integer& c, std::size_t degree);
  /// t^n - 1
  static IntPoly binomial(std::size_t n);

  const std::vector<Integer>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  const Integer& leading() const { return c_.back(); }

  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const Integer& k) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

  /// Division by a monic divisor. Returns false (and leaves outputs unspecified) if the
  /// divisor is not monic.
  bool divmod_monic(const IntPoly& divisor, IntPoly& quotient, IntPoly& remainder) const;
  /// Exact division by a monic divisor; throws std::domain_error on nonzero remainder.
  IntPoly exact_div(const IntPoly& divisor) const;

  std::string to_string(char var = 't') const;

 private:
  void trim();
  std::vector<Integer> c_;
};

/// n-th cyclotomic polynomial.
IntPoly cyclotomic(std::size_t n);

/// Euler's totient.
std::size_t totient(std::size_t n);

}  // namespace divide_forge
