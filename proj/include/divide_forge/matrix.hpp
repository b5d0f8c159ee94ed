#pragma once

#include <string>
#include <vector>

#include "divide_forge/numeric.hpp"

namespace divide_forge {

using ClassVector = std::vector<Integer>;

/// Dense square-or-rectangular matrix over the integers, row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  ClassVector operator*(const ClassVector& v) const;
  IntMatrix operator-() const;
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  IntMatrix transpose() const;
  IntMatrix column(std::size_t j) const;
  bool is_identity() const;
  /// Nonnegative powers by repeated squaring.
  IntMatrix pow(unsigned long long k) const;
  /// Largest absolute entry, in decimal digits.
  std::size_t max_digits() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> a_;
};

/// x^T S y
Integer pairing(const IntMatrix& S, const ClassVector& x, const ClassVector& y);

ClassVector unit_vector(std::size_t n, std::size_t i);
ClassVector operator+(const ClassVector& a, const ClassVector& b);
ClassVector operator-(const ClassVector& a, const ClassVector& b);
ClassVector operator*(const Integer& k, const ClassVector& a);
std::string format_vector(const ClassVector& v);

}  // namespace divide_forge
