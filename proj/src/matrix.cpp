#include "divide_forge/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace divide_forge {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < m.rows_; ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o(k, j) != 0) r(i, j) += x * o(k, j);
      }
    }
  }
  return r;
}

ClassVector IntMatrix::operator*(const ClassVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("vector length mismatch");
  ClassVector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (v[j] != 0) r[i] += (*this)(i, j) * v[j];
  return r;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

IntMatrix IntMatrix::column(std::size_t j) const {
  IntMatrix r(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
  return r;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

IntMatrix IntMatrix::pow(unsigned long long k) const {
  if (rows_ != cols_) throw std::invalid_argument("power of a non-square matrix");
  IntMatrix result = identity(rows_);
  IntMatrix base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

std::size_t IntMatrix::max_digits() const {
  std::size_t d = 1;
  for (const auto& x : a_) {
    if (x == 0) continue;
    d = std::max(d, std::size_t(boost::multiprecision::msb(abs(x)) * 0.30103) + 1);
  }
  return d;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << (*this)(i, j);
    out << ']';
  }
  out << ']';
  return out.str();
}

Integer pairing(const IntMatrix& S, const ClassVector& x, const ClassVector& y) {
  if (x.size() != S.rows() || y.size() != S.cols()) throw std::invalid_argument("pairing length mismatch");
  Integer r = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0 && S(i, j) != 0) r += x[i] * S(i, j) * y[j];
  }
  return r;
}

ClassVector unit_vector(std::size_t n, std::size_t i) {
  ClassVector v(n);
  v.at(i) = 1;
  return v;
}

ClassVector operator+(const ClassVector& a, const ClassVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  ClassVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

ClassVector operator-(const ClassVector& a, const ClassVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  ClassVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

ClassVector operator*(const Integer& k, const ClassVector& a) {
  ClassVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

std::string format_vector(const ClassVector& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return out.str();
}

}  // namespace divide_forge
