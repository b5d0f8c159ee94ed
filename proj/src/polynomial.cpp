#include "divide_forge/polynomial.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace divide_forge {

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t degree) {
  std::vector<Integer> v(degree + 1, Integer(0));
  v[degree] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::binomial(std::size_t n) {
  std::vector<Integer> v(n + 1, Integer(0));
  v[n] = 1;
  v[0] -= 1;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer IntPoly::eval(const Integer& x) const {
  Integer acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Rational IntPoly::eval(const Rational& x_in) const {
  Rational x(x_in);
  x.canonicalize();
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Rational(mpz_class(c_[i].str()));
  return acc;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Integer> v(std::max(c_.size(), o.c_.size()), Integer(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + o * Integer(-1); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Integer> v(c_.size() + o.c_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const Integer& k) const {
  std::vector<Integer> v(c_);
  for (auto& x : v) x *= k;
  return IntPoly(std::move(v));
}

bool IntPoly::divmod_monic(const IntPoly& divisor, IntPoly& quotient, IntPoly& remainder) const {
  if (divisor.is_zero() || (divisor.leading() != 1 && divisor.leading() != -1)) return false;
  std::vector<Integer> rem(c_);
  const int dd = divisor.degree();
  const int nd = degree();
  if (nd < dd) {
    quotient = {};
    remainder = *this;
    return true;
  }
  std::vector<Integer> q(static_cast<std::size_t>(nd - dd + 1), Integer(0));
  const Integer& lead = divisor.leading();
  for (int i = nd; i >= dd; --i) {
    const Integer factor = rem[static_cast<std::size_t>(i)] * lead;  // lead is +-1
    if (factor == 0) continue;
    q[static_cast<std::size_t>(i - dd)] = factor;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= factor * divisor.c_[static_cast<std::size_t>(j)];
  }
  quotient = IntPoly(std::move(q));
  remainder = IntPoly(std::move(rem));
  return true;
}

IntPoly IntPoly::exact_div(const IntPoly& divisor) const {
  IntPoly q, r;
  if (!divmod_monic(divisor, q, r)) throw std::domain_error("divisor not monic");
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

std::string IntPoly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Integer& c = c_[i];
    if (c == 0) continue;
    const Integer mag = c < 0 ? Integer(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || i == 0) out += mag.str();
    if (i >= 1) {
      if (mag != 1) out += "*";
      out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::size_t totient(std::size_t n) {
  std::size_t result = n;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Mobius function.
int mobius(std::size_t n) {
  int m = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

}  // namespace

IntPoly cyclotomic(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, IntPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // Phi_n = prod_{d | n} (t^d - 1)^{mobius(n / d)}
  IntPoly num = IntPoly::monomial(1, 0);
  std::vector<std::size_t> den;
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int m = mobius(n / d);
    if (m == 1) num = num * IntPoly::binomial(d);
    if (m == -1) den.push_back(d);
  }
  for (std::size_t d : den) num = num.exact_div(IntPoly::binomial(d));
  if (num.leading() < 0) num = num * Integer(-1);
  std::lock_guard lock(mu);
  cache.emplace(n, num);
  return num;
}

}  // namespace divide_forge
