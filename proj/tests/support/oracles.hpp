#pragma once
// Test-side reference computations. Nothing here calls into the library.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Poly = std::vector<long long>;  // coefficient i multiplies t^i

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Schoolbook long division by a monic divisor; throws if the remainder is nonzero.
inline Poly div_exact(Poly num, const Poly& den) {
  if (den.empty() || den.back() != 1) throw std::logic_error("oracle divisor must be monic");
  trim(num);
  if (num.size() < den.size()) {
    if (num.empty()) return {};
    throw std::logic_error("oracle division not exact");
  }
  Poly q(num.size() - den.size() + 1, 0);
  const std::size_t deg = den.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    const long long f = num[k + deg];
    q[k] = f;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= f * den[j];
  }
  trim(num);
  if (!num.empty()) throw std::logic_error("oracle division not exact");
  trim(q);
  return q;
}

// t^n - 1
inline Poly binom(int n) {
  Poly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  return p;
}

// Alexander polynomial of the (p,q) torus knot: (t^{pq}-1)(t-1) / ((t^p-1)(t^q-1)).
inline Poly torus_alexander(int p, int q) {
  return div_exact(div_exact(mul(binom(p * q), binom(1)), binom(p)), binom(q));
}

// Substitute t -> t^k.
inline Poly compose_power(const Poly& p, int k) {
  Poly r(p.empty() ? 0 : (p.size() - 1) * static_cast<std::size_t>(k) + 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) r[i * static_cast<std::size_t>(k)] = p[i];
  return r;
}

// Semigroup data of the branch y = x^{b1/a1} + x^{b2/(a1 a2)} + ...
struct Semigroup {
  std::vector<long long> gens;  // bar-beta_0 .. bar-beta_g
  long long conductor;          // equals the Milnor number
};

inline Semigroup semigroup(const std::vector<std::pair<long long, long long>>& pairs) {
  const std::size_t g = pairs.size();
  long long n = 1;
  for (auto [a, b] : pairs) n *= a;
  // Characteristic exponents beta_i over denominator n.
  std::vector<long long> beta(g + 1);
  beta[0] = n;
  for (std::size_t i = 0; i < g; ++i) {
    long long tail = 1;
    for (std::size_t j = i + 1; j < g; ++j) tail *= pairs[j].first;
    beta[i + 1] = pairs[i].second * tail;
  }
  std::vector<long long> e(g + 1);
  e[0] = n;
  for (std::size_t i = 1; i <= g; ++i) e[i] = std::gcd(e[i - 1], beta[i]);
  Semigroup s;
  s.gens.assign(g + 1, 0);
  s.gens[0] = n;
  if (g >= 1) s.gens[1] = beta[1];
  for (std::size_t i = 1; i < g; ++i) {
    const long long ni = e[i - 1] / e[i];
    s.gens[i + 1] = ni * s.gens[i] - beta[i] + beta[i + 1];
  }
  long long c = 1 - n;
  for (std::size_t i = 1; i <= g; ++i) c += (e[i - 1] / e[i] - 1) * s.gens[i];
  s.conductor = c;
  return s;
}

// Valid random pair sequences with a_i in {2,3} and small increments.
inline std::vector<std::pair<long long, long long>> random_sequence(std::mt19937& rng, int length) {
  std::vector<std::pair<long long, long long>> seq;
  long long prod = 1;
  for (int i = 0; i < length; ++i) {
    const long long a = std::uniform_int_distribution<int>(2, 3)(rng);
    const long long lo = seq.empty() ? a + 1 : seq.back().second * a + 1;
    long long b = lo + std::uniform_int_distribution<int>(0, 4)(rng);
    while (std::gcd(b, prod * a) != 1) ++b;
    seq.emplace_back(a, b);
    prod *= a;
  }
  return seq;
}

// Brute-force double-point count of t -> (T(p,t), T(q,t)) over the lattice theta = m pi/(pq).
inline long long chebyshev_double_points_numeric(int p, int q) {
  const double pi = std::acos(-1.0);
  const long long N = static_cast<long long>(p) * q;
  long long count = 0;
  for (long long m1 = 1; m1 < N; ++m1) {
    for (long long m2 = 1; m2 < m1; ++m2) {
      const double t1 = pi * static_cast<double>(m1) / static_cast<double>(N);
      const double t2 = pi * static_cast<double>(m2) / static_cast<double>(N);
      if (std::abs(std::cos(p * t1) - std::cos(p * t2)) < 1e-9 && std::abs(std::cos(q * t1) - std::cos(q * t2)) < 1e-9) ++count;
    }
  }
  return count;
}

using Mat = std::vector<std::vector<long long>>;

inline Mat mat_mul(const Mat& a, const Mat& b) {
  Mat r(a.size(), std::vector<long long>(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// det(tI - A) by Faddeev-LeVerrier; every division is exact over the integers.
inline Poly char_poly_leverrier(const Mat& A) {
  const std::size_t n = A.size();
  Poly c(n + 1, 0);
  c[n] = 1;
  Mat M(n, std::vector<long long>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    Mat AM = mat_mul(A, M);
    for (std::size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    M = AM;
    const Mat AMk = mat_mul(A, M);
    long long tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AMk[i][i];
    if (tr % static_cast<long long>(k) != 0) throw std::logic_error("oracle trace not divisible");
    c[n - k] = -tr / static_cast<long long>(k);
  }
  return c;
}

// Random skew-symmetric integer matrix with entries in [-r, r].
inline Mat random_skew(std::mt19937& rng, std::size_t n, int r) {
  std::uniform_int_distribution<int> e(-r, r);
  Mat s(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      s[i][j] = e(rng);
      s[j][i] = -s[i][j];
    }
  return s;
}

}  // namespace oracle
