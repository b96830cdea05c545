#pragma once

// Exact integer/rational arithmetic, integer matrices, Bernoulli polynomials.
// Everything here is immutable after construction and safe to use concurrently.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plumbcalc {

using Integer = boost::multiprecision::cpp_int;
// Always stored reduced with positive denominator (cpp_rational canonicalizes).
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return numerator(q); }
inline Integer den(const Rational& q) { return denominator(q); }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}
inline Integer lcm(const Integer& a, const Integer& b) {
  return boost::multiprecision::lcm(a, b);
}

/// Largest s >= 0 with s*s <= n. Requires n >= 0.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative value");
  return boost::multiprecision::sqrt(n);
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}
inline Integer ceil_div(const Integer& a, const Integer& b) {
  return -floor_div(-a, b);
}

inline Integer floor_rat(const Rational& q) { return floor_div(num(q), den(q)); }
inline Integer ceil_rat(const Rational& q) { return ceil_div(num(q), den(q)); }

/// x mod 1, result in [0, 1).
inline Rational frac_part(const Rational& q) {
  return q - Rational(floor_rat(q));
}

namespace exact {

struct NonSquareError : std::invalid_argument {
  explicit NonSquareError(const std::string& what) : std::invalid_argument(what) {}
};
struct SingularError : std::domain_error {
  explicit SingularError(const std::string& what) : std::domain_error(what) {}
};

/// Dense integer matrix with exact entries.
class IntMatrix {
 public:
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Integer& operator()(int i, int j) const {
    return e_[static_cast<size_t>(i) * cols_ + j];
  }

  bool is_symmetric() const {
    if (!square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Integer& aik = (*this)(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

 private:
  int rows_, cols_;
  std::vector<Integer> e_;
};

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
inline Integer det(const IntMatrix& m) {
  if (!m.square()) throw NonSquareError("det: matrix not square");
  const int n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Integer(-a(n - 1, n - 1));
}

/// Leading principal minors det(m[0..k) x [0..k)) for k = 1..n.
/// A single fraction-free pass; exact. Bails out early on a zero pivot by
/// falling back to per-minor determinants (rare, and n is tiny here).
inline std::vector<Integer> leading_principal_minors(const IntMatrix& m) {
  if (!m.square()) throw NonSquareError("minors: matrix not square");
  const int n = m.rows();
  std::vector<Integer> minors;
  minors.reserve(n);
  IntMatrix a = m;
  Integer prev = 1;
  bool clean = true;
  for (int k = 0; k < n && clean; ++k) {
    minors.push_back(a(k, k));  // pivot after k steps = (k+1)-st leading minor
    if (k + 1 == n) break;
    if (a(k, k) == 0) { clean = false; break; }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  if (!clean) {
    minors.clear();
    for (int k = 1; k <= n; ++k) {
      IntMatrix sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = m(i, j);
      minors.push_back(det(sub));
    }
  }
  return minors;
}

/// Adjugate and determinant: m * adjugate == det * identity, exactly.
/// The inverse of m has entries adjugate(i,j) / det.
inline std::pair<IntMatrix, Integer> inverse_exact(const IntMatrix& m) {
  if (!m.square()) throw NonSquareError("inverse_exact: matrix not square");
  const int n = m.rows();
  Integer d = det(m);
  if (d == 0) throw SingularError("inverse_exact: singular matrix");
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return {adj, d};
  }
  IntMatrix minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int mi = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        int mj = 0;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mi, mj) = m(r, c);
          ++mj;
        }
        ++mi;
      }
      Integer cof = det(minor);
      if ((i + j) & 1) cof = -cof;
      adj(j, i) = cof;  // adjugate is the transposed cofactor matrix
    }
  return {adj, d};
}

inline Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

/// B_m = B_m(0), with B_1 = -1/2. Cached; thread-safe.
inline Rational bernoulli_number(int m) {
  if (m < 0) throw std::domain_error("bernoulli_number: negative index");
  static std::vector<Rational> cache{Rational(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= m) {
    int n = static_cast<int>(cache.size());
    // sum_{j=0}^{n} C(n+1, j) B_j = 0
    Rational s = 0;
    for (int j = 0; j < n; ++j) s += Rational(binomial(n + 1, j)) * cache[j];
    cache.push_back(-s / Rational(binomial(n + 1, n)));
  }
  return cache[m];
}

/// B_m(x) via the binomial expansion over cached Bernoulli numbers.
inline Rational bernoulli_poly(int m, const Rational& x) {
  if (m < 0) throw std::domain_error("bernoulli_poly: negative index");
  Rational acc = 0;
  Rational xp = 1;  // x^(m-k) built from the top down
  for (int k = m; k >= 0; --k) {
    acc += Rational(binomial(m, k)) * bernoulli_number(k) * xp;
    xp *= x;
  }
  return acc;
}

}  // namespace exact
}  // namespace plumbcalc
