#pragma once

// Euler-Maclaurin asymptotics of the rank-two false theta sums near roots of
// unity, plus direct high-precision radial evaluation. Exact rationals carry
// the Bernoulli weights, derivative polynomials, and boundary integrals; the
// only floating point is the final complex assembly and the radial sums.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <array>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plumbcalc/exact.hpp"
#include "plumbcalc/gauss.hpp"
#include "plumbcalc/theta.hpp"

namespace plumbcalc::asympt {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

using theta::QuadraticForm2;
using theta::SignedAlphaSet;

/// Default significant digits; PLUMBCALC_PRECISION overrides.
inline int default_digits() {
  if (const char* env = std::getenv("PLUMBCALC_PRECISION")) {
    int d = std::atoi(env);
    if (d >= 10 && d <= 10000) return d;
  }
  return 50;
}

inline void set_precision(int digits) {
  Real::default_precision(static_cast<unsigned>(digits));
}

struct Cplx {
  Real re{0}, im{0};

  Cplx() = default;
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Cplx(const Real& r) : re(r), im(0) {}

  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend Cplx operator-(const Cplx& a, const Cplx& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
  Real abs() const { return boost::multiprecision::sqrt(re * re + im * im); }
};

inline Real to_real(const Rational& q) {
  return Real(num(q).str()) / Real(den(q).str());
}

/// e^(2 pi i q) for exact rational q.
inline Cplx unit_phase(const Rational& q) {
  Rational f = frac_part(q);
  Real angle = 2 * boost::math::constants::pi<Real>() * to_real(f);
  return {cos(angle), sin(angle)};
}

// ---------------------------------------------------------------------------
// Derivative polynomials of g(x) = e^(-mult Q(x)).

/// Dense bivariate polynomial with rational coefficients.
class BivarPoly {
 public:
  explicit BivarPoly(int max_deg) : n_(max_deg + 1), c_(static_cast<size_t>(n_) * n_) {}

  Rational& at(int i, int j) { return c_[static_cast<size_t>(i) * n_ + j]; }
  const Rational& at(int i, int j) const { return c_[static_cast<size_t>(i) * n_ + j]; }
  int max_deg() const { return n_ - 1; }

 private:
  int n_;
  std::vector<Rational> c_;
};

/// Table of P_{n1,n2} with d^(n1+n2) g / dx1^n1 dx2^n2 = P_{n1,n2} * g,
/// for n1 + n2 <= max_order.
class DerivativeTable {
 public:
  DerivativeTable(const QuadraticForm2& q, const Integer& mult, int max_order)
      : max_order_(max_order) {
    Rational l1 = -Rational(2 * mult * q.sigma1);   // d/dx1 of -mult*Q, x1 part
    Rational lx = -Rational(mult * q.two_sigma2);   // cross coefficient
    Rational l2 = -Rational(2 * mult * q.sigma3);
    table_.assign(static_cast<size_t>(max_order + 1) * (max_order + 1),
                  BivarPoly(max_order));
    mut(0, 0).at(0, 0) = 1;
    // first build pure x1 derivatives, then extend each in x2
    for (int i = 1; i <= max_order; ++i)
      apply(mut(i - 1, 0), mut(i, 0), true, l1, lx, l2);
    for (int i = 0; i <= max_order; ++i)
      for (int j = 1; i + j <= max_order; ++j)
        apply(mut(i, j - 1), mut(i, j), false, l1, lx, l2);
  }

  const BivarPoly& at(int i, int j) const {
    return table_[static_cast<size_t>(i) * (max_order_ + 1) + j];
  }

  /// g^{(n1,n2)}(0,0): the constant term of the derivative polynomial.
  Rational corner(int n1, int n2) const { return at(n1, n2).at(0, 0); }

 private:
  BivarPoly& mut(int i, int j) {
    return table_[static_cast<size_t>(i) * (max_order_ + 1) + j];
  }

  // out = d/dx (in) + (linear form) * in, where the linear form is the
  // derivative of the exponent: along x1 it is l1*x1 + lx*x2, along x2 it is
  // lx*x1 + l2*x2.
  void apply(const BivarPoly& in, BivarPoly& out, bool along_x1, const Rational& l1,
             const Rational& lx, const Rational& l2) {
    int d = in.max_deg();
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) out.at(i, j) = 0;
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) {
        const Rational& c = in.at(i, j);
        if (c == 0) continue;
        if (along_x1) {
          if (i + 1 <= d) out.at(i + 1, j) += c * l1;
          if (j + 1 <= d && i <= d) out.at(i, j + 1) += c * lx;
          if (i >= 1) out.at(i - 1, j) += Rational(i) * c;
        } else {
          if (j + 1 <= d) out.at(i, j + 1) += c * l2;
          if (i + 1 <= d) out.at(i + 1, j) += c * lx;
          if (j >= 1) out.at(i, j - 1) += Rational(j) * c;
        }
      }
  }

  int max_order_;
  std::vector<BivarPoly> table_;
};

inline Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Exact value of the one-dimensional boundary integral of g^(d) along an
/// axis: axis 2 means int_0^inf (d/dx2)^d g (x1, 0) dx1, axis 1 the
/// symmetric one. Only odd derivative orders occur; for them the integrand
/// is an odd polynomial times a Gaussian and the moments are rational:
/// int_0^inf x^(2u+1) e^(-l x^2) dx = u! / (2 l^(u+1)).
inline Rational boundary_integral_exact(const QuadraticForm2& q, const Integer& mult,
                                        int deriv_order, int axis) {
  if (deriv_order < 0 || deriv_order % 2 == 0)
    throw std::domain_error("boundary integral: derivative order must be odd");
  if (axis != 1 && axis != 2) throw std::domain_error("boundary integral: bad axis");
  DerivativeTable table(q, mult, deriv_order);
  const BivarPoly& poly =
      axis == 2 ? table.at(0, deriv_order) : table.at(deriv_order, 0);
  Rational lambda(mult * (axis == 2 ? q.sigma1 : q.sigma3));
  Rational acc = 0;
  Rational lpow = lambda;  // lambda^(u+1)
  // coefficient of x^j on the integration axis, x2 (resp. x1) set to zero
  for (int j = 1; j <= deriv_order; j += 2) {
    const Rational& c = axis == 2 ? poly.at(j, 0) : poly.at(0, j);
    if (c != 0) {
      int u = (j - 1) / 2;
      acc += c * Rational(factorial(u)) / (2 * lpow);
    }
    lpow *= lambda;
  }
  return acc;
}

/// Same integral as a high-precision real.
inline Real gaussian_boundary_integral(const QuadraticForm2& q, const Integer& mult,
                                       int deriv_order, int axis) {
  return to_real(boundary_integral_exact(q, mult, deriv_order, axis));
}

// ---------------------------------------------------------------------------
// Main-term Gauss factor and the expansion coefficients.

namespace detail {

/// Exact phases (h/k) mult Q(l + alpha) over all alpha in S, l mod k,
/// with the sign of alpha attached.
inline std::vector<std::pair<Rational, int>> phase_table(const SignedAlphaSet& S,
                                                         const QuadraticForm2& q,
                                                         const Integer& mult,
                                                         const Integer& h,
                                                         const Integer& k) {
  long long kk = static_cast<long long>(k);
  std::vector<std::pair<Rational, int>> out;
  out.reserve(S.entries.size() * static_cast<size_t>(kk * kk));
  for (const auto& e : S.entries)
    for (long long l1 = 0; l1 < kk; ++l1)
      for (long long l2 = 0; l2 < kk; ++l2) {
        Rational ph = frac_part(Rational(h, k) * Rational(mult) * q(l1 + e.a1, l2 + e.a2));
        out.push_back({ph, e.sign});
      }
  return out;
}

inline bool gauss_factor_vanishes(const std::vector<std::pair<Rational, int>>& phases) {
  Integer n = 1;
  for (const auto& [ph, sign] : phases) n = lcm(n, den(ph));
  gauss::CyclotomicSum acc;
  acc.order = static_cast<long long>(n);
  for (const auto& [ph, sign] : phases)
    acc.add(static_cast<long long>(num(ph) * (n / den(ph))), sign);
  return gauss::is_zero(acc);
}

}  // namespace detail

struct AsymptoticExpansion {
  Integer h, k;
  int order = 0;
  std::vector<Cplx> a;  // a[m], m = 0..order
};

/// Coefficients a(m) of F(h/k + i t / (2 pi)) ~ sum a(m) t^m, assembled from
/// the three surviving boundary/corner families after the reflection pairing
/// (only even Bernoulli indices survive). The vanishing of the leading Gauss
/// factor is checked exactly and is a hard error when it fails.
inline AsymptoticExpansion em_expansion(const SignedAlphaSet& S, const QuadraticForm2& q,
                                        const Integer& mult, const Integer& h,
                                        const Integer& k, int order) {
  if (order < 0 || order > 6)
    throw std::domain_error("em_expansion: order must be in [0, 6]");
  if (k < 1 || plumbcalc::gcd(h, k) != 1)
    throw std::domain_error("em_expansion: need k >= 1 and gcd(h,k) = 1");
  if (!q.positive_definite())
    throw std::domain_error("em_expansion: form not positive definite");
  auto phases = detail::phase_table(S, q, mult, h, k);
  if (!detail::gauss_factor_vanishes(phases))
    throw std::domain_error("em_expansion: leading Gauss factor does not vanish");

  DerivativeTable table(q, mult, 2 * order + 1);
  std::vector<Rational> I1(static_cast<size_t>(order) + 1), I2(I1.size());
  for (int m = 0; m <= order; ++m) {
    I1[static_cast<size_t>(m)] = boundary_integral_exact(q, mult, 2 * m + 1, 2);
    I2[static_cast<size_t>(m)] = boundary_integral_exact(q, mult, 2 * m + 1, 1);
  }

  AsymptoticExpansion out;
  out.h = h;
  out.k = k;
  out.order = order;
  out.a.assign(static_cast<size_t>(order) + 1, Cplx{});

  long long kk = static_cast<long long>(k);
  size_t idx = 0;
  for (const auto& e : S.entries)
    for (long long l1 = 0; l1 < kk; ++l1)
      for (long long l2 = 0; l2 < kk; ++l2, ++idx) {
        Cplx phase = unit_phase(phases[idx].first) * Real(e.sign);
        Rational b1((Integer(l1) * den(e.a1) + num(e.a1)), k * den(e.a1));
        Rational b2((Integer(l2) * den(e.a2) + num(e.a2)), k * den(e.a2));
        Integer kpow = 1;  // k^(2m)
        for (int m = 0; m <= order; ++m) {
          Rational w = 0;
          Rational fact = Rational(factorial(2 * m + 2));
          w -= exact::bernoulli_poly(2 * m + 2, b2) / fact * I1[static_cast<size_t>(m)];
          w -= exact::bernoulli_poly(2 * m + 2, b1) / fact * I2[static_cast<size_t>(m)];
          for (int n1 = 0; n1 <= 2 * m; ++n1) {
            int n2 = 2 * m - n1;  // equal parity since the total is even
            Rational corner = table.corner(n1, n2);
            if (corner == 0) continue;
            w += exact::bernoulli_poly(n1 + 1, b1) / Rational(factorial(n1 + 1)) *
                 exact::bernoulli_poly(n2 + 1, b2) / Rational(factorial(n2 + 1)) * corner;
          }
          out.a[static_cast<size_t>(m)] += phase * to_real(w * Rational(kpow));
          kpow *= k * k;
        }
      }
  return out;
}

// ---------------------------------------------------------------------------
// Radial evaluation.

namespace detail {

// One shifted Gaussian row sum over n >= 0 of e^(-tau Q(x1 + K n, v)).
// Starting from the lattice point nearest the real vertex of the quadratic,
// terms decrease monotonically in both directions and successive ratios
// shrink by the constant rho = e^(-2 tau A K^2), so a geometric bound closes
// each tail once the running ratio drops below 1/2.
struct RowSummer {
  Real tau;
  Real A, B2, C;  // form coefficients
  Real K;
  Real eps;

  Real sum_row(const Real& x1, const Real& v) const {
    Real vert = (-B2 * v / (2 * A) - x1) / K;
    long long n0 = vert > 0 ? static_cast<long long>(floor(vert)) : 0;
    Real rho = exp(-2 * tau * A * K * K);
    Real u0 = x1 + K * n0;
    Real t0 = exp(-tau * (A * u0 * u0 + B2 * u0 * v + C * v * v));
    Real acc = 0;
    {
      Real term = t0;  // t_n, with ratio = t_{n+1} / t_n
      Real ratio = exp(-tau * (2 * A * K * u0 + A * K * K + B2 * K * v));
      while (true) {
        acc += term;
        term *= ratio;
        ratio *= rho;
        // remaining tail <= term / (1 - ratio) since later ratios shrink
        if (ratio < 1 && term < eps * (1 - ratio)) break;
      }
    }
    if (n0 > 0) {
      Real term = t0;
      Real ratio = exp(-tau * (-2 * A * K * u0 + A * K * K - B2 * K * v));
      long long n = n0;
      while (n > 0) {
        term *= ratio;  // value at n - 1
        acc += term;
        --n;
        ratio *= rho;
        if (ratio < 1 && term * ratio < eps * (1 - ratio)) break;
      }
    }
    return acc;
  }
};

}  // namespace detail

/// Direct summation of F(h/k + i t / (2 pi)) = sum over S, n in N0^2 of
/// eps(alpha) e^(2 pi i (h/k) mult Q(n+alpha)) e^(-t mult Q(n+alpha)).
/// The phase is k-periodic in n (checked exactly), so each residue class
/// contributes one phase times a real Gaussian lattice sum; rows are summed
/// until a rigorous Gaussian tail bound drops below the precision target.
inline Cplx radial_eval(const SignedAlphaSet& S, const QuadraticForm2& q,
                        const Integer& mult, const Integer& h, const Integer& k,
                        const Rational& t, int digits = 0) {
  if (t <= 0) throw std::domain_error("radial_eval: t must be positive");
  if (k < 1 || plumbcalc::gcd(h, k) != 1)
    throw std::domain_error("radial_eval: need k >= 1 and gcd(h,k) = 1");
  if (digits <= 0) digits = default_digits();
  // phase periodicity n -> n + k e_j: h*mult*B(e_j, alpha) must be integral
  for (const auto& e : S.entries) {
    Rational b1 = Rational(h * mult) * (2 * Rational(q.sigma1) * e.a1 +
                                        Rational(q.two_sigma2) * e.a2);
    Rational b2 = Rational(h * mult) * (Rational(q.two_sigma2) * e.a1 +
                                        2 * Rational(q.sigma3) * e.a2);
    if (den(b1) != 1 || den(b2) != 1)
      throw std::domain_error("radial_eval: phase is not k-periodic for this input");
  }

  unsigned saved = Real::default_precision();
  Real::default_precision(static_cast<unsigned>(digits) + 15);
  Cplx total;
  {
    Real tau = to_real(t) * to_real(Rational(mult));
    Real A = to_real(Rational(q.sigma1));
    Real B2 = to_real(Rational(q.two_sigma2));
    Real C = to_real(Rational(q.sigma3));
    Real K = to_real(Rational(k));
    Real eps = pow(Real(10), -(digits + 10));
    Real disc4 = to_real(Rational(q.disc4()));
    // rows beyond v: row sum bounded by width * e^(-tau disc4 v^2 / (4A))
    Real width_bound = 1 + sqrt(boost::math::constants::pi<Real>() / (tau * A)) / K;

    detail::RowSummer rows{tau, A, B2, C, K, eps};
    long long kk = static_cast<long long>(k);
    for (const auto& e : S.entries) {
      for (long long l1 = 0; l1 < kk; ++l1)
        for (long long l2 = 0; l2 < kk; ++l2) {
          Rational ph =
              frac_part(Rational(h, k) * Rational(mult) * q(l1 + e.a1, l2 + e.a2));
          Cplx phase = unit_phase(ph) * Real(e.sign);
          Real x1 = to_real(l1 + e.a1), x2 = to_real(l2 + e.a2);
          Real acc = 0;
          long long n2 = 0;
          while (true) {
            acc += rows.sum_row(x1, x2 + K * n2);
            ++n2;
            Real vnext = x2 + K * n2;
            Real bound = width_bound * exp(-tau * disc4 * vnext * vnext / (4 * A));
            if (bound < eps) {
              // remaining rows shrink at least geometrically
              Real ratio = exp(-tau * disc4 * (2 * K * vnext + K * K) / (4 * A));
              if (bound / (1 - ratio) < eps) break;
            }
          }
          total += phase * acc;
        }
    }
  }
  Real::default_precision(saved);
  // round results into the caller precision
  Cplx out;
  out.re = Real(total.re);
  out.im = Real(total.im);
  return out;
}

// ---------------------------------------------------------------------------
// Order check.

struct OrderCheckRow {
  Rational t;
  Real radial_abs;
  Real partial_abs;
  Real residual;
  Real ratio;  // residual(t) / residual(2t); 0 for the first row
};

struct OrderCheckReport {
  int order = 0;
  Real target;  // 2^-(order+1)
  std::vector<OrderCheckRow> rows;
  bool pass = false;

  std::string csv(int digits = 12) const {
    std::ostringstream out;
    out << "t,radial,partial_sum,residual,ratio\n";
    for (const auto& r : rows) {
      out << num(r.t) << '/' << den(r.t) << ',' << r.radial_abs.str(digits) << ','
          << r.partial_abs.str(digits) << ',' << r.residual.str(digits) << ','
          << (r.ratio == 0 ? std::string("-") : r.ratio.str(digits)) << '\n';
    }
    return out.str();
  }
};

/// Residual decay check: R(t) = |radial - sum_{m<=order} a(m) t^m| over
/// t = 2^-4 .. 2^-12 must shrink by about 2^-(order+1) per halving of t
/// (within a factor of 4).
inline OrderCheckReport order_check(const SignedAlphaSet& S, const QuadraticForm2& q,
                                    const Integer& mult, const Integer& h,
                                    const Integer& k, int order, int digits = 0) {
  if (digits <= 0) digits = default_digits();
  AsymptoticExpansion exp_ = em_expansion(S, q, mult, h, k, order);
  OrderCheckReport rep;
  rep.order = order;
  rep.target = pow(Real(2), -(order + 1));
  Real prev = 0;
  for (int j = 4; j <= 12; ++j) {
    Rational t(1, Integer(1) << j);
    Cplx radial = radial_eval(S, q, mult, h, k, t, digits);
    Cplx partial;
    Real tr = to_real(t);
    Real tp = 1;
    for (int m = 0; m <= order; ++m) {
      partial += exp_.a[static_cast<size_t>(m)] * tp;
      tp *= tr;
    }
    OrderCheckRow row;
    row.t = t;
    row.radial_abs = radial.abs();
    row.partial_abs = partial.abs();
    row.residual = (radial - partial).abs();
    row.ratio = (j == 4 || prev == 0) ? Real(0) : Real(row.residual / prev);
    prev = row.residual;
    rep.rows.push_back(row);
  }
  rep.pass = true;
  for (const auto& row : rep.rows) {
    if (row.ratio == 0) continue;
    if (row.ratio > rep.target * 4 || row.ratio < rep.target / 4) rep.pass = false;
  }
  return rep;
}

}  // namespace plumbcalc::asympt
