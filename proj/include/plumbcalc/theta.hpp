#pragma once

// Closed-form q-series route: the central 2x2 block of M^{-1}, the signed
// alpha set, Z(q), the Z1/Z2 orthant split, general false theta expansions,
// and recovery of the family parameters (N, r, s, Q) from the labels.

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "plumbcalc/exact.hpp"
#include "plumbcalc/plumbing.hpp"
#include "plumbcalc/qseries.hpp"

namespace plumbcalc::theta {

using plumbing::HLabels;

// Q(n) = sigma1 n1^2 + 2 sigma2 n1 n2 + sigma3 n2^2, stored via 2*sigma2 so
// half-integral middle coefficients stay exact.
struct QuadraticForm2 {
  Integer sigma1, two_sigma2, sigma3;

  Integer disc4() const { return 4 * sigma1 * sigma3 - two_sigma2 * two_sigma2; }
  /// sigma1*sigma3 - sigma2^2; requires integral sigma2.
  Integer discQ() const {
    if (two_sigma2 % 2 != 0)
      throw std::domain_error("discQ: half-integral middle coefficient");
    Integer s2 = two_sigma2 / 2;
    return sigma1 * sigma3 - s2 * s2;
  }
  bool positive_definite() const { return sigma1 > 0 && disc4() > 0; }

  Rational operator()(const Rational& x1, const Rational& x2) const {
    return Rational(sigma1) * x1 * x1 + Rational(two_sigma2) * x1 * x2 +
           Rational(sigma3) * x2 * x2;
  }
  Integer operator()(const Integer& u1, const Integer& u2) const {
    return sigma1 * u1 * u1 + two_sigma2 * u1 * u2 + sigma3 * u2 * u2;
  }
  /// Q*(x) = Q(-x1, x2).
  QuadraticForm2 reflected() const { return {sigma1, -two_sigma2, sigma3}; }

  friend bool operator==(const QuadraticForm2&, const QuadraticForm2&) = default;
};

struct AlphaPoint {
  Rational a1, a2;
  int sign;  // +1 or -1

  friend bool operator<(const AlphaPoint& x, const AlphaPoint& y) {
    return std::tie(x.a1, x.a2, x.sign) < std::tie(y.a1, y.a2, y.sign);
  }
};

/// Finite signed subset of (0,1)^2, closed under the three reflections
/// alpha -> (1,1)-alpha, (1-a1,a2), (a1,1-a2) with sign preserved.
struct SignedAlphaSet {
  std::vector<AlphaPoint> entries;

  bool closed_under_reflections() const {
    std::set<std::pair<std::pair<Rational, Rational>, int>> s;
    for (const auto& e : entries) s.insert({{e.a1, e.a2}, e.sign});
    for (const auto& e : entries) {
      if (!s.count({{1 - e.a1, 1 - e.a2}, e.sign})) return false;
      if (!s.count({{1 - e.a1, e.a2}, e.sign})) return false;
      if (!s.count({{e.a1, 1 - e.a2}, e.sign})) return false;
    }
    return true;
  }

  /// Minimal K >= 1 with K * S contained in Z^2.
  Integer minimal_K() const {
    Integer k = 1;
    for (const auto& e : entries) k = lcm(lcm(k, den(e.a1)), den(e.a2));
    return k;
  }
};

struct FamilyParams {
  Integer N1, N2;      // both even
  Integer r1, r2, s1, s2;

  Integer L() const { return plumbcalc::gcd(N1, N2); }
  Integer R1() const { return N1 / L(); }
  Integer R2() const { return N2 / L(); }
};

// ---------------------------------------------------------------------------
// Lattice enumeration over a positive definite quadratic constraint.

/// phi(x,y) = A x^2 + B x y + C y^2 + D x + E y + F with A, C > 0 and
/// 4AC - B^2 > 0.
struct QuadConstraint {
  Rational A, B, C, D, E, F;

  Rational operator()(const Integer& x, const Integer& y) const {
    Rational xr(x), yr(y);
    return A * xr * xr + B * xr * yr + C * yr * yr + D * xr + E * yr + F;
  }
};

/// Calls fn(x, y, phi(x,y)) for every integer point with phi < bound,
/// optionally restricted to x >= 0 / y >= 0. Row-by-row ranges come from the
/// exact quadratic formula; candidate endpoints are widened by one and
/// filtered by exact evaluation, so no point is missed.
inline void enumerate_below(
    const QuadConstraint& q, const Rational& bound, bool x_nonneg, bool y_nonneg,
    const std::function<void(const Integer&, const Integer&, const Rational&)>& fn) {
  // Clear denominators: p(x,y) = a x^2 + b x y + c y^2 + d x + e y + f < 0.
  Integer d0 = 1;
  for (const Rational* r : {&q.A, &q.B, &q.C, &q.D, &q.E, &q.F, &bound})
    d0 = lcm(d0, den(*r));
  auto ci = [&](const Rational& r) { return num(r) * (d0 / den(r)); };
  Integer a = ci(q.A), b = ci(q.B), c = ci(q.C), d = ci(q.D), e = ci(q.E),
          f = ci(q.F) - ci(bound);
  if (a <= 0 || c <= 0 || 4 * a * c - b * b <= 0)
    throw std::domain_error("enumerate_below: constraint not positive definite");

  // x admits a solution only where the y-minimum of 4c*p is negative:
  // (4ac - b^2) x^2 + (4cd - 2be) x + (4cf - e^2) < 0.
  Integer qa = 4 * a * c - b * b, qb = 4 * c * d - 2 * b * e,
          qc = 4 * c * f - e * e;
  Integer disc = qb * qb - 4 * qa * qc;
  if (disc <= 0) return;
  Integer s = isqrt(disc);
  Integer xlo = floor_div(-qb - s - 1, 2 * qa);
  Integer xhi = ceil_div(-qb + s + 1, 2 * qa);
  if (x_nonneg && xlo < 0) xlo = 0;
  for (Integer x = xlo; x <= xhi; ++x) {
    // c y^2 + (b x + e) y + (a x^2 + d x + f) < 0
    Integer ry = b * x + e;
    Integer cy = a * x * x + d * x + f;
    Integer dy = ry * ry - 4 * c * cy;
    if (dy <= 0) continue;
    Integer sy = isqrt(dy);
    Integer ylo = floor_div(-ry - sy - 1, 2 * c);
    Integer yhi = ceil_div(-ry + sy + 1, 2 * c);
    if (y_nonneg && ylo < 0) ylo = 0;
    for (Integer y = ylo; y <= yhi; ++y) {
      Integer p = (a * x + b * y + d) * x + (c * y + e) * y + f;
      if (p < 0) fn(x, y, Rational(p, d0) + bound);
    }
  }
}

/// Constraint for phi(n) = Q(n1 + a1, n2 + a2) given the expanded form
/// coefficients (A, B, C) of Q and the shift alpha.
inline QuadConstraint shifted_form(const Rational& A, const Rational& B,
                                   const Rational& C, const Rational& a1,
                                   const Rational& a2) {
  return QuadConstraint{A,
                        B,
                        C,
                        2 * A * a1 + B * a2,
                        B * a1 + 2 * C * a2,
                        A * a1 * a1 + B * a1 * a2 + C * a2 * a2};
}

// ---------------------------------------------------------------------------
// Central block and the signed alpha set.

struct CentralBlock {
  Rational l33, l34, l44;  // symmetric 2x2 middle block of M^{-1}
};

/// Middle 2x2 block of M^{-1} via the exact adjugate.
inline CentralBlock central_block(const HLabels& h) {
  auto [adj, d] = exact::inverse_exact(plumbing::build_matrix(h));
  return {Rational(adj(2, 2), d), Rational(adj(2, 3), d), Rational(adj(3, 3), d)};
}

/// Same block in closed form from the labels; valid when det M = 1.
inline CentralBlock central_block_closed(const HLabels& h) {
  Integer b1 = h[0], b2 = h[1], b4 = h[3], b5 = h[4], b6 = h[5];
  Integer w = b4 * b5 * b6 - b5 - b6;
  if (w == 0) throw exact::SingularError("central_block_closed: degenerate arm");
  return {Rational(b1 * b2 * w), Rational(b1 * b2 * b5 * b6),
          Rational(b5 * b6 * (b1 * b2 * b5 * b6 + 1), w)};
}

/// c = (1/b1 + 1/b2 + 1/b5 + 1/b6) / 2.
inline Rational shift_constant(const HLabels& h) {
  return (Rational(1, h[0]) + Rational(1, h[1]) + Rational(1, h[4]) +
          Rational(1, h[5])) /
         2;
}

/// c_M = 9 - tr(M)/2 - c.
inline Rational c_M(const HLabels& h) {
  Integer tr = 0;
  for (int i = 0; i < 6; ++i) tr += h[i];
  return Rational(9) - Rational(tr, 2) - shift_constant(h);
}

/// The 16 points alpha(eps) = ((1 + e1/b1 + e2/b2)/2, (1 + e5/b5 + e6/b6)/2)
/// with sign e1*e2*e5*e6. Requires b1,b2,b5,b6 >= 2 so all points lie in
/// (0,1)^2; distinct eps must give distinct points.
inline SignedAlphaSet alpha_set(const HLabels& h) {
  for (int i : {0, 1, 4, 5})
    if (h[i] < 2) throw std::domain_error("alpha_set: leaf label below 2");
  SignedAlphaSet s;
  std::set<std::pair<Rational, Rational>> seen;
  for (int e1 : {1, -1})
    for (int e2 : {1, -1})
      for (int e5 : {1, -1})
        for (int e6 : {1, -1}) {
          Rational a1 = (1 + Rational(e1, h[0]) + Rational(e2, h[1])) / 2;
          Rational a2 = (1 + Rational(e5, h[4]) + Rational(e6, h[5])) / 2;
          if (!seen.insert({a1, a2}).second)
            throw std::domain_error("alpha_set: coincident points");
          s.entries.push_back({a1, a2, e1 * e2 * e5 * e6});
        }
  return s;
}

enum class MiddleParity { Odd, Even };

/// Exact check of the quadratic-completion identity
///   r^T M^{-1} r / 2 == (2n + 2a)^T A (2n + 2a) / 2 + c
/// with r = (e1, e2, 2n1+1, 2n2+1, e5, e6) (Odd) or middle entries
/// (2n1, 2n2) (Even).
inline bool quadratic_completion_check(const HLabels& h, std::pair<long long, long long> n,
                          std::array<int, 4> eps,
                          MiddleParity parity = MiddleParity::Odd) {
  auto [adj, d] = exact::inverse_exact(plumbing::build_matrix(h));
  long long off = parity == MiddleParity::Odd ? 1 : 0;
  std::array<Integer, 6> r{eps[0], eps[1], 2 * n.first + off, 2 * n.second + off,
                           eps[2], eps[3]};
  Integer quad = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) quad += r[i] * adj(i, j) * r[j];
  Rational lhs = Rational(quad, 2 * d);

  Rational a1 = (1 + Rational(eps[0], h[0]) + Rational(eps[1], h[1])) / 2;
  Rational a2 = (1 + Rational(eps[2], h[4]) + Rational(eps[3], h[5])) / 2;
  CentralBlock A = central_block_closed(h);
  Rational x1 = 2 * n.first + 2 * a1, x2 = 2 * n.second + 2 * a2;
  Rational rhs = (A.l33 * x1 * x1 + 2 * A.l34 * x1 * x2 + A.l44 * x2 * x2) / 2 +
                 shift_constant(h);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Series constructions.

inline void require_pu(const HLabels& h, const char* who) {
  if (!plumbing::is_pu(h))
    throw std::domain_error(std::string(who) + ": labels are not positive unimodular");
}

inline Rational prefactor_exponent(const HLabels& h) {
  Integer tr = 0;
  for (int i = 0; i < 6; ++i) tr += h[i];
  return Rational(-9) + Rational(tr, 2) + shift_constant(h);
}

/// Z(q) from the rank-two lattice sum: q^(-9 + tr/2 + c)/4 times the
/// sgn*-weighted sum of q^(Q1(n + alpha)) over the 16 signed alpha points,
/// Q1(x) = 2 x^T A x. Exponents in the result are absolute.
inline QSeries z_series(const HLabels& h, const Rational& cutoff) {
  require_pu(h, "z_series");
  Rational pref = prefactor_exponent(h);
  CentralBlock A = central_block_closed(h);
  Rational qa = 2 * A.l33, qb = 4 * A.l34, qc = 2 * A.l44;
  QSeries out(cutoff, pref);
  for (const AlphaPoint& p : alpha_set(h).entries) {
    QuadConstraint con = shifted_form(qa, qb, qc, p.a1, p.a2);
    enumerate_below(con, cutoff - pref, false, false,
                    [&](const Integer& n1, const Integer& n2, const Rational& v) {
                      int w = p.sign * (n1 >= 0 ? 1 : -1) * (n2 >= 0 ? 1 : -1);
                      out.add(pref + v, Rational(w, 4));
                    });
  }
  out.finalize();
  return out;
}

/// Zhat_0(q): Z with every exponent halved (Z(q) = Zhat_0(q^2)).
inline QSeries zhat_series(const HLabels& h, const Rational& cutoff) {
  return z_series(h, cutoff * 2).scaled_exponents(Rational(1, 2));
}

struct DerivedFamily {
  FamilyParams params;
  QuadraticForm2 form;
};

/// Recovers (N1, N2, r, s) and the quadratic form Q with L*Q = Q1 from the
/// labels. r is the representative of the all-minus sign choice, s the mixed
/// one; both reduced into (0, N/2). Throws if the scaled form is not
/// integral (labels outside the family).
inline DerivedFamily derive_family_params(const HLabels& h) {
  require_pu(h, "derive_family_params");
  Integer N1 = 2 * lcm(Integer(h[0]), Integer(h[1]));
  Integer N2 = 2 * lcm(Integer(h[4]), Integer(h[5]));
  Integer L = plumbcalc::gcd(N1, N2);
  CentralBlock A = central_block_closed(h);
  Rational sig1 = 2 * A.l33 / Rational(L);
  Rational two_sig2 = 4 * A.l34 / Rational(L);
  Rational sig3 = 2 * A.l44 / Rational(L);
  if (den(sig1) != 1 || den(two_sig2) != 1 || den(sig3) != 1)
    throw std::domain_error("derive_family_params: non-integral scaled form");

  auto scaled_int = [](const Rational& x, const Integer& N) {
    Rational r = x * Rational(N);
    if (den(r) != 1) throw std::domain_error("derive_family_params: non-integral r/s");
    return num(r);
  };
  Rational inv1 = Rational(1, h[0]), inv2 = Rational(1, h[1]);
  Rational inv5 = Rational(1, h[4]), inv6 = Rational(1, h[5]);
  auto absr = [](const Rational& x) { return x < 0 ? Rational(-x) : x; };
  FamilyParams fp;
  fp.N1 = N1;
  fp.N2 = N2;
  fp.r1 = scaled_int((1 - inv1 - inv2) / 2, N1);
  fp.s1 = scaled_int((1 - absr(inv1 - inv2)) / 2, N1);
  fp.r2 = scaled_int((1 - inv5 - inv6) / 2, N2);
  fp.s2 = scaled_int((1 - absr(inv5 - inv6)) / 2, N2);
  return {fp, QuadraticForm2{num(sig1), num(two_sig2), num(sig3)}};
}

/// S1 (matched r/s pairs) and S2 (mixed pairs), eight points each.
inline std::pair<std::vector<std::pair<Rational, Rational>>,
                 std::vector<std::pair<Rational, Rational>>>
family_alpha_sets(const FamilyParams& fp) {
  auto four = [](const Rational& x1, const Rational& x2,
                 std::vector<std::pair<Rational, Rational>>& out) {
    out.push_back({x1, x2});
    out.push_back({1 - x1, x2});
    out.push_back({x1, 1 - x2});
    out.push_back({1 - x1, 1 - x2});
  };
  Rational r1(fp.r1, fp.N1), s1(fp.s1, fp.N1), r2(fp.r2, fp.N2), s2(fp.s2, fp.N2);
  std::vector<std::pair<Rational, Rational>> S1, S2;
  four(r1, r2, S1);
  four(s1, s2, S1);
  four(r1, s2, S2);
  four(s1, r2, S2);
  return {S1, S2};
}

namespace detail {

inline void accumulate_orthant_sum(const QuadraticForm2& q, const Integer& mult,
                                   const std::vector<std::pair<Rational, Rational>>& pts,
                                   int sign, const Rational& cutoff, QSeries& out) {
  Rational qa(mult * q.sigma1), qb(mult * q.two_sigma2), qc(mult * q.sigma3);
  for (const auto& [a1, a2] : pts) {
    QuadConstraint con = shifted_form(qa, qb, qc, a1, a2);
    enumerate_below(con, cutoff, true, true,
                    [&](const Integer&, const Integer&, const Rational& v) {
                      out.add(v, sign);
                    });
  }
}

}  // namespace detail

/// Z1 = sum over S1 minus sum over S2 of sum_{n in N0^2} q^(L Q(n+alpha));
/// Z2 the same with Q replaced by Q*(x) = Q(-x1, x2).
inline std::pair<QSeries, QSeries> z_split(const HLabels& h, const Rational& cutoff) {
  auto [fp, q] = derive_family_params(h);
  auto [S1, S2] = family_alpha_sets(fp);
  Integer L = fp.L();
  QSeries z1(cutoff), z2(cutoff);
  detail::accumulate_orthant_sum(q, L, S1, +1, cutoff, z1);
  detail::accumulate_orthant_sum(q, L, S2, -1, cutoff, z1);
  QuadraticForm2 qs = q.reflected();
  detail::accumulate_orthant_sum(qs, L, S1, +1, cutoff, z2);
  detail::accumulate_orthant_sum(qs, L, S2, -1, cutoff, z2);
  z1.finalize();
  z2.finalize();
  return {z1, z2};
}

/// The sgn*-weighted double sum over Z^2 of the Z(q) lattice part, without
/// the q^(-9+tr/2+c)/4 prefactor: sum over the 16 signed alpha points of
/// sgn*(n1) sgn*(n2) q^(L Q(n+alpha)). Folding the four orthants gives
/// exactly twice (Z1 - Z2).
inline QSeries sgn_star_double_sum(const HLabels& h, const Rational& cutoff) {
  require_pu(h, "sgn_star_double_sum");
  CentralBlock A = central_block_closed(h);
  Rational qa = 2 * A.l33, qb = 4 * A.l34, qc = 2 * A.l44;
  QSeries out(cutoff);
  for (const AlphaPoint& p : alpha_set(h).entries) {
    QuadConstraint con = shifted_form(qa, qb, qc, p.a1, p.a2);
    enumerate_below(con, cutoff, false, false,
                    [&](const Integer& n1, const Integer& n2, const Rational& v) {
                      out.add(v, p.sign * (n1 >= 0 ? 1 : -1) * (n2 >= 0 ? 1 : -1));
                    });
  }
  out.finalize();
  return out;
}

/// F_{S,Q,eps}: sum over alpha in S of eps(alpha) sum_{n in N0^2}
/// q^(K Q(n+alpha)). K is the caller's exponent multiplier; if it differs
/// from the minimal K with K*S integral, *k_is_minimal is set false.
inline QSeries false_theta_series(const SignedAlphaSet& S, const QuadraticForm2& Q,
                                  const Integer& K, const Rational& cutoff,
                                  bool* k_is_minimal = nullptr) {
  if (!Q.positive_definite())
    throw std::domain_error("false_theta_series: form not positive definite");
  if (k_is_minimal) *k_is_minimal = (K == S.minimal_K());
  QSeries out(cutoff);
  Rational qa(K * Q.sigma1), qb(K * Q.two_sigma2), qc(K * Q.sigma3);
  for (const AlphaPoint& p : S.entries) {
    QuadConstraint con = shifted_form(qa, qb, qc, p.a1, p.a2);
    enumerate_below(con, cutoff, true, true,
                    [&](const Integer&, const Integer&, const Rational& v) {
                      out.add(v, p.sign);
                    });
  }
  out.finalize();
  return out;
}

}  // namespace plumbcalc::theta
