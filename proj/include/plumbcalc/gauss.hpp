#pragma once

// Exact quadratic Gauss sums in cyclotomic integer arithmetic, an exact
// zero test for sums of roots of unity, the gcd vanishing criterion, and the
// quantum-set membership sweeps.

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "plumbcalc/exact.hpp"
#include "plumbcalc/theta.hpp"

namespace plumbcalc::gauss {

using theta::FamilyParams;
using theta::QuadraticForm2;
using theta::SignedAlphaSet;

/// Integer combination of n-th roots of unity: value = sum coeffs[t] e^(2 pi i t / n).
struct CyclotomicSum {
  long long order = 1;
  std::map<long long, Integer> coeffs;  // residue mod order -> coefficient

  void add(long long t, const Integer& c) {
    if (c == 0) return;
    t %= order;
    if (t < 0) t += order;
    auto [it, inserted] = coeffs.emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs.erase(it);
    }
  }
};

namespace detail {

inline std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> fs;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      fs.push_back({p, e});
    }
  if (n > 1) fs.push_back({n, 1});
  return fs;
}

inline long long radical(long long n) {
  long long r = 1;
  for (auto [p, e] : factorize(n)) r *= p;
  return r;
}

// Zero test for sum v[t] zeta_r^t with r squarefree: split off the smallest
// prime p via the residue bijection t <-> (t mod p, t mod r/p); the value
// vanishes iff all p partial sums agree as elements of Q(zeta_{r/p}).
template <typename Coeff>
bool zero_squarefree(const std::vector<Coeff>& v, long long r) {
  if (r == 1) return v[0] == 0;
  long long p = r;
  for (long long q = 2; q * q <= r; ++q)
    if (r % q == 0) {
      p = q;
      break;
    }
  long long m = r / p;
  if (m == 1) {
    for (const Coeff& c : v)
      if (c != v[0]) return false;
    return true;
  }
  std::vector<std::vector<Coeff>> part(static_cast<size_t>(p),
                                       std::vector<Coeff>(static_cast<size_t>(m)));
  for (long long t = 0; t < r; ++t)
    if (v[static_cast<size_t>(t)] != 0)
      part[static_cast<size_t>(t % p)][static_cast<size_t>(t % m)] +=
          v[static_cast<size_t>(t)];
  std::vector<Coeff> diff(static_cast<size_t>(m));
  for (long long i = 0; i + 1 < p; ++i) {
    for (long long j = 0; j < m; ++j)
      diff[static_cast<size_t>(j)] = part[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                                     part[static_cast<size_t>(p - 1)][static_cast<size_t>(j)];
    if (!zero_squarefree(diff, m)) return false;
  }
  return true;
}

template <typename Coeff>
bool is_zero_impl(const CyclotomicSum& s) {
  long long n = s.order;
  long long r = radical(n);
  long long q = n / r;
  // Phi_n(x) = Phi_r(x^q), so x^j for j < q is a module basis over Q(zeta_r):
  // the sum vanishes iff each residue class mod q vanishes separately.
  std::vector<std::vector<Coeff>> slices(static_cast<size_t>(q),
                                         std::vector<Coeff>(static_cast<size_t>(r)));
  for (const auto& [t, c] : s.coeffs)
    slices[static_cast<size_t>(t % q)][static_cast<size_t>(t / q)] +=
        static_cast<Coeff>(c);
  for (const auto& slice : slices)
    if (!zero_squarefree(slice, r)) return false;
  return true;
}

}  // namespace detail

/// Exact zero test: true iff the represented complex number is 0, i.e. the
/// coefficient polynomial is divisible by the cyclotomic polynomial Phi_n.
inline bool is_zero(const CyclotomicSum& s) {
  bool small = true;
  for (const auto& [t, c] : s.coeffs)
    if (c > (std::int64_t{1} << 40) || c < -(std::int64_t{1} << 40)) {
      small = false;
      break;
    }
  if (small) return detail::is_zero_impl<std::int64_t>(s);
  return detail::is_zero_impl<Integer>(s);
}

/// Phi_n as a dense coefficient vector (low degree first), by dividing
/// x^n - 1 by the cyclotomic polynomials of the proper divisors.
inline std::vector<Integer> cyclotomic_polynomial(long long n) {
  if (n < 1) throw std::domain_error("cyclotomic_polynomial: n < 1");
  auto divide = [](std::vector<Integer> num, const std::vector<Integer>& d) {
    std::vector<Integer> q(num.size() - d.size() + 1);
    for (size_t i = q.size(); i-- > 0;) {
      Integer c = num[i + d.size() - 1] / d.back();
      q[i] = c;
      if (c != 0)
        for (size_t j = 0; j < d.size(); ++j) num[i + j] -= c * d[j];
    }
    return q;
  };
  std::vector<Integer> poly(static_cast<size_t>(n) + 1);
  poly[0] = -1;
  poly[static_cast<size_t>(n)] = 1;  // x^n - 1
  for (long long d = 1; d < n; ++d)
    if (n % d == 0) poly = divide(std::move(poly), cyclotomic_polynomial(d));
  return poly;
}

/// Reference zero test by explicit polynomial remainder modulo Phi_n.
/// Quadratic in the order; used to cross-check is_zero.
inline bool is_zero_phi_remainder(const CyclotomicSum& s) {
  std::vector<Integer> p(static_cast<size_t>(s.order));
  for (const auto& [t, c] : s.coeffs) p[static_cast<size_t>(t)] = c;
  const std::vector<Integer> phi = cyclotomic_polynomial(s.order);
  const size_t dphi = phi.size() - 1;  // phi is monic of degree phi(n)
  for (size_t i = p.size(); i-- > dphi;) {
    if (p[i] == 0) continue;
    Integer c = p[i];
    for (size_t j = 0; j < phi.size(); ++j) p[i - dphi + j] -= c * phi[j];
  }
  for (const Integer& c : p)
    if (c != 0) return false;
  return true;
}

/// G_c(a, b) = sum over n mod c of e^(2 pi i (a n^2 + b n) / c).
inline CyclotomicSum gauss_sum(const Integer& a, const Integer& b, const Integer& c) {
  if (c <= 0) throw std::domain_error("gauss_sum: modulus must be positive");
  long long m = static_cast<long long>(c);
  CyclotomicSum s;
  s.order = m;
  Integer ar = a % c, br = b % c;
  for (long long t = 0; t < m; ++t) {
    Integer e = (ar * t * t + br * t) % c;
    s.add(static_cast<long long>(e), 1);
  }
  return s;
}

/// gcd(a, c) does not divide b: the exact-vanishing criterion for G_c(a, b).
inline bool gcd_predicts_zero(const Integer& a, const Integer& b, const Integer& c) {
  if (c <= 0) throw std::domain_error("gcd_predicts_zero: modulus must be positive");
  Integer g = plumbcalc::gcd(a, c);
  return b % g != 0;
}

// ---------------------------------------------------------------------------
// Quantum-set membership.

/// True iff sum over alpha in S (with signs) and l mod k of
/// e^(2 pi i (h/k) K Q(l + alpha)) is exactly zero. Requires gcd(h,k) = 1,
/// k >= 1, and K*S integral.
inline bool quantum_set_member(const SignedAlphaSet& S, const QuadraticForm2& Q,
                               const Integer& K, const Integer& h, const Integer& k) {
  if (k < 1 || plumbcalc::gcd(h, k) != 1)
    throw std::domain_error("quantum_set_member: need k >= 1 and gcd(h,k) = 1");
  for (const auto& e : S.entries)
    if (K % den(e.a1) != 0 || K % den(e.a2) != 0)
      throw std::domain_error("quantum_set_member: K*S is not integral");
  long long kk = static_cast<long long>(k);
  Integer n = k * K;
  CyclotomicSum acc;
  acc.order = static_cast<long long>(n);
  for (const auto& e : S.entries) {
    Integer A1 = num(e.a1) * (K / den(e.a1)), A2 = num(e.a2) * (K / den(e.a2));
    for (long long l1 = 0; l1 < kk; ++l1)
      for (long long l2 = 0; l2 < kk; ++l2) {
        // K Q(l + alpha) = Q(K l + A) / K, so the phase has denominator k K.
        Integer u1 = K * l1 + A1, u2 = K * l2 + A2;
        Integer t = (h * Q(u1, u2)) % n;
        acc.add(static_cast<long long>(t), e.sign);
      }
  }
  return is_zero(acc);
}

/// True iff the L-scaled family sum vanishes: sum over S1 minus S2 and
/// l mod k of e^(2 pi i (h/k) L Q(l + alpha)). Requires gcd(h,k) = 1.
inline bool ellsum_vanishes(const FamilyParams& P, const QuadraticForm2& Q,
                            const Integer& h, const Integer& k) {
  if (k < 1 || plumbcalc::gcd(h, k) != 1)
    throw std::domain_error("ellsum_vanishes: need k >= 1 and gcd(h,k) = 1");
  Integer L = P.L(), R1 = P.R1(), R2 = P.R2();
  Integer D0 = L * R1 * R2;
  bool family_shape = R1 != 0 && R2 != 0 && Q.sigma1 % R1 == 0 &&
                      Q.sigma3 % R2 == 0 && Q.two_sigma2 == D0;
  auto [S1, S2] = theta::family_alpha_sets(P);
  long long kk = static_cast<long long>(k);

  if (family_shape) {
    // L Q(l + (u1/N1, u2/N2)) = (mu1 u1^2 R2 + u1 u2 D0 + mu3 u2^2 R1) / D0.
    Integer mu1 = Q.sigma1 / R1, mu3 = Q.sigma3 / R2;
    Integer n = k * D0;
    CyclotomicSum acc;
    acc.order = static_cast<long long>(n);
    auto accumulate = [&](const std::vector<std::pair<Rational, Rational>>& pts,
                          int sign) {
      for (const auto& [a1, a2] : pts) {
        Integer u10 = num(a1) * (P.N1 / den(a1)), u20 = num(a2) * (P.N2 / den(a2));
        for (long long l1 = 0; l1 < kk; ++l1) {
          Integer u1 = P.N1 * l1 + u10;
          for (long long l2 = 0; l2 < kk; ++l2) {
            Integer u2 = P.N2 * l2 + u20;
            Integer T = mu1 * u1 * u1 * R2 + u1 * u2 * D0 + mu3 * u2 * u2 * R1;
            acc.add(static_cast<long long>((h * T) % n), sign);
          }
        }
      }
    };
    accumulate(S1, +1);
    accumulate(S2, -1);
    return is_zero(acc);
  }

  // Generic fallback: exact rational phases, common order = lcm of their
  // denominators.
  std::vector<std::pair<Rational, int>> phases;
  Integer n = 1;
  auto accumulate = [&](const std::vector<std::pair<Rational, Rational>>& pts,
                        int sign) {
    for (const auto& [a1, a2] : pts)
      for (long long l1 = 0; l1 < kk; ++l1)
        for (long long l2 = 0; l2 < kk; ++l2) {
          Rational ph =
              frac_part(Rational(h, k) * Rational(L) * Q(l1 + a1, l2 + a2));
          n = lcm(n, den(ph));
          phases.push_back({ph, sign});
        }
  };
  accumulate(S1, +1);
  accumulate(S2, -1);
  CyclotomicSum acc;
  acc.order = static_cast<long long>(n);
  for (const auto& [ph, sign] : phases)
    acc.add(static_cast<long long>(num(ph) * (n / den(ph))), sign);
  return is_zero(acc);
}

// ---------------------------------------------------------------------------
// Family hypothesis checks.

struct HypothesisReport {
  bool n_even = false;
  bool sigma1_factors = false;       // R1 | sigma1 with gcd(R1, mu1) = 1
  bool sigma3_factors = false;       // R2 | sigma3 with gcd(mu3, R2) = 1
  bool two_sigma2_matches = false;   // 2 sigma2 = L R1 R2
  bool gcd_mu_single_odd_prime = false;
  bool gcd_L_mu_coprime = false;
  bool parity_condition = false;     // 4 | L, or exactly one of R1, R2, mu3 even
  bool rs_coprime = false;
  bool rs_squares_congruent = false;  // r_j^2 == s_j^2 (mod 2 N_j)

  Integer L, R1, R2, mu1, mu3;  // witnesses; mu undefined (0) if not integral

  bool pass() const {
    return n_even && sigma1_factors && sigma3_factors && two_sigma2_matches &&
           gcd_mu_single_odd_prime && gcd_L_mu_coprime && parity_condition &&
           rs_coprime && rs_squares_congruent;
  }
};

inline HypothesisReport check_family_hypotheses(const FamilyParams& P,
                                                 const QuadraticForm2& Q) {
  HypothesisReport rep;
  rep.L = P.L();
  rep.R1 = P.R1();
  rep.R2 = P.R2();
  rep.n_even = P.N1 > 0 && P.N2 > 0 && P.N1 % 2 == 0 && P.N2 % 2 == 0;
  if (Q.sigma1 % rep.R1 == 0) {
    rep.mu1 = Q.sigma1 / rep.R1;
    rep.sigma1_factors = plumbcalc::gcd(rep.R1, rep.mu1) == 1;
  }
  if (Q.sigma3 % rep.R2 == 0) {
    rep.mu3 = Q.sigma3 / rep.R2;
    rep.sigma3_factors = plumbcalc::gcd(rep.mu3, rep.R2) == 1;
  }
  rep.two_sigma2_matches = Q.two_sigma2 == rep.L * rep.R1 * rep.R2;

  Integer g = plumbcalc::gcd(rep.mu1, rep.mu3);
  if (g > 0) {
    long long odd = static_cast<long long>(g);
    while (odd % 2 == 0) odd /= 2;
    int distinct_odd_primes =
        static_cast<int>(detail::factorize(odd).size());
    rep.gcd_mu_single_odd_prime = distinct_odd_primes <= 1;
    rep.gcd_L_mu_coprime = plumbcalc::gcd(rep.L, g) == 1;
  }
  if (rep.L % 4 == 0) {
    rep.parity_condition = true;
  } else {
    int evens = (rep.R1 % 2 == 0) + (rep.R2 % 2 == 0) + (rep.mu3 % 2 == 0);
    rep.parity_condition = evens == 1;
  }
  rep.rs_coprime = plumbcalc::gcd(P.r1, P.N1) == 1 && plumbcalc::gcd(P.s1, P.N1) == 1 &&
                   plumbcalc::gcd(P.r2, P.N2) == 1 && plumbcalc::gcd(P.s2, P.N2) == 1;
  rep.rs_squares_congruent = (P.r1 * P.r1 - P.s1 * P.s1) % (2 * P.N1) == 0 &&
                             (P.r2 * P.r2 - P.s2 * P.s2) % (2 * P.N2) == 0;
  return rep;
}

}  // namespace plumbcalc::gauss
