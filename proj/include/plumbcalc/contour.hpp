#pragma once

// Principal-value contour route for Z(q). The per-vertex integrals reduce to
// exact coefficient-extraction weights: leaves (power +1) keep only
// m = -1/+1 with weight -sgn(m), centers (power -1) keep odd m with weight
// sgn(m)/2. The series is then a finite exact sum over a rank-two sublattice
// of the six-dimensional theta lattice.

#include <array>
#include <stdexcept>

#include "plumbcalc/exact.hpp"
#include "plumbcalc/plumbing.hpp"
#include "plumbcalc/qseries.hpp"
#include "plumbcalc/theta.hpp"

namespace plumbcalc::contour {

using plumbing::HLabels;

/// Coefficient-extraction weight of w^m against (w - 1/w)^power, power in
/// {+1, -1}. For +1 the value is delta_{m,-1} - delta_{m,1}; for -1 it is
/// sgn_o(m)/2 where sgn_o vanishes on even m.
inline Rational pv_weight(int power, long long m) {
  if (power == 1) return Rational((m == -1) - (m == 1));
  if (power == -1) {
    if (m % 2 == 0) return 0;
    return Rational(m > 0 ? 1 : -1, 2);
  }
  throw std::domain_error("pv_weight: power must be +1 or -1");
}

/// Weight rule at one vertex: the integrand carries (w - 1/w)^(2 - degree),
/// so leaves have power +1 and the two degree-3 centers have power -1.
struct VertexWeightRule {
  int power = 1;

  Rational weight(long long m) const { return pv_weight(power, m); }
};

inline std::array<VertexWeightRule, 6> vertex_weight_rules() {
  std::array<int, 6> degree{};
  for (auto [j, k] : plumbing::kEdges) {
    ++degree[static_cast<size_t>(j)];
    ++degree[static_cast<size_t>(k)];
  }
  std::array<VertexWeightRule, 6> rules;
  for (int i = 0; i < 6; ++i)
    rules[static_cast<size_t>(i)] = {2 - degree[static_cast<size_t>(i)]};
  return rules;
}

/// m^T M^{-1} m / 2, exact.
inline Rational theta_exponent(const HLabels& h, const std::array<long long, 6>& m) {
  auto [adj, d] = exact::inverse_exact(plumbing::build_matrix(h));
  Integer quad = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) quad += Integer(m[i]) * adj(i, j) * Integer(m[j]);
  return Rational(quad, 2 * d);
}

/// Z(q) truncated below the cutoff, summed directly over the theta lattice:
/// leaf coordinates in {-1, +1}, center coordinates odd, exponent
/// -9 + tr/2 + m^T M^{-1} m / 2, weight from pv_weight per vertex.
inline QSeries z_series_contour(const HLabels& h, const Rational& cutoff) {
  theta::require_pu(h, "z_series_contour");
  Integer tr = 0;
  for (int i = 0; i < 6; ++i) tr += h[i];
  Rational pref = Rational(-9) + Rational(tr, 2);

  auto [adj, d] = exact::inverse_exact(plumbing::build_matrix(h));
  auto inv = [&](int i, int j) { return Rational(adj(i, j), d); };
  constexpr std::array<int, 4> leaves{0, 1, 4, 5};
  const auto rules = vertex_weight_rules();

  QSeries out(cutoff, pref);
  for (int bits = 0; bits < 16; ++bits) {
    std::array<long long, 4> eps;
    for (int i = 0; i < 4; ++i) eps[i] = (bits >> i) & 1 ? -1 : 1;
    Rational leaf_weight = 1;
    for (int i = 0; i < 4; ++i)
      leaf_weight *= rules[static_cast<size_t>(leaves[i])].weight(eps[i]);

    // Exponent as a quadratic in the center coordinates (m3, m4):
    //   a m3^2 + b m3 m4 + c m4^2 + dd m3 + ee m4 + ff
    Rational a = inv(2, 2) / 2, b = inv(2, 3), c = inv(3, 3) / 2;
    Rational dd = 0, ee = 0, ff = 0;
    for (int i = 0; i < 4; ++i) {
      dd += inv(2, leaves[i]) * eps[i];
      ee += inv(3, leaves[i]) * eps[i];
      for (int j = 0; j < 4; ++j)
        ff += inv(leaves[i], leaves[j]) * eps[i] * eps[j];
    }
    ff /= 2;

    // Odd sublattice: m3 = 2u+1, m4 = 2v+1.
    theta::QuadConstraint con{
        4 * a,
        4 * b,
        4 * c,
        4 * a + 2 * b + 2 * dd,
        2 * b + 4 * c + 2 * ee,
        a + b + c + dd + ee + ff};
    theta::enumerate_below(
        con, cutoff - pref, false, false,
        [&](const Integer& u, const Integer& v, const Rational& val) {
          long long m3 = 2 * static_cast<long long>(u) + 1;
          long long m4 = 2 * static_cast<long long>(v) + 1;
          Rational w = leaf_weight * rules[2].weight(m3) * rules[3].weight(m4);
          out.add(pref + val, w);
        });
  }
  out.finalize();
  return out;
}

}  // namespace plumbcalc::contour
