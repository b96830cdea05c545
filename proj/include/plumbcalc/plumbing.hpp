#pragma once

// H-graph plumbing matrices: construction, closed-form determinant,
// positivity test, bounded census of positive unimodular labelings, and
// canonicalization under the graph automorphism group.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "plumbcalc/exact.hpp"

namespace plumbcalc::plumbing {

using exact::IntMatrix;

// Six vertex weights: b1,b2 leaves on center b3; b5,b6 leaves on center b4;
// edge b3-b4.
struct HLabels {
  std::array<std::int64_t, 6> b{};

  std::int64_t operator[](int i) const { return b[static_cast<size_t>(i)]; }
  friend auto operator<=>(const HLabels&, const HLabels&) = default;
};

inline constexpr std::array<std::pair<int, int>, 5> kEdges{
    {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}}};

inline IntMatrix build_matrix(const HLabels& h) {
  IntMatrix m(6, 6);
  for (int i = 0; i < 6; ++i) m(i, i) = h[i];
  for (auto [j, k] : kEdges) {
    m(j, k) = -1;
    m(k, j) = -1;
  }
  return m;
}

/// det M(b) expanded in the labels; equal to exact::det(build_matrix(h)).
inline Integer det_closed_form(const HLabels& h) {
  Integer b1 = h[0], b2 = h[1], b3 = h[2], b4 = h[3], b5 = h[4], b6 = h[5];
  return b1 * b2 * b3 * b4 * b5 * b6 - b1 * b2 * b3 * b5 - b1 * b2 * b3 * b6 -
         b1 * b2 * b5 * b6 - b1 * b4 * b5 * b6 - b2 * b4 * b5 * b6 +
         (b1 + b2) * (b5 + b6);
}

/// Positive unimodular: det == 1 and all six leading principal minors > 0
/// (Sylvester's criterion, exact).
inline bool is_pu(const HLabels& h) {
  if (det_closed_form(h) != 1) return false;
  for (const Integer& minor : exact::leading_principal_minors(build_matrix(h)))
    if (minor <= 0) return false;
  return true;
}

/// Orbit under the Z2 x Z2 x Z2 automorphism group: swap b1<->b2, swap
/// b5<->b6, and the arm swap (b1,b2,b3) <-> (b5,b6,b4).
inline std::set<HLabels> automorphism_orbit(const HLabels& h) {
  std::set<HLabels> orbit;
  for (int mask = 0; mask < 8; ++mask) {
    HLabels t = h;
    if (mask & 1) std::swap(t.b[0], t.b[1]);
    if (mask & 2) std::swap(t.b[4], t.b[5]);
    if (mask & 4) t = HLabels{{t[4], t[5], t[3], t[2], t[0], t[1]}};
    orbit.insert(t);
  }
  return orbit;
}

/// Orbit representative: center orientation with b4 < b3 when the centers
/// differ, then b1 <= b2 and b5 <= b6, ties broken lexicographically.
inline HLabels canonicalize(const HLabels& h) {
  HLabels best{};
  bool first = true;
  for (const HLabels& t : automorphism_orbit(h)) {
    if (t[0] > t[1] || t[4] > t[5]) continue;  // leaf-sorted copies suffice
    auto key = [](const HLabels& u) {
      int orient = u[3] < u[2] ? 0 : (u[3] == u[2] ? 1 : 2);
      return std::pair<int, HLabels>(orient, u);
    };
    if (first || key(t) < key(best)) {
      best = t;
      first = false;
    }
  }
  return best;
}

struct PUCensus {
  std::vector<HLabels> labelings;  // every PU labeling found in the scan box
  std::vector<HLabels> classes;    // canonical representatives, sorted
};

namespace detail {

// Closed-form determinant in native integers. Scan bounds keep every
// intermediate product below 2^31, far inside int64 range.
inline std::int64_t det_closed_i64(std::int64_t b1, std::int64_t b2,
                                   std::int64_t b3, std::int64_t b4,
                                   std::int64_t b5, std::int64_t b6) {
  return b1 * b2 * b3 * b4 * b5 * b6 - b1 * b2 * b3 * b5 - b1 * b2 * b3 * b6 -
         b1 * b2 * b5 * b6 - b1 * b4 * b5 * b6 - b2 * b4 * b5 * b6 +
         (b1 + b2) * (b5 + b6);
}

}  // namespace detail

/// Exhaustive scan for PU labelings. The box comes from the classification
/// bounds (center next to b1,b2 in [2,7], other center 1, leaf pairs coprime
/// with min/max bounds 23/133 and 13/97), applied in both center orientations
/// via the arm swap. Coprimality of each leaf pair is a necessary condition
/// for det 1, so pruning by gcd loses nothing.
inline PUCensus enumerate_pu() {
  std::vector<HLabels> base;  // orientation with b4 == 1
  std::vector<std::pair<int, int>> leaf56;
  for (int b5 = 2; b5 <= 97; ++b5)
    for (int b6 = 2; b6 <= 97; ++b6)
      if (std::min(b5, b6) <= 13 && std::gcd(b5, b6) == 1)
        leaf56.emplace_back(b5, b6);
  for (int b3 = 2; b3 <= 7; ++b3)
    for (int b1 = 2; b1 <= 133; ++b1)
      for (int b2 = 2; b2 <= 133; ++b2) {
        if (std::min(b1, b2) > 23 || std::gcd(b1, b2) != 1) continue;
        for (auto [b5, b6] : leaf56) {
          if (detail::det_closed_i64(b1, b2, b3, 1, b5, b6) != 1) continue;
          HLabels h{{b1, b2, b3, 1, b5, b6}};
          if (is_pu(h)) base.push_back(h);
        }
      }
  std::set<HLabels> all;
  for (const HLabels& h : base) {
    all.insert(h);
    all.insert(HLabels{{h[4], h[5], h[3], h[2], h[0], h[1]}});  // arm swap
  }
  std::set<HLabels> classes;
  for (const HLabels& h : all) classes.insert(canonicalize(h));
  PUCensus census;
  census.labelings.assign(all.begin(), all.end());
  census.classes.assign(classes.begin(), classes.end());
  return census;
}

/// CSV: b1..b6, det, canonical(b1..b6), class_index (index into the sorted
/// class list).
inline std::string census_csv(const PUCensus& census) {
  std::ostringstream out;
  out << "b1,b2,b3,b4,b5,b6,det,cb1,cb2,cb3,cb4,cb5,cb6,class_index\n";
  for (const HLabels& h : census.labelings) {
    HLabels c = canonicalize(h);
    auto it = std::lower_bound(census.classes.begin(), census.classes.end(), c);
    long idx = it - census.classes.begin();
    for (int i = 0; i < 6; ++i) out << h[i] << ',';
    out << det_closed_form(h) << ',';
    for (int i = 0; i < 6; ++i) out << c[i] << ',';
    out << idx << '\n';
  }
  return out.str();
}

}  // namespace plumbcalc::plumbing
