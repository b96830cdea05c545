// Acceptance suite: one pass/fail line per criterion, exact tolerances,
// nonzero exit when any criterion fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "plumbcalc/appendix.hpp"
#include "plumbcalc/asympt.hpp"
#include "plumbcalc/contour.hpp"
#include "plumbcalc/gauss.hpp"
#include "plumbcalc/plumbing.hpp"
#include "plumbcalc/theta.hpp"
#include "plumbcalc/verify.hpp"

using namespace plumbcalc;
using plumbing::HLabels;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

int criteria_failed = 0;

template <typename Fn>
void criterion(int id, const std::string& name, Fn&& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& err) {
    out.fail(std::string("exception: ") + err.what());
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %d: %s  %s  [%.2f s]\n", id, out.pass ? "PASS" : "FAIL",
              name.c_str(), secs);
  for (const auto& n : out.notes) std::printf("  - %s\n", n.c_str());
  if (!out.pass) ++criteria_failed;
  std::fflush(stdout);
}

std::string hl_str(const HLabels& h) {
  std::string s = "(";
  for (int i = 0; i < 6; ++i) s += std::to_string(h[i]) + (i < 5 ? "," : ")");
  return s;
}

}  // namespace

int main() {
  asympt::set_precision(50);

  // 1. classification census: 312 labelings, 39 classes, classes match the
  //    dataset exactly
  criterion(1, "classification census (exact)", [](Outcome& out) {
    auto census = plumbing::enumerate_pu();
    if (census.labelings.size() != 312)
      out.fail("labeling count " + std::to_string(census.labelings.size()) + " != 312");
    if (census.classes.size() != 39)
      out.fail("class count " + std::to_string(census.classes.size()) + " != 39");
    std::vector<HLabels> expected;
    for (const auto& e : appendix::load_appendix()) expected.push_back(e.labels());
    std::sort(expected.begin(), expected.end());
    if (census.classes != expected) out.fail("class set differs from the dataset");
    for (const HLabels& h : census.labelings)
      if (!plumbing::is_pu(h)) out.fail("non-PU labeling " + hl_str(h));
  });

  // 2. dataset regression: c, the L-scaled form, and the signed alpha set,
  //    exactly, for every entry
  criterion(2, "dataset regression: c, L-scaled form, signed alpha set (exact)",
            [](Outcome& out) {
    int errata = 0;
    for (const auto& e : appendix::load_appendix()) {
      HLabels h = e.labels();
      if (theta::shift_constant(h) != e.c())
        out.fail("entry " + std::to_string(e.index) + ": c mismatch");
      auto [fp, q] = theta::derive_family_params(h);
      auto A = theta::central_block(h);
      Integer L = fp.L();
      if (!(e.form() == q && Rational(L * q.sigma1) == 2 * A.l33 &&
            Rational(L * q.two_sigma2) == 4 * A.l34 &&
            Rational(L * q.sigma3) == 2 * A.l44))
        out.fail("entry " + std::to_string(e.index) + ": L*Q != (2l33, 4l34, 2l44)");
      auto S = theta::alpha_set(h);
      auto [S1, S2] = theta::family_alpha_sets(e.family());
      std::set<std::pair<Rational, Rational>> plus, minus;
      for (const auto& p : S.entries)
        (p.sign > 0 ? plus : minus).insert({p.a1, p.a2});
      if (plus != std::set<std::pair<Rational, Rational>>(S1.begin(), S1.end()) ||
          minus != std::set<std::pair<Rational, Rational>>(S2.begin(), S2.end()))
        out.fail("entry " + std::to_string(e.index) + ": alpha set != S1/S2");
      auto ref_class = [](const Integer& x, const Integer& N) {
        Integer a = ((x % N) + N) % N;
        return std::set<Integer>{a, (N - a) % N};
      };
      if (!(ref_class(fp.r1, fp.N1) == ref_class(e.r1, e.N1) &&
            ref_class(fp.s1, fp.N1) == ref_class(e.s1, e.N1) &&
            ref_class(fp.r2, fp.N2) == ref_class(e.r2, e.N2) &&
            ref_class(fp.s2, fp.N2) == ref_class(e.s2, e.N2)))
        out.fail("entry " + std::to_string(e.index) + ": r/s classes differ");
      if (e.c() != e.c_listed() || e.s2 != e.s2_listed) ++errata;
    }
    out.note("3 fields carry corrections forced by the defining identities "
             "(entry 3 s2, entries 10/15 c); listed values are retained and "
             "pinned separately; " + std::to_string(errata) + " entries affected");
  });

  // 3. dual-route series equality at cutoff 50, exact rational comparison
  criterion(3, "dual-route series equality, entries {1,2,7,10,26}, cutoff 50",
            [](Outcome& out) {
    for (int idx : {1, 2, 7, 10, 26}) {
      HLabels h = appendix::entry(idx).labels();
      QSeries a = theta::z_series(h, Rational(50));
      QSeries b = contour::z_series_contour(h, Rational(50));
      if (!(a == b)) out.fail("entry " + std::to_string(idx) + ": routes differ");
      out.note("entry " + std::to_string(idx) + ": " + std::to_string(a.size()) +
               " terms agree");
    }
  });

  // 4. orthant-split identity at cutoff 50: the sgn*-weighted double sum over
  //    Z^2 equals twice (Z1 - Z2) exactly (each orthant pair contributes one
  //    copy of Z1 resp. -Z2; see the decisions ledger on the factor)
  criterion(4, "split identity: sgn* double sum == 2*(Z1 - Z2), cutoff 50",
            [](Outcome& out) {
    for (int idx : {1, 2, 7, 10, 26}) {
      HLabels h = appendix::entry(idx).labels();
      auto [z1, z2] = theta::z_split(h, Rational(50));
      QSeries ds = theta::sgn_star_double_sum(h, Rational(50));
      QSeries twice(Rational(50));
      for (const auto& [k, c] : z1.terms()) twice.add(z1.exponent_at(k), 2 * c);
      for (const auto& [k, c] : z2.terms()) twice.add(z2.exponent_at(k), -2 * c);
      twice.finalize();
      if (!(twice == ds)) out.fail("entry " + std::to_string(idx) + ": identity fails");
    }
  });

  // 5. quantum-set certificate: exact vanishing for all k <= 24, gcd(h,k)=1
  criterion(5, "quantum-set certificate, entries {1,13,21,32,39}, k <= 24 (exact)",
            [](Outcome& out) {
    for (int idx : {1, 13, 21, 32, 39}) {
      const auto& e = appendix::entry(idx);
      long checked = 0;
      for (Integer k = 1; k <= 24; ++k)
        for (Integer h = 1; h <= k; ++h) {
          if (plumbcalc::gcd(h, k) != 1) continue;
          ++checked;
          if (!gauss::ellsum_vanishes(e.family(), e.form(), h, k))
            out.fail("entry " + std::to_string(idx) + ": nonzero at h/k = " +
                     h.str() + "/" + k.str());
        }
      out.note("entry " + std::to_string(idx) + ": " + std::to_string(checked) +
               " points vanish");
    }
  });

  // 6. family hypothesis checks for all 39 entries
  criterion(6, "family hypotheses pass for all 39 entries (exact)", [](Outcome& out) {
    for (const auto& e : appendix::load_appendix()) {
      auto rep = gauss::check_family_hypotheses(e.family(), e.form());
      if (!rep.pass()) out.fail("entry " + std::to_string(e.index) + " fails");
    }
  });

  // 7. gcd criterion implies exact cyclotomic vanishing, 500 random triples
  criterion(7, "Gauss-sum vanishing criterion, 500 random triples, c <= 100",
            [](Outcome& out) {
    std::mt19937 rng(20260810);
    std::uniform_int_distribution<int> cdist(1, 100), abdist(-100, 100);
    int predicted = 0;
    for (int trial = 0; trial < 500; ++trial) {
      Integer a = abdist(rng), b = abdist(rng), c = cdist(rng);
      if (!gauss::gcd_predicts_zero(a, b, c)) continue;
      ++predicted;
      if (!gauss::is_zero(gauss::gauss_sum(a, b, c)))
        out.fail("counterexample at a=" + a.str() + " b=" + b.str() + " c=" + c.str());
    }
    out.note(std::to_string(predicted) + " of 500 triples trigger the criterion");
  });

  // 8. radial asymptotics: residual ratios within a factor of 4 of
  //    2^-(order+1) across t = 2^-4 .. 2^-12, entry 1, orders 0..3,
  //    base points 0/1 and 1/2, 50 digits
  criterion(8, "radial asymptotics order check, entry 1, orders 0..3, h/k in {0/1, 1/2}",
            [](Outcome& out) {
    HLabels h = appendix::entry(1).labels();
    auto [fp, q] = theta::derive_family_params(h);
    auto S = theta::alpha_set(h);
    for (auto [hh, kk] : {std::pair<int, int>{0, 1}, {1, 2}}) {
      for (int order = 0; order <= 3; ++order) {
        auto rep = asympt::order_check(S, q, fp.L(), hh, kk, order, 50);
        std::string tag = "h/k=" + std::to_string(hh) + "/" + std::to_string(kk) +
                          " order " + std::to_string(order);
        if (rep.pass) {
          out.note(tag + ": PASS (last ratio " + rep.rows.back().ratio.str(4) +
                   ", target " + rep.target.str(4) + ")");
        } else {
          std::string ratios;
          for (const auto& row : rep.rows)
            if (row.ratio != 0) ratios += row.ratio.str(3) + " ";
          out.fail(tag + ": ratios [" + ratios + "] leave the window around " +
                   rep.target.str(4));
        }
      }
    }
    if (!out.pass)
      out.note("the order-2 residual changes sign inside the grid (near t = 2^-7), "
               "where the |.|-ratio diagnostic degenerates; trailing ratios reach "
               "the target; see the decisions ledger");
  });

  // 9. quadratic-completion identity, all 39 entries x 16 sign vectors x
  //    n in [-3,3]^2, odd middle entries
  criterion(9, "quadratic-completion identity, 39 entries x 16 eps x n in [-3,3]^2",
            [](Outcome& out) {
    for (const auto& e : appendix::load_appendix()) {
      HLabels h = e.labels();
      for (int bits = 0; bits < 16; ++bits) {
        std::array<int, 4> eps;
        for (int i = 0; i < 4; ++i) eps[i] = (bits >> i) & 1 ? -1 : 1;
        for (long long n1 = -3; n1 <= 3; ++n1)
          for (long long n2 = -3; n2 <= 3; ++n2)
            if (!theta::quadratic_completion_check(h, {n1, n2}, eps, theta::MiddleParity::Odd))
              out.fail("entry " + std::to_string(e.index) + " fails at odd parity");
      }
    }
    // negative control: the even-middle variant must not satisfy the identity
    for (int idx : {1, 2, 3}) {
      HLabels h = appendix::entry(idx).labels();
      for (int bits = 0; bits < 16; ++bits) {
        std::array<int, 4> eps;
        for (int i = 0; i < 4; ++i) eps[i] = (bits >> i) & 1 ? -1 : 1;
        for (long long n1 = -2; n1 <= 2; ++n1)
          for (long long n2 = -2; n2 <= 2; ++n2)
            if (theta::quadratic_completion_check(h, {n1, n2}, eps, theta::MiddleParity::Even))
              out.fail("entry " + std::to_string(idx) +
                       ": even-middle variant unexpectedly holds");
      }
    }
    out.note("confirmed middle-entry parity: odd (2n+1); the even variant fails at "
             "every probed point");
  });

  std::printf("%s: %d of 9 criteria pass\n",
              criteria_failed == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              9 - criteria_failed);
  return criteria_failed == 0 ? 0 : 1;
}
