#pragma once

// Per-entry verification of the embedded dataset against everything the
// library can recompute from the labels alone, plus the exact vanishing
// sweep and the dual-route series comparison. Used by the verify-appendix
// command and the acceptance suite.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plumbcalc/appendix.hpp"
#include "plumbcalc/contour.hpp"
#include "plumbcalc/gauss.hpp"
#include "plumbcalc/theta.hpp"

namespace plumbcalc::verify {

struct EntryReport {
  int index = 0;
  bool labels_pu = false;
  bool c_match = false;          // recomputed shift constant == dataset value
  bool q_match = false;          // L Q == (2 l33, 4 l34, 2 l44)
  bool alpha_match = false;      // signed alpha set == S1 (+), S2 (-)
  bool rs_match = false;         // derived r, s == dataset mod reflection
  bool hypotheses_pass = false;
  bool ellsum_pass = false;      // exact vanishing for all tested h/k
  bool series_match = false;     // closed form == contour route
  double seconds = 0;

  bool pass() const {
    return labels_pu && c_match && q_match && alpha_match && rs_match &&
           hypotheses_pass && ellsum_pass && series_match;
  }

  std::string failing_checks() const {
    std::string out;
    auto mark = [&](bool ok, const char* name) {
      if (!ok) {
        if (!out.empty()) out += ',';
        out += name;
      }
    };
    mark(labels_pu, "labels_pu");
    mark(c_match, "c");
    mark(q_match, "q_scaling");
    mark(alpha_match, "alpha_set");
    mark(rs_match, "rs");
    mark(hypotheses_pass, "hypotheses");
    mark(ellsum_pass, "ellsum");
    mark(series_match, "dual_route");
    return out;
  }
};

struct Options {
  Integer kmax = 8;           // ellsum sweep bound per entry
  Rational cutoff = Rational(30);  // dual-route comparison cutoff
  int jobs = 1;
};

inline EntryReport check_entry(const appendix::AppendixEntry& e, const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  EntryReport rep;
  rep.index = e.index;
  plumbing::HLabels h = e.labels();
  rep.labels_pu = plumbing::is_pu(h);
  if (rep.labels_pu) {
    rep.c_match = theta::shift_constant(h) == e.c();
    auto [fp, q] = theta::derive_family_params(h);
    auto A = theta::central_block(h);
    Integer L = fp.L();
    rep.q_match = e.form() == q && Rational(L * q.sigma1) == 2 * A.l33 &&
                  Rational(L * q.two_sigma2) == 4 * A.l34 &&
                  Rational(L * q.sigma3) == 2 * A.l44;

    auto S = theta::alpha_set(h);
    auto [S1, S2] = theta::family_alpha_sets(e.family());
    std::set<std::pair<Rational, Rational>> plus, minus;
    for (const auto& p : S.entries) (p.sign > 0 ? plus : minus).insert({p.a1, p.a2});
    rep.alpha_match =
        plus == std::set<std::pair<Rational, Rational>>(S1.begin(), S1.end()) &&
        minus == std::set<std::pair<Rational, Rational>>(S2.begin(), S2.end());

    auto ref_class = [](const Integer& x, const Integer& N) {
      Integer a = ((x % N) + N) % N;
      return std::set<Integer>{a, (N - a) % N};
    };
    rep.rs_match = fp.N1 == e.N1 && fp.N2 == e.N2 &&
                   ref_class(fp.r1, fp.N1) == ref_class(e.r1, e.N1) &&
                   ref_class(fp.s1, fp.N1) == ref_class(e.s1, e.N1) &&
                   ref_class(fp.r2, fp.N2) == ref_class(e.r2, e.N2) &&
                   ref_class(fp.s2, fp.N2) == ref_class(e.s2, e.N2);

    rep.hypotheses_pass = gauss::check_family_hypotheses(e.family(), e.form()).pass();

    rep.ellsum_pass = true;
    for (Integer k = 1; k <= opt.kmax && rep.ellsum_pass; ++k)
      for (Integer hh = 1; hh <= k; ++hh) {
        if (plumbcalc::gcd(hh, k) != 1) continue;
        if (!gauss::ellsum_vanishes(e.family(), e.form(), hh, k)) {
          rep.ellsum_pass = false;
          break;
        }
      }

    rep.series_match =
        theta::z_series(h, opt.cutoff) == contour::z_series_contour(h, opt.cutoff);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

/// Runs check_entry over the requested entries (all 39 when empty), fanned
/// out over opt.jobs workers, results ordered by entry index.
inline std::vector<EntryReport> verify_appendix(const std::vector<int>& entries,
                                                const Options& opt) {
  std::vector<const appendix::AppendixEntry*> selected;
  for (const auto& e : appendix::load_appendix())
    if (entries.empty() ||
        std::find(entries.begin(), entries.end(), e.index) != entries.end())
      selected.push_back(&e);

  std::vector<EntryReport> reports(selected.size());
  if (opt.jobs <= 1) {
    for (size_t i = 0; i < selected.size(); ++i)
      reports[i] = check_entry(*selected[i], opt);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= selected.size()) return;
        reports[i] = check_entry(*selected[i], opt);
      }
    };
    std::vector<std::future<void>> futs;
    for (int j = 0; j < opt.jobs; ++j)
      futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
  }
  return reports;
}

inline std::string report_csv(const std::vector<EntryReport>& reports) {
  std::ostringstream out;
  out << "entry,labels_pu,c,q_scaling,alpha_set,rs,hypotheses,ellsum,dual_route,"
         "pass,seconds\n";
  for (const auto& r : reports) {
    out << r.index << ',' << r.labels_pu << ',' << r.c_match << ',' << r.q_match
        << ',' << r.alpha_match << ',' << r.rs_match << ',' << r.hypotheses_pass
        << ',' << r.ellsum_pass << ',' << r.series_match << ',' << r.pass() << ','
        << r.seconds << '\n';
  }
  return out.str();
}

inline nlohmann::json report_json(const std::vector<EntryReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports)
    arr.push_back({{"entry", r.index},
                   {"labels_pu", r.labels_pu},
                   {"c", r.c_match},
                   {"q_scaling", r.q_match},
                   {"alpha_set", r.alpha_match},
                   {"rs", r.rs_match},
                   {"hypotheses", r.hypotheses_pass},
                   {"ellsum", r.ellsum_pass},
                   {"dual_route", r.series_match},
                   {"pass", r.pass()},
                   {"seconds", r.seconds}});
  return arr;
}

}  // namespace plumbcalc::verify
