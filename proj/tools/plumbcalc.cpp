// Command-line front end: classification census, q-series by either route,
// quantum-set sweeps, asymptotic order checks, dataset verification, and
// dataset export. Exit codes: 0 all checks pass, 1 verification mismatch,
// 2 invalid input.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "plumbcalc/appendix.hpp"
#include "plumbcalc/asympt.hpp"
#include "plumbcalc/contour.hpp"
#include "plumbcalc/gauss.hpp"
#include "plumbcalc/plumbing.hpp"
#include "plumbcalc/theta.hpp"
#include "plumbcalc/verify.hpp"

namespace {

using namespace plumbcalc;
using plumbing::HLabels;

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitBadInput = 2;

// "7" -> appendix entry labels; "2,3,7,1,2,3" -> literal labels
HLabels parse_target(const std::string& arg) {
  if (arg.find(',') == std::string::npos) {
    int idx = std::stoi(arg);
    return appendix::entry(idx).labels();
  }
  std::istringstream in(arg);
  HLabels h{};
  std::string tok;
  for (int i = 0; i < 6; ++i) {
    if (!std::getline(in, tok, ',')) throw std::invalid_argument("need six labels");
    h.b[static_cast<size_t>(i)] = std::stoll(tok);
  }
  if (std::getline(in, tok, ',')) throw std::invalid_argument("need six labels");
  return h;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

std::vector<int> parse_entry_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

int cmd_classify(const std::string& format, bool labelings) {
  auto census = plumbing::enumerate_pu();
  bool counts_ok = census.labelings.size() == 312 && census.classes.size() == 39;
  std::vector<HLabels> expected;
  for (const auto& e : appendix::load_appendix()) expected.push_back(e.labels());
  std::sort(expected.begin(), expected.end());
  bool classes_ok = census.classes == expected;

  if (format == "csv") {
    if (labelings) {
      std::cout << plumbing::census_csv(census);
    } else {
      std::cout << "class_index,b1,b2,b3,b4,b5,b6,det\n";
      for (size_t i = 0; i < census.classes.size(); ++i) {
        std::cout << i + 1;
        for (int j = 0; j < 6; ++j) std::cout << ',' << census.classes[i][j];
        std::cout << ',' << plumbing::det_closed_form(census.classes[i]) << '\n';
      }
    }
  } else {
    nlohmann::json doc;
    doc["labeling_count"] = census.labelings.size();
    doc["class_count"] = census.classes.size();
    doc["counts_expected"] = counts_ok;
    doc["classes_match_dataset"] = classes_ok;
    auto tuple = [](const HLabels& h) {
      return std::vector<long long>(h.b.begin(), h.b.end());
    };
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& c : census.classes) classes.push_back(tuple(c));
    doc["classes"] = classes;
    if (labelings) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& l : census.labelings) rows.push_back(tuple(l));
      doc["labelings"] = rows;
    }
    std::cout << doc.dump(2) << '\n';
  }
  return counts_ok && classes_ok ? kExitPass : kExitMismatch;
}

int cmd_series(const std::string& target, const std::string& cutoff_str,
               const std::string& route, bool zhat) {
  HLabels h = parse_target(target);
  if (!plumbing::is_pu(h)) {
    std::cerr << "labels are not positive unimodular (det "
              << plumbing::det_closed_form(h) << ")\n";
    return kExitBadInput;
  }
  Rational cutoff = parse_rational(cutoff_str);
  nlohmann::json doc;
  doc["labels"] = std::vector<long long>(h.b.begin(), h.b.end());
  if (zhat) {
    doc["zhat"] = theta::zhat_series(h, cutoff).to_json();
  } else if (route == "closed") {
    doc["closed"] = theta::z_series(h, cutoff).to_json();
  } else if (route == "contour") {
    doc["contour"] = contour::z_series_contour(h, cutoff).to_json();
  } else {  // both
    QSeries a = theta::z_series(h, cutoff);
    QSeries b = contour::z_series_contour(h, cutoff);
    doc["closed"] = a.to_json();
    doc["contour"] = b.to_json();
    doc["routes_agree"] = (a == b);
    if (a != b) {
      std::cout << doc.dump(2) << '\n';
      return kExitMismatch;
    }
  }
  std::cout << doc.dump(2) << '\n';
  return kExitPass;
}

int cmd_quantum_set(int entry_idx, const Integer& kmax, const std::string& format,
                    int jobs) {
  const auto& e = appendix::entry(entry_idx);
  struct Row {
    long long k, h;
    bool vanishes;
  };
  std::vector<std::pair<Integer, Integer>> grid;
  for (Integer k = 1; k <= kmax; ++k)
    for (Integer h = 1; h <= k; ++h)
      if (plumbcalc::gcd(h, k) == 1) grid.push_back({h, k});
  std::vector<Row> rows(grid.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      auto [h, k] = grid[i];
      rows[i] = Row{static_cast<long long>(k), static_cast<long long>(h),
                    gauss::ellsum_vanishes(e.family(), e.form(), h, k)};
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::future<void>> futs;
    for (int j = 0; j < jobs; ++j)
      futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
  }
  bool all = true;
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"k", r.k}, {"h", r.h}, {"vanishes", r.vanishes}});
      all = all && r.vanishes;
    }
    std::cout << nlohmann::json{{"entry", entry_idx}, {"rows", arr}}.dump(2) << '\n';
  } else {
    std::cout << "k,h,vanishes\n";
    for (const auto& r : rows) {
      std::cout << r.k << ',' << r.h << ',' << (r.vanishes ? 1 : 0) << '\n';
      all = all && r.vanishes;
    }
  }
  return all ? kExitPass : kExitMismatch;
}

int cmd_asympt(int entry_idx, long long h, long long k, int order, int digits) {
  const auto& e = appendix::entry(entry_idx);
  if (k < 1 || std::gcd(h, k) != 1) {
    std::cerr << "need k >= 1 and gcd(h,k) = 1\n";
    return kExitBadInput;
  }
  auto labels = e.labels();
  auto [fp, q] = theta::derive_family_params(labels);
  auto S = theta::alpha_set(labels);
  auto rep = asympt::order_check(S, q, fp.L(), h, k, order, digits);
  std::cout << rep.csv(digits > 20 ? 20 : digits) << "target_ratio,"
            << rep.target.str(12) << "\npass," << (rep.pass ? 1 : 0) << '\n';
  return rep.pass ? kExitPass : kExitMismatch;
}

int cmd_verify(const std::string& entries_arg, const Integer& kmax,
               const std::string& cutoff_str, const std::string& format, int jobs) {
  verify::Options opt;
  opt.kmax = kmax;
  opt.cutoff = parse_rational(cutoff_str);
  opt.jobs = jobs;
  std::vector<int> entries;
  if (!entries_arg.empty()) entries = parse_entry_list(entries_arg);
  auto reports = verify::verify_appendix(entries, opt);
  bool all = true;
  for (const auto& r : reports) {
    if (!r.pass()) {
      all = false;
      std::cerr << "entry " << r.index << " failed: " << r.failing_checks() << '\n';
    }
  }
  if (format == "json")
    std::cout << verify::report_json(reports).dump(2) << '\n';
  else
    std::cout << verify::report_csv(reports);
  return all ? kExitPass : kExitMismatch;
}

int cmd_export(const std::string& format) {
  const auto& all = appendix::load_appendix();
  if (format == "csv") {
    std::cout << "entry,b1,b2,b3,b4,b5,b6,sigma1,two_sigma2,sigma3,c,N1,N2,r1,s1,"
                 "r2,s2\n";
    for (const auto& e : all) {
      std::cout << e.index;
      for (int i = 0; i < 6; ++i) std::cout << ',' << e.labels()[i];
      std::cout << ',' << e.sigma1 << ',' << e.two_sigma2 << ',' << e.sigma3 << ','
                << e.c_num << '/' << e.c_den << ',' << e.N1 << ',' << e.N2 << ','
                << e.r1 << ',' << e.s1 << ',' << e.r2 << ',' << e.s2 << '\n';
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : all) {
      nlohmann::json j;
      j["entry"] = e.index;
      HLabels lab = e.labels();
      j["labels"] = std::vector<long long>(lab.b.begin(), lab.b.end());
      j["labels_listed"] =
          std::vector<long long>(e.labels_listed.b.begin(), e.labels_listed.b.end());
      j["sigma1"] = e.sigma1;
      j["two_sigma2"] = e.two_sigma2;
      j["sigma3"] = e.sigma3;
      j["c"] = {e.c_num, e.c_den};
      j["c_listed"] = {e.c_num_listed, e.c_den_listed};
      j["N1"] = e.N1;
      j["N2"] = e.N2;
      j["r1"] = e.r1;
      j["s1"] = e.s1;
      j["r2"] = e.r2;
      j["s2"] = e.s2;
      j["s2_listed"] = e.s2_listed;
      arr.push_back(j);
    }
    std::cout << arr.dump(2) << '\n';
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-series and classification toolkit for H-graph plumbings"};
  app.require_subcommand(1);

  std::string format = "csv";
  int jobs = 1;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::Range(1, 256));

  auto* classify =
      app.add_subcommand("classify", "census of positive unimodular labelings");
  bool labelings = false;
  classify->add_flag("--labelings", labelings, "emit all labelings, not just classes");

  auto* series = app.add_subcommand("series", "q-series for an entry or labels");
  std::string target, cutoff = "30", route = "closed";
  bool zhat = false;
  series->add_option("target", target, "entry index or b1,..,b6")->required();
  series->add_option("--cutoff", cutoff, "exponent cutoff (rational)");
  series->add_option("--route", route, "closed | contour | both")
      ->check(CLI::IsMember({"closed", "contour", "both"}));
  series->add_flag("--zhat", zhat, "emit the half-exponent normalization");

  auto* qset = app.add_subcommand("quantum-set", "exact vanishing sweep for an entry");
  int entry_idx = 1;
  std::string kmax = "12";
  qset->add_option("entry", entry_idx, "entry index")->required();
  qset->add_option("--kmax", kmax, "largest denominator k");

  auto* asy = app.add_subcommand("asympt", "radial asymptotics order check");
  long long ah = 0, ak = 1;
  int order = 2;
  asy->add_option("entry", entry_idx, "entry index")->required();
  asy->add_option("numer", ah, "numerator of the base point")->required();
  asy->add_option("denom", ak, "denominator of the base point")->required();
  asy->add_option("--order", order, "expansion order")->check(CLI::Range(0, 6));

  auto* ver = app.add_subcommand("verify-appendix", "verify the embedded dataset");
  std::string entries_arg, vcutoff = "30";
  std::string vkmax = "8";
  ver->add_option("--entries", entries_arg, "comma-separated entry indices");
  ver->add_option("--kmax", vkmax, "vanishing sweep bound");
  ver->add_option("--cutoff", vcutoff, "dual-route comparison cutoff");

  auto* exp = app.add_subcommand("export", "dump the embedded dataset");
  (void)exp;

  CLI11_PARSE(app, argc, argv);

  int digits = plumbcalc::asympt::default_digits();
  plumbcalc::asympt::set_precision(digits);

  try {
    if (classify->parsed()) return cmd_classify(format, labelings);
    if (series->parsed()) return cmd_series(target, cutoff, route, zhat);
    if (qset->parsed())
      return cmd_quantum_set(entry_idx, plumbcalc::Integer(kmax), format, jobs);
    if (asy->parsed()) return cmd_asympt(entry_idx, ah, ak, order, digits);
    if (ver->parsed())
      return cmd_verify(entries_arg, plumbcalc::Integer(vkmax), vcutoff, format, jobs);
    if (exp->parsed()) return cmd_export(format);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
