#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plumbcalc/appendix.hpp"
#include "plumbcalc/plumbing.hpp"

using namespace plumbcalc;
using plumbing::HLabels;

TEST_CASE("build_matrix shape") {
  HLabels h{{2, 3, 7, 1, 2, 3}};
  auto m = plumbing::build_matrix(h);
  CHECK(m.is_symmetric());
  for (int i = 0; i < 6; ++i) CHECK(m(i, i) == h[i]);
  Integer off = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) off += m(i, j);
  CHECK(off == -10);  // five tree edges, each counted twice
  CHECK(m(0, 2) == -1);
  CHECK(m(1, 2) == -1);
  CHECK(m(2, 3) == -1);
  CHECK(m(3, 4) == -1);
  CHECK(m(3, 5) == -1);
  CHECK(m(0, 1) == 0);
}

TEST_CASE("closed-form determinant matches the matrix determinant") {
  CHECK(plumbing::det_closed_form(HLabels{{2, 3, 7, 1, 2, 3}}) == 1);
  CHECK(plumbing::det_closed_form(HLabels{{2, 3, 1, 1, 2, 3}}) == -35);
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> dist(1, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    HLabels h{};
    for (auto& b : h.b) b = dist(rng);
    CHECK(plumbing::det_closed_form(h) == exact::det(plumbing::build_matrix(h)));
  }
}

TEST_CASE("is_pu") {
  CHECK(plumbing::is_pu(HLabels{{2, 3, 7, 1, 2, 3}}));
  CHECK_FALSE(plumbing::is_pu(HLabels{{2, 2, 3, 1, 2, 3}}));   // gcd(b1,b2) > 1
  CHECK_FALSE(plumbing::is_pu(HLabels{{2, 3, 1, 1, 2, 3}}));   // det -35
}

TEST_CASE("automorphism orbit") {
  auto orbit = plumbing::automorphism_orbit(HLabels{{2, 3, 7, 1, 2, 3}});
  CHECK(orbit.size() == 8);
  CHECK(plumbing::automorphism_orbit(HLabels{{2, 2, 2, 2, 2, 2}}).size() == 1);
  // closure under each generator
  for (const HLabels& t : orbit) {
    HLabels s12{{t[1], t[0], t[2], t[3], t[4], t[5]}};
    HLabels s56{{t[0], t[1], t[2], t[3], t[5], t[4]}};
    HLabels arm{{t[4], t[5], t[3], t[2], t[0], t[1]}};
    CHECK(orbit.count(s12) == 1);
    CHECK(orbit.count(s56) == 1);
    CHECK(orbit.count(arm) == 1);
  }
}

TEST_CASE("canonicalize") {
  HLabels e1{{2, 3, 7, 1, 2, 3}};
  CHECK(plumbing::canonicalize(e1) == e1);
  CHECK(plumbing::canonicalize(HLabels{{2, 3, 1, 7, 2, 3}}) == e1);  // arm swap
  CHECK(plumbing::canonicalize(HLabels{{3, 2, 7, 1, 3, 2}}) == e1);  // leaf order
  // idempotent and constant on the orbit
  for (const HLabels& t : plumbing::automorphism_orbit(e1)) {
    CHECK(plumbing::canonicalize(t) == e1);
    CHECK(plumbing::canonicalize(plumbing::canonicalize(t)) == e1);
  }
}

TEST_CASE("census: 312 labelings in 39 classes matching the dataset") {
  auto census = plumbing::enumerate_pu();
  CHECK(census.labelings.size() == 312);
  REQUIRE(census.classes.size() == 39);

  std::vector<HLabels> expected;
  for (const auto& e : appendix::load_appendix()) expected.push_back(e.labels());
  std::sort(expected.begin(), expected.end());
  CHECK(census.classes == expected);

  long with_b4_one = 0;
  for (const HLabels& h : census.labelings) {
    CHECK(plumbing::is_pu(h));
    if (h[3] == 1) ++with_b4_one;
  }
  CHECK(with_b4_one == 156);  // half of each orbit has the small center at b4

  // all orbits have the full size 8 and canonicalize constant on them
  for (const HLabels& c : census.classes) {
    auto orbit = plumbing::automorphism_orbit(c);
    CHECK(orbit.size() == 8);
    for (const HLabels& t : orbit) CHECK(plumbing::canonicalize(t) == c);
  }
}

TEST_CASE("census csv") {
  auto census = plumbing::enumerate_pu();
  std::string csv = plumbing::census_csv(census);
  size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == 313);  // header + 312 labelings
  CHECK(csv.rfind("b1,b2,b3,b4,b5,b6,det,", 0) == 0);
}

TEST_CASE("appendix labels are canonical fixed points") {
  for (const auto& e : appendix::load_appendix()) {
    CHECK(plumbing::canonicalize(e.labels()) == e.labels());
    CHECK(plumbing::is_pu(e.labels()));
    // the one entry listed with an unsorted leaf pair still canonicalizes
    // into its own class
    CHECK(plumbing::canonicalize(e.labels_listed) == e.labels());
  }
}
