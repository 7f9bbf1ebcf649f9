#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qqual/csv.hpp"
#include "qqual/error.hpp"
#include "qqual/stats.hpp"
#include "stats_oracles.hpp"
#include "temp_dir.hpp"

using namespace qqual;
using namespace qqual::stats;

namespace {

std::vector<double> uniform_sample(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform_unit(rng);
  return v;
}

metrics::MetricVector row(corpus::QualityLabel label, std::optional<double> tr) {
  metrics::MetricVector v;
  v.label = label;
  v.tr = tr;
  return v;
}

}  // namespace

TEST_CASE("Mann-Whitney examples") {
  std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  auto r = mann_whitney_u(a, b);
  CHECK(r.u_a == 0);
  CHECK(r.u_b == 9);
  CHECK(r.exact);
  CHECK(r.p == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(r.p == brute_exact_p(a, b));

  auto same = mann_whitney_u(a, a);
  CHECK(same.u_a == 4.5);
  CHECK(same.p == 1.0);

  std::vector<double> empty;
  CHECK_THROWS_AS(mann_whitney_u(empty, a), InvalidArgument);
}

TEST_CASE("U_A + U_B = n_A n_B") {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    auto a = tied_sample(rng, 1 + uniform_index(rng, 30));
    auto b = tied_sample(rng, 1 + uniform_index(rng, 30));
    auto r = mann_whitney_u(a, b);
    CHECK(r.u_a + r.u_b == static_cast<double>(a.size() * b.size()));
    CHECK(2 * r.u_a == static_cast<double>(brute_twice_u(a, b)));
    CHECK(r.p >= 0.0);
    CHECK(r.p <= 1.0);
    CHECK(r.exact == (a.size() + b.size() <= kExactLimit));
  }
}

TEST_CASE("exact p matches enumeration") {
  Rng rng(2);
  for (int t = 0; t < 150; ++t) {
    auto a = tied_sample(rng, 1 + uniform_index(rng, 7));
    auto b = tied_sample(rng, 1 + uniform_index(rng, 7));
    CHECK(mwu_exact_p(a, b) == brute_exact_p(a, b));
  }
}

TEST_CASE("p is symmetric under swapping the samples") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    auto a = tied_sample(rng, 1 + uniform_index(rng, 25));
    auto b = tied_sample(rng, 1 + uniform_index(rng, 25));
    CHECK(mann_whitney_u(a, b).p == mann_whitney_u(b, a).p);
    CHECK(mwu_normal_p(a, b) == mwu_normal_p(b, a));
  }
}

TEST_CASE("normal approximation stays near the exact p for tie-free samples of 3 to 8") {
  Rng rng(4);
  double worst = 0;
  for (int t = 0; t < 2000; ++t) {
    auto a = uniform_sample(rng, 3 + uniform_index(rng, 6));
    auto b = uniform_sample(rng, 3 + uniform_index(rng, 6));
    worst = std::max(worst, std::fabs(mwu_normal_p(a, b) - mwu_exact_p(a, b)));
  }
  CHECK(worst <= 0.05);
}

TEST_CASE("normal route on larger samples") {
  std::vector<double> a, b;
  for (int i = 0; i < 30; ++i) {
    a.push_back(i);
    b.push_back(i + 100);
  }
  auto r = mann_whitney_u(a, b);
  CHECK_FALSE(r.exact);
  CHECK(r.p < 1e-9);
  CHECK(r.z < 0);

  std::vector<double> c(25, 1.0);
  auto flat = mann_whitney_u(c, c);
  CHECK(flat.p == 1.0);
  CHECK(flat.z == 0.0);
}

TEST_CASE("Cliff's delta examples") {
  std::vector<double> hi{4, 5, 6}, lo{1, 2, 3};
  auto r = cliffs_delta(hi, lo);
  CHECK(r.d == 1.0);
  CHECK(r.magnitude == Magnitude::Large);
  CHECK(cliffs_delta(lo, lo).d == 0.0);
  CHECK(cliffs_delta(lo, lo).magnitude == Magnitude::Negligible);
  std::vector<double> a{1, 3}, b{2};
  CHECK(cliffs_delta(a, b).d == 0.0);

  CHECK(magnitude_of(0.146) == Magnitude::Negligible);
  CHECK(magnitude_of(0.147) == Magnitude::Small);
  CHECK(magnitude_of(-0.2) == Magnitude::Small);
  CHECK(magnitude_of(0.33) == Magnitude::Medium);
  CHECK(magnitude_of(0.474) == Magnitude::Large);
  CHECK(magnitude_name(Magnitude::Medium) == "medium");
}

TEST_CASE("Cliff's delta properties") {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    auto a = tied_sample(rng, 1 + uniform_index(rng, 20));
    auto b = tied_sample(rng, 1 + uniform_index(rng, 20));
    double d = cliffs_delta(a, b).d;
    CHECK(d == brute_cliffs_d(a, b));
    CHECK(cliffs_delta(b, a).d == -d);
    CHECK(std::fabs(d) <= 1.0);

    auto ta = a, tb = b;
    for (auto& x : ta) x = std::exp(3 * x) - 7;
    for (auto& x : tb) x = std::exp(3 * x) - 7;
    CHECK(cliffs_delta(ta, tb).d == d);
  }
}

TEST_CASE("quantiles use the midpoint rule") {
  std::vector<double> v{1, 2, 3, 4};
  CHECK(quantile_midpoint(v, 0.5) == 2.5);
  CHECK(quantile_midpoint(v, 0.25) == 1.5);
  CHECK(quantile_midpoint(v, 0.0) == 1);
  CHECK(quantile_midpoint(v, 1.0) == 4);
  CHECK(median({5, 1, 3}) == 3);
}

TEST_CASE("quartile bands against brute force") {
  Rng rng(6);
  for (int t = 0; t < 40; ++t) {
    auto a = tied_sample(rng, 20);
    auto b = tied_sample(rng, 20);
    for (auto& x : b) x += 0.5 * static_cast<double>(t % 3);
    auto bands = quartile_compare(a, b);

    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());
    auto order_stat_mean = [&](double q) {
      double h = 39 * q;
      return (pooled[static_cast<std::size_t>(h)] + pooled[static_cast<std::size_t>(std::ceil(h))]) / 2;
    };
    double cut[5] = {pooled.front(), order_stat_mean(0.25), order_stat_mean(0.5), order_stat_mean(0.75),
                     pooled.back()};
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<double> ia, ib;
      auto inside = [&](double x) { return (k == 0 ? x >= cut[0] : x > cut[k]) && x <= cut[k + 1]; };
      for (double x : a)
        if (inside(x)) ia.push_back(x);
      for (double x : b)
        if (inside(x)) ib.push_back(x);
      CHECK(bands[k].n_a == ia.size());
      CHECK(bands[k].n_b == ib.size());
      CHECK(bands[k].comparable == (!ia.empty() && !ib.empty()));
      if (!bands[k].comparable) continue;
      CHECK(bands[k].cliffs.d == brute_cliffs_d(ia, ib));
      CHECK(2 * bands[k].mwu.u_a == static_cast<double>(brute_twice_u(ia, ib)));
      if (ia.size() + ib.size() <= 20) CHECK(bands[k].mwu.p == brute_exact_p(ia, ib));
    }
  }
}

TEST_CASE("quartile examples") {
  std::vector<double> a{1, 2, 3, 4, 5, 6, 7, 8};
  for (const auto& band : quartile_compare(a, a)) {
    CHECK(band.comparable);
    CHECK(band.cliffs.d == 0.0);
  }
  std::vector<double> high{100, 101, 102, 103, 104}, low{1, 2, 3, 4, 5};
  auto bands = quartile_compare(high, low);
  CHECK_FALSE(bands[3].comparable);
  CHECK(bands[3].n_b == 0);
  std::vector<double> few{1, 2, 3};
  CHECK_THROWS_AS(quartile_compare(few, few), InvalidArgument);
}

TEST_CASE("compare_groups") {
  using corpus::QualityLabel;
  std::vector<metrics::MetricVector> rows;
  for (int i = 0; i < 10; ++i) {
    rows.push_back(row(QualityLabel::Promoted, 3.0));
    rows.push_back(row(QualityLabel::Discouraged, 3.0));
  }
  auto flat = compare_groups(rows, "tr");
  CHECK(flat.cliffs.d == 0.0);
  CHECK(flat.mwu.p == 1.0);
  CHECK_FALSE(flat.significant());

  rows.clear();
  for (int i = 0; i < 10; ++i) {
    rows.push_back(row(QualityLabel::Discouraged, i));
    rows.push_back(row(QualityLabel::Promoted, i + 10.0));
  }
  rows.push_back(row(QualityLabel::Promoted, std::nullopt));
  rows.push_back(row(QualityLabel::Discouraged, std::nullopt));
  rows.push_back(row(QualityLabel::Discouraged, std::nullopt));
  auto disjoint = compare_groups(rows, "tr");
  CHECK(std::fabs(disjoint.cliffs.d) == 1.0);
  CHECK(disjoint.cliffs.magnitude == Magnitude::Large);
  CHECK(disjoint.n_a == 10);
  CHECK(disjoint.n_b == 10);
  CHECK(disjoint.dropped == 3);
  CHECK(disjoint.significant());
  CHECK(disjoint.quartiles.has_value());

  std::vector<metrics::MetricVector> thin{row(QualityLabel::Promoted, 1.0), row(QualityLabel::Promoted, 2.0),
                                          row(QualityLabel::Discouraged, 1.0)};
  CHECK_THROWS_AS(compare_groups(thin, "tr"), InvalidArgument);
}

TEST_CASE("comparison csv uses the documented header") {
  TempDir dir;
  std::vector<double> a{1, 2, 3, 4, 5}, b{3, 4, 5, 6, 7};
  std::vector<ComparisonResult> results{compare_samples("tr", a, b)};
  write_comparison_csv(dir.file("c.csv"), results);
  auto t = csv::read_file(dir.file("c.csv"));
  CHECK(t.header == comparison_header());
  CHECK(t.rows.size() == 5);
  CHECK(t.rows[0][t.column("scope")] == "overall");
}

TEST_CASE("box statistics and svg") {
  auto box = box_stats({1, 2, 3, 4, 100});
  CHECK(box.median == 3);
  CHECK(box.q1 == 2);
  CHECK(box.q3 == 4);
  CHECK(box.whisker_high == 4);
  REQUIRE(box.outliers.size() == 1);
  CHECK(box.outliers[0] == 100);
  std::string svg = boxplot_svg("tr", {{"TPS", {1, 2, 3}}, {"DS", {2, 3, 4}}, {"RPS", {}}});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("TPS") != std::string::npos);
  CHECK(svg.find("RPS (n=0)") != std::string::npos);
  std::size_t rects = 0;
  for (auto pos = svg.find("<rect"); pos != std::string::npos; pos = svg.find("<rect", pos + 1)) ++rects;
  CHECK(rects == 3);  // background plus two boxes
}
