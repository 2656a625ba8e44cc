#include <cmath>
#include <set>
#include <vector>

#include <doctest.h>

#include "extremes/bootstrap.hpp"
#include "extremes/gev.hpp"

using namespace extremes;

TEST_SUITE("bootstrap") {
  TEST_CASE("circular blocks are runs of consecutive years") {
    BootstrapConfig c;
    c.block_length = 5;
    c.seed = 3;
    for (std::size_t k = 0; k < 20; ++k) {
      const auto idx = resample_indices(23, c, k);
      REQUIRE(idx.size() == 23);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        CHECK(idx[i] < 23);
        if (i % 5 != 0) CHECK(idx[i] == (idx[i - 1] + 1) % 23);
      }
    }
  }

  TEST_CASE("indices depend only on seed and replicate") {
    BootstrapConfig c;
    c.seed = 8;
    CHECK(resample_indices(50, c, 4) == resample_indices(50, c, 4));
    CHECK(resample_indices(50, c, 4) != resample_indices(50, c, 5));
    BootstrapConfig simple = c;
    simple.scheme = BootstrapScheme::Simple;
    CHECK(resample_indices(50, c, 4) == resample_indices(50, simple, 4));
  }

  TEST_CASE("every year is drawn at roughly equal rates") {
    BootstrapConfig c;
    c.block_length = 10;
    std::vector<double> counts(30, 0.0);
    for (std::size_t k = 0; k < 3000; ++k) {
      for (const std::size_t i : resample_indices(30, c, k)) counts[i] += 1.0;
    }
    for (const double n : counts) CHECK(n / 3000.0 == doctest::Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("take applies an index sequence") {
    const BlockExtremes e{Orientation::Minima, 2, {10, 20, 30}};
    const BlockExtremes t = take(e, {2, 2, 0});
    CHECK(t.values == std::vector<double>{30, 30, 10});
    CHECK(t.orientation == Orientation::Minima);
    CHECK(t.block_length == 2);
  }

  TEST_CASE("p-values from replicate counts") {
    const std::vector<double> mixed{1.0, 2.0, 3.0, -1.0};
    CHECK(bootstrap_pvalue(mixed).p == doctest::Approx(0.5));
    std::vector<double> positive(100, 1.0);
    positive[0] = 2.0;
    CHECK(bootstrap_pvalue(positive).p == doctest::Approx(0.02));
    CHECK_FALSE(bootstrap_pvalue(positive).degenerate);
    const std::vector<double> balanced{-1.0, 1.0, -2.0, 2.0};
    CHECK(bootstrap_pvalue(balanced).p == 1.0);
    const std::vector<double> zeros(10, 0.0);
    CHECK(bootstrap_pvalue(zeros).p == 1.0);
    CHECK(bootstrap_pvalue(zeros).degenerate);
    const std::vector<double> same(10, 3.0);
    CHECK(bootstrap_pvalue(same).p == doctest::Approx(0.2));
    CHECK(bootstrap_pvalue(same).degenerate);
    CHECK(bootstrap_pvalue(std::vector<double>{}).degenerate);
  }

  TEST_CASE("significance marks") {
    CHECK(significance_mark(0.01, 2.0) == "++");
    CHECK(significance_mark(0.01, -2.0) == "--");
    CHECK(significance_mark(0.05, 0.3) == "+");
    CHECK(significance_mark(0.05, -0.3) == "-");
    CHECK(significance_mark(0.10, 1.0) == "");
    CHECK(significance_mark(0.5, -1.0) == "");
  }

  TEST_CASE("bootstrap fit summaries") {
    const BlockExtremes x = sample({0.0, 1.0, -0.1, Orientation::Maxima}, 200, 14);
    BootstrapConfig c;
    c.n_replicates = 200;
    c.seed = 1;
    const BootstrapResult r = bootstrap_fit(x, c, FitMethod::ML, {10.0, 100.0});
    REQUIRE(r.replicates.size() == 200);
    CHECK(r.n_failed == 0);
    CHECK_FALSE(r.unreliable);
    std::vector<double> mus;
    for (const auto& p : r.replicates) mus.push_back(p->mu);
    double mean = 0.0;
    for (const double m : mus) mean += m / 200.0;
    double ss = 0.0;
    for (const double m : mus) ss += (m - mean) * (m - mean);
    CHECK(r.se_mu == doctest::Approx(std::sqrt(ss / 199.0)));
    CHECK(r.se_mu > 0.04);
    CHECK(r.se_mu < 0.12);
    CHECK(r.env_mu.lower < r.env_mu.upper);
    REQUIRE(r.env_return_levels.size() == 2);
    CHECK(r.env_return_levels[0].upper < r.env_return_levels[1].upper);
    CHECK(r.replicate_return_levels[7][1] == doctest::Approx(return_level(*r.replicates[7], 100.0)));
  }

  TEST_CASE("bootstrap results do not depend on the thread count") {
    const BlockExtremes x = sample({0.0, 1.0, 0.1, Orientation::Maxima}, 100, 15);
    BootstrapConfig c;
    c.n_replicates = 64;
    c.block_length = 2;
    const BootstrapResult one = bootstrap_fit(x, c, FitMethod::ML, {50.0});
    c.threads = 4;
    const BootstrapResult four = bootstrap_fit(x, c, FitMethod::ML, {50.0});
    for (std::size_t k = 0; k < 64; ++k) CHECK(one.replicates[k] == four.replicates[k]);
    CHECK(one.se_xi == four.se_xi);
  }

  TEST_CASE("paired two-state differences") {
    const BlockExtremes a = sample({0.0, 1.0, 0.0, Orientation::Maxima}, 150, 1);
    const BlockExtremes b = sample({1.0, 1.0, 0.0, Orientation::Maxima}, 150, 2);
    BootstrapConfig c;
    c.n_replicates = 100;
    const BootstrapResult ba = bootstrap_fit(a, c, FitMethod::ML);
    c.seed = state_b_seed(0);
    const BootstrapResult bb = bootstrap_fit(b, c, FitMethod::ML);
    const auto d = paired_differences(ba, bb, Quantity::mu());
    REQUIRE(d.size() == 100);
    CHECK(d[3] == bb.replicates[3]->mu - ba.replicates[3]->mu);
    CHECK(two_state_pvalue(ba, bb, Quantity::mu()).p == doctest::Approx(0.02));
    CHECK(state_b_seed(0) != 0);
    CHECK(Quantity::return_level(100.0).of({0.0, 1.0, 0.0}) == doctest::Approx(return_level({0.0, 1.0, 0.0}, 100.0)));
    CHECK(Quantity::log_sigma().of({0.0, 2.0, 0.0}) == doctest::Approx(std::log(2.0)));
  }
}
