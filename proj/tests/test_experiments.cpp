#include <gtest/gtest.h>

#include <random>

#include "bbgroup/experiments.hpp"

using namespace bbgroup;
using namespace bbgroup::experiments;

TEST(Output, NumbersHaveTwelveSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(51.0), "51");
  EXPECT_EQ(format_number(2.5e-7), "2.5e-07");
}

TEST(Output, CsvAndJsonMirrorEachOther) {
  Table t{{"p", "name", "rate", "ok"}, {}};
  t.add({u64{5}, std::string("x"), 0.25, true});
  t.add({u64{7}, std::string("y"), 1.0 / 3.0, false});
  EXPECT_EQ(to_csv(t), "p,name,rate,ok\n5,x,0.25,true\n7,y,0.333333333333,false\n");
  EXPECT_EQ(to_json(t).dump(),
            R"([{"p":5,"name":"x","rate":0.25,"ok":true},{"p":7,"name":"y","rate":0.333333333333,"ok":false}])");
  EXPECT_THROW(t.add({u64{1}}), InternalError);
}

TEST(Stats, WilsonInterval) {
  // Reference values from a direct Python evaluation of the score interval.
  auto a = wilson_interval(9900, 10000, 3.0);
  EXPECT_NEAR(a.lo, 0.9865434191531375, 1e-12);
  EXPECT_NEAR(a.hi, 0.9925753739330849, 1e-12);
  auto b = wilson_interval(0, 10, 3.0);
  EXPECT_NEAR(b.lo, 0.0, 1e-12);
  EXPECT_NEAR(b.hi, 0.4736842105263158, 1e-12);
  auto c = wilson_interval(5, 10, 1.96);
  EXPECT_NEAR(c.lo, 0.23658959361548731, 1e-12);
  EXPECT_NEAR(c.hi, 0.7634104063845126, 1e-12);
}

TEST(Parallel, ResultsIndependentOfWorkers) {
  auto draw = [](u64 i) { return trial_rng(7, kTagScaling, 101, i)(); };
  const auto one = parallel_trials<u64>(1000, 1, draw);
  for (unsigned w : {2U, 5U, 16U}) EXPECT_EQ(parallel_trials<u64>(1000, w, draw), one);
  EXPECT_NE(trial_rng(7, 1, 101, 0)(), trial_rng(7, 1, 101, 1)());
  EXPECT_NE(trial_rng(7, 1, 101, 0)(), trial_rng(8, 1, 101, 0)());
}

TEST(Parallel, WorkerExceptionsPropagate) {
  EXPECT_THROW((void)parallel_trials<int>(10, 3, [](u64 i) -> int {
                 if (i == 7) throw InputError("boom");
                 return 0;
               }),
               InputError);
}

TEST(Scaling, WorstCaseAtP3) {
  const std::vector<u64> ps{3};
  const auto r = run_scaling(ps, 500, 1);
  EXPECT_EQ(r.rows[0].max_queries, 3U);
  EXPECT_FALSE(r.enforced);
}

TEST(Scaling, MeanAndLinearity) {
  const std::vector<u64> ps{101, 211};
  const auto r = run_scaling(ps, 10000, 4);
  EXPECT_TRUE(r.enforced);
  EXPECT_TRUE(r.all_within);
  EXPECT_TRUE(r.linear);
  EXPECT_NEAR(r.rows[0].mean_queries, 51.0, 1.5);
  EXPECT_EQ(to_csv(to_table(r)), to_csv(to_table(run_scaling(ps, 10000, 4, 3))));
}

TEST(Reductions, ExactRatesMatchCombinatorialCounts) {
  for (u64 p : {3ULL, 5ULL}) {
    const ExactRates r = exact_reduction_rates(PrimeModulus(p));
    const u64 gens = p * p - p;
    // DLOG fails exactly on the p multiples h = c g of each generator.
    EXPECT_EQ(r.dlog_draws, p * gens * p * p);
    EXPECT_EQ(r.dlog_successes, p * gens * (p * p - p));
    // With the canonical l = (x, 0) the polynomial has degree 2 iff h_1 k_1 != 0.
    EXPECT_EQ(r.cdh_draws, p * gens * p * p * p * p);
    EXPECT_EQ(r.cdh_successes, p * gens * p * p * (p - 1) * (p - 1));
  }
}

TEST(Reductions, MonteCarloAtP101) {
  const auto r = run_reduction_success(PrimeModulus(101), 10000, 5);
  EXPECT_TRUE(r.dlog.consistent);
  EXPECT_TRUE(r.cdh.consistent);
  EXPECT_GE(r.dlog.rate, 0.98);
  EXPECT_GE(r.cdh.rate, 0.97);
  EXPECT_EQ(to_csv(to_table(r)), to_csv(to_table(run_reduction_success(PrimeModulus(101), 10000, 5, 7))));
}

TEST(Level2, FastLineCountsMatchNaive) {
  std::mt19937_64 rng(3);
  for (u64 p : {3ULL, 5ULL, 7ULL}) {
    for (int i = 0; i < 30; ++i) {
      u64 resamples = 0;
      const Level2Instance in = random_level2_instance(p, rng, resamples);
      const auto fast = all_line_counts(p, in);
      for (u64 u1 = 0; u1 < p; ++u1)
        for (u64 u2 = 0; u2 < p; ++u2) ASSERT_EQ(fast[u1 * p + u2], line_solution_count(p, in, u1, u2));
    }
  }
}

TEST(Level2, LineRestrictionInterpolates) {
  std::mt19937_64 rng(4);
  for (u64 p : {5ULL, 7ULL, 13ULL}) {
    u64 resamples = 0;
    const Level2Instance in = random_level2_instance(p, rng, resamples);
    for (u64 alpha = 0; alpha < p; ++alpha)
      for (u64 beta = 0; beta < p; ++beta) {
        const auto c = line_restriction(p, in, alpha, beta);
        for (u64 x = 0; x < p; ++x) {
          const u64 y = (2 * p - beta * x % p - alpha) % p;
          const u64 poly = (c[0] + c[1] * x + c[2] * x % p * x) % p;
          ASSERT_EQ(poly, level2_form(p, in, x, y));
        }
      }
  }
}

TEST(Level2, ProperQuadraticsGiveGoodInstances) {
  // When the quadratic part of the form vanishes on no direction, every
  // line meets the zero set in at most two points.
  std::mt19937_64 rng(5);
  const u64 p = 11;
  int checked = 0;
  for (int i = 0; i < 400 && checked < 20; ++i) {
    u64 resamples = 0;
    const Level2Instance in = random_level2_instance(p, rng, resamples);
    if ((in.g[2] * in.l[2] + p * p - in.h[2] * in.k[2]) % p == 0) continue;
    bool proper = true;
    for (u64 beta = 0; beta < p && proper; ++beta) proper = line_restriction(p, in, 1, beta)[2] != 0;
    if (!proper) continue;
    ++checked;
    EXPECT_FALSE(is_bad_instance(p, in));
  }
  EXPECT_GT(checked, 0);
}

TEST(Level2, DegenerateInstanceIsBad) {
  // h = k = 0: the form factors as (g.u)(l.u); the line x = -1 is a full component.
  const u64 p = 7;
  const Level2Instance in{{1, 1, 0}, {0, 0, 0}, {0, 0, 0}, {2, 3, 5}};
  EXPECT_EQ(line_solution_count(p, in, 1, 0), p);
  EXPECT_TRUE(is_bad_instance(p, in));
}

TEST(Level2, SmallRunAndGuard) {
  const auto r = run_level2_solution_counts(PrimeModulus(13), 300, 6);
  EXPECT_EQ(r.samples, 300U);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(to_csv(to_table(r)), to_csv(to_table(run_level2_solution_counts(PrimeModulus(13), 300, 6, 5))));
  EXPECT_THROW((void)run_level2_solution_counts(PrimeModulus(37), 10, 1), InputError);
}
