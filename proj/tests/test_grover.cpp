#include <gtest/gtest.h>

#include <cmath>

#include "bbgroup/grover_sim.hpp"

using namespace bbgroup;
using namespace bbgroup::grover;

TEST(Grover, FourStatesOneIterationIsExact) {
  const GroverRun r = simulate(4, 2, 1, 0);
  EXPECT_NEAR(r.success_probability, 1.0, 1e-12);
  EXPECT_EQ(r.measured_outcome, 2U);
  EXPECT_EQ(r.oracle_queries, 1U);
}

TEST(Grover, ZeroIterationsIsUniform) {
  EXPECT_NEAR(simulate(101, 5, 0, 0).success_probability, 1.0 / 101, 1e-15);
}

TEST(Grover, ClosedFormAtP101) {
  // sin^2(15 asin(1/sqrt(101))), evaluated independently.
  EXPECT_NEAR(closed_form_success(101, 7), 0.9942704078077251, 1e-15);
  EXPECT_NEAR(simulate(101, 17, 7, 0).success_probability, 0.9942704078077251, 1e-9);
}

TEST(Grover, SimulatorMatchesClosedForm) {
  for (u64 p : {3ULL, 11ULL, 101ULL, 1009ULL})
    for (u64 k = 0; k <= iteration_bound(p); ++k)
      EXPECT_NEAR(simulate(p, p / 2, k, 1).success_probability, closed_form_success(p, k), 1e-9) << p << ' ' << k;
}

TEST(Grover, SearchThroughIdentityOracle) {
  PrimeModulus m(101);
  const IdentityOracle o(SuitableVector(m, {42}));
  const EscrowToken escrow = EscrowToken::grant_for_reference_code();
  const GroverRun r = grover_search(o, escrow, std::nullopt, 9);
  EXPECT_EQ(r.s, 42U);
  EXPECT_EQ(r.iterations, 7U);
  EXPECT_EQ(r.oracle_queries, 7U);
  EXPECT_EQ(grover_search(o, escrow, std::nullopt, 9).measured_outcome, r.measured_outcome);
  EXPECT_THROW((void)grover_search(o, EscrowToken{}), EscrowDenied);
}

TEST(Grover, MeasurementIsSeedDeterministic) {
  for (u64 seed = 0; seed < 20; ++seed)
    EXPECT_EQ(simulate(31, 3, 1, seed).measured_outcome, simulate(31, 3, 1, seed).measured_outcome);
}

TEST(Grover, Guards) {
  EXPECT_THROW((void)simulate((u64{1} << 22) + 1, 0, 1, 0), InputError);
  EXPECT_THROW((void)simulate(10, 10, 1, 0), InputError);
}

TEST(GroverCurve, SmallestIterationCounts) {
  const std::vector<u64> ps{3, 11, 101, 1009};
  const auto curve = quantum_query_curve(ps);
  const std::vector<u64> k_min{1, 2, 5, 15};
  const std::vector<u64> k_bound{2, 3, 8, 25};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    EXPECT_EQ(curve[i].p, ps[i]);
    EXPECT_EQ(curve[i].k_min, k_min[i]);
    EXPECT_EQ(curve[i].k_bound, k_bound[i]);
    EXPECT_TRUE(curve[i].within_bound());
    EXPECT_GE(curve[i].success_at_k_min, 2.0 / 3.0);
  }
}

TEST(GroverCurve, SqrtFit) {
  const std::vector<u64> ps{11, 23, 47, 101, 211, 401, 809, 1601, 3209, 4099};
  const auto curve = quantum_query_curve(ps);
  std::vector<u64> kmin, kdef;
  for (const auto& c : curve) {
    kmin.push_back(c.k_min);
    kdef.push_back(c.k_default);
  }
  // Least-squares constants from a closed-form Python evaluation.
  EXPECT_NEAR(fit_sqrt_constant(ps, kmin), 0.4815100641783695, 1e-9);
  EXPECT_NEAR(fit_sqrt_constant(ps, kdef), 0.7748881458697906, 1e-9);
}
