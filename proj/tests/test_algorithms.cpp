#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bbgroup/algorithms.hpp"

using namespace bbgroup;

namespace {

const EscrowToken kEscrow = EscrowToken::grant_for_reference_code();

GroupElement el(PrimeModulus m, u64 a, u64 b) { return {m, std::vector<u64>{a, b}}; }

bool reference_dh(const SuitableVector& n, const DHInstance& inst) {
  return is_dh_quadruple(kEscrow, n, inst.g, inst.h, inst.k, inst.fourth());
}

}  // namespace

TEST(DdhLevel1, Examples) {
  PrimeModulus m5(5);
  const SuitableVector n = SuitableVector::level1(m5(2));
  {
    IdentityOracle o(n);
    auto r = ddh_decide_level1(o, DHInstance(el(m5, 1, 0), el(m5, 0, 1), el(m5, 0, 1), el(m5, 4, 0)));
    EXPECT_TRUE(r.is_dh);
    EXPECT_EQ(r.precheck_queries, 1U);
    EXPECT_LE(r.queries, 2U);
  }
  {
    IdentityOracle o(n);
    auto r = ddh_decide_level1(o, DHInstance(el(m5, 1, 0), el(m5, 0, 1), el(m5, 0, 1), el(m5, 3, 0)));
    EXPECT_FALSE(r.is_dh);
  }
  {
    IdentityOracle o(n);
    const GroupElement g = el(m5, 1, 0);
    auto r = ddh_decide_level1(o, DHInstance(g, g, g, g));
    EXPECT_TRUE(r.is_dh);
    EXPECT_EQ(r.queries, 0U);
  }
}

TEST(DdhLevel1, RejectsNonGenerator) {
  PrimeModulus m7(7);
  IdentityOracle o(SuitableVector::level1(m7(3)));
  const GroupElement g = el(m7, 4, 1);  // 4 + 3 = 0
  EXPECT_THROW((void)ddh_decide_level1(o, DHInstance(g, g, g, g)), NotGenerator);
  EXPECT_THROW((void)ddh_decide_level1(o, DHInstance(el(m7, 1, 0), g, g)), InputError);
}

TEST(DdhLevel1, ExhaustiveSmallPrimes) {
  for (u64 p : {3ULL, 5ULL}) {
    PrimeModulus m(p);
    const GroupElement g = el(m, 1, 0);
    for (u64 s = 0; s < p; ++s) {
      const SuitableVector n(m, {s});
      for (u64 i = 0; i < p * p * p * p * p * p; ++i) {
        u64 r = i;
        auto next = [&] {
          const u64 v = r % p;
          r /= p;
          return v;
        };
        const u64 h0 = next(), h1 = next(), k0 = next(), k1 = next(), l0 = next(), l1 = next();
        const DHInstance inst(g, el(m, h0, h1), el(m, k0, k1), el(m, l0, l1));
        IdentityOracle o(n);
        const DdhResult res = ddh_decide_level1(o, inst);
        ASSERT_EQ(res.is_dh, reference_dh(n, inst));
        ASSERT_LE(res.queries, 2U);
      }
    }
  }
}

TEST(DdhLevel1, RandomInstancesUpTo2To31) {
  std::mt19937_64 rng(2024);
  const std::vector<u64> primes{101, 65537, 998244353, 2147483647};
  for (int i = 0; i < 100000; ++i) {
    PrimeModulus m(primes[static_cast<std::size_t>(i) % primes.size()]);
    std::uniform_int_distribution<u64> d(0, m.value() - 1);
    const SuitableVector n(m, {d(rng)});
    const Residue phig = m.from_unsigned(d(rng) % (m.value() - 1) + 1);
    // Half the instances are DH-quadruples by construction.
    const GroupElement g = el(m, phig.value(), 0);
    const GroupElement h = el(m, d(rng), d(rng));
    const GroupElement k = el(m, d(rng), d(rng));
    GroupElement l = el(m, d(rng), d(rng));
    if (i % 2 == 0) {
      const Residue target = n.dot(h) * n.dot(k) * phig.inv();
      l = GroupElement(m, std::vector<u64>{(target - n[1] * l[1]).value(), l[1].value()});
    }
    const DHInstance inst(g, h, k, l);
    IdentityOracle o(n);
    const DdhResult res = ddh_decide_level1(o, inst);
    ASSERT_EQ(res.is_dh, reference_dh(n, inst)) << i;
    ASSERT_LE(res.queries, 2U);
  }
}

TEST(SecretFromDlog, Examples) {
  PrimeModulus m7(7), m11(11);
  for (u64 s : {3ULL, 0ULL}) {
    const SuitableVector n = SuitableVector::level1(m7.from_unsigned(s));
    DlogOracle d = honest_dlog_oracle(kEscrow, n);
    EXPECT_EQ(secret_from_dlog(d, m7, EscrowCheck{kEscrow, n}).value(), s);
    EXPECT_EQ(d.calls(), 1U);
  }
  for (u64 s = 0; s < 11; ++s) {
    DlogOracle d = honest_dlog_oracle(kEscrow, SuitableVector(m11, {s}));
    EXPECT_EQ(secret_from_dlog(d, m11).value(), s);
    EXPECT_EQ(d.calls(), 1U);
  }
}

TEST(SecretFromDlog, EscrowCheckCatchesLies) {
  PrimeModulus m7(7);
  const SuitableVector n(m7, {3});
  DlogOracle liar([](const GroupElement&, const GroupElement&) { return u64{5}; });
  EXPECT_THROW((void)secret_from_dlog(liar, m7, EscrowCheck{kEscrow, n}), DishonestOracle);
}

TEST(SecretFromDlogRandom, DegenerateDrawIsAbsent) {
  PrimeModulus m11(11);
  DlogOracle d = honest_dlog_oracle(kEscrow, SuitableVector(m11, {4}));
  const GroupElement g = el(m11, 3, 5);
  EXPECT_FALSE(secret_from_dlog_on(d, g, m11(2) * g).has_value());
  // h - d g lies in the kernel, so any non-degenerate draw recovers s.
  auto s = secret_from_dlog_on(d, g, el(m11, 1, 0));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->value(), 4U);
}

TEST(SecretFromDlogRandom, SeededDraw) {
  PrimeModulus m11(11);
  const SuitableVector n(m11, {4});
  std::mt19937_64 rng(11);
  IdentityOracle o(n);
  DlogOracle d = honest_dlog_oracle(kEscrow, n);
  auto r = secret_from_dlog_random(d, o, rng);
  ASSERT_TRUE(r.s);
  EXPECT_EQ(r.s->value(), 4U);
  EXPECT_EQ(r.precheck_queries, r.generator_resamples + 1);
  EXPECT_EQ(r.id_queries, 0U);
}

TEST(SecretFromDlogRandom, NeverWrongWhenPresent) {
  PrimeModulus m13(13);
  std::mt19937_64 rng(3);
  for (u64 s = 0; s < 13; ++s) {
    const SuitableVector n(m13, {s});
    DlogOracle d = honest_dlog_oracle(kEscrow, n);
    for (int i = 0; i < 200; ++i) {
      IdentityOracle o(n);
      auto r = secret_from_dlog_random(d, o, rng);
      if (r.s) {
        EXPECT_EQ(r.s->value(), s);
      }
    }
  }
}

TEST(SecretFromCdh, Examples) {
  PrimeModulus m7(7);
  {
    // phi(l) = 3 * 4 = 5; polynomial 5 - x - x^2 has the double root 3.
    const SuitableVector n(m7, {3});
    IdentityOracle o(n);
    CdhOracle c = honest_cdh_oracle(kEscrow, n);
    const SecretResult r = secret_from_cdh(c, o);
    EXPECT_EQ(r.s.value(), 3U);
    EXPECT_EQ(r.oracle_calls, 1U);
    EXPECT_EQ(r.id_queries, 1U);
    EXPECT_FALSE(r.anomaly);
  }
  {
    // l = (0,0): x^2 + x = 0 has roots {0, 6}; Id selects 0.
    const SuitableVector n(m7, {0});
    IdentityOracle o(n);
    CdhOracle c = honest_cdh_oracle(kEscrow, n);
    const SecretResult r = secret_from_cdh(c, o);
    EXPECT_EQ(r.s.value(), 0U);
    EXPECT_EQ(r.id_queries, 2U);
  }
}

TEST(SecretFromCdh, PolynomialSignFollowsProductForm) {
  // p_g p_l - p_h p_k for g = (1,0), h = (0,1), k = (1,1) is -x^2 + (l1 - 1) x + l0.
  PrimeModulus m13(13);
  for (u64 l0 = 0; l0 < 13; ++l0)
    for (u64 l1 = 0; l1 < 13; ++l1) {
      const QuadraticPoly q = dh_polynomial_level1(el(m13, 1, 0), el(m13, 0, 1), el(m13, 1, 1), el(m13, l0, l1));
      EXPECT_EQ(q.a2, m13(-1));
      EXPECT_EQ(q.a1, m13.from_unsigned(l1) - m13(1));
      EXPECT_EQ(q.a0, m13.from_unsigned(l0));
    }
}

TEST(SecretFromCdh, AllSecretsSmallPrimes) {
  for (u64 p = 3; p <= 61; ++p) {
    if (!detail::is_prime_u64(p)) continue;
    PrimeModulus m(p);
    const Residue z = find_nonresidue(m);
    for (u64 s = 0; s < p; ++s) {
      const SuitableVector n(m, {s});
      IdentityOracle o(n);
      CdhOracle c = honest_cdh_oracle(kEscrow, n, s + 17);  // random representative
      const SecretResult r = secret_from_cdh(c, o, z);
      ASSERT_EQ(r.s.value(), s);
      ASSERT_EQ(c.calls(), 1U);
      ASSERT_LE(o.queries(), 2U);
      ASSERT_FALSE(r.anomaly);
    }
  }
}

TEST(SecretFromCdh, DishonestOracleIsReported) {
  PrimeModulus m7(7);
  const SuitableVector n(m7, {3});
  IdentityOracle o(n);
  // l = (0,0) gives roots {0, 6}; neither is the secret 3.
  CdhOracle liar([m7](const GroupElement&, const GroupElement&, const GroupElement&) { return el(m7, 0, 0); });
  EXPECT_THROW((void)secret_from_cdh(liar, o), DishonestOracle);
}

TEST(SecretFromCdhRandom, RecoversOrAbstains) {
  PrimeModulus m13(13);
  std::mt19937_64 rng(5);
  u64 present = 0, total = 0;
  for (u64 s = 0; s < 13; ++s) {
    const SuitableVector n(m13, {s});
    for (int i = 0; i < 100; ++i) {
      IdentityOracle o(n);
      CdhOracle c = honest_cdh_oracle(kEscrow, n, rng());
      auto r = secret_from_cdh_random(c, o, rng);
      ++total;
      if (!r.s) continue;
      ++present;
      EXPECT_EQ(r.s->value(), s);
      EXPECT_LE(r.id_queries, 2U);
    }
  }
  EXPECT_GT(present, total / 2);
}

TEST(BruteForce, SequentialWorstAndBestCase) {
  PrimeModulus m11(11);
  {
    IdentityOracle o(SuitableVector(m11, {0}));
    auto r = brute_force_secret(o);
    EXPECT_EQ(r.s.value(), 0U);
    EXPECT_EQ(r.queries, 1U);
  }
  {
    IdentityOracle o(SuitableVector(m11, {10}));
    auto r = brute_force_secret(o);
    EXPECT_EQ(r.s.value(), 10U);
    EXPECT_EQ(r.queries, 11U);
  }
  IdentityOracle o(SuitableVector(m11, {1}));
  EXPECT_THROW((void)brute_force_secret(o, SearchOrder::random_permutation), InputError);
}

TEST(BruteForce, RandomOrderMeanAtP101) {
  PrimeModulus m(101);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<u64> d(0, 100);
  const int trials = 10000;
  double sum = 0;
  for (int i = 0; i < trials; ++i) {
    const u64 s = d(rng);
    IdentityOracle o(SuitableVector(m, {s}));
    auto r = brute_force_secret(o, SearchOrder::random_permutation, &rng);
    ASSERT_EQ(r.s.value(), s);
    ASSERT_LE(r.queries, 101U);
    sum += static_cast<double>(r.queries);
  }
  // Uniform hitting time on {1..p}: mean (p+1)/2, variance (p^2-1)/12.
  const double sigma = std::sqrt((101.0 * 101.0 - 1) / 12.0 / trials);
  EXPECT_NEAR(sum / trials, 51.0, 3 * sigma);
}

TEST(BruteForce, CountsAreReproducible) {
  PrimeModulus m(53);
  for (u64 seed : {1ULL, 2ULL, 3ULL}) {
    std::mt19937_64 a(seed), b(seed);
    IdentityOracle oa(SuitableVector(m, {17})), ob(SuitableVector(m, {17}));
    EXPECT_EQ(brute_force_secret(oa, SearchOrder::random_permutation, &a).queries,
              brute_force_secret(ob, SearchOrder::random_permutation, &b).queries);
  }
}

TEST(GivenSecret, DlogAndCdh) {
  PrimeModulus m7(7);
  EXPECT_EQ(dlog_given_secret(m7(3), el(m7, 1, 0), el(m7, 0, 1)).value(), 3U);
  const GroupElement g = el(m7, 2, 5);
  EXPECT_EQ(dlog_given_secret(m7(3), g, g).value(), 1U);
  EXPECT_THROW((void)dlog_given_secret(m7(3), el(m7, 4, 1), g), NotGenerator);

  // s = 0: phi(g)=1, phi(h)=2, phi(k)=3 -> phi(l) = 6.
  const GroupElement l = cdh_given_secret(m7(0), DHInstance(el(m7, 1, 0), el(m7, 2, 0), el(m7, 3, 0)));
  EXPECT_EQ(l, el(m7, 6, 0));
  // h in the identity class (phi(h) = 0 for s = 3) forces l there too.
  EXPECT_TRUE(SuitableVector::level1(m7(3)).dot(cdh_given_secret(m7(3), DHInstance(g, el(m7, 4, 1), g))).is_zero());
}

TEST(GivenSecret, RandomInstancesP13) {
  PrimeModulus m13(13);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<u64> d(0, 12);
  for (int i = 0; i < 500; ++i) {
    const SuitableVector n(m13, {d(rng)});
    const GroupElement h = el(m13, d(rng), d(rng)), k = el(m13, d(rng), d(rng));
    GroupElement g = el(m13, d(rng), d(rng));
    while (n.dot(g).is_zero()) g = el(m13, d(rng), d(rng));
    IdentityOracle o(n);
    const Residue dl = dlog_given_secret(n[1], g, h);
    EXPECT_TRUE(equal_in_group(o, dl * g, h));
    const GroupElement l = cdh_given_secret(n[1], DHInstance(g, h, k));
    EXPECT_TRUE(ddh_decide_level1(o, DHInstance(g, h, k, l)).is_dh);
  }
}

TEST(Exhaustive, DlogAndCdhAtLevel2) {
  PrimeModulus m7(7);
  const SuitableVector n(m7, {2, 5});
  IdentityOracle o(n);
  const GroupElement g(m7, {1, 1, 1});  // phi = 1 + 2 + 5 = 1
  const GroupElement h(m7, {3, 0, 0});
  const DlogResult r = dlog_exhaustive(o, g, h);
  EXPECT_EQ(r.d.value(), 3U);
  EXPECT_EQ(r.queries, 4U);
  const GroupElement l = cdh_exhaustive(o, DHInstance(g, h, GroupElement(m7, {0, 1, 0})));
  EXPECT_EQ(phi(kEscrow, n, l).value(), 6U);
}

TEST(Lift, ElementsAndProjection) {
  PrimeModulus m7(7);
  EXPECT_EQ(lift_element(el(m7, 1, 0)), GroupElement(m7, {1, 0, 0}));
  const GroupElement l(m7, {3, 6});
  EXPECT_EQ(project_cdh_answer(lift_element(l)), l);
  EXPECT_THROW((void)project_cdh_answer(l), DimensionMismatch);
  EXPECT_EQ(SuitableVector(m7, {3}).lifted(), SuitableVector(m7, {3, 0}));
}

TEST(Lift, DdhPreservedForAllSecretsP5) {
  PrimeModulus m5(5);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<u64> d(0, 4);
  for (u64 s = 0; s < 5; ++s) {
    const SuitableVector n(m5, {s});
    for (int i = 0; i < 300; ++i) {
      GroupElement g = el(m5, d(rng), d(rng));
      if (n.dot(g).is_zero()) continue;
      const DHInstance inst(g, el(m5, d(rng), d(rng)), el(m5, d(rng), d(rng)), el(m5, d(rng), d(rng)));
      const DHInstance up = lift_instance(inst);
      IdentityOracle base(n);
      LiftedOracle<IdentityOracle> simulated(base);
      IdentityOracle lifted(n.lifted());
      const bool expect = reference_dh(n, inst);
      EXPECT_EQ(is_dh_quadruple(kEscrow, n.lifted(), up.g, up.h, up.k, up.fourth()), expect);
      EXPECT_EQ(ddh_decide_exhaustive(simulated, up).is_dh, expect);
      EXPECT_EQ(ddh_decide_exhaustive(lifted, up).is_dh, expect);
      EXPECT_EQ(ddh_decide_level1(base, inst).is_dh, expect);
    }
  }
}

TEST(Embed, ValidatesParameters) {
  PrimeModulus m11(11);
  EXPECT_THROW((void)embed_generic_group(22, m11, {2, 8, 16, 2}), InputError);
  EXPECT_THROW((void)embed_generic_group(29, m11, {2, 8, 16, 2}), InputError);
  EXPECT_THROW((void)embed_generic_group(23, m11, {5, 8, 16, 2}), InputError);  // 5 has order 22
  EXPECT_THROW((void)embed_generic_group(23, m11, {1, 8, 16, 2}), InputError);
}

TEST(Embed, FixtureIsDhQuadruple) {
  // g1 = 2 has order 11 mod 23; exponents 3, 4, 12 = 1 (mod 11), 3 * 4 = 1.
  PrimeModulus m11(11);
  auto o = embed_generic_group(23, m11, {2, 8, 16, 2});
  EXPECT_TRUE(ddh_decide_exhaustive(o, o.unit_instance()).is_dh);
  EXPECT_GT(o.multiplications(), 0U);
  auto trivial = embed_generic_group(23, m11, {2, 1, 1, 1});
  EXPECT_TRUE(ddh_decide_exhaustive(trivial, trivial.unit_instance()).is_dh);
}

TEST(Embed, MultiplicationsAreLogarithmic) {
  PrimeModulus m11(11);
  auto o = embed_generic_group(23, m11, {2, 8, 16, 2});
  (void)o.query(GroupElement(m11, {10, 10, 10, 10}));
  // four powers of a 4-bit exponent plus three products
  EXPECT_LE(o.multiplications(), 4U * 2U * 4U + 4U);
}

TEST(Embed, AllExponentTriplesAgainstBruteForceDlog) {
  PrimeModulus m11(11);
  const u64 q = 23, g1 = 2;
  std::vector<u64> power(11);
  power[0] = 1;
  for (u64 e = 1; e < 11; ++e) power[e] = power[e - 1] * g1 % q;
  auto dlog = [&](u64 y) {
    for (u64 e = 0; e < 11; ++e)
      if (power[e] == y) return e;
    ADD_FAILURE() << y << " not in the subgroup";
    return u64{0};
  };
  u64 yes = 0;
  for (u64 a = 0; a < 11; ++a)
    for (u64 b = 0; b < 11; ++b)
      for (u64 c = 0; c < 11; ++c) {
        auto o = embed_generic_group(q, m11, {g1, power[a], power[b], power[c]});
        const bool expect = dlog(power[a]) * dlog(power[b]) % 11 == dlog(power[c]);
        ASSERT_EQ(ddh_decide_exhaustive(o, o.unit_instance()).is_dh, expect) << a << ' ' << b << ' ' << c;
        yes += expect;
      }
  EXPECT_EQ(yes, 121U);
}
