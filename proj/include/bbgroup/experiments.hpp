#pragma once

/**
 * @file experiments.hpp
 * @brief Seeded Monte Carlo experiments and their tabular output.
 *
 * Every trial draws from its own generator seeded with (seed, tag, p, trial),
 * so results do not depend on how trials are spread over threads. Aggregates
 * are sums folded in trial order.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "bbgroup/algorithms.hpp"
#include "bbgroup/blackbox.hpp"
#include "bbgroup/errors.hpp"
#include "bbgroup/modmath.hpp"
#include "json.hpp"

namespace bbgroup::experiments {

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::string, std::int64_t, u64, double, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw InternalError("table row width differs from header");
    rows.push_back(std::move(row));
  }
};

/// Decimal with 12 significant digits.
inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline double round12(double x) { return std::stod(format_number(x)); }

inline std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>) return format_number(v);
        else return std::to_string(v);
      },
      c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return round12(v);
        else return v;
      },
      c);
}

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
  return os.str();
}

/// JSON array with one object per row, keys in column order.
inline nlohmann::ordered_json to_json(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

// ---------------------------------------------------------------------------
// Seeding and parallel trials

/// Independent stream for one trial.
inline std::mt19937_64 trial_rng(u64 seed, u64 tag, u64 p, u64 trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(tag),  static_cast<std::uint32_t>(p),
                    static_cast<std::uint32_t>(p >> 32U), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32U)};
  return std::mt19937_64(seq);
}

/// fn(i) for i in [0, n) on up to `workers` threads; results in index order.
template <class T, class Fn>
std::vector<T> parallel_trials(u64 n, unsigned workers, Fn fn) {
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::max<u64>(1, std::min<u64>(workers, n)));
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (u64 i = n * w / workers; i < n * (w + 1) / workers; ++i) out[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

struct Interval {
  double lo;
  double hi;
};

/// Wilson score interval for k successes in n trials at z standard errors.
inline Interval wilson_interval(u64 k, u64 n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double ph = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double centre = (ph + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// ---------------------------------------------------------------------------
// Classical scaling of exhaustive search

enum : u64 { kTagScaling = 1, kTagReductions = 2, kTagLevel2 = 3, kTagSecret = 4, kTagLift = 5, kTagEmbed = 6 };

struct ScalingRow {
  u64 p = 0;
  u64 trials = 0;
  double mean_queries = 0.0;
  u64 max_queries = 0;
  double expected_mean = 0.0;
  double relative_error = 0.0;
  bool within_5pct = false;
};

inline constexpr u64 kScalingAssertTrials = 10000;

struct ScalingResult {
  std::vector<ScalingRow> rows;
  bool enforced = false;  // assertions only bind at >= 10^4 trials
  // Ratio of means vs ratio of p, consecutive rows.
  std::vector<double> linearity_deviation;
  bool linear = true;
  bool all_within = true;
};

/// Mean and max identity queries of random-order exhaustive search.
inline ScalingRow scaling_row(PrimeModulus m, u64 trials, u64 seed, unsigned workers = 0) {
  const u64 p = m.value();
  auto queries = parallel_trials<u64>(trials, workers, [&](u64 t) {
    auto rng = trial_rng(seed, kTagScaling, p, t);
    std::uniform_int_distribution<u64> draw(0, p - 1);
    IdentityOracle o(SuitableVector(m, {draw(rng)}));
    return brute_force_secret(o, SearchOrder::random_permutation, &rng).queries;
  });
  ScalingRow row;
  row.p = p;
  row.trials = trials;
  u64 sum = 0;
  for (u64 q : queries) {
    sum += q;
    row.max_queries = std::max(row.max_queries, q);
  }
  row.mean_queries = static_cast<double>(sum) / static_cast<double>(trials);
  row.expected_mean = static_cast<double>(p + 1) / 2.0;
  row.relative_error = std::abs(row.mean_queries - row.expected_mean) / row.expected_mean;
  row.within_5pct = row.relative_error <= 0.05;
  return row;
}

inline ScalingResult run_scaling(std::span<const u64> ps, u64 trials, u64 seed, unsigned workers = 0) {
  ScalingResult res;
  res.enforced = trials >= kScalingAssertTrials;
  for (u64 p : ps) {
    res.rows.push_back(scaling_row(PrimeModulus(p), trials, seed, workers));
    res.all_within = res.all_within && res.rows.back().within_5pct;
  }
  for (std::size_t i = 1; i < res.rows.size(); ++i) {
    const double mean_ratio = res.rows[i].mean_queries / res.rows[i - 1].mean_queries;
    const double p_ratio = static_cast<double>(res.rows[i].p) / static_cast<double>(res.rows[i - 1].p);
    const double dev = std::abs(mean_ratio / p_ratio - 1.0);
    res.linearity_deviation.push_back(dev);
    res.linear = res.linear && dev <= 0.10;
  }
  return res;
}

inline Table to_table(const ScalingResult& r) {
  Table t{{"p", "trials", "mean_queries", "max_queries", "expected_mean", "relative_error", "within_5pct",
           "linearity_deviation", "linear"},
          {}};
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    const double dev = i == 0 ? 0.0 : r.linearity_deviation[i - 1];
    t.add({row.p, row.trials, row.mean_queries, row.max_queries, row.expected_mean, row.relative_error,
           row.within_5pct, dev, i == 0 || dev <= 0.10});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Random-instance reductions

struct RateEstimate {
  u64 successes = 0;
  u64 trials = 0;
  double rate = 0.0;
  Interval wilson{0.0, 1.0};
  double bound = 0.0;
  bool consistent = false;  // bound <= upper Wilson edge
};

struct ReductionResult {
  u64 p = 0;
  RateEstimate dlog;
  RateEstimate cdh;
  u64 generator_resamples = 0;
};

inline RateEstimate make_rate(u64 k, u64 n, double bound, double z = 3.0) {
  RateEstimate r;
  r.successes = k;
  r.trials = n;
  r.rate = n ? static_cast<double>(k) / static_cast<double>(n) : 0.0;
  r.wilson = wilson_interval(k, n, z);
  r.bound = bound;
  r.consistent = bound <= r.wilson.hi;
  return r;
}

/// Success rates of the random-instance DLOG and CDH reductions against
/// honest simulated oracles; a success is a returned s equal to the secret.
inline ReductionResult run_reduction_success(PrimeModulus m, u64 trials, u64 seed, unsigned workers = 0) {
  const u64 p = m.value();
  struct Trial {
    bool dlog_ok = false;
    bool cdh_ok = false;
    u64 resamples = 0;
  };
  const EscrowToken escrow = EscrowToken::grant_for_reference_code();
  auto outcomes = parallel_trials<Trial>(trials, workers, [&](u64 t) {
    auto rng = trial_rng(seed, kTagReductions, p, t);
    std::uniform_int_distribution<u64> draw(0, p - 1);
    const Residue s = m.from_unsigned(draw(rng));
    const SuitableVector n = SuitableVector::level1(s);
    Trial out;
    {
      IdentityOracle o(n);
      DlogOracle d = honest_dlog_oracle(escrow, n);
      auto r = secret_from_dlog_random(d, o, rng);
      out.dlog_ok = r.s && *r.s == s;
      out.resamples += r.generator_resamples;
    }
    {
      IdentityOracle o(n);
      CdhOracle c = honest_cdh_oracle(escrow, n, rng());
      auto r = secret_from_cdh_random(c, o, rng);
      out.cdh_ok = r.s && *r.s == s;
      out.resamples += r.generator_resamples;
    }
    return out;
  });
  u64 dk = 0, ck = 0, resamples = 0;
  for (const auto& o : outcomes) {
    dk += o.dlog_ok;
    ck += o.cdh_ok;
    resamples += o.resamples;
  }
  const double pd = static_cast<double>(p);
  return {p, make_rate(dk, trials, (pd - 1) / pd), make_rate(ck, trials, (pd - 2) / pd), resamples};
}

inline Table to_table(const ReductionResult& r) {
  Table t{{"p", "reduction", "trials", "successes", "rate", "wilson_lo", "wilson_hi", "bound", "consistent"}, {}};
  for (auto [name, e] : {std::pair{"dlog_random", &r.dlog}, std::pair{"cdh_random", &r.cdh}})
    t.add({r.p, std::string(name), e->trials, e->successes, e->rate, e->wilson.lo, e->wilson.hi, e->bound,
           e->consistent});
  return t;
}

struct ExactRates {
  u64 dlog_draws = 0;
  u64 dlog_successes = 0;
  u64 cdh_draws = 0;
  u64 cdh_successes = 0;
};

/// Runs the random-instance reductions on every (s, g generator, h) and
/// every (s, g generator, h, k) draw, with the canonical honest CDH answer.
/// Small p only.
inline ExactRates exact_reduction_rates(PrimeModulus m) {
  const u64 p = m.value();
  if (p > 13) throw InputError("exact enumeration is limited to p <= 13");
  const EscrowToken escrow = EscrowToken::grant_for_reference_code();
  auto element = [&](u64 a, u64 b) { return GroupElement(m, std::vector<u64>{a, b}); };
  ExactRates out;
  for (u64 sv = 0; sv < p; ++sv) {
    const SuitableVector n(m, {sv});
    DlogOracle d = honest_dlog_oracle(escrow, n);
    CdhOracle c = honest_cdh_oracle(escrow, n);
    for (u64 g0 = 0; g0 < p; ++g0)
      for (u64 g1 = 0; g1 < p; ++g1) {
        const GroupElement g = element(g0, g1);
        if (n.dot(g).is_zero()) continue;
        for (u64 h0 = 0; h0 < p; ++h0)
          for (u64 h1 = 0; h1 < p; ++h1) {
            const GroupElement h = element(h0, h1);
            ++out.dlog_draws;
            auto r = secret_from_dlog_on(d, g, h);
            out.dlog_successes += r && r->value() == sv;
            for (u64 k0 = 0; k0 < p; ++k0)
              for (u64 k1 = 0; k1 < p; ++k1) {
                const GroupElement k = element(k0, k1);
                const QuadraticPoly poly = dh_polynomial_level1(g, h, k, c(g, h, k));
                ++out.cdh_draws;
                if (poly.degree() != 2) continue;
                IdentityOracle o(n);
                out.cdh_successes += detail::secret_from_cdh_answer(o, poly, std::nullopt, 1).s.value() == sv;
              }
          }
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Level-2 random-instance solution counts

struct Level2Instance {
  std::array<u64, 3> g, h, k, l;
};

/// (g.(1,x,y))(l.(1,x,y)) - (h.(1,x,y))(k.(1,x,y)) mod p.
inline u64 level2_form(u64 p, const Level2Instance& in, u64 x, u64 y) {
  auto lin = [&](const std::array<u64, 3>& v) {
    return (v[0] + detail::mul_mod(v[1], x, p) + detail::mul_mod(v[2], y, p)) % p;
  };
  const u64 a = detail::mul_mod(lin(in.g), lin(in.l), p);
  const u64 b = detail::mul_mod(lin(in.h), lin(in.k), p);
  return a >= b ? a - b : a + p - b;
}

/// Solutions of {form = 0, 1 + u1 x + u2 y = 0} by scanning all of Z_p^2.
inline u64 line_solution_count(u64 p, const Level2Instance& in, u64 u1, u64 u2) {
  u64 count = 0;
  for (u64 x = 0; x < p; ++x)
    for (u64 y = 0; y < p; ++y)
      if ((1 + detail::mul_mod(u1, x, p) + detail::mul_mod(u2, y, p)) % p == 0 && level2_form(p, in, x, y) == 0)
        ++count;
  return count;
}

/// Solution count of every line (u1, u2), indexed u1 * p + u2. Each zero of
/// the form found by a full scan of Z_p^2 is credited to the p lines through
/// it; (0,0) lies on none of them.
inline std::vector<u64> all_line_counts(u64 p, const Level2Instance& in) {
  std::vector<u64> counts(p * p, 0);
  for (u64 x = 0; x < p; ++x)
    for (u64 y = 0; y < p; ++y) {
      if ((x == 0 && y == 0) || level2_form(p, in, x, y) != 0) continue;
      if (y != 0) {
        const u64 y_inv = detail::pow_mod(y, p - 2, p);
        for (u64 u1 = 0; u1 < p; ++u1) {
          const u64 rhs = (p - 1 + p - detail::mul_mod(u1, x, p)) % p;  // -1 - u1 x
          ++counts[u1 * p + detail::mul_mod(rhs, y_inv, p)];
        }
      } else {
        const u64 u1 = detail::mul_mod(p - 1, detail::pow_mod(x, p - 2, p), p);
        for (u64 u2 = 0; u2 < p; ++u2) ++counts[u1 * p + u2];
      }
    }
  return counts;
}

inline bool is_bad_instance(u64 p, const Level2Instance& in) {
  const auto counts = all_line_counts(p, in);
  return std::any_of(counts.begin(), counts.end(), [](u64 c) { return c > 2; });
}

/// Coefficients (P0, P1, P2) of the form restricted to y = -beta x - alpha,
/// obtained by evaluating at x = 0, 1, -1 and interpolating.
inline std::array<u64, 3> line_restriction(u64 p, const Level2Instance& in, u64 alpha, u64 beta) {
  auto at = [&](u64 x) {
    const u64 y = (2 * p - detail::mul_mod(beta, x, p) - alpha % p) % p;
    return level2_form(p, in, x, y);
  };
  const u64 f0 = at(0), f1 = at(1), fm = at(p - 1);
  const u64 inv2 = (p + 1) / 2;
  const u64 p2 = detail::mul_mod((f1 + fm + 2 * (p - f0)) % p, inv2, p);
  const u64 p1 = detail::mul_mod((f1 + p - fm) % p, inv2, p);
  return {f0, p1, p2};
}

struct Level2Result {
  u64 p = 0;
  u64 samples = 0;
  u64 bad = 0;
  double fraction = 0.0;
  double bound = 0.0;
  double sigma = 0.0;
  bool pass = false;
  u64 generator_resamples = 0;
};

inline constexpr u64 kLevel2Guard = 31;

/// Uniform (g, h, k, l) over (Z_p^3)^4 with g resampled while it is zero.
template <class Rng>
Level2Instance random_level2_instance(u64 p, Rng& rng, u64& resamples) {
  std::uniform_int_distribution<u64> draw(0, p - 1);
  Level2Instance in{};
  for (;;) {
    for (auto& c : in.g) c = draw(rng);
    if (in.g[0] || in.g[1] || in.g[2]) break;
    ++resamples;
  }
  for (auto* v : {&in.h, &in.k, &in.l})
    for (auto& c : *v) c = draw(rng);
  return in;
}

/// Fraction of random instances with some line carrying more than two
/// solutions, against the 7/p bound. sigma is the standard error of a
/// Bernoulli(7/p) mean over the sample count.
inline Level2Result run_level2_solution_counts(PrimeModulus m, u64 samples, u64 seed, unsigned workers = 0,
                                               bool override_guard = false) {
  const u64 p = m.value();
  if (p > kLevel2Guard && !override_guard)
    throw InputError("level-2 solution counting is limited to p <= 31");
  struct Sample {
    bool bad = false;
    u64 resamples = 0;
  };
  auto out = parallel_trials<Sample>(samples, workers, [&](u64 t) {
    auto rng = trial_rng(seed, kTagLevel2, p, t);
    Sample s;
    const Level2Instance in = random_level2_instance(p, rng, s.resamples);
    s.bad = is_bad_instance(p, in);
    return s;
  });
  Level2Result r;
  r.p = p;
  r.samples = samples;
  for (const auto& s : out) {
    r.bad += s.bad;
    r.generator_resamples += s.resamples;
  }
  r.fraction = samples ? static_cast<double>(r.bad) / static_cast<double>(samples) : 0.0;
  r.bound = 7.0 / static_cast<double>(p);
  const double b = std::min(1.0, r.bound);
  r.sigma = samples ? std::sqrt(b * (1 - b) / static_cast<double>(samples)) : 0.0;
  r.pass = r.fraction <= r.bound + 3 * r.sigma;
  return r;
}

inline Table to_table(const Level2Result& r) {
  Table t{{"p", "samples", "bad", "fraction", "bound", "sigma", "pass", "generator_resamples"}, {}};
  t.add({r.p, r.samples, r.bad, r.fraction, r.bound, r.sigma, r.pass, r.generator_resamples});
  return t;
}

// ---------------------------------------------------------------------------
// Level lifting and the multiplicative-group embedding

struct LiftResult {
  u64 p = 0;
  u64 level = 0;
  u64 trials = 0;
  u64 dh_instances = 0;
  u64 preserved = 0;   // DDH answer equal before and after lifting, and to the reference
  u64 round_trip = 0;  // project(lift(x)) == x for every element
  [[nodiscard]] bool pass() const noexcept { return preserved == trials && round_trip == trials; }
};

/// Random level-t instances, every other one forced to be a DH-quadruple,
/// decided at level t and again after lifting with the oracle for (n, 0).
inline LiftResult run_lift_check(PrimeModulus m, std::size_t level, u64 trials, u64 seed, unsigned workers = 0) {
  if (level < 1) throw InputError("level must be at least 1");
  const u64 p = m.value();
  const EscrowToken escrow = EscrowToken::grant_for_reference_code();
  struct Trial {
    bool dh = false;
    bool preserved = false;
    bool round_trip = false;
  };
  auto results = parallel_trials<Trial>(trials, workers, [&](u64 i) {
    auto rng = trial_rng(seed, kTagLift, p, i);
    std::uniform_int_distribution<u64> draw(0, p - 1);
    std::vector<u64> tail(level);
    for (auto& x : tail) x = draw(rng);
    const SuitableVector n(m, tail);
    auto elem = [&] { return random_element(m, level, rng); };
    GroupElement g = elem();
    while (n.dot(g).is_zero()) g = elem();
    const GroupElement h = elem(), k = elem();
    GroupElement l = elem();
    if (i % 2 == 0) {
      const Residue target = phi(escrow, n, h) * phi(escrow, n, k) * phi(escrow, n, g).inv();
      l = l - phi_section(phi(escrow, n, l), level) + phi_section(target, level);
    }
    const DHInstance inst(g, h, k, l);
    const DHInstance up = lift_instance(inst);
    IdentityOracle base(n), lifted(n.lifted());
    const bool before = level == 1 ? ddh_decide_level1(base, inst).is_dh : ddh_decide_exhaustive(base, inst).is_dh;
    const bool after = ddh_decide_exhaustive(lifted, up).is_dh;
    Trial t;
    t.dh = before;
    t.preserved = before == after && before == is_dh_quadruple(escrow, n, g, h, k, l);
    t.round_trip = project_cdh_answer(up.g) == g && project_cdh_answer(up.h) == h &&
                   project_cdh_answer(up.k) == k && project_cdh_answer(up.fourth()) == l;
    return t;
  });
  LiftResult r{p, level, trials, 0, 0, 0};
  for (const auto& t : results) {
    r.dh_instances += t.dh;
    r.preserved += t.preserved;
    r.round_trip += t.round_trip;
  }
  return r;
}

inline Table to_table(const LiftResult& r) {
  Table t{{"p", "t", "trials", "dh_instances", "ddh_preserved", "round_trip", "pass"}, {}};
  t.add({r.p, r.level, r.trials, r.dh_instances, r.preserved, r.round_trip, r.pass()});
  return t;
}

struct EmbedOutcome {
  u64 a = 0, b = 0, c = 0;
  bool dh = false;
  bool direct = false;  // c == ab (mod p)
  u64 id_queries = 0;
  u64 multiplications = 0;
};

/// DDH of (g1, g1^a, g1^b, g1^c) decided inside the embedded identity
/// black-box group, with g1 = 4 generating the squares mod q = 2p + 1.
inline EmbedOutcome embed_decide(PrimeModulus m, u64 a, u64 b, u64 c) {
  const u64 p = m.value();
  const u64 q = 2 * p + 1;
  if (!detail::is_prime_u64(q)) throw InputError("q = 2p + 1 = " + std::to_string(q) + " is not prime");
  const u64 g1 = 4 % q;
  a %= p;
  b %= p;
  c %= p;
  auto o = embed_generic_group(
      q, m, {g1, detail::pow_mod(g1, a, q), detail::pow_mod(g1, b, q), detail::pow_mod(g1, c, q)});
  const DdhResult r = ddh_decide_exhaustive(o, o.unit_instance());
  return {a, b, c, r.is_dh, detail::mul_mod(a, b, p) == c, r.queries + r.precheck_queries, o.multiplications()};
}

struct EmbedSweep {
  u64 p = 0;
  u64 triples = 0;
  u64 dh_quadruples = 0;
  u64 agree = 0;
  u64 id_queries = 0;
  u64 multiplications = 0;
  [[nodiscard]] bool pass() const noexcept { return agree == triples; }
};

/// Every exponent triple (a, b, c) in Z_p^3.
inline EmbedSweep run_embedding_check(PrimeModulus m) {
  const u64 p = m.value();
  EmbedSweep s;
  s.p = p;
  for (u64 a = 0; a < p; ++a)
    for (u64 b = 0; b < p; ++b)
      for (u64 c = 0; c < p; ++c) {
        const EmbedOutcome e = embed_decide(m, a, b, c);
        ++s.triples;
        s.dh_quadruples += e.dh;
        s.agree += e.dh == e.direct;
        s.id_queries += e.id_queries;
        s.multiplications += e.multiplications;
      }
  return s;
}

inline Table to_table(const EmbedSweep& s) {
  Table t{{"p", "q", "triples", "dh_quadruples", "agree", "id_queries", "multiplications", "pass"}, {}};
  t.add({s.p, 2 * s.p + 1, s.triples, s.dh_quadruples, s.agree, s.id_queries, s.multiplications, s.pass()});
  return t;
}

}  // namespace bbgroup::experiments
