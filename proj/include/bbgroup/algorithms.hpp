#pragma once

/**
 * @file algorithms.hpp
 * @brief Upper-bound algorithms and reductions in G_{p,t}.
 *
 * All routines take their identity oracle through IdentityOracleLike and never
 * see the hidden vector. Generator checks (one identity query on g) are
 * performed but reported apart from the algorithm's own query count.
 */

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "bbgroup/blackbox.hpp"
#include "bbgroup/errors.hpp"
#include "bbgroup/modmath.hpp"

namespace bbgroup {

/// (g, h, k) for CDH, (g, h, k, l) for DDH; all over one modulus and level.
struct DHInstance {
  GroupElement g;
  GroupElement h;
  GroupElement k;
  std::optional<GroupElement> l;

  DHInstance(GroupElement g_, GroupElement h_, GroupElement k_, std::optional<GroupElement> l_ = std::nullopt)
      : g(std::move(g_)), h(std::move(h_)), k(std::move(k_)), l(std::move(l_)) {
    auto check = [this](const GroupElement& e) {
      if (!(e.modulus() == g.modulus())) throw ModulusMismatch();
      if (e.size() != g.size()) throw DimensionMismatch("instance elements differ in level");
    };
    check(h);
    check(k);
    if (l) check(*l);
  }

  [[nodiscard]] std::size_t level() const noexcept { return g.level(); }
  [[nodiscard]] PrimeModulus modulus() const noexcept { return g.modulus(); }
  [[nodiscard]] const GroupElement& fourth() const {
    if (!l) throw InputError("DDH needs a fourth element");
    return *l;
  }
};

/// A DLOG(G_{p,t}) oracle: (g, h) -> d with d*g = h in the group.
class DlogOracle {
 public:
  using Fn = std::function<u64(const GroupElement&, const GroupElement&)>;
  explicit DlogOracle(Fn fn) : fn_(std::move(fn)) {}
  u64 operator()(const GroupElement& g, const GroupElement& h) {
    ++calls_;
    return fn_(g, h);
  }
  [[nodiscard]] u64 calls() const noexcept { return calls_; }

 private:
  Fn fn_;
  u64 calls_ = 0;
};

/// A CDH(G_{p,t}) oracle: (g, h, k) -> l completing a DH-quadruple.
class CdhOracle {
 public:
  using Fn = std::function<GroupElement(const GroupElement&, const GroupElement&, const GroupElement&)>;
  explicit CdhOracle(Fn fn) : fn_(std::move(fn)) {}
  GroupElement operator()(const GroupElement& g, const GroupElement& h, const GroupElement& k) {
    ++calls_;
    return fn_(g, h, k);
  }
  [[nodiscard]] u64 calls() const noexcept { return calls_; }

 private:
  Fn fn_;
  u64 calls_ = 0;
};

/// Honest DLOG oracle playing the role the reductions assume; built on phi.
inline DlogOracle honest_dlog_oracle(const EscrowToken& token, SuitableVector n) {
  token.require();
  return DlogOracle([token, n = std::move(n)](const GroupElement& g, const GroupElement& h) {
    const Residue pg = phi(token, n, g);
    if (pg.is_zero()) throw NotGenerator();
    return (phi(token, n, h) * pg.inv()).value();
  });
}

/// Honest CDH oracle. With a seed, a uniformly random element of the hidden
/// subgroup is added to the canonical answer, so the representative varies.
inline CdhOracle honest_cdh_oracle(const EscrowToken& token, SuitableVector n,
                                   std::optional<u64> representative_seed = std::nullopt) {
  token.require();
  auto rng = std::make_shared<std::mt19937_64>(representative_seed.value_or(0));
  const bool randomize = representative_seed.has_value();
  return CdhOracle([token, n = std::move(n), rng, randomize](const GroupElement& g, const GroupElement& h,
                                                               const GroupElement& k) {
    const Residue pg = phi(token, n, g);
    if (pg.is_zero()) throw NotGenerator();
    GroupElement l = phi_section(phi(token, n, h) * phi(token, n, k) * pg.inv(), n.level());
    if (!randomize) return l;
    const PrimeModulus m = n.modulus();
    std::uniform_int_distribution<u64> draw(0, m.value() - 1);
    std::vector<u64> kernel(n.level() + 1, 0);
    Residue head = m.zero();
    for (std::size_t i = 1; i <= n.level(); ++i) {
      kernel[i] = draw(*rng);
      head -= m.from_unsigned(kernel[i]) * n[i];
    }
    kernel[0] = head.value();
    return l + GroupElement(m, std::move(kernel));
  });
}

struct DdhResult {
  bool is_dh = false;
  u64 queries = 0;           // counted by the algorithm
  u64 precheck_queries = 0;  // generator validation
};

struct SecretResult {
  Residue s;
  u64 id_queries = 0;
  u64 oracle_calls = 0;
  bool anomaly = false;  // more than one candidate passed the identity test
};

/// Outcome of a reduction run on a random instance; s is absent when the
/// draw was degenerate.
struct RandomReductionResult {
  std::optional<Residue> s;
  u64 id_queries = 0;
  u64 precheck_queries = 0;
  u64 generator_resamples = 0;
};

struct BruteForceResult {
  Residue s;
  u64 queries = 0;
};

enum class SearchOrder { sequential, random_permutation };

/// Throws NotGenerator when g lies in the hidden subgroup. One query.
template <IdentityOracleLike O>
void require_generator(O& o, const GroupElement& g) {
  if (o.query(g)) throw NotGenerator();
}

/// p_g(x) p_l(x) - p_h(x) p_k(x) for level-1 elements.
[[nodiscard]] inline QuadraticPoly dh_polynomial_level1(const GroupElement& g, const GroupElement& h,
                                                        const GroupElement& k, const GroupElement& l) {
  for (const GroupElement* e : {&g, &h, &k, &l})
    if (e->level() != 1) throw DimensionMismatch("level-1 elements expected");
  return {g[1] * l[1] - h[1] * k[1], g[0] * l[1] + g[1] * l[0] - h[0] * k[1] - h[1] * k[0],
          g[0] * l[0] - h[0] * k[0]};
}

namespace detail {

// Identity-tests the finite candidates in ascending order. Returns the
// passing candidates; stops after the first pass unless `exhaustive`.
template <IdentityOracleLike O>
std::vector<Residue> probe_roots(O& o, const RootSet& roots, bool exhaustive) {
  std::vector<Residue> passing;
  for (Residue r : roots.roots()) {
    if (grover_from_id(o, r)) {
      passing.push_back(r);
      if (!exhaustive) break;
    }
  }
  return passing;
}

}  // namespace detail

/// DDH(G_{p,1}) in polynomial time: the instance is a DH-quadruple iff the
/// secret is a root of p_g p_l - p_h p_k. At most two counted queries.
template <IdentityOracleLike O>
DdhResult ddh_decide_level1(O& o, const DHInstance& inst, std::optional<Residue> nonresidue = std::nullopt) {
  if (o.level() != 1 || inst.level() != 1) throw InputError("ddh_decide_level1 needs level-1 oracle and instance");
  if (!(o.modulus() == inst.modulus())) throw ModulusMismatch();
  DdhResult out;
  const u64 start = o.queries();
  require_generator(o, inst.g);
  out.precheck_queries = o.queries() - start;

  const QuadraticPoly poly = dh_polynomial_level1(inst.g, inst.h, inst.k, inst.fourth());
  const u64 before = o.queries();
  if (poly.is_constant()) {
    out.is_dh = poly.a0.is_zero();
  } else {
    out.is_dh = !detail::probe_roots(o, solve_quadratic(poly, nonresidue), false).empty();
  }
  out.queries = o.queries() - before;
  return out;
}

/// Secret from one DLOG call on ((1,0), (0,1)): phi(g) = 1, phi(h) = s.
/// With an escrow check the answer is verified against the hidden vector.
struct EscrowCheck {
  EscrowToken token;
  SuitableVector n;
};

inline Residue secret_from_dlog(DlogOracle& d, PrimeModulus m, const std::optional<EscrowCheck>& verify = {}) {
  const GroupElement g(m, {1, 0});
  const GroupElement h(m, {0, 1});
  const Residue s = m.from_unsigned(d(g, h));
  if (verify && !(phi(verify->token, verify->n, s * g) == phi(verify->token, verify->n, h)))
    throw DishonestOracle("DLOG answer does not map g onto h");
  return s;
}

/// s = -(h_0 - d g_0) / (h_1 - d g_1) for a DLOG answer d on (g, h);
/// absent when h_1 = d g_1.
inline std::optional<Residue> secret_from_dlog_on(DlogOracle& d, const GroupElement& g, const GroupElement& h) {
  const PrimeModulus m = g.modulus();
  const Residue dl = m.from_unsigned(d(g, h));
  const Residue den = h[1] - dl * g[1];
  if (den.is_zero()) return std::nullopt;
  return -(h[0] - dl * g[0]) * den.inv();
}

namespace detail {

template <class Rng>
GroupElement random_element(PrimeModulus m, std::size_t level, Rng& rng) {
  std::uniform_int_distribution<u64> draw(0, m.value() - 1);
  std::vector<u64> c(level + 1);
  for (auto& x : c) x = draw(rng);
  return {m, std::move(c)};
}

// Draws g until the identity oracle confirms it is a generator.
template <IdentityOracleLike O, class Rng>
GroupElement random_generator(O& o, Rng& rng, RandomReductionResult& out) {
  for (;;) {
    GroupElement g = random_element(o.modulus(), o.level(), rng);
    ++out.precheck_queries;
    if (!o.query(g)) return g;
    ++out.generator_resamples;
  }
}

}  // namespace detail

using detail::random_element;

/// Random-instance variant of secret_from_dlog. The oracle is used only to
/// validate (and resample) the random generator.
template <IdentityOracleLike O, class Rng>
RandomReductionResult secret_from_dlog_random(DlogOracle& d, O& o, Rng& rng) {
  if (o.level() != 1) throw InputError("secret recovery works at level 1");
  RandomReductionResult out;
  const GroupElement g = detail::random_generator(o, rng, out);
  const GroupElement h = detail::random_element(o.modulus(), 1, rng);
  out.s = secret_from_dlog_on(d, g, h);
  return out;
}

namespace detail {

template <IdentityOracleLike O>
SecretResult secret_from_cdh_answer(O& o, const QuadraticPoly& poly, std::optional<Residue> nonresidue,
                                    u64 oracle_calls) {
  const u64 before = o.queries();
  const RootSet roots = solve_quadratic(poly, nonresidue);
  if (roots.is_all()) throw DishonestOracle("CDH answer makes the secret polynomial vanish");
  const std::vector<Residue> passing = probe_roots(o, roots, true);
  if (passing.empty()) throw DishonestOracle("no root of the CDH polynomial passes the identity test");
  return {passing.front(), o.queries() - before, oracle_calls, passing.size() > 1};
}

}  // namespace detail

/// Secret from one CDH call on g = (1,0), h = (0,1), k = (1,1) plus at most
/// two identity queries that pick the right root.
template <IdentityOracleLike O>
SecretResult secret_from_cdh(CdhOracle& c, O& o, std::optional<Residue> nonresidue = std::nullopt) {
  if (o.level() != 1) throw InputError("secret recovery works at level 1");
  const PrimeModulus m = o.modulus();
  const GroupElement g(m, {1, 0});
  const GroupElement h(m, {0, 1});
  const GroupElement k(m, {1, 1});
  const u64 calls_before = c.calls();
  const GroupElement l = c(g, h, k);
  return detail::secret_from_cdh_answer(o, dh_polynomial_level1(g, h, k, l), nonresidue, c.calls() - calls_before);
}

/// Random-instance variant: proceeds only when the secret polynomial has
/// degree two, i.e. h_1 k_1 != g_1 l_1.
template <IdentityOracleLike O, class Rng>
RandomReductionResult secret_from_cdh_random(CdhOracle& c, O& o, Rng& rng,
                                             std::optional<Residue> nonresidue = std::nullopt) {
  if (o.level() != 1) throw InputError("secret recovery works at level 1");
  RandomReductionResult out;
  const GroupElement g = detail::random_generator(o, rng, out);
  const GroupElement h = detail::random_element(o.modulus(), 1, rng);
  const GroupElement k = detail::random_element(o.modulus(), 1, rng);
  const GroupElement l = c(g, h, k);
  const QuadraticPoly poly = dh_polynomial_level1(g, h, k, l);
  if (poly.degree() != 2) return out;
  SecretResult r = detail::secret_from_cdh_answer(o, poly, nonresidue, 1);
  out.s = r.s;
  out.id_queries = r.id_queries;
  return out;
}

/// Exhaustive search for the secret through the Grover simulation. The final
/// candidate is tested rather than inferred, so the worst case is p queries.
template <IdentityOracleLike O, class Rng = std::mt19937_64>
BruteForceResult brute_force_secret(O& o, SearchOrder order = SearchOrder::sequential, Rng* rng = nullptr) {
  if (o.level() != 1) throw InputError("secret recovery works at level 1");
  const PrimeModulus m = o.modulus();
  const u64 before = o.queries();
  auto found = [&](u64 x) { return BruteForceResult{m.from_unsigned(x), o.queries() - before}; };
  if (order == SearchOrder::sequential) {
    for (u64 x = 0; x < m.value(); ++x)
      if (grover_from_id(o, m.from_unsigned(x))) return found(x);
  } else {
    if (rng == nullptr) throw InputError("random search order needs a random source");
    std::vector<u64> candidates(m.value());
    std::iota(candidates.begin(), candidates.end(), u64{0});
    std::shuffle(candidates.begin(), candidates.end(), *rng);
    for (u64 x : candidates)
      if (grover_from_id(o, m.from_unsigned(x))) return found(x);
  }
  throw InternalError("identity oracle rejected every candidate secret");
}

/// d with d*g = h once the secret is known: d = phi(h) / phi(g).
inline Residue dlog_given_secret(Residue s, const GroupElement& g, const GroupElement& h) {
  const SuitableVector n = SuitableVector::level1(s);
  const Residue pg = n.dot(g);
  if (pg.is_zero()) throw NotGenerator();
  return n.dot(h) * pg.inv();
}

/// Canonical l = (phi(h) phi(k) / phi(g), 0) once the secret is known.
inline GroupElement cdh_given_secret(Residue s, const DHInstance& inst) {
  const SuitableVector n = SuitableVector::level1(s);
  const Residue pg = n.dot(inst.g);
  if (pg.is_zero()) throw NotGenerator();
  return phi_section(n.dot(inst.h) * n.dot(inst.k) * pg.inv(), 1);
}

// ---------------------------------------------------------------------------
// Level-independent exhaustive solvers.

struct DlogResult {
  Residue d;
  u64 queries = 0;
};

/// DLOG at any level by testing d*g == h for d = 0, 1, ...; at most p queries.
/// g must already be known to be a generator.
template <IdentityOracleLike O>
DlogResult dlog_exhaustive(O& o, const GroupElement& g, const GroupElement& h) {
  const PrimeModulus m = o.modulus();
  const u64 before = o.queries();
  GroupElement multiple = GroupElement::zero(m, g.level());
  for (u64 d = 0; d < m.value(); ++d) {
    if (equal_in_group(o, multiple, h)) return {m.from_unsigned(d), o.queries() - before};
    multiple = multiple + g;
  }
  throw NotGenerator();
}

/// DDH at any level: two exhaustive discrete logs and one equality test.
template <IdentityOracleLike O>
DdhResult ddh_decide_exhaustive(O& o, const DHInstance& inst) {
  if (o.level() != inst.level()) throw DimensionMismatch("oracle and instance levels differ");
  DdhResult out;
  const u64 start = o.queries();
  require_generator(o, inst.g);
  out.precheck_queries = o.queries() - start;
  const u64 before = o.queries();
  const Residue a = dlog_exhaustive(o, inst.g, inst.h).d;
  const Residue b = dlog_exhaustive(o, inst.g, inst.k).d;
  out.is_dh = equal_in_group(o, (a * b) * inst.g, inst.fourth());
  out.queries = o.queries() - before;
  return out;
}

/// CDH at any level: l = a*k where a is the exhaustive discrete log of h.
template <IdentityOracleLike O>
GroupElement cdh_exhaustive(O& o, const DHInstance& inst) {
  require_generator(o, inst.g);
  return dlog_exhaustive(o, inst.g, inst.h).d * inst.k;
}

// ---------------------------------------------------------------------------
// Level lifting.

/// h -> (h, 0).
inline GroupElement lift_element(const GroupElement& h) {
  std::vector<u64> c(h.coords().begin(), h.coords().end());
  c.push_back(0);
  return {h.modulus(), std::move(c)};
}

inline DHInstance lift_instance(const DHInstance& inst) {
  std::optional<GroupElement> l;
  if (inst.l) l = lift_element(*inst.l);
  return {lift_element(inst.g), lift_element(inst.h), lift_element(inst.k), std::move(l)};
}

/// Drops the last coordinate of a level-(t+1) CDH answer.
inline GroupElement project_cdh_answer(const GroupElement& l_star) {
  if (l_star.level() < 2) throw DimensionMismatch("projection needs level >= 2");
  std::vector<u64> c(l_star.coords().begin(), l_star.coords().end() - 1);
  return {l_star.modulus(), std::move(c)};
}

/// Id_{n'} for n' = (n, 0), simulated by Id_n: h* . n' = (h*_0..h*_t) . n.
/// Queries are charged to the underlying oracle.
template <IdentityOracleLike Base>
class LiftedOracle {
 public:
  explicit LiftedOracle(Base& base) : base_(&base) {}

  bool query(const GroupElement& h_star) {
    if (h_star.level() != level()) throw DimensionMismatch("element level differs from lifted level");
    return base_->query(project_cdh_answer(h_star));
  }
  [[nodiscard]] u64 queries() const noexcept { return base_->queries(); }
  [[nodiscard]] std::size_t level() const noexcept { return base_->level() + 1; }
  [[nodiscard]] PrimeModulus modulus() const noexcept { return base_->modulus(); }

 private:
  Base* base_;
};

// ---------------------------------------------------------------------------
// Embedding of an order-p subgroup of (Z/qZ)^* as an identity black-box group.

/// Id'(x_1..x_4) = [g_1^{x_1} g_2^{x_2} g_3^{x_3} g_4^{x_4} == 1 (mod q)] over
/// the ambient group Z_p^4. Powers use square-and-multiply; every modular
/// multiplication in (Z/qZ)^* is counted.
class EmbeddedGroupOracle {
 public:
  EmbeddedGroupOracle(u64 q, PrimeModulus p, std::array<u64, 4> generators)
      : q_(q), p_(p), gens_(generators) {
    if (q < 3 || q >= kMaxModulus || !detail::is_prime_u64(q)) throw InputError("q must be a prime below 2^61");
    if ((q - 1) % p.value() != 0) throw InputError("p does not divide q - 1");
    for (auto& g : gens_) {
      g %= q_;
      if (g == 0 || detail::pow_mod(g, p.value(), q_) != 1)
        throw InputError("generator " + std::to_string(g) + " is not in the order-p subgroup mod q");
    }
    if (gens_[0] == 1) throw InputError("g_1 must generate the order-p subgroup");
  }

  bool query(const GroupElement& x) {
    if (!(x.modulus() == p_)) throw ModulusMismatch();
    if (x.size() != 4) throw DimensionMismatch("embedded group has ambient Z_p^4");
    u64 prod = 1;
    for (std::size_t i = 0; i < 4; ++i) prod = mul(prod, power(gens_[i], x.coords()[i]));
    ++queries_;
    return prod == 1;
  }

  [[nodiscard]] u64 queries() const noexcept { return queries_; }
  [[nodiscard]] u64 multiplications() const noexcept { return multiplications_; }
  [[nodiscard]] std::size_t level() const noexcept { return 3; }
  [[nodiscard]] PrimeModulus modulus() const noexcept { return p_; }
  [[nodiscard]] u64 q() const noexcept { return q_; }
  [[nodiscard]] const std::array<u64, 4>& generators() const noexcept { return gens_; }

  /// The DDH input (g_1, g_2, g_3, g_4) in the new coordinates: the unit vectors.
  [[nodiscard]] DHInstance unit_instance() const {
    return {GroupElement::unit(p_, 3, 0), GroupElement::unit(p_, 3, 1), GroupElement::unit(p_, 3, 2),
            GroupElement::unit(p_, 3, 3)};
  }

 private:
  u64 mul(u64 a, u64 b) {
    ++multiplications_;
    return detail::mul_mod(a, b, q_);
  }
  u64 power(u64 base, u64 exp) {
    u64 result = 1;
    while (exp > 0) {
      if (exp & 1U) result = mul(result, base);
      exp >>= 1U;
      if (exp > 0) base = mul(base, base);
    }
    return result;
  }

  u64 q_;
  PrimeModulus p_;
  std::array<u64, 4> gens_;
  u64 queries_ = 0;
  u64 multiplications_ = 0;
};

inline EmbeddedGroupOracle embed_generic_group(u64 q, PrimeModulus p, std::array<u64, 4> generators) {
  return {q, p, generators};
}

}  // namespace bbgroup
