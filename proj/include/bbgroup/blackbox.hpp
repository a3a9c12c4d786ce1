#pragma once

/**
 * @file blackbox.hpp
 * @brief Identity black-box groups G_{p,t} = Z_p^{t+1} / H_n.
 *
 * Group operations are plain coordinate arithmetic in the ambient group.
 * Everything that depends on the hidden normal vector n goes through an
 * identity oracle, which counts every evaluation. The only other route to n
 * is an EscrowToken, which reference and test code must request by name;
 * algorithm code never holds one, so the query counts it reports are honest.
 */

#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "bbgroup/errors.hpp"
#include "bbgroup/modmath.hpp"

namespace bbgroup {

/// An element of the ambient group Z_p^{t+1}; level() == t.
class GroupElement {
 public:
  GroupElement(PrimeModulus m, std::vector<u64> coords) : m_(m), coords_(std::move(coords)) {
    if (coords_.size() < 2) throw DimensionMismatch("group elements need at least two coordinates");
    for (auto& c : coords_) c %= m_.value();
  }
  GroupElement(PrimeModulus m, std::initializer_list<std::int64_t> coords) : m_(m) {
    if (coords.size() < 2) throw DimensionMismatch("group elements need at least two coordinates");
    coords_.reserve(coords.size());
    for (auto c : coords) coords_.push_back(m(c).value());
  }

  static GroupElement zero(PrimeModulus m, std::size_t level) {
    return {m, std::vector<u64>(level + 1, 0)};
  }
  static GroupElement unit(PrimeModulus m, std::size_t level, std::size_t index) {
    std::vector<u64> c(level + 1, 0);
    c.at(index) = 1;
    return {m, std::move(c)};
  }

  [[nodiscard]] std::size_t level() const noexcept { return coords_.size() - 1; }
  [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
  [[nodiscard]] PrimeModulus modulus() const noexcept { return m_; }
  [[nodiscard]] std::span<const u64> coords() const noexcept { return coords_; }
  [[nodiscard]] Residue operator[](std::size_t i) const { return m_.from_unsigned(coords_.at(i)); }
  [[nodiscard]] bool is_zero_vector() const noexcept {
    for (u64 c : coords_)
      if (c != 0) return false;
    return true;
  }

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    check_compatible(a, b);
    const u64 p = a.m_.value();
    std::vector<u64> out(a.coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      u64 s = a.coords_[i] + b.coords_[i];
      out[i] = s >= p ? s - p : s;
    }
    return {a.m_, std::move(out)};
  }
  friend GroupElement operator-(const GroupElement& a) {
    const u64 p = a.m_.value();
    std::vector<u64> out(a.coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] == 0 ? 0 : p - a.coords_[i];
    return {a.m_, std::move(out)};
  }
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }

  /// Scalar multiple d*g, i.e. g added to itself d times.
  friend GroupElement operator*(Residue d, const GroupElement& g) {
    if (d.p() != g.m_.value()) throw ModulusMismatch();
    std::vector<u64> out(g.coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::mul_mod(d.value(), g.coords_[i], d.p());
    return {g.m_, std::move(out)};
  }

  /// Equality in the ambient group, not in the quotient.
  friend bool operator==(const GroupElement& a, const GroupElement& b) noexcept {
    return a.m_ == b.m_ && a.coords_ == b.coords_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
    os << '(';
    for (std::size_t i = 0; i < g.coords_.size(); ++i) os << (i ? "," : "") << g.coords_[i];
    return os << ')';
  }

 private:
  static void check_compatible(const GroupElement& a, const GroupElement& b) {
    if (!(a.m_ == b.m_)) throw ModulusMismatch();
    if (a.coords_.size() != b.coords_.size()) throw DimensionMismatch("group elements of different levels");
  }

  PrimeModulus m_;
  std::vector<u64> coords_;
};

inline GroupElement elem_add(const GroupElement& a, const GroupElement& b) { return a + b; }
inline GroupElement elem_neg(const GroupElement& a) { return -a; }

/// A normal vector normalised to (1, n_1, ..., n_t).
class SuitableVector {
 public:
  SuitableVector(PrimeModulus m, std::vector<u64> tail) : m_(m) {
    if (tail.empty()) throw DimensionMismatch("suitable vectors have level >= 1");
    coords_.reserve(tail.size() + 1);
    coords_.push_back(1);
    for (u64 c : tail) coords_.push_back(c % m.value());
  }
  static SuitableVector level1(Residue s) { return {s.modulus(), {s.value()}}; }

  [[nodiscard]] std::size_t level() const noexcept { return coords_.size() - 1; }
  [[nodiscard]] PrimeModulus modulus() const noexcept { return m_; }
  /// Full coordinate list, first entry always 1.
  [[nodiscard]] std::span<const u64> coords() const noexcept { return coords_; }
  [[nodiscard]] Residue operator[](std::size_t i) const { return m_.from_unsigned(coords_.at(i)); }

  /// h . n mod p.
  [[nodiscard]] Residue dot(const GroupElement& h) const {
    if (!(h.modulus() == m_)) throw ModulusMismatch();
    if (h.size() != coords_.size()) throw DimensionMismatch("element level differs from oracle level");
    const u64 p = m_.value();
    u64 acc = 0;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      acc += detail::mul_mod(h.coords()[i], coords_[i], p);
      if (acc >= p) acc -= p;
    }
    return m_.from_unsigned(acc);
  }

  /// n' = (n, 0), the hidden vector of the lifted group.
  [[nodiscard]] SuitableVector lifted() const {
    std::vector<u64> tail(coords_.begin() + 1, coords_.end());
    tail.push_back(0);
    return {m_, std::move(tail)};
  }

  friend bool operator==(const SuitableVector&, const SuitableVector&) = default;

 private:
  PrimeModulus m_;
  std::vector<u64> coords_;
};

/// p_h(x_1..x_t) = h_0 + sum h_i x_i, so that p_h(n_1..n_t) = h . n.
class LinearPoly {
 public:
  explicit LinearPoly(const GroupElement& h) : h_(h) {}

  [[nodiscard]] Residue operator()(std::span<const Residue> point) const {
    if (point.size() != h_.level()) throw DimensionMismatch("evaluation point has wrong arity");
    Residue acc = h_[0];
    for (std::size_t i = 0; i < point.size(); ++i) acc += h_[i + 1] * point[i];
    return acc;
  }
  [[nodiscard]] Residue constant() const { return h_[0]; }
  [[nodiscard]] Residue coefficient(std::size_t i) const { return h_[i + 1]; }

 private:
  GroupElement h_;
};

/// Capability for trusted reference code. A default-constructed token is
/// denied; only grant_for_reference_code() yields a usable one.
class EscrowToken {
 public:
  EscrowToken() = default;
  [[nodiscard]] static EscrowToken grant_for_reference_code() noexcept { return EscrowToken(true); }
  [[nodiscard]] bool granted() const noexcept { return granted_; }
  void require() const {
    if (!granted_) throw EscrowDenied();
  }

 private:
  explicit EscrowToken(bool g) noexcept : granted_(g) {}
  bool granted_ = false;
};

/// Id_n with a monotone query counter and an optional hard budget.
class IdentityOracle {
 public:
  explicit IdentityOracle(SuitableVector hidden, std::optional<u64> budget = std::nullopt)
      : hidden_(std::move(hidden)), budget_(budget) {}

  /// 1 iff h . n == 0 (mod p). Each call costs one query.
  bool query(const GroupElement& h) {
    if (budget_ && queries_ >= *budget_) throw BudgetExhausted(*budget_);
    bool in_kernel = hidden_.dot(h).is_zero();
    ++queries_;
    return in_kernel;
  }

  [[nodiscard]] u64 queries() const noexcept { return queries_; }
  [[nodiscard]] std::optional<u64> budget() const noexcept { return budget_; }
  [[nodiscard]] std::size_t level() const noexcept { return hidden_.level(); }
  [[nodiscard]] PrimeModulus modulus() const noexcept { return hidden_.modulus(); }

  [[nodiscard]] const SuitableVector& escrow_hidden(const EscrowToken& token) const {
    token.require();
    return hidden_;
  }

 private:
  SuitableVector hidden_;
  u64 queries_ = 0;
  std::optional<u64> budget_;
};

/// Anything that answers identity queries over Z_p^{t+1} and counts them.
template <class O>
concept IdentityOracleLike = requires(O& o, const O& co, const GroupElement& h) {
  { o.query(h) } -> std::convertible_to<bool>;
  { co.queries() } -> std::convertible_to<u64>;
  { co.level() } -> std::convertible_to<std::size_t>;
  { co.modulus() } -> std::convertible_to<PrimeModulus>;
};

template <IdentityOracleLike O>
bool id_query(O& o, const GroupElement& h) {
  return o.query(h);
}

/// a == b in the quotient group; exactly one query on a - b.
template <IdentityOracleLike O>
bool equal_in_group(O& o, const GroupElement& a, const GroupElement& b) {
  return o.query(a - b);
}

/// Delta_s over Z_p with its own counter.
class GroverOracle {
 public:
  explicit GroverOracle(Residue s) : s_(s) {}

  bool query(Residue x) {
    if (x.p() != s_.p()) throw ModulusMismatch();
    ++queries_;
    return x == s_;
  }
  [[nodiscard]] u64 queries() const noexcept { return queries_; }
  [[nodiscard]] PrimeModulus modulus() const noexcept { return s_.modulus(); }
  [[nodiscard]] Residue escrow_secret(const EscrowToken& token) const {
    token.require();
    return s_;
  }

 private:
  Residue s_;
  u64 queries_ = 0;
};

/// Delta_s(x) from Id_s with the single query (x, -1).
template <IdentityOracleLike O>
bool grover_from_id(O& o, Residue x) {
  if (o.level() != 1) throw InputError("Grover simulation needs a level-1 oracle");
  if (!(x.modulus() == o.modulus())) throw ModulusMismatch();
  return o.query(GroupElement(o.modulus(), std::vector<u64>{x.value(), o.modulus().value() - 1}));
}

/// Id_s(h) from Delta_s with at most one query:
/// 1 for h = (0,0), 0 for h_1 = 0 != h_0, otherwise Delta_s(-h_0 / h_1).
inline bool id_from_grover(GroverOracle& g, const GroupElement& h) {
  if (h.level() != 1) throw DimensionMismatch("Grover-backed identity oracle is level 1");
  if (!(h.modulus() == g.modulus())) throw ModulusMismatch();
  if (h[1].is_zero()) return h[0].is_zero();
  return g.query(-h[0] * h[1].inv());
}

/// Adapter presenting a Grover oracle as a level-1 identity oracle.
class GroverBackedIdentityOracle {
 public:
  explicit GroverBackedIdentityOracle(GroverOracle& g) : g_(&g) {}
  bool query(const GroupElement& h) { return id_from_grover(*g_, h); }
  [[nodiscard]] u64 queries() const noexcept { return g_->queries(); }
  [[nodiscard]] std::size_t level() const noexcept { return 1; }
  [[nodiscard]] PrimeModulus modulus() const noexcept { return g_->modulus(); }

 private:
  GroverOracle* g_;
};

// ---------------------------------------------------------------------------
// Escrow-gated reference operations. Never counted as oracle queries.

/// phi(h) = h . n, the isomorphism G_{p,t} -> Z_p.
[[nodiscard]] inline Residue phi(const EscrowToken& token, const SuitableVector& n, const GroupElement& h) {
  token.require();
  return n.dot(h);
}

/// Canonical preimage (x, 0, ..., 0) of x under phi.
[[nodiscard]] inline GroupElement phi_section(Residue x, std::size_t level) {
  std::vector<u64> c(level + 1, 0);
  c[0] = x.value();
  return {x.modulus(), std::move(c)};
}

/// Transported field product hk = phi^{-1}(phi(h) phi(k)).
[[nodiscard]] inline GroupElement field_mul(const EscrowToken& token, const SuitableVector& n,
                                            const GroupElement& h, const GroupElement& k) {
  return phi_section(phi(token, n, h) * phi(token, n, k), n.level());
}

[[nodiscard]] inline GroupElement field_inv(const EscrowToken& token, const SuitableVector& n,
                                            const GroupElement& h) {
  return phi_section(phi(token, n, h).inv(), n.level());
}

/// Ground-truth DH-quadruple test: g generates and phi(g)phi(l) = phi(h)phi(k).
[[nodiscard]] inline bool is_dh_quadruple(const EscrowToken& token, const SuitableVector& n,
                                          const GroupElement& g, const GroupElement& h,
                                          const GroupElement& k, const GroupElement& l) {
  const Residue pg = phi(token, n, g);
  if (pg.is_zero()) throw NotGenerator();
  return pg * phi(token, n, l) == phi(token, n, h) * phi(token, n, k);
}

// ---------------------------------------------------------------------------
// Oracles given by an arbitrary (not yet normalised) normal vector.

class RawIdentityOracle;
struct NormalizedOracle;
NormalizedOracle normalize_oracle(RawIdentityOracle& raw);

class RawIdentityOracle {
 public:
  RawIdentityOracle(PrimeModulus m, std::vector<u64> normal) : m_(m), normal_(std::move(normal)) {
    if (normal_.size() < 2) throw DimensionMismatch("raw oracle needs at least two coordinates");
    for (auto& c : normal_) c %= m.value();
  }

  bool query(const GroupElement& h) {
    if (!(h.modulus() == m_)) throw ModulusMismatch();
    if (h.size() != normal_.size()) throw DimensionMismatch("element level differs from oracle level");
    u64 acc = 0;
    for (std::size_t i = 0; i < normal_.size(); ++i) {
      acc += detail::mul_mod(h.coords()[i], normal_[i], m_.value());
      if (acc >= m_.value()) acc -= m_.value();
    }
    ++queries_;
    return acc == 0;
  }

  [[nodiscard]] u64 queries() const noexcept { return queries_; }
  [[nodiscard]] std::size_t level() const noexcept { return normal_.size() - 1; }
  [[nodiscard]] PrimeModulus modulus() const noexcept { return m_; }

 private:
  friend NormalizedOracle normalize_oracle(RawIdentityOracle& raw);
  PrimeModulus m_;
  std::vector<u64> normal_;
  u64 queries_ = 0;
};

/// Result of normalisation. `swap_with_first` is the coordinate moved to
/// position 0 (a transposition, hence its own inverse); `oracle` answers
/// exactly like the raw oracle on the permuted coordinates.
struct NormalizedOracle {
  std::size_t swap_with_first;
  IdentityOracle oracle;
  u64 queries_used;

  /// Coordinates of the suitable frame -> coordinates of the raw frame.
  [[nodiscard]] GroupElement to_raw(const GroupElement& h) const {
    std::vector<u64> c(h.coords().begin(), h.coords().end());
    std::swap(c.at(0), c.at(swap_with_first));
    return {h.modulus(), std::move(c)};
  }
  [[nodiscard]] GroupElement from_raw(const GroupElement& h) const { return to_raw(h); }
};

/// Locates the first nonzero coordinate of the hidden normal with the unit
/// queries e_0, ..., e_{t-1} (at most t of them; coordinate t is inferred by
/// elimination) and swaps it to the front. Rescaling to a leading 1 changes
/// no oracle answer, so it costs nothing.
inline NormalizedOracle normalize_oracle(RawIdentityOracle& raw) {
  const std::size_t t = raw.level();
  const u64 before = raw.queries();
  std::size_t pivot = t;
  for (std::size_t i = 0; i < t; ++i) {
    if (!raw.query(GroupElement::unit(raw.m_, t, i))) {
      pivot = i;
      break;
    }
  }
  if (raw.normal_[pivot] == 0) throw InputError("malformed identity oracle: normal vector is zero");

  std::vector<u64> permuted = raw.normal_;
  std::swap(permuted[0], permuted[pivot]);
  const Residue scale = raw.m_.from_unsigned(permuted[0]).inv();
  std::vector<u64> tail;
  tail.reserve(t);
  for (std::size_t i = 1; i <= t; ++i) tail.push_back((raw.m_.from_unsigned(permuted[i]) * scale).value());
  return {pivot, IdentityOracle(SuitableVector(raw.m_, std::move(tail))), raw.queries() - before};
}

}  // namespace bbgroup
