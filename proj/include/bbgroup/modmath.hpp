#pragma once

/**
 * @file modmath.hpp
 * @brief Exact arithmetic in the prime field F_p.
 *
 * Moduli are odd primes below 2^61, so a product of two residues always fits
 * an unsigned 128-bit intermediate. Besides the ring operations this header
 * carries the quadratic-residue machinery (Euler criterion, Tonelli-Shanks)
 * and a root finder for polynomials of degree at most two.
 */

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include "bbgroup/errors.hpp"

namespace bbgroup {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace detail {

constexpr u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Deterministic Miller-Rabin; the first twelve prime bases are exact for
// every 64-bit input.
constexpr bool is_prime_u64(u64 n) noexcept {
  if (n < 2) return false;
  constexpr std::array<u64, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 b : bases) {
    if (n % b == 0) return n == b;
  }
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  for (u64 b : bases) {
    u64 x = pow_mod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

inline constexpr u64 kMaxModulus = u64{1} << 61U;

class Residue;

/// A verified odd prime p < 2^61.
class PrimeModulus {
 public:
  explicit PrimeModulus(u64 p) : p_(p) {
    if (p < 3 || p >= kMaxModulus) throw InputError("modulus must lie in [3, 2^61)");
    if (!detail::is_prime_u64(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  }

  [[nodiscard]] constexpr u64 value() const noexcept { return p_; }

  /// Canonical residue of a signed integer.
  [[nodiscard]] Residue operator()(std::int64_t x) const noexcept;
  [[nodiscard]] Residue from_unsigned(u64 x) const noexcept;
  [[nodiscard]] Residue zero() const noexcept;
  [[nodiscard]] Residue one() const noexcept;

  friend constexpr bool operator==(PrimeModulus, PrimeModulus) noexcept = default;

 private:
  friend class Residue;
  struct Trusted {};
  constexpr PrimeModulus(Trusted, u64 p) noexcept : p_(p) {}

  u64 p_;
};

/// An element of F_p held as its canonical representative in [0, p).
class Residue {
 public:
  Residue(u64 value, PrimeModulus m) noexcept : value_(value % m.value()), p_(m.value()) {}

  [[nodiscard]] constexpr u64 value() const noexcept { return value_; }
  [[nodiscard]] PrimeModulus modulus() const noexcept { return PrimeModulus(PrimeModulus::Trusted{}, p_); }
  [[nodiscard]] constexpr u64 p() const noexcept { return p_; }
  [[nodiscard]] constexpr bool is_zero() const noexcept { return value_ == 0; }

  friend Residue operator+(Residue a, Residue b) {
    check_same(a, b);
    u64 s = a.value_ + b.value_;
    if (s >= a.p_) s -= a.p_;
    return {s, a.p_, Unchecked{}};
  }
  friend Residue operator-(Residue a, Residue b) {
    check_same(a, b);
    return {a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.p_ - b.value_, a.p_, Unchecked{}};
  }
  friend Residue operator*(Residue a, Residue b) {
    check_same(a, b);
    return {detail::mul_mod(a.value_, b.value_, a.p_), a.p_, Unchecked{}};
  }
  Residue operator-() const noexcept { return {value_ == 0 ? 0 : p_ - value_, p_, Unchecked{}}; }

  Residue& operator+=(Residue o) { return *this = *this + o; }
  Residue& operator-=(Residue o) { return *this = *this - o; }
  Residue& operator*=(Residue o) { return *this = *this * o; }

  [[nodiscard]] Residue pow(u64 e) const noexcept { return {detail::pow_mod(value_, e, p_), p_, Unchecked{}}; }

  /// Multiplicative inverse via Fermat; throws InputError on zero.
  [[nodiscard]] Residue inv() const {
    if (value_ == 0) throw InputError("zero has no multiplicative inverse");
    return pow(p_ - 2);
  }

  friend bool operator==(Residue a, Residue b) noexcept = default;
  friend std::strong_ordering operator<=>(Residue a, Residue b) noexcept {
    if (auto c = a.p_ <=> b.p_; c != 0) return c;
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, Residue r) { return os << r.value_; }

 private:
  friend class PrimeModulus;
  struct Unchecked {};
  Residue(u64 value, u64 p, Unchecked) noexcept : value_(value), p_(p) {}

  static void check_same(Residue a, Residue b) {
    if (a.p_ != b.p_) throw ModulusMismatch();
  }

  u64 value_;
  u64 p_;
};

inline Residue PrimeModulus::operator()(std::int64_t x) const noexcept {
  auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return {static_cast<u64>(r), p_, Residue::Unchecked{}};
}
inline Residue PrimeModulus::from_unsigned(u64 x) const noexcept { return {x % p_, p_, Residue::Unchecked{}}; }
inline Residue PrimeModulus::zero() const noexcept { return {0, p_, Residue::Unchecked{}}; }
inline Residue PrimeModulus::one() const noexcept { return {1, p_, Residue::Unchecked{}}; }

/// Euler criterion: +1 for a nonzero square, -1 for a non-square, 0 for zero.
[[nodiscard]] inline int legendre(Residue a) noexcept {
  if (a.is_zero()) return 0;
  return a.pow((a.p() - 1) / 2).value() == 1 ? 1 : -1;
}

/// A quadratic non-residue mod p. Without a seed the candidates 2, 3, 4, ...
/// are scanned in order; with a seed they are drawn uniformly from [2, p).
[[nodiscard]] inline Residue find_nonresidue(PrimeModulus m, std::optional<u64> seed = std::nullopt) {
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::uniform_int_distribution<u64> draw(1, m.value() - 1);
    for (;;) {
      Residue r = m.from_unsigned(draw(rng));
      if (legendre(r) == -1) return r;
    }
  }
  for (u64 c = 2;; ++c) {
    Residue r = m.from_unsigned(c);
    if (legendre(r) == -1) return r;
  }
}

/// Both square roots {r, p - r} of a, ordered so that r <= p - r.
/// Absent when a is a non-square; {0, 0} for a = 0. A supplied non-residue
/// makes the computation fully deterministic and is validated.
[[nodiscard]] inline std::optional<std::pair<Residue, Residue>> sqrt_mod(
    Residue a, std::optional<Residue> nonresidue = std::nullopt) {
  const PrimeModulus m = a.modulus();
  const u64 p = m.value();
  if (nonresidue) {
    if (nonresidue->p() != p) throw ModulusMismatch();
    if (legendre(*nonresidue) != -1) throw InputError("supplied non-residue is a square mod p");
  }
  if (a.is_zero()) return std::pair{a, a};
  if (legendre(a) != 1) return std::nullopt;

  auto ordered = [&](Residue r) {
    Residue other = -r;
    return r.value() <= other.value() ? std::pair{r, other} : std::pair{other, r};
  };

  if (p % 4 == 3) return ordered(a.pow((p + 1) / 4));

  // Tonelli-Shanks: p - 1 = q * 2^e with q odd.
  u64 q = p - 1;
  unsigned e = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++e;
  }
  const Residue z = nonresidue ? *nonresidue : find_nonresidue(m);
  Residue c = z.pow(q);
  Residue x = a.pow((q + 1) / 2);
  Residue t = a.pow(q);
  unsigned order_bits = e;
  while (t != m.one()) {
    unsigned i = 0;
    Residue t2 = t;
    while (t2 != m.one()) {
      t2 *= t2;
      ++i;
    }
    Residue b = c;
    for (unsigned j = 0; j + i + 1 < order_bits; ++j) b *= b;
    x *= b;
    c = b * b;
    t *= c;
    order_bits = i;
  }
  return ordered(x);
}

/// a2*x^2 + a1*x + a0 over one prime field.
struct QuadraticPoly {
  Residue a2;
  Residue a1;
  Residue a0;

  QuadraticPoly(Residue a2_, Residue a1_, Residue a0_) : a2(a2_), a1(a1_), a0(a0_) {
    if (a2.p() != a1.p() || a1.p() != a0.p()) throw ModulusMismatch();
  }

  [[nodiscard]] Residue operator()(Residue x) const { return (a2 * x + a1) * x + a0; }
  [[nodiscard]] int degree() const noexcept {
    if (!a2.is_zero()) return 2;
    if (!a1.is_zero()) return 1;
    return a0.is_zero() ? -1 : 0;
  }
  [[nodiscard]] bool is_constant() const noexcept { return a2.is_zero() && a1.is_zero(); }
};

/// Zero set of a polynomial of degree <= 2: a sorted list of distinct roots,
/// or the whole field for the zero polynomial.
class RootSet {
 public:
  static RootSet all() { return RootSet(true, {}); }
  static RootSet of(std::vector<Residue> roots) {
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return RootSet(false, std::move(roots));
  }

  [[nodiscard]] bool is_all() const noexcept { return all_; }
  [[nodiscard]] const std::vector<Residue>& roots() const noexcept { return roots_; }
  [[nodiscard]] bool contains(Residue r) const {
    return all_ || std::find(roots_.begin(), roots_.end(), r) != roots_.end();
  }

  friend bool operator==(const RootSet&, const RootSet&) = default;

 private:
  RootSet(bool all, std::vector<Residue> roots) : all_(all), roots_(std::move(roots)) {}
  bool all_;
  std::vector<Residue> roots_;
};

[[nodiscard]] inline RootSet solve_quadratic(const QuadraticPoly& q,
                                             std::optional<Residue> nonresidue = std::nullopt) {
  if (q.is_constant()) return q.a0.is_zero() ? RootSet::all() : RootSet::of({});
  if (q.a2.is_zero()) return RootSet::of({-q.a0 * q.a1.inv()});

  const PrimeModulus m = q.a2.modulus();
  const Residue two = m(2);
  const Residue disc = q.a1 * q.a1 - m(4) * q.a2 * q.a0;
  auto roots = sqrt_mod(disc, nonresidue);
  if (!roots) return RootSet::of({});
  const Residue denom = (two * q.a2).inv();
  return RootSet::of({(roots->first - q.a1) * denom, (roots->second - q.a1) * denom});
}

}  // namespace bbgroup
