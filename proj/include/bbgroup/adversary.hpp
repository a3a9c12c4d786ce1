#pragma once

/**
 * @file adversary.hpp
 * @brief Exhaustive weighted-adversary quantities for DDH(G_{p,2}).
 *
 * The input instance is fixed to ((1,0,0), (0,1,0), (0,0,1), (0,1,1)). For a
 * hidden vector n = (1, n_1, n_2) it is a DH-quadruple iff
 * n_1 + n_2 = n_1 n_2; such n are "positive", all others "negative". The
 * adversary matrix Gamma is the all-ones bipartite matrix between the two
 * classes, and Gamma_h keeps the pairs that the query h separates.
 *
 * adversary_bounds() evaluates the two min-max expressions of the weighted
 * adversary method over every admissible (n, n', h). For a fixed h the row
 * sums of Gamma_h depend only on the polarity of n and on Id_n(h), so one
 * O(p^2) sweep per h suffices and no Gamma_h is ever materialised.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "bbgroup/errors.hpp"
#include "bbgroup/modmath.hpp"
#include "json.hpp"

namespace bbgroup::adversary {

enum class Polarity { positive, negative };

struct HiddenVectorClass {
  u64 n1;
  u64 n2;
  Polarity polarity;

  friend bool operator==(const HiddenVectorClass&, const HiddenVectorClass&) = default;
};

[[nodiscard]] constexpr bool is_positive(u64 n1, u64 n2, u64 p) noexcept {
  return (n1 + n2) % p == detail::mul_mod(n1, n2, p);
}

/// Id_n(h) for n = (1, n1, n2).
[[nodiscard]] constexpr bool id_bit(const std::array<u64, 3>& h, u64 n1, u64 n2, u64 p) noexcept {
  return (h[0] + detail::mul_mod(h[1], n1, p) + detail::mul_mod(h[2], n2, p)) % p == 0;
}

/// All p^2 hidden vectors in lexicographic order of (n1, n2).
[[nodiscard]] inline std::vector<HiddenVectorClass> classify(PrimeModulus m) {
  const u64 p = m.value();
  std::vector<HiddenVectorClass> out;
  out.reserve(p * p);
  for (u64 a = 0; a < p; ++a)
    for (u64 b = 0; b < p; ++b)
      out.push_back({a, b, is_positive(a, b, p) ? Polarity::positive : Polarity::negative});
  return out;
}

/// sigma(Gamma, n): the size of the opposite class.
[[nodiscard]] constexpr u64 sigma_gamma(u64 p, Polarity polarity) noexcept {
  return polarity == Polarity::positive ? p * p - p + 1 : p - 1;
}

/// sigma(Gamma_h, n) by direct enumeration of the opposite class.
[[nodiscard]] inline u64 sigma_gamma_h(PrimeModulus m, const HiddenVectorClass& n, const std::array<u64, 3>& h) {
  const u64 p = m.value();
  const bool own = id_bit(h, n.n1, n.n2, p);
  u64 count = 0;
  for (u64 a = 0; a < p; ++a)
    for (u64 b = 0; b < p; ++b) {
      const Polarity pol = is_positive(a, b, p) ? Polarity::positive : Polarity::negative;
      if (pol != n.polarity && id_bit(h, a, b, p) != own) ++count;
    }
  return count;
}

/// Gamma as a dense p^2 x p^2 0/1 matrix, rows and columns in classify() order.
[[nodiscard]] inline std::vector<std::uint8_t> materialize_gamma(PrimeModulus m) {
  const u64 p = m.value();
  if (p > 13) throw InputError("materialize_gamma is limited to p <= 13");
  const auto cls = classify(m);
  std::vector<std::uint8_t> out(cls.size() * cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = 0; j < cls.size(); ++j) out[i * cls.size() + j] = cls[i].polarity != cls[j].polarity;
  return out;
}

/// Non-negative fraction num/den with exact ordering.
struct Rational {
  u64 num = 0;
  u64 den = 1;

  static Rational make(u64 n, u64 d) {
    if (d == 0) throw InternalError("zero denominator");
    const u64 g = std::gcd(n, d);
    return {n / g, d / g};
  }
  [[nodiscard]] double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator<(const Rational& a, const Rational& b) noexcept {
    return static_cast<u128>(a.num) * b.den < static_cast<u128>(b.num) * a.den;
  }
  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return static_cast<u128>(a.num) * b.den == static_cast<u128>(b.num) * a.den;
  }
  [[nodiscard]] static Rational max(const Rational& a, const Rational& b) noexcept { return a < b ? b : a; }
};

/// A minimising admissible triple: n positive, n' negative, Id_n(h) != Id_n'(h).
struct Witness {
  std::array<u64, 2> n{};
  std::array<u64, 2> n_prime{};
  std::array<u64, 3> h{};
  u64 sigma_h_n = 0;
  u64 sigma_h_n_prime = 0;
};

struct AdversaryReport {
  u64 p = 0;
  u64 count_positive = 0;
  u64 count_negative = 0;
  u64 sigma_positive = 0;
  u64 sigma_negative = 0;
  Rational worst_ratio_randomized;
  Rational worst_ratio_quantum_squared;  // the quantum ratio is its square root
  Witness witness_randomized;
  Witness witness_quantum;
  u64 max_case1_count = 0;  // max sigma(Gamma_h, n') with Id_n'(h) = 0
  u64 max_case2_count = 0;  // max sigma(Gamma_h, n) with Id_n(h) = 0
  u64 admissible_queries = 0;

  [[nodiscard]] double worst_ratio_quantum() const noexcept { return std::sqrt(worst_ratio_quantum_squared.to_double()); }
  [[nodiscard]] bool case1_holds() const noexcept { return max_case1_count <= 2; }
  [[nodiscard]] bool case2_holds() const noexcept { return max_case2_count <= p; }
};

struct BoundsOptions {
  u64 guard = 31;
  bool override_guard = false;
  unsigned workers = 0;  // 0: hardware concurrency
};

namespace detail {

struct PartialResult {
  std::optional<Rational> best_r;
  std::optional<Rational> best_q;
  Witness wit_r;
  Witness wit_q;
  u64 max_case1 = 0;
  u64 max_case2 = 0;
  u64 admissible = 0;
};

// Folds in every h with h_0 in [h0_begin, h0_end). Candidates are visited in
// lexicographic h order and only strict improvements replace the incumbent,
// so merging partials in h_0 order reproduces the sequential result.
inline PartialResult sweep(u64 p, const std::vector<std::uint8_t>& positive, u64 n_pos, u64 n_neg, u64 h0_begin,
                           u64 h0_end) {
  PartialResult out;
  constexpr u64 none = ~u64{0};
  for (u64 h0 = h0_begin; h0 < h0_end; ++h0)
    for (u64 h1 = 0; h1 < p; ++h1)
      for (u64 h2 = 0; h2 < p; ++h2) {
        const std::array<u64, 3> h{h0, h1, h2};
        u64 pos_on = 0, neg_on = 0;
        // first[polarity][bit]: first vector of that polarity and Id bit
        std::array<std::array<u64, 2>, 2> first{{{none, none}, {none, none}}};
        for (u64 a = 0; a < p; ++a)
          for (u64 b = 0; b < p; ++b) {
            const bool bit = id_bit(h, a, b, p);
            const std::size_t pol = positive[a * p + b] ? 0 : 1;
            if (bit) (pol == 0 ? pos_on : neg_on)++;
            if (first[pol][bit] == none) first[pol][bit] = a * p + b;
          }
        const u64 pos_off = n_pos - pos_on;
        const u64 neg_off = n_neg - neg_on;

        // bit: Id_n(h) for the positive n; the negative n' has the other bit.
        for (int bit = 1; bit >= 0; --bit) {
          const u64 pos_avail = bit ? pos_on : pos_off;
          const u64 neg_avail = bit ? neg_off : neg_on;
          if (pos_avail == 0 || neg_avail == 0) continue;
          ++out.admissible;
          const u64 sh_n = bit ? neg_off : neg_on;        // negatives separated from n
          const u64 sh_np = bit ? pos_on : pos_off;       // positives separated from n'
          if (bit == 1) out.max_case1 = std::max(out.max_case1, sh_np);
          else out.max_case2 = std::max(out.max_case2, sh_n);

          const Rational r = Rational::max(Rational::make(n_neg, sh_n), Rational::make(n_pos, sh_np));
          const Rational q = Rational::make(n_neg * n_pos, sh_n * sh_np);
          const u64 fn = first[0][bit];
          const u64 fnp = first[1][1 - bit];
          const Witness w{{fn / p, fn % p}, {fnp / p, fnp % p}, h, sh_n, sh_np};
          if (!out.best_r || r < *out.best_r) {
            out.best_r = r;
            out.wit_r = w;
          }
          if (!out.best_q || q < *out.best_q) {
            out.best_q = q;
            out.wit_q = w;
          }
        }
      }
  return out;
}

}  // namespace detail

/// Exact adversary-bound minima at p. O(p^5) work, parallel over h_0 with a
/// deterministic merge: the report is bit-identical for any worker count.
[[nodiscard]] inline AdversaryReport adversary_bounds(PrimeModulus m, const BoundsOptions& opts = {}) {
  const u64 p = m.value();
  if (p > opts.guard && !opts.override_guard)
    throw InputError("p = " + std::to_string(p) + " exceeds the adversary enumeration guard of " +
                     std::to_string(opts.guard));

  std::vector<std::uint8_t> positive(p * p);
  u64 n_pos = 0;
  for (u64 a = 0; a < p; ++a)
    for (u64 b = 0; b < p; ++b)
      if ((positive[a * p + b] = is_positive(a, b, p))) ++n_pos;
  const u64 n_neg = p * p - n_pos;

  unsigned workers = opts.workers ? opts.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<u64>(workers, p));
  std::vector<detail::PartialResult> parts(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const u64 begin = p * w / workers;
      const u64 end = p * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { parts[w] = detail::sweep(p, positive, n_pos, n_neg, begin, end); });
    }
  }

  AdversaryReport rep;
  rep.p = p;
  rep.count_positive = n_pos;
  rep.count_negative = n_neg;
  rep.sigma_positive = n_neg;
  rep.sigma_negative = n_pos;
  std::optional<Rational> best_r, best_q;
  for (const auto& part : parts) {
    rep.max_case1_count = std::max(rep.max_case1_count, part.max_case1);
    rep.max_case2_count = std::max(rep.max_case2_count, part.max_case2);
    rep.admissible_queries += part.admissible;
    if (part.best_r && (!best_r || *part.best_r < *best_r)) {
      best_r = part.best_r;
      rep.witness_randomized = part.wit_r;
    }
    if (part.best_q && (!best_q || *part.best_q < *best_q)) {
      best_q = part.best_q;
      rep.witness_quantum = part.wit_q;
    }
  }
  if (!best_r || !best_q) throw InternalError("no admissible (n, n', h) triple");
  rep.worst_ratio_randomized = *best_r;
  rep.worst_ratio_quantum_squared = *best_q;
  return rep;
}

inline nlohmann::ordered_json witness_json(const Witness& w) {
  return {{"n", {1, w.n[0], w.n[1]}},
          {"n_prime", {1, w.n_prime[0], w.n_prime[1]}},
          {"h", w.h},
          {"sigma_gamma_h_n", w.sigma_h_n},
          {"sigma_gamma_h_n_prime", w.sigma_h_n_prime}};
}

inline nlohmann::ordered_json to_json(const AdversaryReport& r) {
  auto frac = [](const Rational& q) { return std::to_string(q.num) + "/" + std::to_string(q.den); };
  return {{"p", r.p},
          {"count_positive", r.count_positive},
          {"count_negative", r.count_negative},
          {"sigma_positive", r.sigma_positive},
          {"sigma_negative", r.sigma_negative},
          {"worst_ratio_randomized", frac(r.worst_ratio_randomized)},
          {"worst_ratio_randomized_approx", r.worst_ratio_randomized.to_double()},
          {"worst_ratio_quantum_squared", frac(r.worst_ratio_quantum_squared)},
          {"worst_ratio_quantum_approx", r.worst_ratio_quantum()},
          {"witness_randomized", witness_json(r.witness_randomized)},
          {"witness_quantum", witness_json(r.witness_quantum)},
          {"max_case1_count", r.max_case1_count},
          {"max_case2_count", r.max_case2_count},
          {"admissible_query_classes", r.admissible_queries},
          {"case1_bound_holds", r.case1_holds()},
          {"case2_bound_holds", r.case2_holds()}};
}

}  // namespace bbgroup::adversary
