#pragma once

/**
 * @file grover_sim.hpp
 * @brief State-vector simulation of Grover search over Z_p.
 *
 * The marked element is the secret s of a level-1 identity oracle, i.e. the
 * one x for which Id_s(x, -1) = 1. The simulator reads s once through the
 * escrow and charges one query per phase-oracle application, which is the
 * cost model of the quantum query setting. Norm drift is checked after every
 * operator and reported as an internal error; it is never renormalised away.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "bbgroup/blackbox.hpp"
#include "bbgroup/errors.hpp"
#include "json.hpp"

namespace bbgroup::grover {

using Amplitude = std::complex<double>;

inline constexpr u64 kMaxStates = u64{1} << 22U;
inline constexpr double kNormTolerance = 1e-9;

class StateVector {
 public:
  static StateVector uniform(std::size_t n) {
    if (n == 0) throw InputError("empty state space");
    return StateVector(std::vector<Amplitude>(n, Amplitude(1.0 / std::sqrt(static_cast<double>(n)), 0.0)));
  }

  [[nodiscard]] std::size_t size() const noexcept { return amp_.size(); }
  [[nodiscard]] Amplitude operator[](std::size_t i) const { return amp_.at(i); }
  [[nodiscard]] double probability(std::size_t i) const { return std::norm(amp_.at(i)); }

  [[nodiscard]] double norm() const noexcept {
    double acc = 0.0;
    for (const auto& a : amp_) acc += std::norm(a);
    return std::sqrt(acc);
  }

  /// Phase oracle: |x> -> -|x> for the marked basis state.
  void phase_flip(std::size_t marked) {
    amp_.at(marked) = -amp_[marked];
    check_norm();
  }

  /// Inversion about the mean: a_x -> 2<a> - a_x.
  void invert_about_mean() {
    Amplitude mean(0.0, 0.0);
    for (const auto& a : amp_) mean += a;
    mean /= static_cast<double>(amp_.size());
    for (auto& a : amp_) a = 2.0 * mean - a;
    check_norm();
  }

  void check_norm() const {
    const double n = norm();
    if (std::abs(n - 1.0) > kNormTolerance)
      throw InternalError("state norm drifted to " + std::to_string(n));
  }

  /// Samples a basis state from |amplitude|^2.
  template <class Rng>
  [[nodiscard]] std::size_t measure(Rng& rng) const {
    const double u = std::generate_canonical<double, 53>(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      acc += std::norm(amp_[i]);
      if (u < acc) return i;
    }
    return amp_.size() - 1;
  }

 private:
  explicit StateVector(std::vector<Amplitude> a) : amp_(std::move(a)) {}
  std::vector<Amplitude> amp_;
};

struct GroverRun {
  u64 p = 0;
  u64 s = 0;
  u64 iterations = 0;
  double success_probability = 0.0;
  u64 measured_outcome = 0;
  u64 oracle_queries = 0;
};

/// round(pi/4 * sqrt(n) - 1/2).
[[nodiscard]] inline u64 default_iterations(u64 n) {
  return static_cast<u64>(std::llround(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n)) - 0.5));
}

/// ceil(pi/4 * sqrt(n)).
[[nodiscard]] inline u64 iteration_bound(u64 n) {
  return static_cast<u64>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n))));
}

/// sin^2((2k+1) theta) with sin theta = 1/sqrt(n).
[[nodiscard]] inline double closed_form_success(u64 n, u64 k) {
  const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n)));
  const double v = std::sin(static_cast<double>(2 * k + 1) * theta);
  return v * v;
}

/// Plain Grover search over n basis states with one marked element.
[[nodiscard]] inline GroverRun simulate(u64 n, u64 marked, u64 iterations, u64 seed) {
  if (n > kMaxStates) throw InputError("state space exceeds the 2^22 simulation guard");
  if (marked >= n) throw InputError("marked element outside the state space");
  StateVector psi = StateVector::uniform(n);
  GroverRun run;
  run.p = n;
  run.s = marked;
  for (u64 i = 0; i < iterations; ++i) {
    psi.phase_flip(marked);
    ++run.oracle_queries;
    psi.invert_about_mean();
  }
  run.iterations = iterations;
  run.success_probability = psi.probability(marked);
  std::mt19937_64 rng(seed);
  run.measured_outcome = psi.measure(rng);
  return run;
}

/// Grover search for the secret of a level-1 identity oracle. Without an
/// explicit count the standard round(pi/4 sqrt(p) - 1/2) iterations are used.
[[nodiscard]] inline GroverRun grover_search(const IdentityOracle& o, const EscrowToken& token,
                                             std::optional<u64> iterations = std::nullopt, u64 seed = 0) {
  if (o.level() != 1) throw InputError("Grover search runs on level-1 oracles");
  const u64 p = o.modulus().value();
  if (p > kMaxStates) throw InputError("p exceeds the 2^22 simulation guard");
  const u64 s = o.escrow_hidden(token)[1].value();
  return simulate(p, s, iterations.value_or(default_iterations(p)), seed);
}

struct CurvePoint {
  u64 p = 0;
  u64 k_min = 0;       // smallest k with success >= 2/3
  u64 k_default = 0;   // round(pi/4 sqrt(p) - 1/2)
  u64 k_bound = 0;     // ceil(pi/4 sqrt(p))
  double success_at_k_min = 0.0;
  [[nodiscard]] bool within_bound() const noexcept { return k_min <= k_bound; }
};

/// Smallest iteration count whose success probability reaches 2/3, found by
/// stepping one simulated state forward.
[[nodiscard]] inline CurvePoint curve_point(u64 p) {
  if (p < 2 || p > kMaxStates) throw InputError("p outside the simulation range");
  CurvePoint pt;
  pt.p = p;
  pt.k_default = default_iterations(p);
  pt.k_bound = iteration_bound(p);
  StateVector psi = StateVector::uniform(p);
  const u64 marked = 0;
  const u64 give_up = 4 * pt.k_bound + 4;
  u64 k = 0;
  while (psi.probability(marked) < 2.0 / 3.0 && k < give_up) {
    psi.phase_flip(marked);
    psi.invert_about_mean();
    ++k;
  }
  pt.k_min = k;
  pt.success_at_k_min = psi.probability(marked);
  return pt;
}

/// One curve point per p, computed in parallel; output order follows input.
[[nodiscard]] inline std::vector<CurvePoint> quantum_query_curve(std::span<const u64> ps) {
  std::vector<CurvePoint> out(ps.size());
  std::vector<std::jthread> pool;
  pool.reserve(ps.size());
  std::vector<std::exception_ptr> errors(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    pool.emplace_back([&, i] {
      try {
        out[i] = curve_point(ps[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Least-squares c in k ~ c sqrt(p), through the origin.
[[nodiscard]] inline double fit_sqrt_constant(std::span<const u64> ps, std::span<const u64> ks) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    num += static_cast<double>(ks[i]) * std::sqrt(static_cast<double>(ps[i]));
    den += static_cast<double>(ps[i]);
  }
  return num / den;
}

inline nlohmann::ordered_json to_json(const GroverRun& r) {
  return {{"p", r.p},
          {"s", r.s},
          {"iterations", r.iterations},
          {"success_probability", r.success_probability},
          {"closed_form", closed_form_success(r.p, r.iterations)},
          {"measured_outcome", r.measured_outcome},
          {"oracle_queries", r.oracle_queries}};
}

}  // namespace bbgroup::grover
