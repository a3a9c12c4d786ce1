// Command-line front end: secret recovery, DDH, lifting, embedding, the
// adversary report, Grover runs and the seeded experiments.
//
// Exit codes: 0 success, 1 bad input (usage printed), 2 internal failure or
// a failed exported assertion.

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbgroup/adversary.hpp"
#include "bbgroup/algorithms.hpp"
#include "bbgroup/blackbox.hpp"
#include "bbgroup/experiments.hpp"
#include "bbgroup/grover_sim.hpp"
#include "json.hpp"

using namespace bbgroup;
namespace ex = bbgroup::experiments;

namespace {

struct Config {
  std::vector<u64> ps;
  u64 t = 1;
  u64 seed = 0;
  std::optional<u64> trials;
  std::string out;
  std::string format = "csv";
  unsigned workers = 0;
};

// Output sink honouring --out; everything is buffered so a failed run
// leaves no partial file.
class Output {
 public:
  explicit Output(const Config& c) : path_(c.out) {}
  std::ostream& stream() { return buf_; }
  void flush() {
    if (path_.empty()) {
      std::cout << buf_.str();
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw InputError("cannot open " + path_ + " for writing");
    f << buf_.str();
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

void emit(const Config& c, const ex::Table& t) {
  Output o(c);
  if (c.format == "json") o.stream() << ex::to_json(t).dump(2) << '\n';
  else o.stream() << ex::to_csv(t);
  o.flush();
}

std::vector<u64> primes_or(const Config& c, std::vector<u64> fallback) {
  return c.ps.empty() ? fallback : c.ps;
}

u64 single_p(const Config& c, u64 fallback) {
  if (c.ps.size() > 1) throw InputError("this command takes a single --p");
  return c.ps.empty() ? fallback : c.ps.front();
}

GroupElement parse_element(PrimeModulus m, const std::string& text, std::size_t level) {
  std::vector<u64> coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      coords.push_back(m(v).value());
    } catch (const std::logic_error&) {
      throw InputError("bad coordinate '" + part + "' in '" + text + "'");
    }
  }
  if (coords.size() != level + 1)
    throw InputError("element '" + text + "' needs " + std::to_string(level + 1) + " coordinates");
  return {m, std::move(coords)};
}

u64 draw_secret(const Config& c, u64 p, std::optional<u64> given) {
  if (given) return *given % p;
  auto rng = ex::trial_rng(c.seed, ex::kTagSecret, p, 0);
  return std::uniform_int_distribution<u64>(0, p - 1)(rng);
}

int fail_if(bool failed) { return failed ? 2 : 0; }

// ---------------------------------------------------------------------------

int cmd_secret(const Config& c, const std::string& algo, std::optional<u64> given_s) {
  if (c.t != 1) throw InputError("secret recovery runs at level 1");
  const EscrowToken escrow = EscrowToken::grant_for_reference_code();
  ex::Table t{{"p", "algo", "secret", "recovered", "success", "id_queries", "precheck_queries", "oracle_calls"}, {}};
  bool failed = false;
  for (u64 p : primes_or(c, {101})) {
    const PrimeModulus m(p);
    const u64 s = draw_secret(c, p, given_s);
    const SuitableVector n(m, {s});
    IdentityOracle o(n);
    auto rng = ex::trial_rng(c.seed, ex::kTagSecret, p, 1);
    std::optional<u64> found;
    u64 id_q = 0, pre_q = 0, calls = 0;
    if (algo == "dlog") {
      DlogOracle d = honest_dlog_oracle(escrow, n);
      found = secret_from_dlog(d, m).value();
      calls = d.calls();
    } else if (algo == "cdh") {
      CdhOracle cdh = honest_cdh_oracle(escrow, n, rng());
      const SecretResult r = secret_from_cdh(cdh, o, find_nonresidue(m));
      found = r.s.value();
      id_q = r.id_queries;
      calls = r.oracle_calls;
    } else if (algo == "dlog-random") {
      DlogOracle d = honest_dlog_oracle(escrow, n);
      const auto r = secret_from_dlog_random(d, o, rng);
      if (r.s) found = r.s->value();
      pre_q = r.precheck_queries;
      calls = d.calls();
    } else if (algo == "cdh-random") {
      CdhOracle cdh = honest_cdh_oracle(escrow, n, rng());
      const auto r = secret_from_cdh_random(cdh, o, rng);
      if (r.s) found = r.s->value();
      id_q = r.id_queries;
      pre_q = r.precheck_queries;
      calls = cdh.calls();
    } else {
      const auto r = brute_force_secret(o, SearchOrder::random_permutation, &rng);
      found = r.s.value();
      id_q = r.queries;
    }
    // Random variants may abstain; a wrong answer is always a failure.
    failed = failed || (found && *found != s);
    t.add({p, algo, s, found ? std::to_string(*found) : std::string("none"), found == s, id_q, pre_q, calls});
  }
  emit(c, t);
  return fail_if(failed);
}

int cmd_ddh(const Config& c, const std::array<std::string, 4>& elems, std::optional<u64> given_s) {
  const PrimeModulus m(single_p(c, 5));
  const std::size_t level = c.t;
  if (level < 1) throw InputError("--t must be at least 1");
  for (const auto& e : elems)
    if (e.empty()) throw InputError("ddh needs --g, --h, --k and --l");
  const DHInstance inst(parse_element(m, elems[0], level), parse_element(m, elems[1], level),
                        parse_element(m, elems[2], level), parse_element(m, elems[3], level));
  std::vector<u64> tail(level, 0);
  auto rng = ex::trial_rng(c.seed, ex::kTagSecret, m.value(), 0);
  std::uniform_int_distribution<u64> draw(0, m.value() - 1);
  for (auto& x : tail) x = draw(rng);
  if (given_s) tail[0] = *given_s % m.value();
  const SuitableVector n(m, tail);
  IdentityOracle o(n);
  const DdhResult r = level == 1 ? ddh_decide_level1(o, inst, find_nonresidue(m)) : ddh_decide_exhaustive(o, inst);
  const EscrowToken escrow = EscrowToken::grant_for_reference_code();
  const bool reference = is_dh_quadruple(escrow, n, inst.g, inst.h, inst.k, inst.fourth());

  Output out(c);
  if (c.format == "json") {
    out.stream() << nlohmann::ordered_json{{"p", m.value()},
                                           {"t", level},
                                           {"dh_quadruple", r.is_dh},
                                           {"queries", r.queries},
                                           {"precheck_queries", r.precheck_queries},
                                           {"reference_agrees", r.is_dh == reference}}
                        .dump(2)
                 << '\n';
  } else {
    out.stream() << "DH-quadruple: " << (r.is_dh ? "yes" : "no") << '\n'
                 << "identity queries: " << r.queries << '\n'
                 << "generator check queries: " << r.precheck_queries << '\n'
                 << "reference agrees: " << (r.is_dh == reference ? "yes" : "no") << '\n';
  }
  out.flush();
  return fail_if(r.is_dh != reference);
}

int cmd_lift(const Config& c) {
  const auto r = ex::run_lift_check(PrimeModulus(single_p(c, 7)), c.t, c.trials.value_or(1000), c.seed, c.workers);
  emit(c, ex::to_table(r));
  return fail_if(!r.pass());
}

int cmd_embed(const Config& c, std::optional<std::array<u64, 3>> exps, bool exhaustive) {
  const PrimeModulus m(single_p(c, 11));
  if (exhaustive) {
    const auto s = ex::run_embedding_check(m);
    emit(c, ex::to_table(s));
    return fail_if(!s.pass());
  }
  std::array<u64, 3> e{};
  if (exps) {
    e = *exps;
  } else {
    auto rng = ex::trial_rng(c.seed, ex::kTagEmbed, m.value(), 0);
    std::uniform_int_distribution<u64> draw(0, m.value() - 1);
    for (auto& x : e) x = draw(rng);
  }
  const ex::EmbedOutcome r = ex::embed_decide(m, e[0], e[1], e[2]);
  ex::Table t{{"p", "q", "a", "b", "c", "dh_quadruple", "direct_check", "agree", "id_queries", "multiplications"}, {}};
  t.add({m.value(), 2 * m.value() + 1, r.a, r.b, r.c, r.dh, r.direct, r.dh == r.direct, r.id_queries,
         r.multiplications});
  emit(c, t);
  return fail_if(r.dh != r.direct);
}

int cmd_adversary(const Config& c, bool override_guard) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  bool failed = false;
  for (u64 p : primes_or(c, {5})) {
    adversary::BoundsOptions opts;
    opts.override_guard = override_guard;
    opts.workers = c.workers;
    const auto rep = adversary::adversary_bounds(PrimeModulus(p), opts);
    failed = failed || !rep.case1_holds() || !rep.case2_holds();
    auto j = adversary::to_json(rep);
    j["worst_ratio_randomized_approx"] = ex::round12(rep.worst_ratio_randomized.to_double());
    j["worst_ratio_quantum_approx"] = ex::round12(rep.worst_ratio_quantum());
    arr.push_back(std::move(j));
  }
  Output out(c);
  out.stream() << (arr.size() == 1 ? arr[0] : arr).dump(2) << '\n';
  out.flush();
  return fail_if(failed);
}

int cmd_grover(const Config& c, std::optional<u64> iterations, bool curve) {
  const auto ps = primes_or(c, {101});
  Output out(c);
  bool failed = false;
  if (curve) {
    const auto pts = grover::quantum_query_curve(ps);
    ex::Table t{{"p", "k_min", "success_at_k_min", "k_default", "k_bound", "within_bound"}, {}};
    std::vector<u64> kmin, kdef;
    for (const auto& pt : pts) {
      t.add({pt.p, pt.k_min, pt.success_at_k_min, pt.k_default, pt.k_bound, pt.within_bound()});
      failed = failed || !pt.within_bound();
      kmin.push_back(pt.k_min);
      kdef.push_back(pt.k_default);
    }
    if (c.format == "json") {
      nlohmann::ordered_json j{{"curve", ex::to_json(t)},
                               {"fit_c_k_min", ex::round12(grover::fit_sqrt_constant(ps, kmin))},
                               {"fit_c_k_default", ex::round12(grover::fit_sqrt_constant(ps, kdef))}};
      out.stream() << j.dump(2) << '\n';
    } else {
      out.stream() << ex::to_csv(t);
    }
    out.flush();
    return fail_if(failed);
  }
  const EscrowToken escrow = EscrowToken::grant_for_reference_code();
  for (u64 p : ps) {
    const PrimeModulus m(p);
    const IdentityOracle o(SuitableVector(m, {draw_secret(c, p, std::nullopt)}));
    const grover::GroverRun r = grover::grover_search(o, escrow, iterations, c.seed);
    auto j = grover::to_json(r);
    j["success_probability"] = ex::round12(r.success_probability);
    j["closed_form"] = ex::round12(grover::closed_form_success(r.p, r.iterations));
    out.stream() << j.dump() << '\n';
    failed = failed || std::abs(r.success_probability - grover::closed_form_success(r.p, r.iterations)) > 1e-9;
  }
  out.flush();
  return fail_if(failed);
}

int cmd_scaling(const Config& c) {
  const auto ps = primes_or(c, {101, 211, 401});
  const auto r = ex::run_scaling(ps, c.trials.value_or(ex::kScalingAssertTrials), c.seed, c.workers);
  emit(c, ex::to_table(r));
  return fail_if(r.enforced && (!r.all_within || !r.linear));
}

int cmd_reductions(const Config& c) {
  ex::Table all{{}, {}};
  bool failed = false;
  for (u64 p : primes_or(c, {101})) {
    const auto r = ex::run_reduction_success(PrimeModulus(p), c.trials.value_or(10000), c.seed, c.workers);
    const ex::Table t = ex::to_table(r);
    all.columns = t.columns;
    for (const auto& row : t.rows) all.add(row);
    failed = failed || !r.dlog.consistent || !r.cdh.consistent;
  }
  emit(c, all);
  return fail_if(failed);
}

int cmd_level2(const Config& c, bool override_guard) {
  ex::Table all{{}, {}};
  bool failed = false;
  for (u64 p : primes_or(c, {31})) {
    const auto r =
        ex::run_level2_solution_counts(PrimeModulus(p), c.trials.value_or(1000), c.seed, c.workers, override_guard);
    const ex::Table t = ex::to_table(r);
    all.columns = t.columns;
    for (const auto& row : t.rows) all.add(row);
    failed = failed || !r.pass;
  }
  emit(c, all);
  return fail_if(failed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identity black-box group laboratory"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.ps, "prime modulus, or a comma-separated list")->delimiter(',');
    sub->add_option("--t", cfg.t, "group level");
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--trials", cfg.trials, "trial or sample count");
    sub->add_option("--out", cfg.out, "write output to this file");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", cfg.workers, "worker threads (0: all cores); never changes results");
  };

  std::string algo = "cdh";
  std::optional<u64> secret;
  auto* secret_cmd = app.add_subcommand("secret", "recover the secret with a chosen algorithm");
  add_common(secret_cmd);
  secret_cmd->add_option("--algo", algo)->check(CLI::IsMember({"dlog", "cdh", "dlog-random", "cdh-random", "brute"}));
  secret_cmd->add_option("--s", secret, "secret (default: drawn from the seed)");

  std::array<std::string, 4> elems;
  std::optional<u64> ddh_secret;
  auto* ddh_cmd = app.add_subcommand("ddh", "decide a DDH instance");
  ddh_cmd->set_help_flag("--help", "print this help message and exit");  // frees --h for the instance
  add_common(ddh_cmd);
  ddh_cmd->add_option("--g", elems[0], "generator, e.g. 1,0");
  ddh_cmd->add_option("--h", elems[1]);
  ddh_cmd->add_option("--k", elems[2]);
  ddh_cmd->add_option("--l", elems[3]);
  ddh_cmd->add_option("--s", ddh_secret, "hidden n_1 (default: drawn from the seed)");

  auto* lift_cmd = app.add_subcommand("lift", "check DDH answers under level lifting");
  add_common(lift_cmd);

  std::vector<u64> exps;
  bool embed_all = false;
  auto* embed_cmd = app.add_subcommand("embed", "embed the order-p subgroup of (Z/(2p+1))^*");
  add_common(embed_cmd);
  embed_cmd->add_option("--exponents", exps, "a,b,c with g_i = g_1^{1,a,b,c}")->delimiter(',')->expected(3);
  embed_cmd->add_flag("--exhaustive", embed_all, "check all p^3 exponent triples");

  bool override_guard = false;
  auto* adv_cmd = app.add_subcommand("adversary", "exact adversary quantities for DDH at level 2");
  add_common(adv_cmd);
  adv_cmd->add_flag("--override-guard", override_guard, "allow p above the enumeration guard");

  std::optional<u64> iterations;
  bool curve = false;
  auto* grover_cmd = app.add_subcommand("grover", "simulate Grover search for the secret");
  add_common(grover_cmd);
  grover_cmd->add_option("--iterations", iterations);
  grover_cmd->add_flag("--curve", curve, "smallest iteration count reaching success 2/3, per p");

  auto* scaling_cmd = app.add_subcommand("scaling", "query counts of random-order exhaustive search");
  add_common(scaling_cmd);
  auto* red_cmd = app.add_subcommand("reductions", "success rates of the random-instance reductions");
  add_common(red_cmd);
  auto* l2_cmd = app.add_subcommand("level2-counts", "bad-instance fraction for the level-2 line systems");
  add_common(l2_cmd);
  l2_cmd->add_flag("--override-guard", override_guard, "allow p above 31");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (secret_cmd->parsed()) return cmd_secret(cfg, algo, secret);
    if (ddh_cmd->parsed()) return cmd_ddh(cfg, elems, ddh_secret);
    if (lift_cmd->parsed()) return cmd_lift(cfg);
    if (embed_cmd->parsed()) {
      std::optional<std::array<u64, 3>> e;
      if (!exps.empty()) e = std::array<u64, 3>{exps[0], exps[1], exps[2]};
      return cmd_embed(cfg, e, embed_all);
    }
    if (adv_cmd->parsed()) return cmd_adversary(cfg, override_guard);
    if (grover_cmd->parsed()) return cmd_grover(cfg, iterations, curve);
    if (scaling_cmd->parsed()) return cmd_scaling(cfg);
    if (red_cmd->parsed()) return cmd_reductions(cfg);
    if (l2_cmd->parsed()) return cmd_level2(cfg, override_guard);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
