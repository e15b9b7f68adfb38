#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "foldrun/compiler.hpp"
#include "foldrun/sequences.hpp"

namespace foldrun::verify {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample, state counts, or context
  double seconds = 0.0;
};

struct Report {
  std::vector<Check> checks;
  bool all_pass() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const Report& other);
};

struct VerifyOptions {
  std::int64_t guess_n = 2000;           // sample range for synchronized guessing
  int sync_cutoff = 14;
  std::size_t sync_state_bound = 64;
  std::int64_t cross_limit = 1'000'000;  // automaton-vs-stream comparisons
  std::int64_t stream_limit = 10'000'000;  // pure sequence checks
};

/// Builds the full automaton environment used throughout: the literature
/// DFAO Q; synchd, d0..d2, D, DPP, DP by script; ep, e, g guessed from
/// sequence data; sp, b, b1, b2, B, s, r, even, odd, sigma, w, mod2 by
/// script.  State counts land in `log` when given.
logic::Environment build_environment(seq::Sequences& seqs, const VerifyOptions& opt = {},
                                     Report* log = nullptr);

/// The six run-end checks (totality, functionality, strict increase, run
/// boundary, interior constancy, base case) certifying that `candidate`
/// computes the run ends of the sequence computed by `dfao`.  `first_end` is
/// the expected value at n=1.  Check names are prefixed with the candidate
/// name (ep1..ep6 for "ep").
Report verify_run_ends(const logic::Environment& env, const std::string& candidate,
                       const std::string& dfao, std::uint64_t first_end);

/// b12, r_check and b_property through the decision procedure.
Report verify_b_pipeline(const logic::Environment& env);

/// g_correctness and inequality_check for a candidate counting relation.
Report verify_g(const logic::Environment& env, const std::string& candidate = "g");

/// w_check (value at 1 plus both recurrence clauses) through the decision
/// procedure; expects w and mod2 in the environment.
Report verify_w(const logic::Environment& env);

/// Oracle harness: automaton value against an independently generated
/// stream value for every 1 <= n <= limit (plus n=0 when zero_value is
/// given); reports the first mismatch.
Check cross_check_dfao(const std::string& name, const aut::Dfao& m,
                       const std::function<std::int64_t(std::int64_t)>& stream,
                       std::int64_t limit, std::optional<std::int64_t> zero_value = {});

/// Relation flavor: accepts (n, stream(n)) and rejects neighboring values.
Check cross_check_relation(const std::string& name, const aut::Dfa& rel,
                           const std::function<std::int64_t(std::int64_t)>& stream,
                           std::int64_t limit, std::optional<std::int64_t> zero_value = {});

/// First single-transition redirect (scanning states and symbols in
/// canonical order) that changes the language; nullopt when every mutant is
/// equivalent (cannot happen for automata with a reachable difference).
std::optional<aut::Dfa> first_language_changing_mutant(const aut::Dfa& m);

/// Everything: environment build, the paper's eval suite, state counts,
/// cross-checks, stream invariants, and mutation soundness.
Report verify_all(seq::Sequences& seqs, const VerifyOptions& opt = {});

/// Paper-reported state counts keyed by automaton name (Q, D, DP, ep, sp,
/// b, B, e, s, r, sigma, g); the verification suite accepts a count under
/// either dead-state convention.
const std::vector<std::pair<std::string, std::size_t>>& reported_state_counts();

}  // namespace foldrun::verify
