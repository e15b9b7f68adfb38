#include "foldrun/verify.hpp"

#include "doctest.h"
#include "foldrun/guess.hpp"

using namespace foldrun;
using verify::Report;
using verify::VerifyOptions;

namespace {

// One environment for the whole binary; building it costs a couple of
// seconds and every test reads it immutably.
struct Fixture {
  seq::Sequences seqs;
  logic::Environment env;
  Fixture() { env = verify::build_environment(seqs); }
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

void check_all(const Report& report) {
  for (const auto& check : report.checks) {
    CAPTURE(check.name);
    CAPTURE(check.detail);
    CHECK(check.pass);
  }
}

}  // namespace

TEST_CASE("environment holds the full pipeline") {
  auto& f = fixture();
  for (const char* name : {"synchd", "d0", "d1", "d2", "dp12", "ep", "sp", "b", "b1", "b2", "e",
                           "s", "r", "even", "odd", "sigma", "g", "w", "mod2"})
    CHECK(f.env.find_relation(name) != nullptr);
  for (const char* name : {"Q", "D", "DPP", "DP", "B"})
    CHECK(f.env.find_dfao(name) != nullptr);
}

TEST_CASE("published state counts") {
  auto& f = fixture();
  for (const auto& [name, expected] : verify::reported_state_counts()) {
    CAPTURE(name);
    if (const aut::Dfao* d = f.env.find_dfao(name)) {
      CHECK(d->num_states() == expected);
    } else {
      const aut::Dfa& dfa = f.env.relation(name).dfa;
      bool match = aut::live_state_count(dfa) == expected || dfa.num_states() == expected;
      CAPTURE(dfa.num_states());
      CHECK(match);
    }
  }
}

TEST_CASE("run-end suites hold for ep and e") {
  auto& f = fixture();
  check_all(verify::verify_run_ends(f.env, "ep", "DP", 1));
  check_all(verify::verify_run_ends(f.env, "e", "B", 2));
}

TEST_CASE("b pipeline, g and w suites hold") {
  auto& f = fixture();
  check_all(verify::verify_b_pipeline(f.env));
  check_all(verify::verify_g(f.env));
  check_all(verify::verify_w(f.env));
}

TEST_CASE("a corrupted candidate is rejected with a counterexample") {
  auto& f = fixture();
  auto mutant = verify::first_language_changing_mutant(f.env.relation("ep").dfa);
  REQUIRE(mutant.has_value());
  logic::Environment scratch = f.env;
  scratch.define_relation("ep_bad", logic::Relation{std::move(*mutant), {"n", "z"}});
  Report suite = verify::verify_run_ends(scratch, "ep_bad", "DP", 1);
  int failures = 0;
  bool saw_detail = false;
  for (const auto& check : suite.checks) {
    if (!check.pass) {
      ++failures;
      saw_detail = saw_detail || !check.detail.empty();
    }
  }
  CHECK(failures > 0);
  CHECK(saw_detail);
}

TEST_CASE("cross checks agree at a modest bound") {
  auto& f = fixture();
  auto q = f.seqs.q(20000);
  verify::Check c = verify::cross_check_dfao(
      "Q", f.env.dfao("Q"),
      [&](std::int64_t n) { return std::int64_t(q[std::size_t(n - 1)]); }, 20000, 0);
  CHECK(c.pass);

  // A broken oracle is reported with the first mismatch.
  verify::Check broken = verify::cross_check_dfao(
      "Q", f.env.dfao("Q"), [&](std::int64_t n) { return std::int64_t(n == 7); }, 100, 0);
  CHECK(!broken.pass);
  CHECK(broken.detail.find("n=") != std::string::npos);

  auto ep = f.seqs.eprime(20000);
  verify::Check rc = verify::cross_check_relation(
      "ep", f.env.relation("ep").dfa,
      [&](std::int64_t n) { return ep[std::size_t(n - 1)]; }, 20000, 0);
  CHECK(rc.pass);
}

TEST_CASE("verify_all aggregates everything green at a small scale") {
  seq::Sequences seqs;
  VerifyOptions opt;
  opt.cross_limit = 20000;
  opt.stream_limit = 50000;
  Report report = verify::verify_all(seqs, opt);
  CHECK(report.all_pass());
  // Expect the full roster: builds, evals, counts, cross-checks, streams,
  // mutations.
  CHECK(report.checks.size() > 40);
  int evals = 0;
  for (const auto& check : report.checks)
    if (check.name == "q_test" || check.name == "b12" || check.name == "w_check") ++evals;
  CHECK(evals == 3);
}
