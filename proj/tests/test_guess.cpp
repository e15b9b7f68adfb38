#include "foldrun/guess.hpp"

#include "doctest.h"
#include "foldrun/builtins.hpp"
#include "foldrun/sequences.hpp"

using namespace foldrun;
using guess::DfaoGuessParams;
using guess::SyncGuessParams;

namespace {

std::vector<int> samples_of(std::span<const std::int8_t> one_based, int zero_value) {
  std::vector<int> out;
  out.reserve(one_based.size() + 1);
  out.push_back(zero_value);
  for (std::int8_t v : one_based) out.push_back(v);
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> pairs_of(std::span<const std::int64_t> v,
                                                            std::int64_t zero_value,
                                                            std::int64_t n_max) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  out.emplace_back(0, zero_value);
  for (std::int64_t n = 1; n <= n_max; ++n) out.emplace_back(n, v[std::size_t(n - 1)]);
  return out;
}

}  // namespace

TEST_CASE("guess_dfao recovers the paperfolding DFAO") {
  seq::Sequences seqs;
  DfaoGuessParams params;
  params.depth = 4;
  params.check_length = 64;
  std::vector<int> q = samples_of(seqs.q(2000), seq::Sequences::q0);
  aut::Dfao cand = guess::guess_dfao(q, params);
  CHECK(cand.num_states() == 4);
  CHECK(aut::equivalent(cand, aut::paperfolding_dfao()));

  // Defaults need a lot more data but land on the same machine.
  std::vector<int> big = samples_of(seqs.q(5'000'000), seq::Sequences::q0);
  aut::Dfao cand2 = guess::guess_dfao(big);
  CHECK(aut::equivalent(cand, cand2));
}

TEST_CASE("guess_dfao on the |difference| sequence") {
  seq::Sequences seqs;
  DfaoGuessParams params;
  params.depth = 6;
  params.check_length = 64;
  std::vector<int> dp = samples_of(seqs.dprime(8000), 0);
  aut::Dfao cand = guess::guess_dfao(dp, params);
  CHECK(cand.num_states() == 9);
  for (std::size_t n = 0; n < dp.size(); ++n) CHECK(cand.eval(n) == dp[n]);
}

TEST_CASE("guess_dfao trivial and error cases") {
  std::vector<int> zeros(5000, 0);
  DfaoGuessParams params;
  params.depth = 4;
  params.check_length = 32;
  aut::Dfao cand = guess::guess_dfao(zeros, params);
  CHECK(cand.num_states() == 1);
  CHECK(cand.eval(12345) == 0);

  std::vector<int> tiny = {0, 1, 0};
  CHECK_THROWS_WITH_AS(guess::guess_dfao(tiny, params), doctest::Contains("insufficient"),
                       std::runtime_error);

  // A sequence that is not 2-automatic within the depth: squares flag.
  std::vector<int> squares(200000, 0);
  for (std::size_t i = 0; i * i < squares.size(); ++i) squares[i * i] = 1;
  DfaoGuessParams deep;
  deep.depth = 6;
  deep.check_length = 512;
  CHECK_THROWS_WITH_AS(guess::guess_dfao(squares, deep), doctest::Contains("close"),
                       std::runtime_error);
}

TEST_CASE("guess_synchronized recovers the run-end automata") {
  seq::Sequences seqs;
  SyncGuessParams params;  // cutoff 14, bound 64

  aut::Dfa ep = guess::guess_synchronized(pairs_of(seqs.eprime(2000), 0, 2000), params);
  CHECK(aut::live_state_count(ep) == 19);
  CHECK(ep.num_states() == 20);
  CHECK(aut::is_padding_closed(ep));
  // Replay beyond the guessing range: the structure extrapolates correctly.
  auto epv = seqs.eprime(100000);
  for (std::int64_t n = 1; n <= 100000; n += 97)
    CHECK(ep.accepts({std::uint64_t(n), std::uint64_t(epv[std::size_t(n - 1)])}));

  aut::Dfa e = guess::guess_synchronized(pairs_of(seqs.e(2000), 0, 2000), params);
  CHECK(aut::live_state_count(e) == 30);

  aut::Dfa g = guess::guess_synchronized(pairs_of(seqs.g(2000), 0, 2000), params);
  CHECK(aut::live_state_count(g) == 16);
}

TEST_CASE("guess_synchronized on the identity function") {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t n = 0; n <= 5000; ++n) pairs.emplace_back(n, n);
  SyncGuessParams params;
  params.cutoff = 10;
  aut::Dfa cand = guess::guess_synchronized(pairs, params);
  CHECK(aut::live_state_count(cand) == 1);
  CHECK(aut::equivalent(cand, aut::equality()));
}

TEST_CASE("guess_synchronized determinism and errors") {
  seq::Sequences seqs;
  SyncGuessParams params;
  auto pairs = pairs_of(seqs.eprime(2000), 0, 2000);
  aut::Dfa one = guess::guess_synchronized(pairs, params);
  aut::Dfa two = guess::guess_synchronized(pairs, params);
  CHECK(one.trans == two.trans);
  CHECK(one.accepting == two.accepting);

  auto bad = pairs;
  bad.emplace_back(7, pairs[7].second + 1);
  CHECK_THROWS_WITH_AS(guess::guess_synchronized(bad, params), doctest::Contains("inconsistent"),
                       std::runtime_error);

  SyncGuessParams strict = params;
  strict.state_bound = 3;
  CHECK_THROWS_WITH_AS(guess::guess_synchronized(pairs, strict), doctest::Contains("state bound"),
                       std::runtime_error);

  // Not a synchronized function at all within the cutoff: n -> n^2 keeps
  // spawning classes.
  std::vector<std::pair<std::int64_t, std::int64_t>> squares;
  for (std::int64_t n = 0; n <= 4000; ++n) squares.emplace_back(n, n * n);
  CHECK_THROWS(guess::guess_synchronized(squares, params));
}
