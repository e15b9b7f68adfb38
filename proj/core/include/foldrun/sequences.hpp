#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace foldrun::seq {

/// q(n): the regular paperfolding sequence over {0,1}, with q(0) = 0.
/// Strips the trailing zero bits of n and inspects the next bit above the
/// lowest set bit, so q(2n) = q(n), q(4n+1) = 0, q(4n+3) = 1.
int q_at(std::uint64_t n);

/// One unfolding step per instruction: starting from the empty sequence,
/// each sign a maps P to P · a · (-reverse(P)).  Result length is 2^k - 1.
/// Instructions must be +1 or -1.
std::vector<std::int8_t> unfold(std::span<const int> instructions);

struct Run {
  std::int64_t value = 0;
  std::int64_t length = 0;
  std::int64_t start = 0;  // 1-based
  std::int64_t end = 0;    // inclusive
};

struct RunDecomposition {
  std::vector<Run> runs;
};

/// First `count` maximal runs of s.  A run only counts as complete once a
/// differing symbol after it has been seen, so the final run of the span is
/// never emitted; asking for more complete runs than the data determines is
/// an error.  Callers are expected to over-generate (a slack factor of 2 is
/// plenty here since run lengths are bounded).
RunDecomposition run_decompose(std::span<const std::int8_t> s, std::int64_t count);

/// Lazily generated, memoized prefixes of every sequence family studied
/// here.  Spans are 1-indexed through data()[n-1] and are invalidated by the
/// next growing call on the same object.
class Sequences {
 public:
  // Cloitre's sequence: run n sums to twice term n; runs alternate 1s and 2s.
  std::span<const std::int8_t> a(std::int64_t limit);
  // Regular paperfolding over {+1,-1} and over {0,1}.
  std::span<const std::int8_t> p(std::int64_t limit);
  std::span<const std::int8_t> q(std::int64_t limit);
  // First difference of q (d(1) = 1 by convention) and its absolute value.
  std::span<const std::int8_t> d(std::int64_t limit);
  std::span<const std::int8_t> dprime(std::int64_t limit);
  // Runs of dprime: lengths, end positions, start positions.
  std::span<const std::int8_t> b(std::int64_t limit);
  std::span<const std::int64_t> eprime(std::int64_t limit);
  std::span<const std::int64_t> sprime(std::int64_t limit);
  // Runs of b: lengths, ends, starts, and per-run sums.
  std::span<const std::int8_t> r(std::int64_t limit);
  std::span<const std::int64_t> e(std::int64_t limit);
  std::span<const std::int64_t> s(std::int64_t limit);
  std::span<const std::int8_t> sigma(std::int64_t limit);
  // Ones-count of b-prefixes and h = 3g - 2n.
  std::span<const std::int64_t> g(std::int64_t limit);
  std::span<const std::int64_t> h(std::int64_t limit);
  // w(n) = least t >= 1 with eprime(t) >= n.
  std::span<const std::int64_t> w(std::int64_t limit);

  // Index-0 values the conventions define; other families are undefined at 0.
  static constexpr int q0 = 0;
  static constexpr std::int64_t eprime0 = 0;

 private:
  void need_q(std::int64_t limit);
  void need_level1(std::int64_t limit);   // b, eprime, sprime
  void need_level2(std::int64_t limit);   // r, e, s, sigma
  void need_gh(std::int64_t limit);
  void need_w(std::int64_t limit);

  std::vector<std::int8_t> a_, p_, q_, d_, dp_, b_, r_, sigma_;
  std::vector<std::int64_t> ep_, sp_, e_, s_, g_, h_, w_;
  std::int64_t a_run_ = 0;       // complete runs of a emitted so far
  std::int64_t scanned_dp_ = 0;  // d' symbols consumed by the level-1 run scan
  std::int64_t scanned_b_ = 0;   // b symbols consumed by the level-2 run scan
};

/// Named access for the CLI: one of a,p,q,d,dprime,eprime,sprime,b,e,s,r,
/// sigma,g,h,w.  Throws on unknown names.
std::vector<std::int64_t> generate(Sequences& seqs, std::string_view name, std::int64_t count);

const std::vector<std::string>& sequence_names();

/// OEIS b-file format: "n value" per line, 1-indexed, newline-terminated.
void write_bfile(std::ostream& out, std::span<const std::int64_t> terms, std::int64_t first_index = 1);

/// Reads "index value" pairs; indices need not start at 1.
std::vector<std::pair<std::int64_t, std::int64_t>> read_bfile(std::istream& in);

/// Table of all fourteen families side by side for n in [from, to]; CSV with
/// a header row.
void write_table_csv(std::ostream& out, Sequences& seqs, std::int64_t from, std::int64_t to);

}  // namespace foldrun::seq
