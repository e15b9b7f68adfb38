#include "foldrun/sequences.hpp"

#include <sstream>

#include "doctest.h"

using namespace foldrun::seq;

namespace {

template <typename T>
std::vector<std::int64_t> widen(std::span<const T> v) {
  return std::vector<std::int64_t>(v.begin(), v.end());
}

// First fifteen terms of every family, as published.
const std::vector<std::int64_t> kA = {1, 1, 2, 1, 1, 1, 1, 2, 1, 1, 2, 1, 1, 2, 2};
const std::vector<std::int64_t> kP = {1, 1, -1, 1, 1, -1, -1, 1, 1, 1, -1, -1, 1, -1, -1};
const std::vector<std::int64_t> kQ = {0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 1, 1};
const std::vector<std::int64_t> kD = {1, 0, 1, -1, 0, 1, 0, -1, 0, 0, 1, 0, -1, 1, 0};
const std::vector<std::int64_t> kDp = {1, 0, 1, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0};
const std::vector<std::int64_t> kEp = {1, 2, 4, 5, 6, 7, 8, 10, 11, 12, 14, 15, 16, 18, 20};
const std::vector<std::int64_t> kSp = {1, 2, 3, 5, 6, 7, 8, 9, 11, 12, 13, 15, 16, 17, 19};
const std::vector<std::int64_t> kB = kA;
const std::vector<std::int64_t> kE = {2, 3, 7, 8, 10, 11, 13, 15, 17, 18, 22, 23, 25, 27, 31};
const std::vector<std::int64_t> kS = {1, 3, 4, 8, 9, 11, 12, 14, 16, 18, 19, 23, 24, 26, 28};
const std::vector<std::int64_t> kR = {2, 1, 4, 1, 2, 1, 2, 2, 2, 1, 4, 1, 2, 2, 4};
const std::vector<std::int64_t> kSigma = {2, 2, 4, 2, 2, 2, 2, 4, 2, 2, 4, 2, 2, 4, 4};
const std::vector<std::int64_t> kG = {1, 2, 2, 3, 4, 5, 6, 6, 7, 8, 8, 9, 10, 10, 10};
const std::vector<std::int64_t> kH = {1, 2, 0, 1, 2, 3, 4, 2, 3, 4, 2, 3, 4, 2, 0};

}  // namespace

TEST_CASE("table of first fifteen terms") {
  Sequences seqs;
  CHECK(widen(seqs.a(15)) == kA);
  CHECK(widen(seqs.p(15)) == kP);
  CHECK(widen(seqs.q(15)) == kQ);
  CHECK(widen(seqs.d(15)) == kD);
  CHECK(widen(seqs.dprime(15)) == kDp);
  CHECK(widen(seqs.eprime(15)) == kEp);
  CHECK(widen(seqs.sprime(15)) == kSp);
  CHECK(widen(seqs.b(15)) == kB);
  CHECK(widen(seqs.e(15)) == kE);
  CHECK(widen(seqs.s(15)) == kS);
  CHECK(widen(seqs.r(15)) == kR);
  CHECK(widen(seqs.sigma(15)) == kSigma);
  CHECK(widen(seqs.g(15)) == kG);
  CHECK(widen(seqs.h(15)) == kH);
}

TEST_CASE("cloitre generator basics") {
  Sequences seqs;
  CHECK(widen(seqs.a(1)) == std::vector<std::int64_t>{1});
  CHECK(widen(seqs.a(3)) == std::vector<std::int64_t>{1, 1, 2});
  CHECK_THROWS(seqs.a(0));
}

TEST_CASE("unfold") {
  CHECK(unfold(std::vector<int>{1}) == std::vector<std::int8_t>{1});
  CHECK(unfold(std::vector<int>{1, 1}) == std::vector<std::int8_t>{1, 1, -1});
  CHECK(unfold(std::vector<int>{1, 1, 1}) == std::vector<std::int8_t>{1, 1, -1, 1, 1, -1, -1});
  CHECK(unfold(std::vector<int>{}).empty());
  CHECK(unfold(std::vector<int>{-1}) == std::vector<std::int8_t>{-1});
  CHECK_THROWS(unfold(std::vector<int>{1, 0}));

  // Each unfolding is a prefix of the next (all-ones instructions).
  std::vector<int> instr;
  std::vector<std::int8_t> prev;
  for (int k = 1; k <= 10; ++k) {
    instr.push_back(1);
    std::vector<std::int8_t> cur = unfold(instr);
    CHECK(cur.size() == (std::size_t{1} << k) - 1);
    CHECK(std::equal(prev.begin(), prev.end(), cur.begin()));
    prev = std::move(cur);
  }

  // p = (-1)^q against the unfolding.
  Sequences seqs;
  auto p = seqs.p(std::int64_t(prev.size()));
  for (std::size_t i = 0; i < prev.size(); ++i) CHECK(p[i] == prev[i]);
}

TEST_CASE("q recurrence and point evaluation") {
  Sequences seqs;
  auto q = seqs.q(4100);
  CHECK(q_at(0) == 0);
  for (std::int64_t n = 1; n <= 1000; ++n) {
    CHECK(q[std::size_t(2 * n - 1)] == q[std::size_t(n - 1)]);  // q(2n) = q(n)
    CHECK(q[std::size_t(4 * n)] == 0);                          // q(4n+1) = 0
    CHECK(q[std::size_t(4 * n + 2)] == 1);                      // q(4n+3) = 1
  }
  // d(1) is a stated special case, not the difference formula.
  CHECK(seqs.d(1)[0] == 1);
  CHECK(q_at(1) - q_at(0) == 0);
}

TEST_CASE("run_decompose") {
  std::vector<std::int8_t> data = {1, 0, 1, 1, 0, 1, 0, 1, 0, 0, 1};
  RunDecomposition rd = run_decompose(data, 5);
  REQUIRE(rd.runs.size() == 5);
  CHECK(rd.runs[0].value == 1);
  CHECK(rd.runs[0].length == 1);
  CHECK(rd.runs[0].start == 1);
  CHECK(rd.runs[0].end == 1);
  CHECK(rd.runs[2].value == 1);
  CHECK(rd.runs[2].length == 2);
  CHECK(rd.runs[2].start == 3);
  CHECK(rd.runs[2].end == 4);
  for (std::size_t i = 0; i + 1 < rd.runs.size(); ++i) {
    CHECK(rd.runs[i].end == rd.runs[i].start + rd.runs[i].length - 1);
    CHECK(rd.runs[i + 1].start == rd.runs[i].end + 1);
    CHECK(rd.runs[i + 1].value != rd.runs[i].value);
  }
  CHECK(rd.runs[0].start == 1);

  // The last run of the data has no witness of maximality.
  std::vector<std::int8_t> constant = {5, 5, 5};
  CHECK_THROWS(run_decompose(constant, 1));
  CHECK_THROWS(run_decompose(data, 99));
  CHECK_THROWS(run_decompose(data, 0));
}

TEST_CASE("level-1 and level-2 run views agree with run_decompose") {
  Sequences seqs;
  const std::int64_t n = 500;
  auto dp = seqs.dprime(4 * n);
  RunDecomposition rd = run_decompose(dp, n);
  auto b = seqs.b(n);
  auto ep = seqs.eprime(n);
  auto sp = seqs.sprime(n);
  for (std::int64_t i = 0; i < n; ++i) {
    CHECK(rd.runs[std::size_t(i)].length == b[std::size_t(i)]);
    CHECK(rd.runs[std::size_t(i)].end == ep[std::size_t(i)]);
    CHECK(rd.runs[std::size_t(i)].start == sp[std::size_t(i)]);
  }
}

TEST_CASE("sequence invariants at scale") {
  Sequences seqs;
  const std::int64_t n = 100000;

  // a = b: the self-generating rule meets the paperfolding run lengths.
  auto a = seqs.a(n);
  auto b = seqs.b(n);
  CHECK(std::equal(a.begin(), a.end(), b.begin()));

  // e' and e are the partial sums of b and r.
  auto ep = seqs.eprime(n);
  auto r = seqs.r(n);
  auto e = seqs.e(n);
  std::int64_t sum = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    sum += b[std::size_t(i)];
    CHECK(ep[std::size_t(i)] == sum);
  }
  sum = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    sum += r[std::size_t(i)];
    CHECK(e[std::size_t(i)] == sum);
  }

  // Alphabet bounds and the run-sum property.
  auto sigma = seqs.sigma(n);
  for (std::int64_t i = 0; i < n; ++i) {
    CHECK((b[std::size_t(i)] == 1 || b[std::size_t(i)] == 2));
    CHECK((r[std::size_t(i)] == 1 || r[std::size_t(i)] == 2 || r[std::size_t(i)] == 4));
    CHECK(sigma[std::size_t(i)] == 2 * b[std::size_t(i)]);
  }

  // Runs of b alternate between 1s and 2s starting with 1.
  auto s = seqs.s(n);
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t run_value = b[std::size_t(s[std::size_t(i)] - 1)];
    CHECK(run_value == (i % 2 == 0 ? 1 : 2));
  }

  // Theorem bound on h.
  auto h = seqs.h(n);
  for (std::int64_t i = 0; i < n; ++i) {
    CHECK(h[std::size_t(i)] >= 0);
    CHECK(h[std::size_t(i)] <= 4);
  }
}

TEST_CASE("w definition and recurrence") {
  Sequences seqs;
  auto w = seqs.w(15);
  CHECK(w[0] == 1);
  CHECK(w[1] == 2);
  CHECK(w[2] == 3);
  CHECK(w[3] == 3);
  CHECK(w[14] == 12);

  const std::int64_t n = 100000;
  auto wts = seqs.w(2 * n + 1);
  auto ep = seqs.eprime(2 * n + 1);
  // Definition: w(k) is the least t with e'(t) >= k.
  for (std::int64_t k = 1; k <= 200; ++k) {
    std::int64_t t = wts[std::size_t(k - 1)];
    CHECK(ep[std::size_t(t - 1)] >= k);
    if (t > 1) CHECK(ep[std::size_t(t - 2)] < k);
  }
  // Recurrence from the OEIS entry.
  for (std::int64_t k = 1; k <= n; ++k) {
    CHECK(wts[std::size_t(2 * k - 1)] ==
          wts[std::size_t(2 * k - 2)] + (wts[std::size_t(k - 1)] % 2));
    CHECK(wts[std::size_t(2 * k)] == wts[std::size_t(2 * k - 1)] + 1);
  }
  // Nondecreasing with steps in {0,1}.
  for (std::int64_t k = 1; k < 1000; ++k) {
    std::int64_t diff = wts[std::size_t(k)] - wts[std::size_t(k - 1)];
    CHECK((diff == 0 || diff == 1));
  }
}

TEST_CASE("index-0 conventions") {
  CHECK(Sequences::q0 == 0);
  CHECK(Sequences::eprime0 == 0);
}

TEST_CASE("generate dispatch and formats") {
  Sequences seqs;
  CHECK(generate(seqs, "h", 15) == kH);
  CHECK(generate(seqs, "w", 1) == std::vector<std::int64_t>{1});
  CHECK_THROWS(generate(seqs, "nope", 5));
  CHECK_THROWS(generate(seqs, "a", 0));

  std::ostringstream bfile;
  write_bfile(bfile, generate(seqs, "a", 3));
  CHECK(bfile.str() == "1 1\n2 1\n3 2\n");

  std::istringstream in("0 0\n1 1\n2 2\n");
  auto pairs = read_bfile(in);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == std::pair<std::int64_t, std::int64_t>{0, 0});

  std::ostringstream csv;
  write_table_csv(csv, seqs, 1, 2);
  CHECK(csv.str() ==
        "n,a,p,q,d,dprime,eprime,sprime,b,e,s,r,sigma,g,h,w\n"
        "1,1,1,0,1,1,1,1,1,2,1,2,2,1,1,1\n"
        "2,1,1,0,0,0,2,2,1,3,3,1,2,2,2,2\n");
}

TEST_CASE("spans grow and stay memoized") {
  Sequences seqs;
  auto first = widen(seqs.b(10));
  auto more = widen(seqs.b(5000));
  CHECK(std::equal(first.begin(), first.end(), more.begin()));
  auto again = widen(seqs.b(10));
  CHECK(first == again);
}
