#include "foldrun/guess.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace foldrun::guess {

using aut::Dfa;
using aut::Dfao;
using aut::State;

Dfao guess_dfao(std::span<const int> samples, const DfaoGuessParams& params) {
  if (params.depth < 1 || params.check_length < 2)
    throw std::invalid_argument("guess_dfao: bad parameters");
  const std::int64_t L = params.check_length;
  const std::int64_t need = (std::int64_t(1) << params.depth) * (L - 1) + (std::int64_t(1) << params.depth);
  if (std::int64_t(samples.size()) <= need)
    throw std::runtime_error("guess_dfao: insufficient data: need more than " +
                             std::to_string(need) + " samples for depth " +
                             std::to_string(params.depth) + ", got " +
                             std::to_string(samples.size()));

  struct Node {
    int e;
    std::int64_t r;
  };
  auto fingerprint = [&](int e, std::int64_t r) {
    std::vector<int> fp(static_cast<std::size_t>(L));
    for (std::int64_t n = 0; n < L; ++n) fp[std::size_t(n)] = samples[std::size_t((n << e) + r)];
    return fp;
  };

  std::map<std::vector<int>, State> index;
  std::vector<Node> reps;
  Dfao out(0);

  auto intern = [&](int e, std::int64_t r) {
    auto fp = fingerprint(e, r);
    auto [it, inserted] = index.try_emplace(std::move(fp), State(index.size()));
    if (inserted) {
      if (e > params.depth)
        throw std::runtime_error("guess_dfao: kernel did not close within depth " +
                                 std::to_string(params.depth) +
                                 " (new class at residue " + std::to_string(r) + ")");
      reps.push_back({e, r});
      out.output.push_back(samples[std::size_t(r)]);
      out.trans.resize(reps.size() * 2);
    }
    return it->second;
  };

  intern(0, 0);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    Node node = reps[i];  // copy: reps may reallocate
    out.set_next(State(i), 0, intern(node.e + 1, node.r));
    out.set_next(State(i), 1, intern(node.e + 1, node.r + (std::int64_t(1) << node.e)));
  }

  for (std::size_t n = 0; n < samples.size(); ++n) {
    if (out.eval(n) != samples[n])
      throw std::runtime_error("guess_dfao: replay mismatch at n=" + std::to_string(n) +
                               " (candidate disagrees with its own samples)");
  }
  return out;
}

namespace {

// Residual of a pair-word prefix (length ell, decoded values n0, z0) against
// the sampled function: for each row m (i.e. n = n0 + 2^ell m inside the
// sample range), the unique accepting column k with z(n) = z0 + 2^ell k, if
// one exists.  A row whose n was sampled but admits no such k is all-reject;
// a row whose n is missing from the samples carries no labels at all.
struct Row {
  enum class Kind { Unknown, NoColumn, Column };
  Kind kind = Kind::Unknown;
  std::int64_t k = 0;
};

struct Residual {
  int ell = 0;
  std::int64_t n0 = 0, z0 = 0;
  std::vector<Row> rows;  // by row index m
};

bool consistent(const Residual& a, const Residual& b, int cutoff) {
  int ell = std::max(a.ell, b.ell);
  if (cutoff - ell < 0) return true;
  std::int64_t horizon = std::int64_t(1) << (cutoff - ell);
  std::size_t rows = std::min(a.rows.size(), b.rows.size());
  rows = std::min<std::size_t>(rows, std::size_t(horizon));
  for (std::size_t m = 0; m < rows; ++m) {
    const Row& ra = a.rows[m];
    const Row& rb = b.rows[m];
    if (ra.kind == Row::Kind::Unknown || rb.kind == Row::Kind::Unknown) continue;
    // Beyond-horizon columns are unobservable within the labeled words.
    std::int64_t ka = (ra.kind == Row::Kind::Column && ra.k < horizon) ? ra.k : -1;
    std::int64_t kb = (rb.kind == Row::Kind::Column && rb.k < horizon) ? rb.k : -1;
    if (ka != kb) return false;
  }
  return true;
}

}  // namespace

Dfa guess_synchronized(std::span<const std::pair<std::int64_t, std::int64_t>> pairs,
                       const SyncGuessParams& params) {
  if (pairs.empty()) throw std::invalid_argument("guess_synchronized: no samples");
  if (params.cutoff < 2 || params.cutoff > 62)
    throw std::invalid_argument("guess_synchronized: bad cutoff");

  std::unordered_map<std::int64_t, std::int64_t> value;
  std::int64_t max_n = 0;
  for (const auto& [n, z] : pairs) {
    if (n < 0 || z < 0) throw std::invalid_argument("guess_synchronized: negative sample");
    auto [it, inserted] = value.try_emplace(n, z);
    if (!inserted && it->second != z)
      throw std::runtime_error("guess_synchronized: inconsistent samples at n=" +
                               std::to_string(n));
    max_n = std::max(max_n, n);
  }

  auto residual = [&](int ell, std::int64_t n0, std::int64_t z0) {
    Residual res;
    res.ell = ell;
    res.n0 = n0;
    res.z0 = z0;
    const std::int64_t step = std::int64_t(1) << ell;
    for (std::int64_t n = n0; n <= max_n; n += step) {
      Row row;
      auto it = value.find(n);
      if (it == value.end()) {
        row.kind = Row::Kind::Unknown;
      } else {
        std::int64_t diff = it->second - z0;
        if (diff >= 0 && diff % step == 0) {
          row.kind = Row::Kind::Column;
          row.k = diff / step;
        } else {
          row.kind = Row::Kind::NoColumn;
        }
      }
      res.rows.push_back(row);
    }
    return res;
  };

  std::vector<Residual> reps;
  Dfa out(2, 0);

  auto classify = [&](int ell, std::int64_t n0, std::int64_t z0) -> State {
    if (n0 > max_n)
      throw std::runtime_error(
          "guess_synchronized: insufficient data: uninformative frontier at depth " +
          std::to_string(ell) + " (decoded index " + std::to_string(n0) +
          " exceeds the sampled range)");
    Residual res = residual(ell, n0, z0);
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (consistent(res, reps[i], params.cutoff)) return State(i);
    if (reps.size() >= params.state_bound)
      throw std::runtime_error("guess_synchronized: state bound " +
                               std::to_string(params.state_bound) + " exceeded");
    auto it = value.find(n0);
    bool acc = it != value.end() && it->second == z0;
    reps.push_back(std::move(res));
    out.accepting.push_back(acc);
    out.trans.resize(reps.size() * 4);
    return State(reps.size() - 1);
  };

  classify(0, 0, 0);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    // Symbol packs (digit of n, digit of z) with the n digit most significant.
    int ell = reps[i].ell;
    std::int64_t n0 = reps[i].n0, z0 = reps[i].z0;
    for (int sym = 0; sym < 4; ++sym) {
      int bn = (sym >> 1) & 1, bz = sym & 1;
      State t = classify(ell + 1, n0 + (std::int64_t(bn) << ell), z0 + (std::int64_t(bz) << ell));
      out.set_next(State(i), sym, t);
    }
  }

  Dfa candidate = aut::minimized(out);
  if (!aut::is_padding_closed(candidate))
    throw std::runtime_error("guess_synchronized: candidate is not padding-closed; "
                             "samples do not look like a synchronized function");

  // Replay: every sampled pair accepted, nearby wrong values rejected.
  for (const auto& [n, z] : pairs) {
    if (!candidate.accepts({std::uint64_t(n), std::uint64_t(z)}))
      throw std::runtime_error("guess_synchronized: replay mismatch: candidate rejects sampled (" +
                               std::to_string(n) + ", " + std::to_string(z) + ")");
    const std::int64_t wrong[] = {z - 2, z - 1, z + 1, z + 2, 0, 2 * z + 1};
    for (std::int64_t wz : wrong) {
      if (wz < 0 || wz == z) continue;
      if (candidate.accepts({std::uint64_t(n), std::uint64_t(wz)}))
        throw std::runtime_error("guess_synchronized: replay mismatch: candidate accepts (" +
                                 std::to_string(n) + ", " + std::to_string(wz) + ")");
    }
  }
  return candidate;
}

}  // namespace foldrun::guess
