#include "foldrun/sequences.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace foldrun::seq {

int q_at(std::uint64_t n) {
  if (n == 0) return 0;
  while ((n & 1) == 0) n >>= 1;
  return int((n >> 1) & 1);
}

std::vector<std::int8_t> unfold(std::span<const int> instructions) {
  for (int a : instructions)
    if (a != 1 && a != -1) throw std::invalid_argument("unfold: instructions must be +1 or -1");
  if (instructions.size() >= 27)
    throw std::invalid_argument("unfold: refusing to materialize 2^27 or more terms");
  std::vector<std::int8_t> p;
  p.reserve(instructions.empty() ? 0 : (std::size_t{1} << instructions.size()) - 1);
  for (int a : instructions) {
    std::size_t len = p.size();
    p.push_back(std::int8_t(a));
    for (std::size_t i = len; i-- > 0;) p.push_back(std::int8_t(-p[i]));
  }
  return p;
}

RunDecomposition run_decompose(std::span<const std::int8_t> s, std::int64_t count) {
  if (count < 1) throw std::invalid_argument("run_decompose: count must be >= 1");
  RunDecomposition out;
  out.runs.reserve(std::size_t(count));
  std::size_t i = 0;
  while (std::int64_t(out.runs.size()) < count) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    if (i >= s.size() || j >= s.size()) {
      // No differing symbol witnessed after position j-1: the run may extend.
      throw std::runtime_error("run_decompose: only " + std::to_string(out.runs.size()) +
                               " complete runs are determined by the given prefix, " +
                               std::to_string(count) + " requested");
    }
    out.runs.push_back(Run{s[i], std::int64_t(j - i), std::int64_t(i) + 1, std::int64_t(j)});
    i = j;
  }
  return out;
}

namespace {

// Growth with headroom so repeated limit+1 queries do not rescan.
std::int64_t grown(std::int64_t have, std::int64_t want) {
  return std::max(want, have * 2);
}

}  // namespace

std::span<const std::int8_t> Sequences::a(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  if (std::int64_t(a_.size()) < limit) {
    std::int64_t target = grown(std::int64_t(a_.size()), limit);
    a_.reserve(std::size_t(target));
    if (a_.empty()) {
      // Run 1 consumes a(1) = 1 before it is stored: two 1s.
      a_.push_back(1);
      a_.push_back(1);
      a_run_ = 1;
    }
    // Run k is made of 1s for odd k (length 2*a(k)) and of 2s for even k
    // (length a(k)); either way the run sums to 2*a(k).
    while (std::int64_t(a_.size()) < target) {
      ++a_run_;
      std::int64_t an = a_[std::size_t(a_run_ - 1)];
      if (a_run_ % 2 == 1) {
        for (std::int64_t k = 0; k < 2 * an; ++k) a_.push_back(1);
      } else {
        for (std::int64_t k = 0; k < an; ++k) a_.push_back(2);
      }
    }
  }
  return {a_.data(), std::size_t(limit)};
}

std::span<const std::int8_t> Sequences::p(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_q(limit);
  if (std::int64_t(p_.size()) < limit) {
    p_.reserve(q_.size());
    for (std::size_t i = p_.size(); i < q_.size(); ++i)
      p_.push_back(std::int8_t(1 - 2 * q_[i]));
  }
  return {p_.data(), std::size_t(limit)};
}

void Sequences::need_q(std::int64_t limit) {
  if (std::int64_t(q_.size()) >= limit) return;
  std::int64_t target = grown(std::int64_t(q_.size()), limit);
  q_.reserve(std::size_t(target));
  for (std::int64_t n = std::int64_t(q_.size()) + 1; n <= target; ++n)
    q_.push_back(std::int8_t(q_at(std::uint64_t(n))));
  // d and d' ride along with q.
  d_.reserve(std::size_t(target));
  dp_.reserve(std::size_t(target));
  for (std::int64_t n = std::int64_t(d_.size()) + 1; n <= target; ++n) {
    std::int8_t dn = (n == 1) ? 1 : std::int8_t(q_[std::size_t(n - 1)] - q_[std::size_t(n - 2)]);
    d_.push_back(dn);
    dp_.push_back(std::int8_t(dn < 0 ? -dn : dn));
  }
}

std::span<const std::int8_t> Sequences::q(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_q(limit);
  return {q_.data(), std::size_t(limit)};
}

std::span<const std::int8_t> Sequences::d(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_q(limit);
  return {d_.data(), std::size_t(limit)};
}

std::span<const std::int8_t> Sequences::dprime(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_q(limit);
  return {dp_.data(), std::size_t(limit)};
}

void Sequences::need_level1(std::int64_t limit) {
  if (std::int64_t(b_.size()) >= limit) return;
  std::int64_t target = grown(std::int64_t(b_.size()), limit);
  // Runs of d' have length at most 2, so 2*target+2 symbols witness target
  // complete runs; over-generate by the usual slack factor.
  need_q(2 * target + 8);
  while (std::int64_t(b_.size()) < target) {
    std::int64_t i = scanned_dp_;  // 0-based start of the current run
    std::int64_t j = i;
    while (j < std::int64_t(dp_.size()) && dp_[std::size_t(j)] == dp_[std::size_t(i)]) ++j;
    if (j >= std::int64_t(dp_.size()))
      throw std::logic_error("level-1 run scan ran out of data despite slack");
    b_.push_back(std::int8_t(j - i));
    sp_.push_back(i + 1);
    ep_.push_back(j);
    scanned_dp_ = j;
  }
}

std::span<const std::int8_t> Sequences::b(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_level1(limit);
  return {b_.data(), std::size_t(limit)};
}

std::span<const std::int64_t> Sequences::eprime(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_level1(limit);
  return {ep_.data(), std::size_t(limit)};
}

std::span<const std::int64_t> Sequences::sprime(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_level1(limit);
  return {sp_.data(), std::size_t(limit)};
}

void Sequences::need_level2(std::int64_t limit) {
  if (std::int64_t(r_.size()) >= limit) return;
  std::int64_t target = grown(std::int64_t(r_.size()), limit);
  // Runs of b have length at most 4.
  need_level1(4 * target + 8);
  while (std::int64_t(r_.size()) < target) {
    std::int64_t i = scanned_b_;
    std::int64_t j = i;
    while (j < std::int64_t(b_.size()) && b_[std::size_t(j)] == b_[std::size_t(i)]) ++j;
    if (j >= std::int64_t(b_.size()))
      throw std::logic_error("level-2 run scan ran out of data despite slack");
    r_.push_back(std::int8_t(j - i));
    s_.push_back(i + 1);
    e_.push_back(j);
    sigma_.push_back(std::int8_t((j - i) * b_[std::size_t(i)]));
    scanned_b_ = j;
  }
}

std::span<const std::int8_t> Sequences::r(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_level2(limit);
  return {r_.data(), std::size_t(limit)};
}

std::span<const std::int64_t> Sequences::e(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_level2(limit);
  return {e_.data(), std::size_t(limit)};
}

std::span<const std::int64_t> Sequences::s(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_level2(limit);
  return {s_.data(), std::size_t(limit)};
}

std::span<const std::int8_t> Sequences::sigma(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_level2(limit);
  return {sigma_.data(), std::size_t(limit)};
}

void Sequences::need_gh(std::int64_t limit) {
  if (std::int64_t(g_.size()) >= limit) return;
  std::int64_t target = grown(std::int64_t(g_.size()), limit);
  need_level1(target);
  g_.reserve(std::size_t(target));
  h_.reserve(std::size_t(target));
  std::int64_t count = g_.empty() ? 0 : g_.back();
  for (std::int64_t n = std::int64_t(g_.size()) + 1; n <= target; ++n) {
    if (b_[std::size_t(n - 1)] == 1) ++count;
    g_.push_back(count);
    h_.push_back(3 * count - 2 * n);
  }
}

std::span<const std::int64_t> Sequences::g(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_gh(limit);
  return {g_.data(), std::size_t(limit)};
}

std::span<const std::int64_t> Sequences::h(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_gh(limit);
  return {h_.data(), std::size_t(limit)};
}

void Sequences::need_w(std::int64_t limit) {
  if (std::int64_t(w_.size()) >= limit) return;
  std::int64_t target = grown(std::int64_t(w_.size()), limit);
  // e'(t) >= t, so the witness index never exceeds the requested bound.
  need_level1(target);
  w_.reserve(std::size_t(target));
  std::int64_t t = w_.empty() ? 1 : w_.back();
  for (std::int64_t n = std::int64_t(w_.size()) + 1; n <= target; ++n) {
    while (ep_[std::size_t(t - 1)] < n) ++t;
    w_.push_back(t);
  }
}

std::span<const std::int64_t> Sequences::w(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("sequence limit must be >= 1");
  need_w(limit);
  return {w_.data(), std::size_t(limit)};
}

std::vector<std::int64_t> generate(Sequences& seqs, std::string_view name, std::int64_t count) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  auto widen8 = [](std::span<const std::int8_t> v) {
    return std::vector<std::int64_t>(v.begin(), v.end());
  };
  auto copy64 = [](std::span<const std::int64_t> v) {
    return std::vector<std::int64_t>(v.begin(), v.end());
  };
  if (name == "a") return widen8(seqs.a(count));
  if (name == "p") return widen8(seqs.p(count));
  if (name == "q") return widen8(seqs.q(count));
  if (name == "d") return widen8(seqs.d(count));
  if (name == "dprime") return widen8(seqs.dprime(count));
  if (name == "b") return widen8(seqs.b(count));
  if (name == "r") return widen8(seqs.r(count));
  if (name == "sigma") return widen8(seqs.sigma(count));
  if (name == "eprime") return copy64(seqs.eprime(count));
  if (name == "sprime") return copy64(seqs.sprime(count));
  if (name == "e") return copy64(seqs.e(count));
  if (name == "s") return copy64(seqs.s(count));
  if (name == "g") return copy64(seqs.g(count));
  if (name == "h") return copy64(seqs.h(count));
  if (name == "w") return copy64(seqs.w(count));
  throw std::invalid_argument("unknown sequence '" + std::string(name) + "'");
}

const std::vector<std::string>& sequence_names() {
  static const std::vector<std::string> names = {"a", "p",      "q",      "d", "dprime",
                                                 "eprime", "sprime", "b", "e",
                                                 "s", "r",      "sigma",  "g", "h",
                                                 "w"};
  return names;
}

void write_bfile(std::ostream& out, std::span<const std::int64_t> terms, std::int64_t first_index) {
  for (std::size_t i = 0; i < terms.size(); ++i)
    out << (first_index + std::int64_t(i)) << ' ' << terms[i] << '\n';
}

std::vector<std::pair<std::int64_t, std::int64_t>> read_bfile(std::istream& in) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::int64_t n, v;
  while (in >> n >> v) pairs.emplace_back(n, v);
  return pairs;
}

void write_table_csv(std::ostream& out, Sequences& seqs, std::int64_t from, std::int64_t to) {
  if (from < 1 || to < from) throw std::invalid_argument("bad table range");
  out << "n";
  for (const std::string& name : sequence_names()) out << ',' << name;
  out << '\n';
  std::vector<std::vector<std::int64_t>> cols;
  for (const std::string& name : sequence_names()) cols.push_back(generate(seqs, name, to));
  for (std::int64_t n = from; n <= to; ++n) {
    out << n;
    for (const auto& col : cols) out << ',' << col[std::size_t(n - 1)];
    out << '\n';
  }
}

}  // namespace foldrun::seq
