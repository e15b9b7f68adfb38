#include "foldrun/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace foldrun::aut {

namespace {

constexpr std::size_t kSubsetCap = std::size_t{1} << 20;

struct PairHash {
  std::size_t operator()(const std::pair<State, State>& p) const {
    return std::hash<std::uint64_t>()((std::uint64_t(p.first) << 32) | p.second);
  }
};

// Breadth-first reachability from the initial state, symbols in ascending
// order.  The returned order is the canonical numbering.
std::vector<State> bfs_order(const Dfa& m) {
  std::vector<State> order;
  std::vector<bool> seen(m.num_states(), false);
  order.push_back(m.initial);
  seen[m.initial] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    State s = order[i];
    for (int c = 0; c < m.num_symbols(); ++c) {
      State t = m.next(s, c);
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

// Restrict to reachable states and renumber canonically.
Dfa trimmed(const Dfa& m) {
  std::vector<State> order = bfs_order(m);
  std::vector<State> remap(m.num_states(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = State(i);
  Dfa out(m.arity, order.size());
  out.initial = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.accepting[i] = m.accepting[order[i]];
    for (int c = 0; c < m.num_symbols(); ++c)
      out.set_next(State(i), c, remap[m.next(order[i], c)]);
  }
  return out;
}

}  // namespace

Dfa::Dfa(int arity_, std::size_t num_states)
    : arity(arity_),
      trans(num_states * (std::size_t{1} << arity_), 0),
      accepting(num_states, false) {
  if (arity_ < 0 || arity_ > 20) throw std::invalid_argument("dfa arity out of range");
}

bool Dfa::accepts(std::span<const std::uint64_t> tuple) const {
  if (int(tuple.size()) != arity) throw std::invalid_argument("tuple arity mismatch");
  int len = 0;
  for (std::uint64_t v : tuple)
    while (v >> len) ++len;
  State s = initial;
  for (int i = 0; i < len; ++i) {
    int sym = 0;
    for (int t = 0; t < arity; ++t)
      sym |= int((tuple[t] >> i) & 1) << (arity - 1 - t);
    s = next(s, sym);
  }
  return accepting[s];
}

bool Dfa::accepts(std::initializer_list<std::uint64_t> tuple) const {
  return accepts(std::span<const std::uint64_t>(tuple.begin(), tuple.size()));
}

bool apply(BoolOp op, bool a, bool b) {
  switch (op) {
    case BoolOp::And: return a && b;
    case BoolOp::Or: return a || b;
    case BoolOp::Xor: return a != b;
    case BoolOp::Implies: return !a || b;
    case BoolOp::Iff: return a == b;
    case BoolOp::Diff: return a && !b;
  }
  return false;
}

Dfa product(const Dfa& a, const Dfa& b, BoolOp op) {
  if (a.arity != b.arity) throw std::invalid_argument("product arity mismatch");
  const int nsym = a.num_symbols();
  std::unordered_map<std::pair<State, State>, State, PairHash> index;
  std::vector<std::pair<State, State>> pending;
  Dfa out(a.arity, 0);

  auto intern = [&](State x, State y) {
    auto [it, inserted] = index.try_emplace({x, y}, State(index.size()));
    if (inserted) {
      pending.emplace_back(x, y);
      out.accepting.push_back(apply(op, a.accepting[x], b.accepting[y]));
      out.trans.resize(out.accepting.size() * nsym);
    }
    return it->second;
  };

  out.initial = intern(a.initial, b.initial);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto [x, y] = pending[i];
    for (int c = 0; c < nsym; ++c)
      out.set_next(State(i), c, intern(a.next(x, c), b.next(y, c)));
  }
  return minimized(out);
}

Dfa complement(Dfa m) {
  m.accepting.flip();
  return m;
}

Dfa project(const Dfa& m, int track) {
  if (m.arity < 1) throw std::invalid_argument("cannot project arity-0 automaton");
  if (track < 0 || track >= m.arity) throw std::invalid_argument("projection track out of range");
  const int k = m.arity;
  const int nk = k - 1;
  const int nsym_new = 1 << nk;
  const std::size_t n = m.num_states();

  // Old symbol for a new symbol plus a bit b on the deleted track.
  auto old_symbol = [&](int newsym, int b) {
    int sym = 0;
    int ti = 0;
    for (int t = 0; t < k; ++t) {
      int bit;
      if (t == track) {
        bit = b;
      } else {
        bit = (newsym >> (nk - 1 - ti)) & 1;
        ++ti;
      }
      sym |= bit << (k - 1 - t);
    }
    return sym;
  };

  // Zero-suffix saturation: accepting states reachable via symbols that are
  // zero on all kept tracks (any digit on the deleted track).
  std::vector<bool> sat = m.accepting;
  const int zero0 = old_symbol(0, 0);
  const int zero1 = old_symbol(0, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (!sat[s] && (sat[m.next(State(s), zero0)] || sat[m.next(State(s), zero1)])) {
        sat[s] = true;
        changed = true;
      }
    }
  }

  // Subset construction.
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> subsets;
  Dfa out(nk, 0);

  auto intern = [&](std::vector<State> set) {
    auto [it, inserted] = index.try_emplace(std::move(set), State(index.size()));
    if (inserted) {
      if (index.size() > kSubsetCap)
        throw std::runtime_error("projection subset construction exceeded 2^20 subsets (track " +
                                 std::to_string(track) + ")");
      subsets.push_back(it->first);
      bool acc = false;
      for (State q : it->first) acc = acc || sat[q];
      out.accepting.push_back(acc);
      out.trans.resize(out.accepting.size() * nsym_new);
    }
    return it->second;
  };

  out.initial = intern({m.initial});
  std::vector<bool> mark(n, false);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (int c = 0; c < nsym_new; ++c) {
      std::vector<State> nxt;
      const std::vector<State>& cur = subsets[i];
      for (State q : cur) {
        for (int b = 0; b < 2; ++b) {
          State t = m.next(q, old_symbol(c, b));
          if (!mark[t]) {
            mark[t] = true;
            nxt.push_back(t);
          }
        }
      }
      std::sort(nxt.begin(), nxt.end());
      for (State t : nxt) mark[t] = false;
      out.set_next(State(i), c, intern(std::move(nxt)));
    }
  }
  return minimized(out);
}

namespace detail {

// Hopcroft partition refinement on a complete deterministic transition
// table.  `cls` holds the initial class of each state; returns the final
// class ids, renumbered so that classes appear in order of their least
// state.
std::vector<std::uint32_t> refine_partition(const std::vector<State>& trans, std::size_t n,
                                            int nsym, std::vector<std::uint32_t> cls) {
  if (n == 0) return cls;
  // Inverse transitions, grouped by symbol.
  std::vector<std::vector<State>> inv(std::size_t(nsym) * n);
  for (std::size_t s = 0; s < n; ++s)
    for (int c = 0; c < nsym; ++c)
      inv[std::size_t(c) * n + trans[s * nsym + c]].push_back(State(s));

  std::uint32_t nclasses = 0;
  for (std::size_t s = 0; s < n; ++s) nclasses = std::max(nclasses, cls[s] + 1);

  std::vector<std::vector<State>> members(nclasses);
  for (std::size_t s = 0; s < n; ++s) members[cls[s]].push_back(State(s));

  std::deque<std::pair<std::uint32_t, int>> work;
  std::vector<std::vector<bool>> in_work;  // per symbol, per class
  in_work.assign(nsym, std::vector<bool>());
  auto push = [&](std::uint32_t c, int a) {
    if (in_work[a].size() <= c) in_work[a].resize(c + 1, false);
    if (!in_work[a][c]) {
      in_work[a][c] = true;
      work.emplace_back(c, a);
    }
  };
  for (std::uint32_t c = 0; c < nclasses; ++c)
    for (int a = 0; a < nsym; ++a) push(c, a);

  std::vector<State> touched_states;
  std::vector<std::uint32_t> touched_classes;
  std::vector<std::uint32_t> touch_count(nclasses, 0);
  std::vector<bool> is_touched(n, false);

  while (!work.empty()) {
    auto [splitter, a] = work.front();
    work.pop_front();
    in_work[a][splitter] = false;

    // X = preimage of the splitter class under symbol a.
    touched_states.clear();
    touched_classes.clear();
    for (State q : members[splitter]) {
      for (State p : inv[std::size_t(a) * n + q]) {
        if (is_touched[p]) continue;
        is_touched[p] = true;
        touched_states.push_back(p);
        std::uint32_t c = cls[p];
        if (touch_count[c] == 0) touched_classes.push_back(c);
        ++touch_count[c];
      }
    }
    for (std::uint32_t c : touched_classes) {
      if (touch_count[c] < members[c].size()) {
        std::uint32_t nc = nclasses++;
        members.emplace_back();
        touch_count.push_back(0);
        std::vector<State> keep;
        std::vector<State> moved;
        keep.reserve(members[c].size() - touch_count[c]);
        moved.reserve(touch_count[c]);
        for (State p : members[c])
          (is_touched[p] ? moved : keep).push_back(p);
        members[c] = std::move(keep);
        members[nc] = std::move(moved);
        for (State p : members[nc]) cls[p] = nc;
        for (int b = 0; b < nsym; ++b) {
          if (c < in_work[b].size() && in_work[b][c])
            push(nc, b);  // splitter still pending: both halves needed
          else
            push(members[c].size() <= members[nc].size() ? c : nc, b);
        }
      }
      touch_count[c] = 0;
    }
    for (State p : touched_states) is_touched[p] = false;
  }

  // Renumber classes by least member for determinism.
  std::vector<std::uint32_t> rename(nclasses, UINT32_MAX);
  std::uint32_t next_id = 0;
  for (std::size_t s = 0; s < n; ++s)
    if (rename[cls[s]] == UINT32_MAX) rename[cls[s]] = next_id++;
  for (std::size_t s = 0; s < n; ++s) cls[s] = rename[cls[s]];
  return cls;
}

}  // namespace detail

Dfa minimized(const Dfa& m) {
  Dfa r = trimmed(m);
  const std::size_t n = r.num_states();
  const int nsym = r.num_symbols();
  std::vector<std::uint32_t> cls(n);
  for (std::size_t s = 0; s < n; ++s) cls[s] = r.accepting[s] ? 1 : 0;
  cls = detail::refine_partition(r.trans, n, nsym, std::move(cls));

  std::uint32_t nclasses = 0;
  for (std::size_t s = 0; s < n; ++s) nclasses = std::max(nclasses, cls[s] + 1);

  Dfa q(r.arity, nclasses);
  q.initial = cls[r.initial];
  std::vector<bool> done(nclasses, false);
  for (std::size_t s = 0; s < n; ++s) {
    std::uint32_t c = cls[s];
    if (done[c]) continue;
    done[c] = true;
    q.accepting[c] = r.accepting[s];
    for (int a = 0; a < nsym; ++a) q.set_next(c, a, cls[r.next(State(s), a)]);
  }
  return trimmed(q);
}

bool equivalent(const Dfa& a, const Dfa& b, std::vector<std::uint64_t>* witness) {
  if (a.arity != b.arity) throw std::invalid_argument("equivalence arity mismatch");
  Dfa diff = product(a, b, BoolOp::Xor);
  auto w = shortest_accepted(diff);
  if (!w) return true;
  if (witness) *witness = *w;
  return false;
}

std::optional<std::vector<std::uint64_t>> shortest_accepted(const Dfa& m) {
  // BFS with predecessor tracking; symbols in ascending order makes the
  // witness the lexicographically least among the shortest.
  std::vector<int> pred_sym(m.num_states(), -1);
  std::vector<State> pred_state(m.num_states(), 0);
  std::vector<bool> seen(m.num_states(), false);
  std::deque<State> queue;
  seen[m.initial] = true;
  queue.push_back(m.initial);
  State hit = 0;
  bool found = m.accepting[m.initial];
  while (!queue.empty() && !found) {
    State s = queue.front();
    queue.pop_front();
    for (int c = 0; c < m.num_symbols() && !found; ++c) {
      State t = m.next(s, c);
      if (!seen[t]) {
        seen[t] = true;
        pred_sym[t] = c;
        pred_state[t] = s;
        if (m.accepting[t]) {
          hit = t;
          found = true;
        }
        queue.push_back(t);
      }
    }
  }
  if (!found) {
    if (!m.accepting[m.initial]) return std::nullopt;
    hit = m.initial;
  }
  std::vector<int> word;
  for (State s = hit; pred_sym[s] >= 0; s = pred_state[s]) word.push_back(pred_sym[s]);
  std::reverse(word.begin(), word.end());
  std::vector<std::uint64_t> tuple(m.arity, 0);
  for (std::size_t i = 0; i < word.size(); ++i)
    for (int t = 0; t < m.arity; ++t)
      tuple[t] |= std::uint64_t((word[i] >> (m.arity - 1 - t)) & 1) << i;
  return tuple;
}

bool is_padding_closed(const Dfa& m) {
  for (State s : bfs_order(m))
    if (m.accepting[s] != m.accepting[m.next(s, 0)]) return false;
  return true;
}

Dfa padding_normalized(const Dfa& m, bool* was_closed) {
  const std::size_t n = m.num_states();
  // Downward: accept u when u·0^j is accepted.
  std::vector<bool> sat = m.accepting;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (!sat[s] && sat[m.next(State(s), 0)]) {
        sat[s] = true;
        changed = true;
      }
    }
  }
  // Upward: accept u when u = v·0^k with v already accepted.  State 2q+f,
  // where f means "the prefix read so far, minus some trailing zeros, is
  // accepted".  Reading a zero keeps the flag; any symbol re-sets it when the
  // new prefix itself is accepted.
  Dfa up(m.arity, 2 * n);
  for (std::size_t s = 0; s < n; ++s) {
    for (int f = 0; f < 2; ++f) {
      for (int c = 0; c < m.num_symbols(); ++c) {
        State t = m.next(State(s), c);
        bool nf = sat[t] || (c == 0 && f == 1);
        up.set_next(State(2 * s + f), c, State(2 * t + (nf ? 1 : 0)));
      }
      up.accepting[2 * s + f] = (f == 1);
    }
  }
  up.initial = State(2 * m.initial + (sat[m.initial] ? 1 : 0));
  Dfa out = minimized(up);
  if (was_closed) *was_closed = equivalent(out, m);
  return out;
}

Dfa insert_track(const Dfa& m, int position) {
  if (position < 0 || position > m.arity) throw std::invalid_argument("insert_track position");
  const int k = m.arity + 1;
  Dfa out(k, m.num_states());
  out.initial = m.initial;
  out.accepting = m.accepting;
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    for (int sym = 0; sym < (1 << k); ++sym) {
      int old_sym = 0;
      int ti = 0;
      for (int t = 0; t < k; ++t) {
        if (t == position) continue;
        old_sym |= ((sym >> (k - 1 - t)) & 1) << (m.arity - 1 - ti);
        ++ti;
      }
      out.set_next(State(s), sym, m.next(State(s), old_sym));
    }
  }
  return out;
}

Dfa permute_tracks(const Dfa& m, std::span<const int> perm) {
  if (int(perm.size()) != m.arity) throw std::invalid_argument("permutation arity mismatch");
  const int k = m.arity;
  Dfa out(k, m.num_states());
  out.initial = m.initial;
  out.accepting = m.accepting;
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    for (int sym = 0; sym < (1 << k); ++sym) {
      int old_sym = 0;
      for (int i = 0; i < k; ++i) {
        int bit = (sym >> (k - 1 - i)) & 1;
        old_sym |= bit << (k - 1 - perm[i]);
      }
      out.set_next(State(s), sym, m.next(State(s), old_sym));
    }
  }
  return out;
}

std::size_t dead_state_count(const Dfa& m) {
  const std::size_t n = m.num_states();
  std::vector<bool> live = m.accepting;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (live[s]) continue;
      for (int c = 0; c < m.num_symbols(); ++c) {
        if (live[m.next(State(s), c)]) {
          live[s] = true;
          changed = true;
          break;
        }
      }
    }
  }
  std::size_t dead = 0;
  for (std::size_t s = 0; s < n; ++s)
    if (!live[s]) ++dead;
  return dead;
}

std::size_t live_state_count(const Dfa& m) { return m.num_states() - dead_state_count(m); }

std::vector<int> lsd_digits(std::uint64_t n) {
  std::vector<int> d;
  while (n) {
    d.push_back(int(n & 1));
    n >>= 1;
  }
  return d;
}

}  // namespace foldrun::aut
