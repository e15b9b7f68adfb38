#include "foldrun/dfao.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace foldrun::aut {

namespace detail {
std::vector<std::uint32_t> refine_partition(const std::vector<State>& trans, std::size_t n,
                                            int nsym, std::vector<std::uint32_t> cls);
}

int Dfao::eval(std::uint64_t n) const {
  State s = initial;
  while (n) {
    s = next(s, int(n & 1));
    n >>= 1;
  }
  return output[s];
}

namespace {

std::vector<State> bfs_order(const Dfao& m) {
  std::vector<State> order;
  std::vector<bool> seen(m.num_states(), false);
  order.push_back(m.initial);
  seen[m.initial] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int c = 0; c < 2; ++c) {
      State t = m.next(order[i], c);
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

Dfao trimmed(const Dfao& m) {
  std::vector<State> order = bfs_order(m);
  std::vector<State> remap(m.num_states(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = State(i);
  Dfao out(order.size());
  out.initial = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.output[i] = m.output[order[i]];
    out.set_next(State(i), 0, remap[m.next(order[i], 0)]);
    out.set_next(State(i), 1, remap[m.next(order[i], 1)]);
  }
  return out;
}

}  // namespace

Dfao minimized(const Dfao& m) {
  Dfao r = trimmed(m);
  const std::size_t n = r.num_states();
  // Initial partition: one class per output value, ordered by value.
  std::map<int, std::uint32_t> value_class;
  for (std::size_t s = 0; s < n; ++s) value_class[r.output[s]] = 0;
  std::uint32_t id = 0;
  for (auto& [v, c] : value_class) c = id++;
  std::vector<std::uint32_t> cls(n);
  for (std::size_t s = 0; s < n; ++s) cls[s] = value_class[r.output[s]];
  cls = detail::refine_partition(r.trans, n, 2, std::move(cls));

  std::uint32_t nclasses = 0;
  for (std::size_t s = 0; s < n; ++s) nclasses = std::max(nclasses, cls[s] + 1);
  Dfao q(nclasses);
  q.initial = cls[r.initial];
  std::vector<bool> done(nclasses, false);
  for (std::size_t s = 0; s < n; ++s) {
    std::uint32_t c = cls[s];
    if (done[c]) continue;
    done[c] = true;
    q.output[c] = r.output[s];
    q.set_next(c, 0, cls[r.next(State(s), 0)]);
    q.set_next(c, 1, cls[r.next(State(s), 1)]);
  }
  return trimmed(q);
}

Dfa output_relation(const Dfao& m, int value) {
  Dfa out(1, m.num_states());
  out.initial = m.initial;
  out.trans = m.trans;
  for (std::size_t s = 0; s < m.num_states(); ++s) out.accepting[s] = (m.output[s] == value);
  return minimized(out);
}

std::vector<int> output_alphabet(const Dfao& m) {
  std::vector<int> vals(m.output);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

Dfao combine(const std::vector<std::pair<Dfa, int>>& parts) {
  if (parts.empty()) throw std::invalid_argument("combine needs at least one part");
  for (const auto& [dfa, value] : parts)
    if (dfa.arity != 1) throw std::invalid_argument("combine parts must have arity 1");

  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> pending;
  Dfao out(0);
  std::vector<std::pair<State, int>> pred(1, {0, -1});  // discovery tree for witnesses

  auto value_at = [&](const std::vector<State>& tuple, std::uint64_t witness) {
    int hits = 0;
    int value = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].first.accepting[tuple[i]]) {
        ++hits;
        value = parts[i].second;
      }
    }
    if (hits != 1)
      throw std::runtime_error((hits == 0 ? std::string("combine coverage gap at n=")
                                          : std::string("combine overlap at n=")) +
                               std::to_string(witness));
    return value;
  };

  auto witness_of = [&](State s) {
    // Walking the discovery tree leaf-to-root yields digits msd-first.
    std::vector<int> bits;
    while (pred[s].second >= 0) {
      bits.push_back(pred[s].second);
      s = pred[s].first;
    }
    std::uint64_t n = 0;
    for (int bit : bits) n = (n << 1) | std::uint64_t(bit);
    return n;
  };

  std::vector<State> init;
  init.reserve(parts.size());
  for (const auto& [dfa, value] : parts) init.push_back(dfa.initial);
  index.emplace(init, 0);
  pending.push_back(init);
  out.output.push_back(value_at(init, 0));
  out.trans.resize(2);

  for (std::size_t i = 0; i < pending.size(); ++i) {
    std::vector<State> cur = pending[i];
    for (int c = 0; c < 2; ++c) {
      std::vector<State> nxt;
      nxt.reserve(parts.size());
      for (std::size_t j = 0; j < parts.size(); ++j)
        nxt.push_back(parts[j].first.next(cur[j], c));
      auto [it, inserted] = index.try_emplace(nxt, State(index.size()));
      if (inserted) {
        pending.push_back(nxt);
        pred.push_back({State(i), c});
        out.output.push_back(0);  // placeholder until witness known
        out.output.back() = value_at(nxt, witness_of(State(pending.size() - 1)));
        out.trans.resize(pending.size() * 2);
      }
      out.set_next(State(i), c, it->second);
    }
  }
  return minimized(out);
}

bool equivalent(const Dfao& a, const Dfao& b, std::uint64_t* witness) {
  struct Hash {
    std::size_t operator()(const std::pair<State, State>& p) const {
      return std::hash<std::uint64_t>()((std::uint64_t(p.first) << 32) | p.second);
    }
  };
  std::unordered_map<std::pair<State, State>, State, Hash> seen;
  std::vector<std::pair<State, State>> pending;
  std::vector<std::pair<State, int>> pred;
  auto intern = [&](State x, State y, State from, int bit) {
    auto [it, inserted] = seen.try_emplace({x, y}, State(seen.size()));
    if (inserted) {
      pending.emplace_back(x, y);
      pred.emplace_back(from, bit);
    }
    return inserted ? int(pending.size()) - 1 : -1;
  };
  intern(a.initial, b.initial, 0, -1);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto [x, y] = pending[i];
    if (a.output[x] != b.output[y]) {
      if (witness) {
        std::vector<int> bits;
        for (State s = State(i); pred[s].second >= 0; s = pred[s].first)
          bits.push_back(pred[s].second);
        std::uint64_t n = 0;
        for (int bit : bits) n = (n << 1) | std::uint64_t(bit);
        *witness = n;
      }
      return false;
    }
    for (int c = 0; c < 2; ++c) intern(a.next(x, c), b.next(y, c), State(i), c);
  }
  return true;
}

bool is_padding_consistent(const Dfao& m) {
  for (State s : bfs_order(m))
    if (m.output[s] != m.output[m.next(s, 0)]) return false;
  return true;
}

Dfao paperfolding_dfao() {
  // States: 0 = whole sequence, 1 = odd-index subsequence, 2 = constant 0,
  // 3 = constant 1; reached via q(2n)=q(n), q(4n+1)=0, q(4n+3)=1.
  Dfao m(4);
  m.initial = 0;
  m.set_next(0, 0, 0);
  m.set_next(0, 1, 1);
  m.set_next(1, 0, 2);
  m.set_next(1, 1, 3);
  m.set_next(2, 0, 2);
  m.set_next(2, 1, 2);
  m.set_next(3, 0, 3);
  m.set_next(3, 1, 3);
  m.output = {0, 0, 0, 1};
  return m;
}

}  // namespace foldrun::aut
