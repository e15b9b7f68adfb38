#include "foldrun/builtins.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace foldrun::aut {

namespace {

int bit_of(int sym, int track, int arity) { return (sym >> (arity - 1 - track)) & 1; }

}  // namespace

Dfa equality() {
  // 0: digits agreed so far, 1: dead.
  Dfa m(2, 2);
  for (int sym = 0; sym < 4; ++sym)
    m.set_next(0, sym, bit_of(sym, 0, 2) == bit_of(sym, 1, 2) ? 0 : 1);
  for (int sym = 0; sym < 4; ++sym) m.set_next(1, sym, 1);
  m.accepting[0] = true;
  return minimized(m);
}

Dfa less_than() {
  // Reading lsd-first, the most significant differing digit decides.
  // State: comparison of the prefixes read so far: 0 '=', 1 '<', 2 '>'.
  Dfa m(2, 3);
  for (State s = 0; s < 3; ++s) {
    for (int sym = 0; sym < 4; ++sym) {
      int a = bit_of(sym, 0, 2), b = bit_of(sym, 1, 2);
      State t = a < b ? 1 : a > b ? 2 : s;
      m.set_next(s, sym, t);
    }
  }
  m.accepting[1] = true;
  return minimized(m);
}

Dfa less_equal() { return minimized(complement(permute_tracks(less_than(), std::vector<int>{1, 0}))); }

Dfa greater_than() { return permute_tracks(less_than(), std::vector<int>{1, 0}); }

Dfa greater_equal() { return minimized(complement(less_than())); }

Dfa addition() {
  // Carry automaton: states 0 and 1 are the carry, 2 is dead.
  Dfa m(3, 3);
  for (State carry = 0; carry < 2; ++carry) {
    for (int sym = 0; sym < 8; ++sym) {
      int x = bit_of(sym, 0, 3), y = bit_of(sym, 1, 3), z = bit_of(sym, 2, 3);
      int s = x + y + int(carry);
      m.set_next(carry, sym, (s & 1) == z ? State(s >> 1) : 2);
    }
  }
  for (int sym = 0; sym < 8; ++sym) m.set_next(2, sym, 2);
  m.accepting[0] = true;
  return minimized(m);
}

Dfa subtraction() {
  // x - y = z over naturals: z + y = x.  Tracks of addition() are
  // (a, b, sum) = (z, y, x); target order (x, y, z).
  return permute_tracks(addition(), std::vector<int>{2, 1, 0});
}

Dfa constant(std::uint64_t c) {
  std::vector<int> digits = lsd_digits(c);
  const std::size_t len = digits.size();
  // Positions 0..len-1, then an accepting zero-loop, then dead.
  Dfa m(1, len + 2);
  const State acc = State(len);
  const State dead = State(len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    m.set_next(State(i), digits[i], State(i + 1));
    m.set_next(State(i), 1 - digits[i], dead);
  }
  m.set_next(acc, 0, acc);
  m.set_next(acc, 1, dead);
  m.set_next(dead, 0, dead);
  m.set_next(dead, 1, dead);
  m.accepting[acc] = true;
  return minimized(m);
}

Dfa constant_multiple(std::uint64_t c) {
  if (c == 0) throw std::invalid_argument("constant_multiple requires c >= 1");
  // z = c*x, carry-based: s = c*x_i + carry; digit of z must be s mod 2.
  // Carries stay below c, so the state space is finite.
  std::map<std::uint64_t, State> index;
  std::vector<std::uint64_t> pending;
  std::vector<std::array<State, 4>> rows;
  auto intern = [&](std::uint64_t carry) {
    auto [it, inserted] = index.try_emplace(carry, State(index.size()));
    if (inserted) {
      pending.push_back(carry);
      rows.push_back({});
    }
    return it->second;
  };
  intern(0);
  const State dead_placeholder = UINT32_MAX;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    std::uint64_t carry = pending[i];
    for (int sym = 0; sym < 4; ++sym) {
      int x = bit_of(sym, 0, 2), z = bit_of(sym, 1, 2);
      std::uint64_t s = c * std::uint64_t(x) + carry;
      rows[i][sym] = (int(s & 1) == z) ? intern(s >> 1) : dead_placeholder;
    }
  }
  Dfa m(2, index.size() + 1);
  const State dead = State(index.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int sym = 0; sym < 4; ++sym)
      m.set_next(State(i), sym, rows[i][sym] == dead_placeholder ? dead : rows[i][sym]);
  for (int sym = 0; sym < 4; ++sym) m.set_next(dead, sym, dead);
  m.accepting[0] = true;  // carry 0
  return minimized(m);
}

Dfa floor_division(std::uint64_t c) {
  if (c == 0) throw std::invalid_argument("floor_division requires c >= 1");
  // z = floor(x/c)  <=>  exists r < c with x = c*z + r.
  // Assemble over tracks (x, z, cz, r) and project the auxiliaries away.
  Dfa mult = constant_multiple(c);                       // (z, cz)
  Dfa m1 = insert_track(insert_track(mult, 0), 3);       // (x, z, cz, r)
  Dfa add = addition();                                  // (a, b, a+b)
  Dfa sum = permute_tracks(add, std::vector<int>{2, 0, 1});  // (x, cz, r): cz + r = x
  Dfa m2 = insert_track(sum, 1);                         // (x, z, cz, r)
  Dfa lt_c = product(less_than(), insert_track(constant(c), 0), BoolOp::And);  // r < y, y = c
  Dfa r_small = project(lt_c, 1);                        // {r : r < c}
  Dfa m3 = insert_track(insert_track(insert_track(r_small, 0), 0), 0);  // (x, z, cz, r)
  Dfa all = product(product(m1, m2, BoolOp::And), m3, BoolOp::And);
  return project(project(all, 3), 2);
}

std::vector<std::pair<std::string, Dfa>> builtin_relations() {
  return {
      {"eq", equality()},        {"lt", less_than()},     {"le", less_equal()},
      {"gt", greater_than()},    {"ge", greater_equal()}, {"add", addition()},
      {"sub", subtraction()},
  };
}

}  // namespace foldrun::aut
