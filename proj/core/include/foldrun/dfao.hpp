#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foldrun/dfa.hpp"

namespace foldrun::aut {

/// Deterministic automaton with output, arity 1, reading base-2 lsd-first.
/// The value at n is the output of the state reached by any (padded) digit
/// word of n; construction keeps outputs padding-consistent.
struct Dfao {
  State initial = 0;
  std::vector<State> trans;  // num_states() * 2
  std::vector<int> output;

  Dfao() = default;
  Dfao(std::size_t num_states) : trans(num_states * 2, 0), output(num_states, 0) {}

  std::size_t num_states() const { return output.size(); }
  State next(State s, int bit) const { return trans[std::size_t(s) * 2 + bit]; }
  void set_next(State s, int bit, State t) { trans[std::size_t(s) * 2 + bit] = t; }

  int eval(std::uint64_t n) const;
};

/// Minimal equivalent DFAO, canonical state numbering.
Dfao minimized(const Dfao& m);

/// The unary relation {n : m(n) = value}.
Dfa output_relation(const Dfao& m, int value);

/// Distinct output values, ascending.
std::vector<int> output_alphabet(const Dfao& m);

/// Builds a DFAO from disjoint, jointly covering unary relations; part i
/// contributes output values[i] on its language.  Overlaps or coverage gaps
/// raise an error naming a witness n.  The result is minimized.
Dfao combine(const std::vector<std::pair<Dfa, int>>& parts);

/// True when both DFAOs compute the same function; otherwise, when `witness`
/// is non-null, it receives a least n at which they differ.
bool equivalent(const Dfao& a, const Dfao& b, std::uint64_t* witness = nullptr);

bool is_padding_consistent(const Dfao& m);

/// The 4-state lsd DFAO of the regular paperfolding sequence over {0,1}
/// (value at 0 defined as 0), as known from the literature.
Dfao paperfolding_dfao();

}  // namespace foldrun::aut
