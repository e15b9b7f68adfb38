#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace foldrun::aut {

using State = std::uint32_t;

/// Deterministic complete automaton over tuple digits {0,1}^arity, reading
/// base-2 integers least-significant-digit first.  A symbol packs one digit
/// per track; track 0 occupies the most significant bit of the symbol index.
/// Every automaton built by this library is padding-closed: appending
/// all-zero digit tuples never changes acceptance, so membership depends
/// only on the numeric tuple.
struct Dfa {
  int arity = 1;
  State initial = 0;
  std::vector<State> trans;    // num_states() * num_symbols(), row per state
  std::vector<bool> accepting;

  Dfa() = default;
  Dfa(int arity_, std::size_t num_states);

  int num_symbols() const { return 1 << arity; }
  std::size_t num_states() const { return accepting.size(); }

  State next(State s, int symbol) const {
    return trans[std::size_t(s) * num_symbols() + symbol];
  }
  void set_next(State s, int symbol, State t) {
    trans[std::size_t(s) * num_symbols() + symbol] = t;
  }

  /// Runs the padded parallel lsd encoding of `tuple` (length must equal
  /// arity) and reports acceptance.
  bool accepts(std::span<const std::uint64_t> tuple) const;
  bool accepts(std::initializer_list<std::uint64_t> tuple) const;
};

enum class BoolOp { And, Or, Xor, Implies, Iff, Diff };

bool apply(BoolOp op, bool a, bool b);

/// Product construction over the reachable pair space; result is minimized.
Dfa product(const Dfa& a, const Dfa& b, BoolOp op);

/// Language complement (automata are complete, so this just flips acceptance).
Dfa complement(Dfa m);

/// Existential projection of one track: deletes the track, applies
/// zero-suffix saturation (a state becomes accepting when an accepting state
/// is reachable reading tuples that are zero on every remaining track --
/// the deleted witness may need more digits than the other tracks), then
/// determinizes and minimizes.  Throws if the subset construction exceeds
/// 2^20 subsets.
Dfa project(const Dfa& m, int track);

/// Minimal complete automaton for the same language, states renumbered
/// canonically (breadth-first from the initial state, symbols in
/// lexicographic order).
Dfa minimized(const Dfa& m);

/// True when both automata define the same relation.  On mismatch, when
/// `witness` is non-null it receives a minimal-length distinguishing tuple.
bool equivalent(const Dfa& a, const Dfa& b, std::vector<std::uint64_t>* witness = nullptr);

/// Shortest accepted tuple (BFS, symbols in lexicographic order), or nullopt
/// for the empty language.
std::optional<std::vector<std::uint64_t>> shortest_accepted(const Dfa& m);

/// Exact padding-closure test: every reachable state agrees with its
/// all-zero successor on acceptance.
bool is_padding_closed(const Dfa& m);

/// Down/up-closes the language under trailing zero digits so that the result
/// accepts u exactly when some word with the same numeric value is accepted
/// by `m`.  Sets *was_closed to whether `m` was already padding-closed.
Dfa padding_normalized(const Dfa& m, bool* was_closed = nullptr);

/// Cylindrification: inserts a fresh ignored track at `position`.
Dfa insert_track(const Dfa& m, int position);

/// Track permutation: track i of the result reads what track perm[i] read.
Dfa permute_tracks(const Dfa& m, std::span<const int> perm);

/// Number of dead states (states from which no accepting state is
/// reachable).  A minimal automaton has at most one.
std::size_t dead_state_count(const Dfa& m);

/// States excluding dead ones; the convention used by the paper-style
/// reports ("n states" for synchronized automata).
std::size_t live_state_count(const Dfa& m);

/// lsd digit expansion (empty for 0).
std::vector<int> lsd_digits(std::uint64_t n);

}  // namespace foldrun::aut
