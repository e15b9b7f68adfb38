#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "foldrun/dfa.hpp"
#include "foldrun/dfao.hpp"

namespace foldrun::guess {

// Candidate automata inferred from sequence data.  Nothing here is proven:
// candidates are meant to be fed to the verify suites, which are the
// soundness gate.  Both procedures are deterministic in their inputs and
// return canonically numbered automata.

struct DfaoGuessParams {
  int depth = 12;         // kernel depth explored
  int check_length = 256; // fingerprint length per kernel node
};

/// Guesses a DFAO for the sequence x(0), x(1), ... by fingerprinting the
/// 2-kernel: node (e, r) carries the subsequence n -> x(2^e n + r); nodes
/// with equal fingerprints merge into one state.  Needs samples covering
/// every fingerprint up to the depth, i.e. more than check_length * 2^depth
/// values.  Fails when the kernel does not close within the depth.  The
/// candidate replays every supplied sample exactly before it is returned.
aut::Dfao guess_dfao(std::span<const int> samples, const DfaoGuessParams& params = {});

struct SyncGuessParams {
  int cutoff = 14;              // pair words up to this length are labeled
  std::size_t state_bound = 64; // fail when more residual classes emerge
};

/// Guesses a 2-track synchronized automaton from samples (n, z(n)) of a
/// function.  Pair-word prefixes are classified by their labeled residuals
/// (accept / reject / unknown beyond the sampled range) and merged
/// breadth-first into the first consistent class; transitions fold among the
/// merged classes.  Fails on inconsistent samples, when the state bound is
/// exceeded, or when the frontier leaves the sampled range before closing.
aut::Dfa guess_synchronized(std::span<const std::pair<std::int64_t, std::int64_t>> pairs,
                            const SyncGuessParams& params = {});

}  // namespace foldrun::guess
