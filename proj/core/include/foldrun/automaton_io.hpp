#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "foldrun/dfa.hpp"
#include "foldrun/dfao.hpp"

namespace foldrun::aut {

// Text format, one automaton per file:
//   lsd_2 arity=<k>
//   <id> [output=<v>] [accepting] [initial]     (one line per state, in order)
//   <src> (<d1>,...,<dk>) <dst>                 (one line per transition)
// Writers emit states in stored (canonical) order and transitions sorted by
// (source, symbol), so serialization is deterministic and diffable.

std::string to_text(const Dfa& m);
std::string to_text(const Dfao& m);

enum class AutKind { Dfa, Dfao };

struct AutomatonText {
  AutKind kind;
  Dfa dfa;    // valid when kind == AutKind::Dfa
  Dfao dfao;  // valid when kind == AutKind::Dfao
};

/// Parses either kind; a file whose states carry output= is a DFAO.
AutomatonText from_text(std::string_view text);

Dfa dfa_from_text(std::string_view text);
Dfao dfao_from_text(std::string_view text);

/// GraphViz export.  Accepting states are doublecircles; DFAO states are
/// labeled "id/output".  Dead states (and edges touching them) can be
/// omitted the way the paper draws its figures.
std::string to_dot(const Dfa& m, std::string_view name, bool include_dead = false);
std::string to_dot(const Dfao& m, std::string_view name);

}  // namespace foldrun::aut
