#pragma once

#include <string_view>

#include "foldrun/dfa.hpp"

namespace foldrun::aut {

struct RegexResult {
  Dfa dfa;                  // padding-normalized relation: n accepted iff some
                            // lsd word of n matches the pattern
  bool raw_was_closed = true;  // false => a warning is warranted
};

/// Compiles a pattern over the alphabet {0,1} with grouping, alternation '|',
/// Kleene star '*' and juxtaposition for concatenation.  "()" matches the
/// empty word.  Throws on malformed patterns.
RegexResult regex_to_dfa(std::string_view pattern);

}  // namespace foldrun::aut
