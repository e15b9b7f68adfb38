#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "foldrun/formula.hpp"

namespace foldrun::logic {

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(int line_, int column_, const std::string& what_)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_) {}
};

// Script commands.  A script is a sequence of commands, each terminated by
// ':'; '#' starts a comment running to end of line.  Formulas are quoted and
// must begin with ?lsd_2 (the only supported reading mode).

struct Command {
  enum class Kind { Eval, Def, Reg, Combine, Minimize };
  Kind kind;
  std::string name;                      // automaton/result name
  std::unique_ptr<Formula> formula;      // Eval / Def
  std::string regex;                     // Reg
  std::vector<std::pair<std::string, long long>> parts;  // Combine: name=value
  std::string source;                    // Minimize operand
  int line = 0;
};

std::vector<Command> parse_script(std::string_view text);

/// Parses one formula (the quoted payload of eval/def, without quotes); the
/// leading ?lsd_2 marker is required.
std::unique_ptr<Formula> parse_formula(std::string_view text);

}  // namespace foldrun::logic
