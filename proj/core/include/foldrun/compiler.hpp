#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "foldrun/dfa.hpp"
#include "foldrun/dfao.hpp"
#include "foldrun/formula.hpp"
#include "foldrun/parser.hpp"

namespace foldrun::logic {

struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A relation automaton together with its track names.  Tracks are ordered
/// by sorted variable name; positional calls $name(t1,...,tk) bind in that
/// order.
struct Relation {
  aut::Dfa dfa;
  std::vector<std::string> vars;
};

class Environment {
 public:
  void define_relation(const std::string& name, Relation rel);
  void define_dfao(const std::string& name, aut::Dfao dfao);
  const Relation* find_relation(const std::string& name) const;
  const aut::Dfao* find_dfao(const std::string& name) const;
  const Relation& relation(const std::string& name) const;
  const aut::Dfao& dfao(const std::string& name) const;
  std::vector<std::string> relation_names() const;
  std::vector<std::string> dfao_names() const;

 private:
  std::map<std::string, Relation> relations_;
  std::map<std::string, aut::Dfao> dfaos_;
};

/// Compiles a formula to the relation of its satisfying assignments over the
/// free variables (tracks sorted by name).
Relation compile(const Formula& f, const Environment& env);

using Assignment = std::vector<std::pair<std::string, std::uint64_t>>;

struct EvalOutcome {
  bool value = false;
  /// Counterexample for a false leading universal block, or witness for a
  /// true leading existential block; empty otherwise.
  Assignment assignment;
};

/// Decides a sentence (no free variables allowed).
EvalOutcome eval_sentence(const Formula& f, const Environment& env);

struct CommandOutcome {
  Command::Kind kind;
  std::string name;
  std::optional<bool> eval_value;
  Assignment assignment;
  std::size_t states = 0;       // def/reg/combine/minimize results
  std::size_t live_states = 0;  // states excluding the dead state
  bool reg_warning = false;     // raw regex language was not padding-closed
  double seconds = 0.0;
  int line = 0;
};

struct ScriptReport {
  std::vector<CommandOutcome> commands;
  bool all_true() const;
};

/// Parses and executes a script against the environment; the first failing
/// command aborts with context.  eval results and state counts are collected
/// in order.
ScriptReport run_script(std::string_view text, Environment& env);

}  // namespace foldrun::logic
