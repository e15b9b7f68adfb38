#include "foldrun/compiler.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>

#include "foldrun/builtins.hpp"
#include "foldrun/regex.hpp"

namespace foldrun::logic {

void Environment::define_relation(const std::string& name, Relation rel) {
  if (relations_.count(name))
    throw CompileError("relation '" + name + "' is already defined");
  relations_.emplace(name, std::move(rel));
}

void Environment::define_dfao(const std::string& name, aut::Dfao dfao) {
  if (dfaos_.count(name)) throw CompileError("DFAO '" + name + "' is already defined");
  dfaos_.emplace(name, std::move(dfao));
}

const Relation* Environment::find_relation(const std::string& name) const {
  auto it = relations_.find(name);
  return it == relations_.end() ? nullptr : &it->second;
}

const aut::Dfao* Environment::find_dfao(const std::string& name) const {
  auto it = dfaos_.find(name);
  return it == dfaos_.end() ? nullptr : &it->second;
}

const Relation& Environment::relation(const std::string& name) const {
  const Relation* r = find_relation(name);
  if (!r) throw CompileError("unknown relation '" + name + "'");
  return *r;
}

const aut::Dfao& Environment::dfao(const std::string& name) const {
  const aut::Dfao* d = find_dfao(name);
  if (!d) throw CompileError("unknown DFAO '" + name + "'");
  return *d;
}

std::vector<std::string> Environment::relation_names() const {
  std::vector<std::string> out;
  for (const auto& [name, rel] : relations_) out.push_back(name);
  return out;
}

std::vector<std::string> Environment::dfao_names() const {
  std::vector<std::string> out;
  for (const auto& [name, d] : dfaos_) out.push_back(name);
  return out;
}

namespace {

using aut::Dfa;
using aut::State;

// Spreads the tracks of m over a wider alphabet: old track i becomes track
// positions[i] of an automaton with new_arity tracks; new tracks are ignored.
Dfa expand_tracks(const Dfa& m, const std::vector<int>& positions, int new_arity) {
  Dfa out(new_arity, m.num_states());
  out.initial = m.initial;
  out.accepting = m.accepting;
  const int nsym = 1 << new_arity;
  std::vector<int> old_syms(nsym, 0);
  for (int sym = 0; sym < nsym; ++sym) {
    int old_sym = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      int bit = (sym >> (new_arity - 1 - positions[i])) & 1;
      old_sym |= bit << (int(positions.size()) - 1 - int(i));
    }
    old_syms[sym] = old_sym;
  }
  for (std::size_t s = 0; s < m.num_states(); ++s)
    for (int sym = 0; sym < nsym; ++sym)
      out.set_next(State(s), sym, m.next(State(s), old_syms[sym]));
  return out;
}

Relation aligned_to(const Relation& r, const std::vector<std::string>& all_vars) {
  if (r.vars == all_vars) return r;
  std::vector<int> positions;
  positions.reserve(r.vars.size());
  for (const std::string& v : r.vars) {
    auto it = std::lower_bound(all_vars.begin(), all_vars.end(), v);
    assert(it != all_vars.end() && *it == v);
    positions.push_back(int(it - all_vars.begin()));
  }
  return Relation{expand_tracks(r.dfa, positions, int(all_vars.size())), all_vars};
}

Relation combine_relations(const Relation& a, const Relation& b, aut::BoolOp op) {
  std::vector<std::string> all_vars;
  std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                 std::back_inserter(all_vars));
  Relation ra = aligned_to(a, all_vars);
  Relation rb = aligned_to(b, all_vars);
  return Relation{aut::product(ra.dfa, rb.dfa, op), all_vars};
}

Relation conj(const Relation& a, const Relation& b) {
  return combine_relations(a, b, aut::BoolOp::And);
}

Relation negate(Relation r) {
  r.dfa = aut::complement(std::move(r.dfa));
  return r;
}

Relation exists(Relation r, const std::string& var) {
  auto it = std::find(r.vars.begin(), r.vars.end(), var);
  if (it == r.vars.end()) return r;  // vacuous quantifier
  int track = int(it - r.vars.begin());
  r.vars.erase(it);
  r.dfa = aut::project(r.dfa, track);
  return r;
}

Relation forall(Relation r, const std::string& var) {
  return negate(exists(negate(std::move(r)), var));
}

// Renames track i of rel to names[i] (names must be distinct) and reorders
// tracks so the variable list is sorted again.
Relation renamed(const Relation& rel, const std::vector<std::string>& names) {
  assert(names.size() == rel.vars.size());
  std::vector<std::string> sorted_names(names);
  std::sort(sorted_names.begin(), sorted_names.end());
  assert(std::adjacent_find(sorted_names.begin(), sorted_names.end()) == sorted_names.end());
  std::vector<int> perm(names.size());
  for (std::size_t i = 0; i < sorted_names.size(); ++i) {
    auto it = std::find(names.begin(), names.end(), sorted_names[i]);
    perm[i] = int(it - names.begin());
  }
  return Relation{aut::permute_tracks(rel.dfa, perm), sorted_names};
}

Relation full_relation() {
  Dfa dfa(0, 1);
  dfa.set_next(0, 0, 0);
  dfa.accepting[0] = true;
  return Relation{std::move(dfa), {}};
}

Relation empty_relation() {
  Relation r = full_relation();
  r.dfa.accepting[0] = false;
  return r;
}

Relation unary_relation(Dfa dfa, const std::string& var) {
  return Relation{std::move(dfa), {var}};
}

class Compiler {
 public:
  explicit Compiler(const Environment& env) : env_(env) {}

  Relation compile(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::Compare: return compile_compare(f);
      case Formula::Kind::Call: return compile_call(f);
      case Formula::Kind::DfaoCompare: return compile_dfao_compare(f);
      case Formula::Kind::Not: return negate(compile(*f.a));
      case Formula::Kind::And: return combine_relations(compile(*f.a), compile(*f.b), aut::BoolOp::And);
      case Formula::Kind::Or: return combine_relations(compile(*f.a), compile(*f.b), aut::BoolOp::Or);
      case Formula::Kind::Implies:
        return combine_relations(compile(*f.a), compile(*f.b), aut::BoolOp::Implies);
      case Formula::Kind::Iff:
        return combine_relations(compile(*f.a), compile(*f.b), aut::BoolOp::Iff);
      case Formula::Kind::Exists: {
        Relation r = compile(*f.a);
        for (const std::string& v : f.quantified) r = exists(std::move(r), v);
        return r;
      }
      case Formula::Kind::Forall: {
        Relation r = compile(*f.a);
        for (const std::string& v : f.quantified) r = forall(std::move(r), v);
        return r;
      }
    }
    throw CompileError("unhandled formula node");
  }

 private:
  const Environment& env_;
  int fresh_counter_ = 0;

  // '#' sorts before alphanumerics, so auxiliary names never collide with
  // user variables and sort deterministically.
  std::string fresh_var() { return "#a" + std::to_string(fresh_counter_++); }

  struct TermCtx {
    std::vector<Relation> constraints;
    std::vector<std::string> auxes;
  };

  Relation discharge(Relation base, const TermCtx& ctx) {
    for (const Relation& c : ctx.constraints) base = conj(base, c);
    for (const std::string& v : ctx.auxes) base = exists(std::move(base), v);
    return base;
  }

  // Relation for `x op y` over distinct variable names.
  Relation rel_cmp(Cmp op, const std::string& x, const std::string& y) {
    if (x == y) {
      bool holds = (op == Cmp::Eq || op == Cmp::Le || op == Cmp::Ge);
      Relation r = unary_relation(aut::minimized(expand_tracks(
                                      (holds ? full_relation() : empty_relation()).dfa, {}, 1)),
                                  x);
      return r;
    }
    Dfa base;
    switch (op) {
      case Cmp::Eq: base = aut::equality(); break;
      case Cmp::Ne: base = aut::minimized(aut::complement(aut::equality())); break;
      case Cmp::Lt: base = aut::less_than(); break;
      case Cmp::Le: base = aut::less_equal(); break;
      case Cmp::Gt: base = aut::greater_than(); break;
      case Cmp::Ge: base = aut::greater_equal(); break;
    }
    Relation r{std::move(base), {x, y}};
    return renamed(r, {x, y});
  }

  Relation rel_constant(const std::string& x, std::uint64_t c) {
    return unary_relation(aut::constant(c), x);
  }

  // x + y = z with arbitrary distinct result var z; x == y allowed.
  Relation rel_add(const std::string& x, const std::string& y, const std::string& z) {
    assert(z != x && z != y);
    if (x == y) return renamed(Relation{aut::constant_multiple(2), {"", ""}}, {x, z});
    return renamed(Relation{aut::addition(), {"", "", ""}}, {x, y, z});
  }

  std::string compile_term(const Term& t, TermCtx& ctx) {
    switch (t.kind) {
      case Term::Kind::Var: return t.var;
      case Term::Kind::Const: {
        std::string v = fresh_var();
        ctx.constraints.push_back(rel_constant(v, t.number));
        ctx.auxes.push_back(v);
        return v;
      }
      case Term::Kind::Add: {
        std::string r1 = compile_term(*t.lhs, ctx);
        std::string r2 = compile_term(*t.rhs, ctx);
        std::string v = fresh_var();
        ctx.constraints.push_back(rel_add(r1, r2, v));
        ctx.auxes.push_back(v);
        return v;
      }
      case Term::Kind::Sub: {
        // v + rhs = lhs; empty when lhs < rhs, making the containing atom
        // false there (natural-domain truncation).
        std::string r1 = compile_term(*t.lhs, ctx);
        std::string r2 = compile_term(*t.rhs, ctx);
        std::string v = fresh_var();
        if (r1 == r2) {
          ctx.constraints.push_back(rel_constant(v, 0));
        } else {
          ctx.constraints.push_back(rel_add(v, r2, r1));
        }
        ctx.auxes.push_back(v);
        return v;
      }
      case Term::Kind::MulConst: {
        std::string r1 = compile_term(*t.lhs, ctx);
        std::string v = fresh_var();
        if (t.number == 0) {
          ctx.constraints.push_back(rel_constant(v, 0));
        } else {
          ctx.constraints.push_back(renamed(Relation{aut::constant_multiple(t.number), {"", ""}},
                                            {r1, v}));
        }
        ctx.auxes.push_back(v);
        return v;
      }
      case Term::Kind::DivConst: {
        std::string r1 = compile_term(*t.lhs, ctx);
        std::string v = fresh_var();
        ctx.constraints.push_back(renamed(Relation{aut::floor_division(t.number), {"", ""}},
                                          {r1, v}));
        ctx.auxes.push_back(v);
        return v;
      }
    }
    throw CompileError("unhandled term node");
  }

  Relation compile_compare(const Formula& f) {
    TermCtx ctx;
    std::string r1 = compile_term(*f.t1, ctx);
    std::string r2 = compile_term(*f.t2, ctx);
    return discharge(rel_cmp(f.cmp, r1, r2), ctx);
  }

  Relation compile_call(const Formula& f) {
    const Relation& rel = env_.relation(f.name);
    if (f.args.size() != rel.vars.size())
      throw CompileError("relation '" + f.name + "' expects " + std::to_string(rel.vars.size()) +
                         " arguments, got " + std::to_string(f.args.size()));
    TermCtx ctx;
    std::vector<std::string> names;
    names.reserve(f.args.size());
    for (const auto& arg : f.args) {
      std::string var;
      if (arg->kind == Term::Kind::Var &&
          std::find(names.begin(), names.end(), arg->var) == names.end()) {
        var = arg->var;  // bind the track directly
      } else {
        std::string value = compile_term(*arg, ctx);
        var = fresh_var();
        ctx.constraints.push_back(rel_cmp(Cmp::Eq, var, value));
        ctx.auxes.push_back(var);
      }
      names.push_back(var);
    }
    return discharge(renamed(rel, names), ctx);
  }

  // Unary relation {n : op(dfao(n), value)}.
  Relation dfao_value_relation(const aut::Dfao& dfao, Cmp op, long long value,
                               const std::string& var) {
    Dfa dfa(1, dfao.num_states());
    dfa.initial = dfao.initial;
    dfa.trans = dfao.trans;
    for (std::size_t s = 0; s < dfao.num_states(); ++s) {
      long long out = dfao.output[s];
      bool ok = false;
      switch (op) {
        case Cmp::Eq: ok = out == value; break;
        case Cmp::Ne: ok = out != value; break;
        case Cmp::Lt: ok = out < value; break;
        case Cmp::Le: ok = out <= value; break;
        case Cmp::Gt: ok = out > value; break;
        case Cmp::Ge: ok = out >= value; break;
      }
      dfa.accepting[s] = ok;
    }
    return unary_relation(aut::minimized(dfa), var);
  }

  Relation compile_dfao_compare(const Formula& f) {
    const aut::Dfao& lhs = env_.dfao(f.name);
    TermCtx ctx;
    std::string v1 = compile_term(*f.t1, ctx);
    if (f.rhs_is_const) {
      return discharge(dfao_value_relation(lhs, f.cmp, f.rhs_const, v1), ctx);
    }
    const aut::Dfao& rhs = env_.dfao(f.rhs_name);
    std::string v2 = compile_term(*f.t2, ctx);
    // Expand over pairs of output values satisfying the comparison.
    std::vector<int> values = aut::output_alphabet(lhs);
    for (int v : aut::output_alphabet(rhs)) values.push_back(v);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    // OR of (lhs(t1)=u & rhs(t2)=v) over satisfying output pairs.
    Relation acc = empty_relation();
    for (int u : values) {
      Relation left = dfao_value_relation(lhs, Cmp::Eq, u, v1);
      for (int v : values) {
        bool ok = false;
        switch (f.cmp) {
          case Cmp::Eq: ok = u == v; break;
          case Cmp::Ne: ok = u != v; break;
          case Cmp::Lt: ok = u < v; break;
          case Cmp::Le: ok = u <= v; break;
          case Cmp::Gt: ok = u > v; break;
          case Cmp::Ge: ok = u >= v; break;
        }
        if (!ok) continue;
        Relation right = dfao_value_relation(rhs, Cmp::Eq, v, v2);
        acc = combine_relations(acc, conj(left, right), aut::BoolOp::Or);
      }
    }
    return discharge(std::move(acc), ctx);
  }
};

Assignment decode_witness(const Dfa& dfa, const std::vector<std::string>& vars) {
  Assignment out;
  auto tuple = aut::shortest_accepted(dfa);
  if (!tuple) return out;
  for (std::size_t i = 0; i < vars.size(); ++i) out.emplace_back(vars[i], (*tuple)[i]);
  return out;
}

}  // namespace

Relation compile(const Formula& f, const Environment& env) {
  Compiler compiler(env);
  Relation r = compiler.compile(f);
  std::set<std::string> expect = f.free_vars();
  assert(std::vector<std::string>(expect.begin(), expect.end()) == r.vars);
  return r;
}

EvalOutcome eval_sentence(const Formula& f, const Environment& env) {
  if (!f.free_vars().empty()) {
    std::string names;
    for (const std::string& v : f.free_vars()) names += (names.empty() ? "" : ", ") + v;
    throw CompileError("sentence required, but free variables remain: " + names);
  }
  EvalOutcome outcome;
  if (f.kind == Formula::Kind::Forall || f.kind == Formula::Kind::Exists) {
    // Compile the block body once so a witness/counterexample for the
    // outermost quantifier block can be decoded from it.
    Compiler compiler(env);
    Relation body = compiler.compile(*f.a);
    Relation whole = body;
    for (const std::string& v : f.quantified)
      whole = f.kind == Formula::Kind::Forall ? forall(std::move(whole), v)
                                              : exists(std::move(whole), v);
    if (whole.dfa.arity != 0)
      throw CompileError("internal: sentence did not reduce to arity 0");
    outcome.value = whole.dfa.accepting[whole.dfa.initial];
    if (f.kind == Formula::Kind::Forall && !outcome.value)
      outcome.assignment = decode_witness(aut::complement(body.dfa), body.vars);
    else if (f.kind == Formula::Kind::Exists && outcome.value)
      outcome.assignment = decode_witness(body.dfa, body.vars);
    return outcome;
  }
  Relation r = compile(f, env);
  outcome.value = r.dfa.accepting[r.dfa.initial];
  return outcome;
}

bool ScriptReport::all_true() const {
  for (const CommandOutcome& c : commands)
    if (c.eval_value && !*c.eval_value) return false;
  return true;
}

ScriptReport run_script(std::string_view text, Environment& env) {
  std::vector<Command> commands = parse_script(text);
  ScriptReport report;
  for (const Command& cmd : commands) {
    auto start = std::chrono::steady_clock::now();
    CommandOutcome out;
    out.kind = cmd.kind;
    out.name = cmd.name;
    out.line = cmd.line;
    try {
      switch (cmd.kind) {
        case Command::Kind::Eval: {
          EvalOutcome eval = eval_sentence(*cmd.formula, env);
          out.eval_value = eval.value;
          out.assignment = std::move(eval.assignment);
          break;
        }
        case Command::Kind::Def: {
          Relation rel = compile(*cmd.formula, env);
          out.states = rel.dfa.num_states();
          out.live_states = aut::live_state_count(rel.dfa);
          env.define_relation(cmd.name, std::move(rel));
          break;
        }
        case Command::Kind::Reg: {
          aut::RegexResult res = aut::regex_to_dfa(cmd.regex);
          out.reg_warning = !res.raw_was_closed;
          out.states = res.dfa.num_states();
          out.live_states = aut::live_state_count(res.dfa);
          env.define_relation(cmd.name, Relation{std::move(res.dfa), {"n"}});
          break;
        }
        case Command::Kind::Combine: {
          std::vector<std::pair<aut::Dfa, int>> parts;
          for (const auto& [part_name, value] : cmd.parts) {
            const Relation& rel = env.relation(part_name);
            if (rel.dfa.arity != 1)
              throw CompileError("combine part '" + part_name + "' must have arity 1");
            parts.emplace_back(rel.dfa, int(value));
          }
          aut::Dfao dfao = aut::combine(parts);
          out.states = dfao.num_states();
          out.live_states = dfao.num_states();
          env.define_dfao(cmd.name, std::move(dfao));
          break;
        }
        case Command::Kind::Minimize: {
          if (const aut::Dfao* d = env.find_dfao(cmd.source)) {
            aut::Dfao m = aut::minimized(*d);
            out.states = m.num_states();
            out.live_states = m.num_states();
            env.define_dfao(cmd.name, std::move(m));
          } else if (const Relation* r = env.find_relation(cmd.source)) {
            Relation m{aut::minimized(r->dfa), r->vars};
            out.states = m.dfa.num_states();
            out.live_states = aut::live_state_count(m.dfa);
            env.define_relation(cmd.name, std::move(m));
          } else {
            throw CompileError("unknown automaton '" + cmd.source + "'");
          }
          break;
        }
      }
    } catch (const std::exception& err) {
      throw CompileError("command '" + cmd.name + "' (line " + std::to_string(cmd.line) +
                         ") failed: " + err.what());
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.commands.push_back(std::move(out));
  }
  return report;
}

}  // namespace foldrun::logic
