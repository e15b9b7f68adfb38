#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace foldrun::logic {

// Linear terms over natural-number variables.
struct Term {
  enum class Kind { Const, Var, Add, Sub, MulConst, DivConst };
  Kind kind = Kind::Const;
  std::uint64_t number = 0;  // Const value, MulConst multiplier, DivConst divisor
  std::string var;
  std::unique_ptr<Term> lhs, rhs;  // Add/Sub both, MulConst/DivConst lhs only

  static std::unique_ptr<Term> constant(std::uint64_t c);
  static std::unique_ptr<Term> variable(std::string name);
  static std::unique_ptr<Term> add(std::unique_ptr<Term> a, std::unique_ptr<Term> b);
  static std::unique_ptr<Term> sub(std::unique_ptr<Term> a, std::unique_ptr<Term> b);
  static std::unique_ptr<Term> mul(std::uint64_t c, std::unique_ptr<Term> t);
  static std::unique_ptr<Term> div(std::unique_ptr<Term> t, std::uint64_t c);

  void collect_vars(std::set<std::string>& out) const;
  std::string to_string() const;
};

enum class Cmp { Eq, Ne, Lt, Le, Gt, Ge };

std::string to_string(Cmp op);

struct Formula {
  enum class Kind {
    Compare,      // t1 cmp t2
    Call,         // $name(t1, ..., tk)
    DfaoCompare,  // name[t1] cmp (@constant | name2[t2])
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists,  // quantified_vars, child a
    Forall,
  };
  Kind kind = Kind::Compare;

  Cmp cmp = Cmp::Eq;
  std::unique_ptr<Term> t1, t2;

  std::string name;  // Call / DfaoCompare left side
  std::vector<std::unique_ptr<Term>> args;

  std::string rhs_name;    // DfaoCompare right side DFAO (empty when constant)
  bool rhs_is_const = false;
  long long rhs_const = 0;

  std::vector<std::string> quantified;
  std::unique_ptr<Formula> a, b;

  /// Free variables (quantifier-bound occurrences excluded).
  std::set<std::string> free_vars() const;
};

std::unique_ptr<Formula> make_not(std::unique_ptr<Formula> f);
std::unique_ptr<Formula> make_binary(Formula::Kind kind, std::unique_ptr<Formula> a,
                                     std::unique_ptr<Formula> b);
std::unique_ptr<Formula> make_quantifier(Formula::Kind kind, std::vector<std::string> vars,
                                         std::unique_ptr<Formula> body);

}  // namespace foldrun::logic
