#include "foldrun/formula.hpp"

namespace foldrun::logic {

std::unique_ptr<Term> Term::constant(std::uint64_t c) {
  auto t = std::make_unique<Term>();
  t->kind = Kind::Const;
  t->number = c;
  return t;
}

std::unique_ptr<Term> Term::variable(std::string name) {
  auto t = std::make_unique<Term>();
  t->kind = Kind::Var;
  t->var = std::move(name);
  return t;
}

std::unique_ptr<Term> Term::add(std::unique_ptr<Term> a, std::unique_ptr<Term> b) {
  auto t = std::make_unique<Term>();
  t->kind = Kind::Add;
  t->lhs = std::move(a);
  t->rhs = std::move(b);
  return t;
}

std::unique_ptr<Term> Term::sub(std::unique_ptr<Term> a, std::unique_ptr<Term> b) {
  auto t = std::make_unique<Term>();
  t->kind = Kind::Sub;
  t->lhs = std::move(a);
  t->rhs = std::move(b);
  return t;
}

std::unique_ptr<Term> Term::mul(std::uint64_t c, std::unique_ptr<Term> sub) {
  auto t = std::make_unique<Term>();
  t->kind = Kind::MulConst;
  t->number = c;
  t->lhs = std::move(sub);
  return t;
}

std::unique_ptr<Term> Term::div(std::unique_ptr<Term> sub, std::uint64_t c) {
  auto t = std::make_unique<Term>();
  t->kind = Kind::DivConst;
  t->number = c;
  t->lhs = std::move(sub);
  return t;
}

void Term::collect_vars(std::set<std::string>& out) const {
  switch (kind) {
    case Kind::Const: return;
    case Kind::Var: out.insert(var); return;
    case Kind::Add:
    case Kind::Sub:
      lhs->collect_vars(out);
      rhs->collect_vars(out);
      return;
    case Kind::MulConst:
    case Kind::DivConst: lhs->collect_vars(out); return;
  }
}

std::string Term::to_string() const {
  switch (kind) {
    case Kind::Const: return std::to_string(number);
    case Kind::Var: return var;
    case Kind::Add: return "(" + lhs->to_string() + "+" + rhs->to_string() + ")";
    case Kind::Sub: return "(" + lhs->to_string() + "-" + rhs->to_string() + ")";
    case Kind::MulConst: return std::to_string(number) + "*" + lhs->to_string();
    case Kind::DivConst: return "(" + lhs->to_string() + "/" + std::to_string(number) + ")";
  }
  return "?";
}

std::string to_string(Cmp op) {
  switch (op) {
    case Cmp::Eq: return "=";
    case Cmp::Ne: return "!=";
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Gt: return ">";
    case Cmp::Ge: return ">=";
  }
  return "?";
}

std::set<std::string> Formula::free_vars() const {
  std::set<std::string> out;
  switch (kind) {
    case Kind::Compare:
      t1->collect_vars(out);
      t2->collect_vars(out);
      break;
    case Kind::Call:
      for (const auto& arg : args) arg->collect_vars(out);
      break;
    case Kind::DfaoCompare:
      t1->collect_vars(out);
      if (t2) t2->collect_vars(out);
      break;
    case Kind::Not: out = a->free_vars(); break;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      out = a->free_vars();
      std::set<std::string> rhs = b->free_vars();
      out.insert(rhs.begin(), rhs.end());
      break;
    }
    case Kind::Exists:
    case Kind::Forall:
      out = a->free_vars();
      for (const std::string& v : quantified) out.erase(v);
      break;
  }
  return out;
}

std::unique_ptr<Formula> make_not(std::unique_ptr<Formula> f) {
  auto out = std::make_unique<Formula>();
  out->kind = Formula::Kind::Not;
  out->a = std::move(f);
  return out;
}

std::unique_ptr<Formula> make_binary(Formula::Kind kind, std::unique_ptr<Formula> a,
                                     std::unique_ptr<Formula> b) {
  auto out = std::make_unique<Formula>();
  out->kind = kind;
  out->a = std::move(a);
  out->b = std::move(b);
  return out;
}

std::unique_ptr<Formula> make_quantifier(Formula::Kind kind, std::vector<std::string> vars,
                                         std::unique_ptr<Formula> body) {
  auto out = std::make_unique<Formula>();
  out->kind = kind;
  out->quantified = std::move(vars);
  out->a = std::move(body);
  return out;
}

}  // namespace foldrun::logic
