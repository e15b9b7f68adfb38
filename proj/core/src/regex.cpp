#include "foldrun/regex.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace foldrun::aut {

namespace {

// Thompson construction.  Fragment = (start, accept) over epsilon-NFA nodes;
// node edges: eps list + per-digit target (-1 when absent).
struct Nfa {
  struct Node {
    std::vector<int> eps;
    int on[2] = {-1, -1};
  };
  std::vector<Node> nodes;
  int add() {
    nodes.emplace_back();
    return int(nodes.size()) - 1;
  }
};

struct Frag {
  int start, accept;
};

class Parser {
 public:
  Parser(std::string_view text, Nfa& nfa) : text_(text), nfa_(nfa) {}

  Frag parse() {
    Frag f = alternation();
    if (pos_ != text_.size()) fail("unexpected character");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::runtime_error("regex error at offset " + std::to_string(pos_) + ": " + why);
  }
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  Frag epsilon() {
    int s = nfa_.add(), a = nfa_.add();
    nfa_.nodes[s].eps.push_back(a);
    return {s, a};
  }

  Frag alternation() {
    Frag f = concatenation();
    while (!eof() && peek() == '|') {
      ++pos_;
      Frag g = concatenation();
      int s = nfa_.add(), a = nfa_.add();
      nfa_.nodes[s].eps = {f.start, g.start};
      nfa_.nodes[f.accept].eps.push_back(a);
      nfa_.nodes[g.accept].eps.push_back(a);
      f = {s, a};
    }
    return f;
  }

  Frag concatenation() {
    if (eof() || peek() == '|' || peek() == ')') return epsilon();
    Frag f = starred();
    while (!eof() && peek() != '|' && peek() != ')') {
      Frag g = starred();
      nfa_.nodes[f.accept].eps.push_back(g.start);
      f = {f.start, g.accept};
    }
    return f;
  }

  Frag starred() {
    Frag f = atom();
    while (!eof() && peek() == '*') {
      ++pos_;
      int s = nfa_.add(), a = nfa_.add();
      nfa_.nodes[s].eps = {f.start, a};
      nfa_.nodes[f.accept].eps.push_back(f.start);
      nfa_.nodes[f.accept].eps.push_back(a);
      f = {s, a};
    }
    return f;
  }

  Frag atom() {
    if (eof()) fail("expected '0', '1' or '('");
    char c = text_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      int s = nfa_.add(), a = nfa_.add();
      nfa_.nodes[s].on[c - '0'] = a;
      return {s, a};
    }
    if (c == '(') {
      ++pos_;
      Frag f = alternation();
      if (eof() || peek() != ')') fail("missing ')'");
      ++pos_;
      return f;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  Nfa& nfa_;
  std::size_t pos_ = 0;
};

std::set<int> eps_closure(const Nfa& nfa, std::set<int> states) {
  std::vector<int> stack(states.begin(), states.end());
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : nfa.nodes[s].eps)
      if (states.insert(t).second) stack.push_back(t);
  }
  return states;
}

}  // namespace

RegexResult regex_to_dfa(std::string_view pattern) {
  Nfa nfa;
  Frag frag = Parser(pattern, nfa).parse();

  std::map<std::set<int>, State> index;
  std::vector<std::set<int>> subsets;
  Dfa dfa(1, 0);
  auto intern = [&](std::set<int> set) {
    auto [it, inserted] = index.try_emplace(std::move(set), State(index.size()));
    if (inserted) {
      subsets.push_back(it->first);
      dfa.accepting.push_back(it->first.count(frag.accept) > 0);
      dfa.trans.resize(dfa.accepting.size() * 2);
    }
    return it->second;
  };
  dfa.initial = intern(eps_closure(nfa, {frag.start}));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (int c = 0; c < 2; ++c) {
      std::set<int> nxt;
      for (int s : subsets[i]) {
        int t = nfa.nodes[s].on[c];
        if (t >= 0) nxt.insert(t);
      }
      dfa.set_next(State(i), c, intern(eps_closure(nfa, std::move(nxt))));
    }
  }
  RegexResult result;
  result.dfa = padding_normalized(minimized(dfa), &result.raw_was_closed);
  return result;
}

}  // namespace foldrun::aut
