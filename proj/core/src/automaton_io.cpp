#include "foldrun/automaton_io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace foldrun::aut {

namespace {

void append_symbol(std::string& out, int sym, int arity) {
  out += '(';
  for (int t = 0; t < arity; ++t) {
    if (t) out += ',';
    out += char('0' + ((sym >> (arity - 1 - t)) & 1));
  }
  out += ')';
}

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  int lineno = 0;

  bool next(std::string_view& line) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      line = text.substr(pos, end - pos);
      pos = end + 1;
      ++lineno;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
      while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      if (!line.empty()) return true;
    }
    return false;
  }
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view s, int lineno) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::runtime_error("automaton file line " + std::to_string(lineno) +
                             ": bad integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string to_text(const Dfa& m) {
  std::string out = "lsd_2 arity=" + std::to_string(m.arity) + "\n";
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    out += std::to_string(s);
    if (m.accepting[s]) out += " accepting";
    if (State(s) == m.initial) out += " initial";
    out += '\n';
  }
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    for (int c = 0; c < m.num_symbols(); ++c) {
      out += std::to_string(s);
      out += ' ';
      append_symbol(out, c, m.arity);
      out += ' ';
      out += std::to_string(m.next(State(s), c));
      out += '\n';
    }
  }
  return out;
}

std::string to_text(const Dfao& m) {
  std::string out = "lsd_2 arity=1\n";
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    out += std::to_string(s);
    out += " output=" + std::to_string(m.output[s]);
    if (State(s) == m.initial) out += " initial";
    out += '\n';
  }
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    for (int c = 0; c < 2; ++c) {
      out += std::to_string(s) + " (" + char('0' + c) + ") " + std::to_string(m.next(State(s), c)) +
             "\n";
    }
  }
  return out;
}

AutomatonText from_text(std::string_view text) {
  LineReader reader{text};
  std::string_view line;
  if (!reader.next(line)) throw std::runtime_error("empty automaton file");
  auto head = split_ws(line);
  if (head.size() != 2 || head[0] != "lsd_2" || head[1].substr(0, 6) != "arity=")
    throw std::runtime_error("automaton file: expected header 'lsd_2 arity=<k>'");
  int arity = int(parse_int(head[1].substr(6), reader.lineno));
  if (arity < 0 || arity > 20) throw std::runtime_error("automaton file: arity out of range");

  struct StateLine {
    bool accepting = false;
    bool initial = false;
    bool has_output = false;
    int output = 0;
  };
  std::vector<StateLine> states;
  struct TransLine {
    long long src, dst;
    int sym;
  };
  std::vector<TransLine> transitions;

  while (reader.next(line)) {
    auto fields = split_ws(line);
    if (fields.size() >= 2 && fields[1].front() == '(') {
      // transition line
      if (fields.size() != 3)
        throw std::runtime_error("automaton file line " + std::to_string(reader.lineno) +
                                 ": malformed transition");
      std::string_view tup = fields[1];
      if (tup.front() != '(' || tup.back() != ')')
        throw std::runtime_error("automaton file line " + std::to_string(reader.lineno) +
                                 ": malformed digit tuple");
      tup = tup.substr(1, tup.size() - 2);
      int sym = 0;
      int count = 0;
      for (char ch : tup) {
        if (ch == ',') continue;
        if (ch != '0' && ch != '1')
          throw std::runtime_error("automaton file line " + std::to_string(reader.lineno) +
                                   ": digit tuple must contain only 0/1");
        sym = (sym << 1) | (ch - '0');
        ++count;
      }
      if (count != arity)
        throw std::runtime_error("automaton file line " + std::to_string(reader.lineno) +
                                 ": tuple width disagrees with arity");
      transitions.push_back({parse_int(fields[0], reader.lineno), parse_int(fields[2], reader.lineno), sym});
    } else {
      // state line
      long long id = parse_int(fields[0], reader.lineno);
      if (id != (long long)states.size())
        throw std::runtime_error("automaton file line " + std::to_string(reader.lineno) +
                                 ": state ids must be consecutive from 0");
      StateLine st;
      for (std::size_t i = 1; i < fields.size(); ++i) {
        std::string_view f = fields[i];
        if (f == "accepting") {
          st.accepting = true;
        } else if (f == "initial") {
          st.initial = true;
        } else if (f.substr(0, 7) == "output=") {
          st.has_output = true;
          st.output = int(parse_int(f.substr(7), reader.lineno));
        } else {
          throw std::runtime_error("automaton file line " + std::to_string(reader.lineno) +
                                   ": unknown state attribute '" + std::string(f) + "'");
        }
      }
      states.push_back(st);
    }
  }
  if (states.empty()) throw std::runtime_error("automaton file: no states");

  bool any_output = false;
  for (const auto& st : states) any_output = any_output || st.has_output;

  State initial = 0;
  int initial_seen = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (states[s].initial) {
      initial = State(s);
      ++initial_seen;
    }
  }
  if (initial_seen != 1) throw std::runtime_error("automaton file: exactly one state must be initial");

  const int nsym = 1 << arity;
  std::vector<State> trans(states.size() * nsym, UINT32_MAX);
  for (const auto& t : transitions) {
    if (t.src < 0 || t.src >= (long long)states.size() || t.dst < 0 ||
        t.dst >= (long long)states.size())
      throw std::runtime_error("automaton file: transition endpoint out of range");
    trans[std::size_t(t.src) * nsym + t.sym] = State(t.dst);
  }
  for (State t : trans)
    if (t == UINT32_MAX)
      throw std::runtime_error("automaton file: transition function not total");

  AutomatonText out;
  if (any_output) {
    if (arity != 1) throw std::runtime_error("automaton file: DFAO files must have arity 1");
    out.kind = AutKind::Dfao;
    out.dfao = Dfao(states.size());
    out.dfao.initial = initial;
    out.dfao.trans = std::move(trans);
    for (std::size_t s = 0; s < states.size(); ++s) {
      if (!states[s].has_output)
        throw std::runtime_error("automaton file: every DFAO state needs output=");
      out.dfao.output[s] = states[s].output;
    }
  } else {
    out.kind = AutKind::Dfa;
    out.dfa = Dfa(arity, states.size());
    out.dfa.initial = initial;
    out.dfa.trans = std::move(trans);
    for (std::size_t s = 0; s < states.size(); ++s) out.dfa.accepting[s] = states[s].accepting;
  }
  return out;
}

Dfa dfa_from_text(std::string_view text) {
  AutomatonText a = from_text(text);
  if (a.kind != AutKind::Dfa) throw std::runtime_error("expected a plain automaton, got a DFAO");
  return a.dfa;
}

Dfao dfao_from_text(std::string_view text) {
  AutomatonText a = from_text(text);
  if (a.kind != AutKind::Dfao) throw std::runtime_error("expected a DFAO, got a plain automaton");
  return a.dfao;
}

std::string to_dot(const Dfa& m, std::string_view name, bool include_dead) {
  const std::size_t n = m.num_states();
  std::vector<bool> live(n, true);
  if (!include_dead) {
    std::vector<bool> reach = m.accepting;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < n; ++s) {
        if (reach[s]) continue;
        for (int c = 0; c < m.num_symbols(); ++c)
          if (reach[m.next(State(s), c)]) {
            reach[s] = true;
            changed = true;
            break;
          }
      }
    }
    live = reach;
  }
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  out << "  init [shape=point];\n";
  if (live[m.initial]) out << "  init -> s" << m.initial << ";\n";
  for (std::size_t s = 0; s < n; ++s) {
    if (!live[s]) continue;
    out << "  s" << s << " [label=\"" << s << '"';
    if (m.accepting[s]) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (!live[s]) continue;
    for (int c = 0; c < m.num_symbols(); ++c) {
      State t = m.next(State(s), c);
      if (!live[t]) continue;
      std::string label;
      append_symbol(label, c, m.arity);
      out << "  s" << s << " -> s" << t << " [label=\"" << label << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const Dfao& m, std::string_view name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  out << "  init [shape=point];\n  init -> s" << m.initial << ";\n";
  for (std::size_t s = 0; s < m.num_states(); ++s)
    out << "  s" << s << " [label=\"" << s << '/' << m.output[s] << "\"];\n";
  for (std::size_t s = 0; s < m.num_states(); ++s)
    for (int c = 0; c < 2; ++c)
      out << "  s" << s << " -> s" << m.next(State(s), c) << " [label=\"" << c << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace foldrun::aut
