#include "foldrun/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace foldrun::logic {

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, String, End };
  Kind kind = Kind::End;
  std::string text;
  std::uint64_t number = 0;
  int line = 1, column = 1;
};

class Lexer {
 public:
  Lexer(std::string_view text, int base_line = 1, int base_column = 1) {
    int line = base_line, column = base_column;
    std::size_t i = 0;
    auto advance = [&](std::size_t count) {
      for (std::size_t k = 0; k < count; ++k) {
        if (text[i + k] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
      i += count;
    };
    while (i < text.size()) {
      char c = text[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        continue;
      }
      if (c == '#') {  // comment to end of line
        std::size_t j = i;
        while (j < text.size() && text[j] != '\n') ++j;
        advance(j - i);
        continue;
      }
      Token tok;
      tok.line = line;
      tok.column = column;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
          ++j;
        tok.kind = Token::Kind::Ident;
        tok.text = std::string(text.substr(i, j - i));
        advance(j - i);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        tok.kind = Token::Kind::Number;
        tok.text = std::string(text.substr(i, j - i));
        auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(),
                                       tok.number);
        if (ec != std::errc{}) throw ParseError(line, column, "number out of range");
        advance(j - i);
      } else if (c == '"') {
        std::size_t j = i + 1;
        while (j < text.size() && text[j] != '"') ++j;
        if (j >= text.size()) throw ParseError(line, column, "unterminated string");
        tok.kind = Token::Kind::String;
        tok.text = std::string(text.substr(i + 1, j - i - 1));
        advance(j + 1 - i);
      } else {
        static const char* multi[] = {"<=>", "=>", "!=", "<=", ">="};
        std::string op;
        for (const char* m : multi) {
          std::size_t len = std::char_traits<char>::length(m);
          if (text.substr(i, len) == m) {
            op = m;
            break;
          }
        }
        if (op.empty()) {
          static const std::string singles = "()[],:=<>+-*/~&|$@?";
          if (singles.find(c) == std::string::npos)
            throw ParseError(line, column, std::string("unexpected character '") + c + "'");
          op = std::string(1, c);
        }
        tok.kind = Token::Kind::Punct;
        tok.text = op;
        advance(op.size());
      }
      tokens_.push_back(std::move(tok));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.line = line;
    end.column = column;
    tokens_.push_back(std::move(end));
  }

  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  std::vector<Token> tokens_;
};

class FormulaParser {
 public:
  explicit FormulaParser(const std::vector<Token>& tokens) : toks_(tokens) {}

  std::unique_ptr<Formula> parse() {
    auto f = parse_iff();
    expect_end();
    return f;
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t k) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(cur().line, cur().column, why);
  }
  bool at_punct(std::string_view p) const {
    return cur().kind == Token::Kind::Punct && cur().text == p;
  }
  bool eat_punct(std::string_view p) {
    if (!at_punct(p)) return false;
    ++pos_;
    return true;
  }
  void expect_punct(std::string_view p) {
    if (!eat_punct(p)) fail("expected '" + std::string(p) + "'");
  }
  void expect_end() {
    if (cur().kind != Token::Kind::End) fail("trailing input after formula");
  }

  // <=> is loosest, then =>, |, &, ~; => and <=> associate to the left.
  std::unique_ptr<Formula> parse_iff() {
    auto f = parse_implies();
    while (eat_punct("<=>")) f = make_binary(Formula::Kind::Iff, std::move(f), parse_implies());
    return f;
  }
  std::unique_ptr<Formula> parse_implies() {
    auto f = parse_or();
    while (eat_punct("=>")) f = make_binary(Formula::Kind::Implies, std::move(f), parse_or());
    return f;
  }
  std::unique_ptr<Formula> parse_or() {
    auto f = parse_and();
    while (eat_punct("|")) f = make_binary(Formula::Kind::Or, std::move(f), parse_and());
    return f;
  }
  std::unique_ptr<Formula> parse_and() {
    auto f = parse_unary();
    while (eat_punct("&")) f = make_binary(Formula::Kind::And, std::move(f), parse_unary());
    return f;
  }

  static bool is_quantifier_head(const Token& t) {
    return t.kind == Token::Kind::Ident && (t.text[0] == 'A' || t.text[0] == 'E');
  }

  std::unique_ptr<Formula> parse_unary() {
    if (eat_punct("~")) return make_not(parse_unary());
    if (is_quantifier_head(cur()) && !(ahead(1).kind == Token::Kind::Punct && ahead(1).text == "[")) {
      Formula::Kind kind = cur().text[0] == 'A' ? Formula::Kind::Forall : Formula::Kind::Exists;
      std::vector<std::string> vars;
      std::string rest = cur().text.substr(1);
      ++pos_;
      if (!rest.empty()) {
        vars.push_back(rest);
      } else {
        if (cur().kind != Token::Kind::Ident) fail("expected variable after quantifier");
        vars.push_back(cur().text);
        ++pos_;
      }
      while (eat_punct(",")) {
        if (cur().kind != Token::Kind::Ident) fail("expected variable name");
        vars.push_back(cur().text);
        ++pos_;
      }
      // Scope runs to the end of the enclosing formula or group.
      return make_quantifier(kind, std::move(vars), parse_iff());
    }
    return parse_atom();
  }

  std::optional<Cmp> peek_cmp() const {
    if (cur().kind != Token::Kind::Punct) return std::nullopt;
    const std::string& t = cur().text;
    if (t == "=") return Cmp::Eq;
    if (t == "!=") return Cmp::Ne;
    if (t == "<") return Cmp::Lt;
    if (t == "<=") return Cmp::Le;
    if (t == ">") return Cmp::Gt;
    if (t == ">=") return Cmp::Ge;
    return std::nullopt;
  }
  Cmp parse_cmp() {
    auto op = peek_cmp();
    if (!op) fail("expected a comparison operator");
    ++pos_;
    return *op;
  }

  bool at_term_continuation() const {
    if (peek_cmp()) return true;
    if (cur().kind != Token::Kind::Punct) return false;
    const std::string& t = cur().text;
    return t == "+" || t == "-" || t == "*" || t == "/";
  }

  std::unique_ptr<Formula> parse_atom() {
    if (eat_punct("$")) {
      if (cur().kind != Token::Kind::Ident) fail("expected relation name after '$'");
      auto f = std::make_unique<Formula>();
      f->kind = Formula::Kind::Call;
      f->name = cur().text;
      ++pos_;
      expect_punct("(");
      if (!at_punct(")")) {
        f->args.push_back(parse_term());
        while (eat_punct(",")) f->args.push_back(parse_term());
      }
      expect_punct(")");
      return f;
    }
    if (at_punct("(")) {
      // Could be a grouped formula or a parenthesized term on the left of a
      // comparison; try the formula reading first and fall back.
      std::size_t save = pos_;
      try {
        ++pos_;
        auto f = parse_iff();
        expect_punct(")");
        if (!at_term_continuation()) return f;
      } catch (const ParseError&) {
      }
      pos_ = save;
      return parse_compare();
    }
    if (cur().kind == Token::Kind::Ident && ahead(1).kind == Token::Kind::Punct &&
        ahead(1).text == "[") {
      return parse_dfao_compare();
    }
    return parse_compare();
  }

  std::unique_ptr<Formula> parse_compare() {
    auto f = std::make_unique<Formula>();
    f->kind = Formula::Kind::Compare;
    f->t1 = parse_term();
    f->cmp = parse_cmp();
    f->t2 = parse_term();
    return f;
  }

  std::unique_ptr<Formula> parse_dfao_compare() {
    auto f = std::make_unique<Formula>();
    f->kind = Formula::Kind::DfaoCompare;
    f->name = cur().text;
    ++pos_;
    expect_punct("[");
    f->t1 = parse_term();
    expect_punct("]");
    f->cmp = parse_cmp();
    if (eat_punct("@")) {
      bool negative = eat_punct("-");
      if (cur().kind != Token::Kind::Number) fail("expected a number after '@'");
      f->rhs_is_const = true;
      f->rhs_const = (negative ? -1 : 1) * (long long)cur().number;
      ++pos_;
      return f;
    }
    if (cur().kind != Token::Kind::Ident) fail("expected '@value' or a DFAO index");
    f->rhs_name = cur().text;
    ++pos_;
    expect_punct("[");
    f->t2 = parse_term();
    expect_punct("]");
    return f;
  }

  std::unique_ptr<Term> parse_term() {
    auto t = parse_multerm();
    while (true) {
      if (eat_punct("+")) {
        t = Term::add(std::move(t), parse_multerm());
      } else if (eat_punct("-")) {
        t = Term::sub(std::move(t), parse_multerm());
      } else {
        return t;
      }
    }
  }

  std::unique_ptr<Term> parse_multerm() {
    auto t = parse_factor();
    while (true) {
      if (eat_punct("*")) {
        auto rhs = parse_factor();
        // Linear terms only: one side must be a constant.
        if (t->kind == Term::Kind::Const) {
          t = Term::mul(t->number, std::move(rhs));
        } else if (rhs->kind == Term::Kind::Const) {
          t = Term::mul(rhs->number, std::move(t));
        } else {
          fail("non-linear term: '*' needs a constant operand");
        }
      } else if (eat_punct("/")) {
        auto rhs = parse_factor();
        if (rhs->kind != Term::Kind::Const || rhs->number == 0)
          fail("'/' needs a positive constant divisor");
        t = Term::div(std::move(t), rhs->number);
      } else {
        return t;
      }
    }
  }

  std::unique_ptr<Term> parse_factor() {
    if (cur().kind == Token::Kind::Number) {
      auto t = Term::constant(cur().number);
      ++pos_;
      return t;
    }
    if (cur().kind == Token::Kind::Ident) {
      auto t = Term::variable(cur().text);
      ++pos_;
      return t;
    }
    if (eat_punct("(")) {
      auto t = parse_term();
      expect_punct(")");
      return t;
    }
    fail("expected a number, variable or parenthesized term");
  }
};

class ScriptParser {
 public:
  explicit ScriptParser(const std::vector<Token>& tokens) : toks_(tokens) {}

  std::vector<Command> parse() {
    std::vector<Command> commands;
    while (cur().kind != Token::Kind::End) commands.push_back(parse_command());
    return commands;
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(cur().line, cur().column, why);
  }
  std::string expect_ident(const char* what) {
    if (cur().kind != Token::Kind::Ident) fail(std::string("expected ") + what);
    std::string s = cur().text;
    ++pos_;
    return s;
  }
  Token expect_string() {
    if (cur().kind != Token::Kind::String) fail("expected a quoted string");
    Token t = cur();
    ++pos_;
    return t;
  }
  void expect_terminator() {
    if (!(cur().kind == Token::Kind::Punct && cur().text == ":"))
      fail("expected ':' terminating the command");
    ++pos_;
  }

  Command parse_command() {
    if (cur().kind != Token::Kind::Ident) fail("expected a command (eval/def/reg/combine/minimize)");
    Command cmd;
    cmd.line = cur().line;
    std::string word = cur().text;
    ++pos_;
    if (word == "eval" || word == "def") {
      cmd.kind = word == "eval" ? Command::Kind::Eval : Command::Kind::Def;
      cmd.name = expect_ident("a result name");
      Token body = expect_string();
      cmd.formula = parse_quoted_formula(body);
      expect_terminator();
      return cmd;
    }
    if (word == "reg") {
      cmd.kind = Command::Kind::Reg;
      cmd.name = expect_ident("a result name");
      std::string mode = expect_ident("a numeration mode");
      if (mode != "lsd_2")
        throw ParseError(cmd.line, 1, "unsupported mode '" + mode + "' (only lsd_2)");
      cmd.regex = expect_string().text;
      expect_terminator();
      return cmd;
    }
    if (word == "combine") {
      cmd.kind = Command::Kind::Combine;
      cmd.name = expect_ident("a DFAO name");
      while (cur().kind == Token::Kind::Ident) {
        std::string part = cur().text;
        ++pos_;
        if (!(cur().kind == Token::Kind::Punct && cur().text == "=")) fail("expected '=' after part name");
        ++pos_;
        bool negative = false;
        if (cur().kind == Token::Kind::Punct && cur().text == "-") {
          negative = true;
          ++pos_;
        }
        if (cur().kind != Token::Kind::Number) fail("expected an output value");
        cmd.parts.emplace_back(part, (negative ? -1 : 1) * (long long)cur().number);
        ++pos_;
      }
      if (cmd.parts.empty()) fail("combine needs at least one part");
      expect_terminator();
      return cmd;
    }
    if (word == "minimize") {
      cmd.kind = Command::Kind::Minimize;
      cmd.name = expect_ident("a result name");
      cmd.source = expect_ident("a source automaton name");
      expect_terminator();
      return cmd;
    }
    throw ParseError(cmd.line, 1, "unknown command '" + word + "'");
  }

  static std::unique_ptr<Formula> parse_quoted_formula(const Token& body) {
    Lexer sub(body.text, body.line, body.column + 1);
    const std::vector<Token>& toks = sub.tokens();
    std::size_t k = 0;
    // Required reading-mode marker.
    if (!(toks.size() >= 2 && toks[0].kind == Token::Kind::Punct && toks[0].text == "?" &&
          toks[1].kind == Token::Kind::Ident && toks[1].text == "lsd_2"))
      throw ParseError(body.line, body.column, "formula must begin with ?lsd_2");
    k = 2;
    std::vector<Token> rest(toks.begin() + k, toks.end());
    FormulaParser parser(rest);
    return parser.parse();
  }
};

}  // namespace

std::vector<Command> parse_script(std::string_view text) {
  Lexer lexer(text);
  return ScriptParser(lexer.tokens()).parse();
}

std::unique_ptr<Formula> parse_formula(std::string_view text) {
  Lexer lexer(text);
  const std::vector<Token>& toks = lexer.tokens();
  std::size_t k = 0;
  if (toks.size() >= 2 && toks[0].kind == Token::Kind::Punct && toks[0].text == "?" &&
      toks[1].kind == Token::Kind::Ident && toks[1].text == "lsd_2") {
    k = 2;
  } else {
    throw ParseError(1, 1, "formula must begin with ?lsd_2");
  }
  std::vector<Token> rest(toks.begin() + k, toks.end());
  return FormulaParser(rest).parse();
}

}  // namespace foldrun::logic
