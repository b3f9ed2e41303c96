// Copyright 2026 The derivguide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "derivguide/fol/problem.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace derivguide::fol {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { lower_word, upper_word, dollar_word, lparen, rparen, comma, dot, bar, tilde, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::lower_word: return "identifier";
    case Tok::upper_word: return "variable";
    case Tok::dollar_word: return "$-keyword";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::bar: return "'|'";
    case Tok::tilde: return "'~'";
    case Tok::end: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t{Tok::end, {}, line_, column_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    auto word_char = [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
    };
    if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::lower_word;
    } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::upper_word;
    } else if (c == '$') {
      t.kind = Tok::dollar_word;
      t.text += c;
      advance();
    } else {
      switch (c) {
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        case ',': t.kind = Tok::comma; break;
        case '.': t.kind = Tok::dot; break;
        case '|': t.kind = Tok::bar; break;
        case '~': t.kind = Tok::tilde; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
      }
      t.text = c;
      advance();
      return t;
    }
    while (pos_ < text_.size() && word_char(text_[pos_])) {
      t.text += text_[pos_];
      advance();
    }
    return t;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, Problem& out) : lexer_(text), out_(out) { shift(); }

  void parse() {
    std::set<std::string> axiom_names;
    while (tok_.kind != Tok::end) {
      Token head = expect(Tok::lower_word);
      if (head.text != "cnf") fail("expected 'cnf'", head);
      expect(Tok::lparen);
      Token name = expect(Tok::lower_word);
      expect(Tok::comma);
      Token role_tok = expect(Tok::lower_word);
      Role role;
      if (role_tok.text == "axiom") {
        role = Role::axiom;
      } else if (role_tok.text == "negated_conjecture") {
        role = Role::negated_conjecture;
      } else {
        fail("unknown role '" + role_tok.text + "'", role_tok);
      }
      if (role == Role::axiom && !axiom_names.insert(name.text).second) {
        fail("duplicate axiom name '" + name.text + "'", name);
      }
      expect(Tok::comma);
      variables_.clear();
      std::vector<Literal> lits = parse_clause();
      expect(Tok::rparen);
      expect(Tok::dot);
      auto id = static_cast<ClauseId>(out_.clauses.size());
      Origin origin = role == Role::axiom ? Origin::input_axiom : Origin::input_conjecture;
      out_.clauses.push_back(InputClause{Clause(std::move(lits), id, origin), role, name.text});
    }
    if (out_.clauses.empty()) fail("problem contains no clauses", tok_);
  }

 private:
  [[noreturn]] void fail(const std::string& message, const Token& at) {
    throw ParseError(message, at.line, at.column);
  }

  void shift() { tok_ = lexer_.next(); }

  Token expect(Tok kind) {
    if (tok_.kind != kind) {
      std::string found = tok_.kind == Tok::end ? describe(Tok::end) : "'" + tok_.text + "'";
      fail(std::string("expected ") + describe(kind) + ", found " + found, tok_);
    }
    Token t = tok_;
    shift();
    return t;
  }

  std::vector<Literal> parse_clause() {
    std::vector<Literal> lits;
    if (tok_.kind == Tok::dollar_word) {
      Token t = expect(Tok::dollar_word);
      if (t.text != "$false") fail("unknown keyword '" + t.text + "'", t);
      return lits;
    }
    bool parenthesized = tok_.kind == Tok::lparen;
    if (parenthesized) shift();
    lits.push_back(parse_literal());
    while (tok_.kind == Tok::bar) {
      shift();
      lits.push_back(parse_literal());
    }
    if (parenthesized) expect(Tok::rparen);
    return lits;
  }

  Literal parse_literal() {
    bool positive = true;
    if (tok_.kind == Tok::tilde) {
      positive = false;
      shift();
    }
    Token name = expect(Tok::lower_word);
    std::vector<Term> args = parse_args();
    Literal lit{positive, intern(name, args.size(), SymbolKind::predicate), std::move(args)};
    return lit;
  }

  std::vector<Term> parse_args() {
    std::vector<Term> args;
    if (tok_.kind != Tok::lparen) return args;
    shift();
    args.push_back(parse_term());
    while (tok_.kind == Tok::comma) {
      shift();
      args.push_back(parse_term());
    }
    expect(Tok::rparen);
    return args;
  }

  Term parse_term() {
    if (tok_.kind == Tok::upper_word) {
      Token t = tok_;
      shift();
      auto [it, inserted] = variables_.try_emplace(t.text, static_cast<VarId>(variables_.size()));
      return Term::variable(it->second);
    }
    Token name = expect(Tok::lower_word);
    std::vector<Term> args = parse_args();
    SymbolId f = intern(name, args.size(), SymbolKind::function);
    return Term::apply(f, std::move(args));
  }

  SymbolId intern(const Token& name, std::size_t arity, SymbolKind kind) {
    try {
      return out_.signature.intern(name.text, static_cast<std::uint32_t>(arity), kind);
    } catch (const ArityConflict& e) {
      fail(e.what(), name);
    }
  }

  Lexer lexer_;
  Token tok_{Tok::end, {}, 1, 1};
  Problem& out_;
  std::unordered_map<std::string, VarId> variables_;
};

}  // namespace

Problem parse_problem(std::string_view text, std::string name) {
  Problem p;
  p.name = std::move(name);
  Parser(text, p).parse();
  return p;
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), path.stem().string());
}

std::string print_problem(const Problem& problem) {
  std::string out;
  for (const auto& ic : problem.clauses) {
    out += "cnf(";
    out += ic.name;
    out += ic.role == Role::axiom ? ", axiom, " : ", negated_conjecture, ";
    out += to_string(ic.clause, problem.signature);
    out += ").\n";
  }
  return out;
}

}  // namespace derivguide::fol
