#include "costsem/parse.hpp"

#include <cctype>
#include <cstdint>
#include <vector>

namespace costsem::parse {

namespace {

struct Token {
  enum class Kind { ident, number, punct, eof };
  Kind kind = Kind::eof;
  std::string text;
  int line = 1;
  int col = 1;
};

const char* const kPuncts[] = {"=>", "->", "<-", ":=", "(", ")", "{", "}",
                               "[", "]", ":", ",", "."};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      // line comment
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_' || src[j] == '\''))
        ++j;
      tok.kind = Token::Kind::ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      tok.kind = Token::Kind::number;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      tok.kind = Token::Kind::punct;
      bool matched = false;
      for (const char* p : kPuncts) {
        std::string_view pv(p);
        if (src.substr(i, pv.size()) == pv) {
          tok.text = std::string(pv);
          advance(pv.size());
          matched = true;
          break;
        }
      }
      if (!matched)
        throw ParseError(line, col, "unsupported character '" + std::string(1, c) + "'",
                         "");
    }
    out.push_back(std::move(tok));
  }
  Token eof;
  eof.kind = Token::Kind::eof;
  eof.line = line;
  eof.col = col;
  out.push_back(eof);
  return out;
}

struct Cursor {
  std::vector<Token> tokens;
  std::size_t pos = 0;

  const Token& peek() const { return tokens[pos]; }
  const Token& next() { return tokens[pos++]; }

  bool at_punct(std::string_view p) const {
    return peek().kind == Token::Kind::punct && peek().text == p;
  }
  bool at_ident(std::string_view word) const {
    return peek().kind == Token::Kind::ident && peek().text == word;
  }
  bool eat_punct(std::string_view p) {
    if (!at_punct(p)) return false;
    ++pos;
    return true;
  }
  bool eat_ident(std::string_view word) {
    if (!at_ident(word)) return false;
    ++pos;
    return true;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::eof ? "end of input"
                                                 : "'" + t.text + "'";
    throw ParseError(t.line, t.col, "unexpected " + got, expected);
  }
  void expect_punct(std::string_view p) {
    if (!eat_punct(p)) fail("'" + std::string(p) + "'");
  }
  std::string expect_name(const char* what) {
    if (peek().kind != Token::Kind::ident) fail(what);
    return next().text;
  }
};

bool is_keyword(const std::string& w) {
  static const char* const kw[] = {"fn",  "tt",  "ff",   "ifz", "suc", "ret",
                                   "bnd", "in",  "while", "get", "set", "dcl",
                                   "cmd", "bool", "unit", "nat"};
  for (const char* k : kw)
    if (w == k) return true;
  return false;
}

// resolve a named binder to a de Bruijn index
std::size_t resolve(const Cursor& cur, const std::vector<std::string>& binders,
                    const std::string& name, const char* what) {
  for (std::size_t i = 0; i < binders.size(); ++i)
    if (binders[binders.size() - 1 - i] == name) return i;
  const Token& t = cur.tokens[cur.pos - 1];
  throw ScopeError(t.line, t.col, std::string("unbound ") + what + " '" + name + "'",
                   "");
}

// ---------------------------------------------------------------- stlc

stlc::TyPtr stlc_type(Cursor& cur);

stlc::TyPtr stlc_type_atom(Cursor& cur) {
  if (cur.eat_ident("bool")) return stlc::ty_bool();
  if (cur.eat_punct("(")) {
    auto t = stlc_type(cur);
    cur.expect_punct(")");
    return t;
  }
  cur.fail("a type");
}

stlc::TyPtr stlc_type(Cursor& cur) {
  auto dom = stlc_type_atom(cur);
  if (cur.eat_punct("->")) return stlc::ty_arrow(dom, stlc_type(cur));
  return dom;
}

stlc::TmPtr stlc_term(Cursor& cur, std::vector<std::string>& binders);

stlc::TmPtr stlc_atom(Cursor& cur, std::vector<std::string>& binders) {
  if (cur.eat_ident("tt")) return stlc::tt();
  if (cur.eat_ident("ff")) return stlc::ff();
  if (cur.eat_punct("(")) {
    auto e = stlc_term(cur, binders);
    cur.expect_punct(")");
    return e;
  }
  if (cur.peek().kind == Token::Kind::ident && !is_keyword(cur.peek().text)) {
    std::string name = cur.next().text;
    return stlc::var(resolve(cur, binders, name, "variable"));
  }
  cur.fail("a term");
}

bool stlc_starts_atom(const Cursor& cur) {
  const Token& t = cur.peek();
  if (t.kind == Token::Kind::punct) return t.text == "(";
  if (t.kind != Token::Kind::ident) return false;
  return t.text == "tt" || t.text == "ff" || !is_keyword(t.text);
}

stlc::TmPtr stlc_term(Cursor& cur, std::vector<std::string>& binders) {
  if (cur.eat_ident("fn")) {
    cur.expect_punct("(");
    std::string name = cur.expect_name("a binder name");
    std::optional<stlc::TyPtr> ann;
    if (cur.eat_punct(":")) ann = stlc_type(cur);
    cur.expect_punct(")");
    cur.expect_punct("=>");
    binders.push_back(name);
    auto body = stlc_term(cur, binders);
    binders.pop_back();
    return ann ? stlc::lam(*ann, body) : stlc::lam(body);
  }
  auto e = stlc_atom(cur, binders);
  while (stlc_starts_atom(cur)) e = stlc::ap(e, stlc_atom(cur, binders));
  return e;
}

// ------------------------------------------------------------------ ma

ma::MaTyPtr ma_type(Cursor& cur);

ma::MaTyPtr ma_type_atom(Cursor& cur) {
  if (cur.eat_ident("unit")) return ma::ty_unit();
  if (cur.eat_ident("bool")) return ma::ty_bool();
  if (cur.eat_ident("nat")) return ma::ty_nat();
  if (cur.eat_ident("cmd")) {
    cur.expect_punct("(");
    auto t = ma_type(cur);
    cur.expect_punct(")");
    return ma::ty_cmd(t);
  }
  if (cur.eat_punct("(")) {
    auto t = ma_type(cur);
    cur.expect_punct(")");
    return t;
  }
  cur.fail("a type");
}

ma::MaTyPtr ma_type(Cursor& cur) {
  auto dom = ma_type_atom(cur);
  if (cur.eat_punct("->")) return ma::ty_arrow(dom, ma_type(cur));
  return dom;
}

struct MaBinders {
  std::vector<std::string> vars;
  std::vector<std::string> cells;
};

ma::ExpPtr ma_exp(Cursor& cur, MaBinders& b);
ma::CmdPtr ma_cmd(Cursor& cur, MaBinders& b);

bool at_cmd_keyword(const Cursor& cur) {
  return cur.at_ident("ret") || cur.at_ident("bnd") || cur.at_ident("while") ||
         cur.at_ident("get") || cur.at_ident("set") || cur.at_ident("dcl");
}

// an assignable reference: a dcl-bound name or a literal index relative to
// the outside of the current declarations
std::size_t ma_cell_ref(Cursor& cur, MaBinders& b) {
  cur.expect_punct("[");
  std::size_t index;
  if (cur.peek().kind == Token::Kind::number) {
    index = std::stoull(cur.next().text) + b.cells.size();
  } else {
    std::string name = cur.expect_name("an assignable");
    index = resolve(cur, b.cells, name, "assignable");
  }
  cur.expect_punct("]");
  return index;
}

ma::ExpPtr ma_exp_atom(Cursor& cur, MaBinders& b) {
  if (cur.eat_ident("tt")) return ma::tt();
  if (cur.eat_ident("ff")) return ma::ff();
  if (cur.peek().kind == Token::Kind::number)
    return ma::numeral(std::stoull(cur.next().text));
  if (cur.eat_ident("suc")) {
    cur.expect_punct("(");
    auto e = ma_exp(cur, b);
    cur.expect_punct(")");
    return ma::suc(e);
  }
  if (cur.eat_ident("ifz")) {
    cur.expect_punct("(");
    auto scrut = ma_exp(cur, b);
    cur.expect_punct(",");
    auto zcase = ma_exp(cur, b);
    cur.expect_punct(",");
    std::string name = cur.expect_name("a binder name");
    cur.expect_punct(".");
    b.vars.push_back(name);
    auto scase = ma_exp(cur, b);
    b.vars.pop_back();
    cur.expect_punct(")");
    return ma::ifz(scrut, zcase, scase);
  }
  if (cur.at_ident("cmd")) {
    cur.next();
    cur.expect_punct("{");
    auto m = ma_cmd(cur, b);
    cur.expect_punct("}");
    return ma::cmd_val(m);
  }
  if (cur.eat_punct("(")) {
    if (cur.eat_punct(")")) return ma::triv();
    auto e = ma_exp(cur, b);
    cur.expect_punct(")");
    return e;
  }
  if (cur.peek().kind == Token::Kind::ident && !is_keyword(cur.peek().text)) {
    std::string name = cur.next().text;
    return ma::var(resolve(cur, b.vars, name, "variable"));
  }
  cur.fail("an expression");
}

bool ma_starts_atom(const Cursor& cur) {
  const Token& t = cur.peek();
  if (t.kind == Token::Kind::number) return true;
  if (t.kind == Token::Kind::punct) return t.text == "(";
  if (t.kind != Token::Kind::ident) return false;
  if (t.text == "tt" || t.text == "ff" || t.text == "suc" || t.text == "ifz" ||
      t.text == "cmd")
    return true;
  return !is_keyword(t.text);
}

ma::ExpPtr ma_exp(Cursor& cur, MaBinders& b) {
  if (cur.eat_ident("fn")) {
    cur.expect_punct("(");
    std::string name = cur.expect_name("a binder name");
    std::optional<ma::MaTyPtr> ann;
    if (cur.eat_punct(":")) ann = ma_type(cur);
    cur.expect_punct(")");
    cur.expect_punct("=>");
    b.vars.push_back(name);
    auto body = ma_exp(cur, b);
    b.vars.pop_back();
    return ann ? ma::lam(*ann, body) : ma::lam(body);
  }
  auto e = ma_exp_atom(cur, b);
  while (ma_starts_atom(cur)) e = ma::ap(e, ma_exp_atom(cur, b));
  return e;
}

ma::CmdPtr ma_cmd(Cursor& cur, MaBinders& b) {
  if (cur.eat_ident("ret")) return ma::ret(ma_exp(cur, b));
  if (cur.eat_ident("bnd")) {
    std::string name = cur.expect_name("a binder name");
    cur.expect_punct("<-");
    auto subject = ma_exp(cur, b);
    if (!cur.eat_ident("in")) cur.fail("'in'");
    b.vars.push_back(name);
    auto body = ma_cmd(cur, b);
    b.vars.pop_back();
    return ma::bnd(subject, body);
  }
  if (cur.eat_ident("while")) {
    std::size_t cell = ma_cell_ref(cur, b);
    cur.expect_punct("{");
    auto body = ma_cmd(cur, b);
    cur.expect_punct("}");
    return ma::while_(cell, body);
  }
  if (cur.eat_ident("get")) return ma::get(ma_cell_ref(cur, b));
  if (cur.eat_ident("set")) {
    std::size_t cell = ma_cell_ref(cur, b);
    cur.expect_punct(":=");
    return ma::set(cell, ma_exp(cur, b));
  }
  if (cur.eat_ident("dcl")) {
    std::string name = cur.expect_name("an assignable name");
    cur.expect_punct(":=");
    auto init = ma_exp(cur, b);
    if (!cur.eat_ident("in")) cur.fail("'in'");
    b.cells.push_back(name);
    auto body = ma_cmd(cur, b);
    b.cells.pop_back();
    return ma::dcl(init, body);
  }
  cur.fail("a command");
}

}  // namespace

stlc::TmPtr parse_stlc(std::string_view src) {
  Cursor cur{lex(src)};
  std::vector<std::string> binders;
  auto e = stlc_term(cur, binders);
  if (cur.peek().kind != Token::Kind::eof) cur.fail("end of input");
  return e;
}

MaProgram parse_ma(std::string_view src) {
  Cursor cur{lex(src)};
  MaBinders binders;
  MaProgram out;
  if (at_cmd_keyword(cur))
    out = ma_cmd(cur, binders);
  else
    out = ma_exp(cur, binders);
  if (cur.peek().kind != Token::Kind::eof) cur.fail("end of input");
  return out;
}

}  // namespace costsem::parse
