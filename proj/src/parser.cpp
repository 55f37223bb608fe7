#include "sahlkracht/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "sahlkracht/error.hpp"

namespace sahlkracht {

SyntaxError::SyntaxError(int line, int column, std::vector<std::string> expected,
                         const std::string& found)
    : Error([&] {
        std::ostringstream os;
        os << "syntax error at " << line << ":" << column << ": found " << found;
        if (!expected.empty()) {
          os << ", expected one of:";
          for (const auto& e : expected) os << " " << e;
        }
        return os.str();
      }()),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Upper, Int, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    auto word = [&](auto pred) {
      std::size_t j = i + 1;
      while (j < s.size() && pred(s[j])) ++j;
      return j - i;
    };
    auto alnum = [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
    };
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t n = word(alnum);
      out.push_back({Tok::Ident, std::string(s.substr(i, n)), l, cl});
      advance(n);
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      std::size_t n = word(alnum);
      out.push_back({Tok::Upper, std::string(s.substr(i, n)), l, cl});
      advance(n);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = word([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
      out.push_back({Tok::Int, std::string(s.substr(i, n)), l, cl});
      advance(n);
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Sym, "->", l, cl});
      advance(2);
    } else if (std::string_view("()[]<>~&|#.=,;:").find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), l, cl});
      advance(1);
    } else {
      throw SyntaxError(l, cl, {}, std::string("character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::regex& objvar_re() {
  static const std::regex re("x([0-9]+)");
  return re;
}

const std::regex& setvar_re() {
  static const std::regex re("P([0-9]+)_([0-9]+)");
  return re;
}

const std::regex& rel_re() {
  static const std::regex re("R([0-9]*)");
  return re;
}

const std::regex& exprop_re() {
  static const std::regex re("(img|inv|ibox)([0-9]*)");
  return re;
}

bool is_fo_keyword(const std::string& s) {
  return s == "in" || s == "all" || s == "ex" || s == "forall" || s == "exists";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {
    int max_id = -1;
    std::smatch m;
    for (const auto& t : toks_)
      if (t.kind == Tok::Ident && std::regex_match(t.text, m, objvar_re()))
        max_id = std::max(max_id, std::stoi(m[1]));
    next_id_ = max_id + 1;
  }

  Modal modal_top() {
    Modal m = modal_imp();
    expect_end();
    return m;
  }
  Expr expr_top() {
    Expr e = expr_union();
    expect_end();
    return e;
  }
  Fo fo_top() {
    Fo f = fo_imp();
    expect_end();
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_sym(std::string_view s) const {
    return peek().kind == Tok::Sym && peek().text == s;
  }
  bool at_ident(std::string_view s) const {
    return peek().kind == Tok::Ident && peek().text == s;
  }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.col, std::move(expected), found);
  }

  void expect_sym(std::string_view s) {
    if (!at_sym(s)) fail({"'" + std::string(s) + "'"});
    ++pos_;
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }

  int label_digits(const std::string& digits) { return digits.empty() ? 1 : std::stoi(digits); }

  // --- modal --------------------------------------------------------------

  Modal modal_imp() {
    Modal a = modal_or();
    if (at_sym("->")) {
      ++pos_;
      return Modal::implies(a, modal_imp());
    }
    return a;
  }
  Modal modal_or() {
    Modal a = modal_and();
    while (at_sym("|")) {
      ++pos_;
      a = Modal::disj(a, modal_and());
    }
    return a;
  }
  Modal modal_and() {
    Modal a = modal_unary();
    while (at_sym("&")) {
      ++pos_;
      a = Modal::conj(a, modal_unary());
    }
    return a;
  }
  Label bracket_label(std::string_view close) {
    ++pos_;
    int l = 1;
    if (peek().kind == Tok::Int) l = std::stoi(take().text);
    expect_sym(close);
    return Label{l};
  }
  Modal modal_unary() {
    if (at_sym("~")) {
      ++pos_;
      return Modal::neg(modal_unary());
    }
    if (at_sym("[")) {
      Label l = bracket_label("]");
      return Modal::box(l, modal_unary());
    }
    if (at_sym("<")) {
      Label l = bracket_label(">");
      return Modal::dia(l, modal_unary());
    }
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      ++pos_;
      return Modal::var(t.text);
    }
    if (t.kind == Tok::Upper && t.text == "T") {
      ++pos_;
      return Modal::top();
    }
    if (t.kind == Tok::Upper && t.text == "F") {
      ++pos_;
      return Modal::bot();
    }
    if (at_sym("(")) {
      ++pos_;
      Modal m = modal_imp();
      expect_sym(")");
      return m;
    }
    fail({"variable", "'T'", "'F'", "'~'", "'['", "'<'", "'('"});
  }

  // --- expressions ----------------------------------------------------------

  ObjVar objvar(const std::string& name) {
    std::smatch m;
    if (std::regex_match(name, m, objvar_re())) return ObjVar{std::stoi(m[1])};
    auto it = names_.find(name);
    if (it != names_.end()) return it->second;
    ObjVar v{next_id_++};
    names_.emplace(name, v);
    return v;
  }

  ObjVar objvar_token() {
    if (peek().kind != Tok::Ident || is_fo_keyword(peek().text)) fail({"object variable"});
    return objvar(take().text);
  }

  Expr expr_union() {
    Expr a = expr_inter();
    while (at_sym("|")) {
      ++pos_;
      a = Expr::cup(a, expr_inter());
    }
    return a;
  }
  Expr expr_inter() {
    Expr a = expr_prim();
    while (at_sym("&")) {
      ++pos_;
      a = Expr::cap(a, expr_prim());
    }
    return a;
  }
  Expr expr_prim() {
    const Token& t = peek();
    std::smatch m;
    if (t.kind == Tok::Ident && std::regex_match(t.text, m, exprop_re())) {
      std::string op = m[1];
      Label l{label_digits(m[2])};
      ++pos_;
      expect_sym("(");
      Expr e = expr_union();
      expect_sym(")");
      if (op == "img") return Expr::img(l, e);
      if (op == "inv") return Expr::inv(l, e);
      return Expr::ibox(l, e);
    }
    if (t.kind == Tok::Ident && !is_fo_keyword(t.text)) {
      ++pos_;
      return Expr::obj(objvar(t.text));
    }
    if (t.kind == Tok::Upper) {
      if (t.text == "T") {
        ++pos_;
        return Expr::top();
      }
      if (t.text == "F") {
        ++pos_;
        return Expr::bot();
      }
      if (std::regex_match(t.text, m, setvar_re())) {
        ++pos_;
        return Expr::setvar(PropVar::at(std::stoi(m[1]), std::stoi(m[2])));
      }
    }
    if (at_sym("#")) {
      ++pos_;
      return Expr::hole();
    }
    if (at_sym("(")) {
      ++pos_;
      Expr e = expr_union();
      expect_sym(")");
      return e;
    }
    fail({"object variable", "P<rank>_<index>", "'#'", "'T'", "'F'", "img<k>", "inv<k>",
          "ibox<k>", "'('"});
  }

  // --- first-order ----------------------------------------------------------

  Fo fo_imp() {
    Fo a = fo_or();
    if (at_sym("->")) {
      ++pos_;
      return Fo::disj(Fo::neg(a), fo_imp());
    }
    return a;
  }
  Fo fo_or() {
    Fo a = fo_and();
    while (at_sym("|")) {
      ++pos_;
      a = Fo::disj(a, fo_and());
    }
    return a;
  }
  Fo fo_and() {
    Fo a = fo_unary();
    while (at_sym("&")) {
      ++pos_;
      a = Fo::conj(a, fo_unary());
    }
    return a;
  }
  Fo fo_unary() {
    if (at_sym("~")) {
      ++pos_;
      return Fo::neg(fo_unary());
    }
    if (at_ident("all") || at_ident("ex")) {
      bool universal = take().text == "all";
      ObjVar b = objvar_token();
      expect_sym("<");
      int l = 1;
      if (peek().kind == Tok::Int) l = std::stoi(take().text);
      ObjVar a = objvar_token();
      expect_sym(".");
      Fo body = fo_imp();
      return universal ? Fo::rforall(b, Label{l}, a, body) : Fo::rexists(b, Label{l}, a, body);
    }
    if (at_ident("forall") || at_ident("exists")) {
      bool universal = take().text == "forall";
      ObjVar b = objvar_token();
      expect_sym(".");
      Fo body = fo_imp();
      return universal ? Fo::forall(b, body) : Fo::exists(b, body);
    }
    const Token& t = peek();
    if (t.kind == Tok::Upper && t.text == "T") {
      ++pos_;
      return Fo::top();
    }
    if (t.kind == Tok::Upper && t.text == "F") {
      ++pos_;
      return Fo::bot();
    }
    if (at_sym("(")) {
      ++pos_;
      Fo f = fo_imp();
      expect_sym(")");
      return f;
    }
    if (t.kind == Tok::Ident && !is_fo_keyword(t.text)) {
      ObjVar x = objvar(take().text);
      if (at_ident("in")) {
        ++pos_;
        return Fo::member(x, expr_prim());
      }
      if (at_sym("=")) {
        ++pos_;
        return Fo::eq(x, objvar_token());
      }
      std::smatch m;
      if (peek().kind == Tok::Upper && std::regex_match(peek().text, m, rel_re())) {
        Label l{label_digits(m[1])};
        ++pos_;
        return Fo::rel(l, x, objvar_token());
      }
      fail({"'in'", "'='", "R<k>"});
    }
    fail({"object variable", "'T'", "'F'", "'~'", "'all'", "'ex'", "'forall'", "'exists'",
          "'('"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int next_id_ = 0;
  std::map<std::string, ObjVar> names_;
};

// --- printing ----------------------------------------------------------------

void print_modal(std::ostream& os, const Modal& f, int ctx);

int modal_level(const Modal& f) {
  switch (f.kind()) {
    case ModalKind::Implies: return 0;
    case ModalKind::Or: return 1;
    case ModalKind::And: return 2;
    default: return 3;
  }
}

void print_modal(std::ostream& os, const Modal& f, int ctx) {
  int lvl = modal_level(f);
  bool paren = lvl < ctx;
  if (paren) os << '(';
  switch (f.kind()) {
    case ModalKind::Var: os << f.var().key(); break;
    case ModalKind::Top: os << 'T'; break;
    case ModalKind::Bot: os << 'F'; break;
    case ModalKind::Not:
      os << '~';
      print_modal(os, f.child(), 3);
      break;
    case ModalKind::Box:
      os << '[' << f.label().id << ']';
      print_modal(os, f.child(), 3);
      break;
    case ModalKind::Dia:
      os << '<' << f.label().id << '>';
      print_modal(os, f.child(), 3);
      break;
    case ModalKind::And:
      print_modal(os, f.left(), 2);
      os << " & ";
      print_modal(os, f.right(), 3);
      break;
    case ModalKind::Or:
      print_modal(os, f.left(), 1);
      os << " | ";
      print_modal(os, f.right(), 2);
      break;
    case ModalKind::Implies:
      print_modal(os, f.left(), 1);
      os << " -> ";
      print_modal(os, f.right(), 0);
      break;
  }
  if (paren) os << ')';
}

void print_expr(std::ostream& os, const Expr& e, int ctx) {
  int lvl = e.is(ExprKind::Cup) ? 0 : e.is(ExprKind::Cap) ? 1 : 2;
  bool paren = lvl < ctx;
  if (paren) os << '(';
  switch (e.kind()) {
    case ExprKind::ObjVar: os << 'x' << e.obj().id; break;
    case ExprKind::SetVar:
      os << 'P' << e.setvar().rank << '_' << e.setvar().index;
      break;
    case ExprKind::Hole: os << '#'; break;
    case ExprKind::Top: os << 'T'; break;
    case ExprKind::Bot: os << 'F'; break;
    case ExprKind::Cap:
      print_expr(os, e.left(), 1);
      os << " & ";
      print_expr(os, e.right(), 2);
      break;
    case ExprKind::Cup:
      print_expr(os, e.left(), 0);
      os << " | ";
      print_expr(os, e.right(), 1);
      break;
    case ExprKind::Inv:
    case ExprKind::IBox:
    case ExprKind::Img:
      os << (e.is(ExprKind::Inv) ? "inv" : e.is(ExprKind::IBox) ? "ibox" : "img")
         << e.label().id << '(';
      print_expr(os, e.child(), 0);
      os << ')';
      break;
  }
  if (paren) os << ')';
}

void print_fo(std::ostream& os, const Fo& f, int ctx) {
  int lvl = f.is_quantifier() ? 0 : f.is(FoKind::Or) ? 1 : f.is(FoKind::And) ? 2 : 3;
  bool paren = lvl < ctx;
  if (paren) os << '(';
  switch (f.kind()) {
    case FoKind::Member:
      os << 'x' << f.subject().id << " in ";
      print_expr(os, f.expr(), 2);
      break;
    case FoKind::Rel:
      os << 'x' << f.lhs().id << " R" << f.label().id << " x" << f.rhs().id;
      break;
    case FoKind::Eq:
      os << 'x' << f.lhs().id << " = x" << f.rhs().id;
      break;
    case FoKind::Top: os << 'T'; break;
    case FoKind::Bot: os << 'F'; break;
    case FoKind::Not:
      os << '~';
      print_fo(os, f.body(), 3);
      break;
    case FoKind::And:
      print_fo(os, f.left(), 2);
      os << " & ";
      print_fo(os, f.right(), 3);
      break;
    case FoKind::Or:
      print_fo(os, f.left(), 1);
      os << " | ";
      print_fo(os, f.right(), 2);
      break;
    case FoKind::RForall:
    case FoKind::RExists:
      os << (f.is(FoKind::RForall) ? "all x" : "ex x") << f.bound().id << " <" << f.label().id
         << " x" << f.anchor().id << " . ";
      print_fo(os, f.body(), 0);
      break;
    case FoKind::Forall:
    case FoKind::Exists:
      os << (f.is(FoKind::Forall) ? "forall x" : "exists x") << f.bound().id << " . ";
      print_fo(os, f.body(), 0);
      break;
  }
  if (paren) os << ')';
}

}  // namespace

Modal parse_modal(std::string_view text) { return Parser(text).modal_top(); }
Expr parse_expr(std::string_view text) { return Parser(text).expr_top(); }
Fo parse_fo(std::string_view text) { return Parser(text).fo_top(); }

AnyTree parse(SyntaxKind kind, std::string_view text) {
  switch (kind) {
    case SyntaxKind::Modal: return parse_modal(text);
    case SyntaxKind::Expr: return parse_expr(text);
    default: return parse_fo(text);
  }
}

std::string print(const Modal& f) {
  std::ostringstream os;
  print_modal(os, f, 0);
  return os.str();
}

std::string print(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string print(const Fo& f) {
  std::ostringstream os;
  print_fo(os, f, 0);
  return os.str();
}

std::string print(const AnyTree& t) {
  return std::visit([](const auto& x) { return print(x); }, t);
}

std::string print(ObjVar x) { return "x" + std::to_string(x.id); }
std::string print(Label l) { return std::to_string(l.id); }

std::vector<std::string> read_golden_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open golden file " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string s = line.substr(b, e - b + 1);
    if (s == "#" || s.rfind("# ", 0) == 0) continue;
    out.push_back(s);
  }
  return out;
}

}  // namespace sahlkracht
