#include "ppj/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace ppj {

ParseError::ParseError(Kind kind, const std::string& message, SourcePos pos)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                         message),
      kind_(kind),
      pos_(pos),
      message_(message) {}

namespace {

enum class Tok {
  Ident, Number, Tilde, Amp, Bar, Arrow, Colon, Bang, Dot, LParen, RParen,
  ProbOp, Box, Diamond, End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

enum class Mode { Justification, Modal };

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  Lexer(std::string_view src, Mode mode) : src_(src), mode_(mode) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = here();
      if (at_end()) {
        out.push_back(t);
        return out;
      }
      const char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.text = take_while([](char ch) {
          return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'';
        });
        t.kind = Tok::Ident;
        if (mode_ == Mode::Justification && t.text == "P") {
          std::size_t look = i_;
          while (look < src_.size() && (src_[look] == ' ' || src_[look] == '\t')) ++look;
          if (look < src_.size() && (src_[look] == '<' || src_[look] == '>' || src_[look] == '=')) {
            while (i_ < look) advance();
            t.kind = Tok::ProbOp;
            t.text = read_comparison();
          }
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Number;
        t.text = take_while([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
        if (!at_end() && peek() == '.' && i_ + 1 < src_.size() &&
            std::isdigit(static_cast<unsigned char>(src_[i_ + 1]))) {
          advance();
          t.text += "." + take_while([](char ch) {
            return std::isdigit(static_cast<unsigned char>(ch));
          });
        } else if (!at_end() && peek() == '/') {
          advance();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
            throw ParseError(ParseError::Kind::Lexical, "expected digits after '/'", here());
          }
          t.text += "/" + take_while([](char ch) {
            return std::isdigit(static_cast<unsigned char>(ch));
          });
        }
      } else {
        advance();
        switch (c) {
          case '~': t.kind = Tok::Tilde; t.text = "~"; break;
          case '&': t.kind = Tok::Amp; t.text = "&"; break;
          case '|': t.kind = Tok::Bar; t.text = "|"; break;
          case ':': t.kind = Tok::Colon; t.text = ":"; break;
          case '!': t.kind = Tok::Bang; t.text = "!"; break;
          case '.': t.kind = Tok::Dot; t.text = "."; break;
          case '(': t.kind = Tok::LParen; t.text = "("; break;
          case ')': t.kind = Tok::RParen; t.text = ")"; break;
          case '-':
            if (!at_end() && peek() == '>') {
              advance();
              t.kind = Tok::Arrow;
              t.text = "->";
              break;
            }
            throw ParseError(ParseError::Kind::Lexical, "unexpected character '-'", t.pos);
          case '[':
            if (mode_ == Mode::Modal && !at_end() && peek() == ']') {
              advance();
              t.kind = Tok::Box;
              t.text = "[]";
              break;
            }
            throw ParseError(ParseError::Kind::Lexical, "unexpected character '['", t.pos);
          case '<':
            if (mode_ == Mode::Modal && !at_end() && peek() == '>') {
              advance();
              t.kind = Tok::Diamond;
              t.text = "<>";
              break;
            }
            throw ParseError(ParseError::Kind::Lexical, "unexpected character '<'", t.pos);
          default: {
            std::string shown = (std::isprint(static_cast<unsigned char>(c)) != 0)
                                    ? std::string(1, c)
                                    : "\\x" + std::to_string(static_cast<unsigned char>(c));
            throw ParseError(ParseError::Kind::Lexical, "unexpected character '" + shown + "'",
                             t.pos);
          }
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  [[nodiscard]] bool at_end() const { return i_ >= src_.size(); }
  [[nodiscard]] char peek() const { return src_[i_]; }
  [[nodiscard]] SourcePos here() const { return SourcePos{i_, line_, col_}; }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  template <typename Pred>
  std::string take_while(Pred pred) {
    std::string out;
    while (!at_end() && pred(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  std::string read_comparison() {
    std::string op(1, peek());
    advance();
    if (op != "=" && !at_end() && peek() == '=') {
      op += '=';
      advance();
    }
    return op;
  }

  std::string_view src_;
  Mode mode_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

constexpr std::size_t kMaxDepth = 5000;

class Parser {
 public:
  Parser(std::string_view src, Mode mode) : tokens_(Lexer(src, mode).run()) {}

  SurfaceFormula formula_to_end() {
    SurfaceFormula f = imp();
    expect_end();
    return f;
  }

  Term term_to_end() {
    Term t = term();
    expect_end();
    return t;
  }

  ModalFormula modal_to_end() {
    ModalFormula f = modal_imp();
    expect_end();
    return f;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) {
        throw ParseError(ParseError::Kind::Syntax, "formula nested too deeply", p_.cur().pos);
      }
    }
    ~DepthGuard() { --p_.depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
    Parser& p_;
  };

  [[nodiscard]] const Token& cur() const { return tokens_[pos_]; }
  bool accept(Tok k) {
    if (cur().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) {
      throw ParseError(ParseError::Kind::Syntax,
                       std::string("expected ") + what + ", found " + describe(cur()), cur().pos);
    }
  }
  void expect_end() {
    if (cur().kind != Tok::End) {
      throw ParseError(ParseError::Kind::Syntax, "unexpected " + describe(cur()), cur().pos);
    }
  }

  static SurfaceFormula node(SurfaceFormula::Kind kind, SourcePos pos,
                             std::vector<SurfaceFormula> children) {
    SurfaceFormula s;
    s.kind = kind;
    s.pos = pos;
    s.children = std::move(children);
    return s;
  }

  SurfaceFormula imp() {
    DepthGuard guard(*this);
    SurfaceFormula left = disj();
    const SourcePos at = cur().pos;
    if (accept(Tok::Arrow)) {
      SurfaceFormula right = imp();
      return node(SurfaceFormula::Kind::Implies, at, {std::move(left), std::move(right)});
    }
    return left;
  }

  SurfaceFormula disj() {
    SurfaceFormula left = conj();
    for (;;) {
      const SourcePos at = cur().pos;
      if (!accept(Tok::Bar)) return left;
      SurfaceFormula right = conj();
      left = node(SurfaceFormula::Kind::Or, at, {std::move(left), std::move(right)});
    }
  }

  SurfaceFormula conj() {
    SurfaceFormula left = unary();
    for (;;) {
      const SourcePos at = cur().pos;
      if (!accept(Tok::Amp)) return left;
      SurfaceFormula right = unary();
      left = node(SurfaceFormula::Kind::And, at, {std::move(left), std::move(right)});
    }
  }

  SurfaceFormula unary() {
    DepthGuard guard(*this);
    const Token start = cur();
    if (accept(Tok::Tilde)) return node(SurfaceFormula::Kind::Not, start.pos, {unary()});
    if (accept(Tok::ProbOp)) {
      using K = SurfaceFormula::Kind;
      K kind = K::PGeq;
      if (start.text == ">=") kind = K::PGeq;
      else if (start.text == "<=") kind = K::PAtMost;
      else if (start.text == "<") kind = K::PLess;
      else if (start.text == ">") kind = K::PGreater;
      else kind = K::PExactly;
      const Token number = cur();
      if (!accept(Tok::Number)) {
        throw ParseError(ParseError::Kind::Syntax,
                         "expected a rational after 'P" + start.text + "', found " +
                             describe(number),
                         number.pos);
      }
      SurfaceFormula s = node(kind, start.pos, {});
      try {
        s.threshold = Rational::parse(number.text);
      } catch (const std::exception& e) {
        throw ParseError(ParseError::Kind::Lexical, e.what(), number.pos);
      }
      if (s.threshold > Rational(1)) {
        throw ParseError(ParseError::Kind::Range,
                         "probability threshold " + number.text + " outside [0,1]", number.pos);
      }
      s.children.push_back(unary());
      return s;
    }
    if (start.kind == Tok::Ident || start.kind == Tok::Bang || start.kind == Tok::LParen) {
      if (auto t = try_justification_prefix()) {
        SurfaceFormula s = node(SurfaceFormula::Kind::Just, start.pos, {});
        s.term = std::move(*t);
        s.children.push_back(unary());
        return s;
      }
    }
    return atom();
  }

  // Parses `term ':'` if present; restores the position otherwise.
  std::optional<Term> try_justification_prefix() {
    const std::size_t saved = pos_;
    try {
      Term t = term();
      if (accept(Tok::Colon)) return t;
    } catch (const ParseError&) {
    }
    pos_ = saved;
    return std::nullopt;
  }

  SurfaceFormula atom() {
    const Token start = cur();
    if (accept(Tok::Ident)) {
      SurfaceFormula s = node(SurfaceFormula::Kind::Prop, start.pos, {});
      s.name = start.text;
      return s;
    }
    if (accept(Tok::LParen)) {
      SurfaceFormula inner = imp();
      expect(Tok::RParen, "')'");
      return inner;
    }
    throw ParseError(ParseError::Kind::Syntax, "expected a formula, found " + describe(start),
                     start.pos);
  }

  Term term() {
    DepthGuard guard(*this);
    Term left = tfactor();
    while (accept(Tok::Dot)) left = Term::app(left, tfactor());
    return left;
  }

  Term tfactor() {
    DepthGuard guard(*this);
    const Token start = cur();
    if (accept(Tok::Bang)) return Term::bang(tfactor());
    if (accept(Tok::Ident)) {
      const char c = start.text.front();
      if (c == 'x' || c == 'y' || c == 'z') return Term::variable(start.text);
      return Term::constant(start.text);
    }
    if (accept(Tok::LParen)) {
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    throw ParseError(ParseError::Kind::Syntax, "expected a term, found " + describe(start),
                     start.pos);
  }

  ModalFormula modal_imp() {
    DepthGuard guard(*this);
    ModalFormula left = modal_or_();
    if (accept(Tok::Arrow)) return modal_implies(left, modal_imp());
    return left;
  }

  ModalFormula modal_or_() {
    ModalFormula left = modal_and();
    while (accept(Tok::Bar)) left = modal_or(left, modal_and());
    return left;
  }

  ModalFormula modal_and() {
    ModalFormula left = modal_unary();
    while (accept(Tok::Amp)) left = ModalFormula::conjunction(left, modal_unary());
    return left;
  }

  ModalFormula modal_unary() {
    DepthGuard guard(*this);
    const Token start = cur();
    if (accept(Tok::Tilde)) return ModalFormula::negation(modal_unary());
    if (accept(Tok::Box)) return ModalFormula::box(modal_unary());
    if (accept(Tok::Diamond)) return diamond(modal_unary());
    if (accept(Tok::Ident)) return ModalFormula::prop(start.text);
    if (accept(Tok::LParen)) {
      ModalFormula inner = modal_imp();
      expect(Tok::RParen, "')'");
      return inner;
    }
    throw ParseError(ParseError::Kind::Syntax, "expected a formula, found " + describe(start),
                     start.pos);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

// ---------------------------------------------------------------- printing

void print_term_to(const Term& t, std::ostream& os);

void print_tfactor(const Term& t, std::ostream& os) {
  if (t.is_app()) {
    os << '(';
    print_term_to(t, os);
    os << ')';
  } else {
    print_term_to(t, os);
  }
}

void print_term_to(const Term& t, std::ostream& os) {
  switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      os << t.name();
      break;
    case Term::Kind::App:
      print_term_to(t.left(), os);
      os << '.';
      print_tfactor(t.right(), os);
      break;
    case Term::Kind::Bang:
      os << '!';
      print_tfactor(t.inner(), os);
      break;
  }
}

void print_to(const Formula& a, std::ostream& os);

void print_unary(const Formula& a, std::ostream& os) {
  if (a.is_and()) {
    os << '(';
    print_to(a, os);
    os << ')';
  } else {
    print_to(a, os);
  }
}

void print_to(const Formula& a, std::ostream& os) {
  switch (a.kind()) {
    case Formula::Kind::Prop:
      os << a.name();
      break;
    case Formula::Kind::Not:
      os << '~';
      print_unary(a.body(), os);
      break;
    case Formula::Kind::And:
      print_to(a.left(), os);
      os << " & ";
      print_unary(a.right(), os);
      break;
    case Formula::Kind::Just:
      print_term_to(a.term(), os);
      os << ':';
      print_unary(a.body(), os);
      break;
    case Formula::Kind::PGeq:
      os << "P>=" << a.threshold() << ' ';
      print_unary(a.body(), os);
      break;
  }
}

void print_modal_to(const ModalFormula& a, std::ostream& os) {
  auto unary = [&os](const ModalFormula& b) {
    if (b.kind() == ModalFormula::Kind::And) {
      os << '(';
      print_modal_to(b, os);
      os << ')';
    } else {
      print_modal_to(b, os);
    }
  };
  switch (a.kind()) {
    case ModalFormula::Kind::Prop:
      os << a.name();
      break;
    case ModalFormula::Kind::Not:
      os << '~';
      unary(a.body());
      break;
    case ModalFormula::Kind::Box:
      os << "[]";
      unary(a.body());
      break;
    case ModalFormula::Kind::And:
      print_modal_to(a.left(), os);
      os << " & ";
      unary(a.right());
      break;
  }
}

}  // namespace

SurfaceFormula parse_surface(std::string_view text) {
  return Parser(text, Mode::Justification).formula_to_end();
}

Formula parse_formula(std::string_view text) {
  SurfaceFormula s = parse_surface(text);
  try {
    return expand_sugar(s);
  } catch (const RangeError& e) {
    throw ParseError(ParseError::Kind::Range, e.what(), e.pos());
  }
}

Term parse_term(std::string_view text) { return Parser(text, Mode::Justification).term_to_end(); }

ModalFormula parse_modal(std::string_view text) {
  return Parser(text, Mode::Modal).modal_to_end();
}

std::string print_formula(const Formula& a) {
  std::ostringstream os;
  print_to(a, os);
  return os.str();
}

std::string print_term(const Term& t) {
  std::ostringstream os;
  print_term_to(t, os);
  return os.str();
}

std::string print_modal(const ModalFormula& a) {
  std::ostringstream os;
  print_modal_to(a, os);
  return os.str();
}

std::vector<InputLine> split_input(std::string_view text) {
  std::vector<InputLine> out;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_number;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    std::size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    if (lead < line.size()) out.push_back(InputLine{line_number, std::string(line)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace ppj
