#include <cctype>
#include <string>
#include <vector>

#include "tsw/error.hpp"
#include "tsw/formula.hpp"

namespace tsw {

namespace {

enum class Tok { Ident, Placeholder, Bot, Top, And, Plus, Bar, Arrow, Tilde, Bang, DepOpen,
                 LParen, RParen, Comma, Semi, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), start});
      ++i;
    };
    switch (c) {
      case '&': single(Tok::And); continue;
      case '+': single(Tok::Plus); continue;
      case '|': single(Tok::Bar); continue;
      case '~': single(Tok::Tilde); continue;
      case '!': single(Tok::Bang); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ',': single(Tok::Comma); continue;
      case ';': single(Tok::Semi); continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", start});
          i += 2;
          continue;
        }
        throw ParseError("expected '->'", start);
      case '=':
        if (i + 1 < s.size() && s[i + 1] == '(') {
          out.push_back({Tok::DepOpen, "=(", start});
          i += 2;
          continue;
        }
        throw ParseError("expected '=(' to open a dependence atom", start);
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      std::string word(s.substr(start, i - start));
      if (!(word[0] >= 'a' && word[0] <= 'z'))
        throw ParseError("identifiers must start with a lowercase letter: '" + word + "'", start);
      Tok t = Tok::Ident;
      if (word == "bot") {
        t = Tok::Bot;
      } else if (word == "top") {
        t = Tok::Top;
      } else if (word.size() > 1 && word[0] == 'r' &&
                 word.find_first_not_of("0123456789", 1) == std::string::npos) {
        t = Tok::Placeholder;
      }
      out.push_back({t, std::move(word), start});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, ParseMode mode) : toks_(std::move(toks)), mode_(mode) {}

  Formula parse_all() {
    Formula f = implication();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_++]; }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++at_;
    return true;
  }
  const Token& expect(Tok t, const char* what) {
    if (peek().kind != t)
      throw ParseError(std::string("expected ") + what + ", found '" + peek().text + "'",
                       peek().pos);
    return next();
  }

  Formula implication() {
    Formula lhs = idisj();
    if (accept(Tok::Arrow)) return Formula::impl(std::move(lhs), implication());
    return lhs;
  }

  Formula idisj() {
    Formula f = tensor();
    while (accept(Tok::Bar)) f = Formula::idisj(std::move(f), tensor());
    return f;
  }

  Formula tensor() {
    Formula f = conj();
    while (accept(Tok::Plus)) f = Formula::tensor(std::move(f), conj());
    return f;
  }

  Formula conj() {
    Formula f = unit();
    while (accept(Tok::And)) f = Formula::conj(std::move(f), unit());
    return f;
  }

  std::string variable(const Token& t) {
    if (t.kind == Tok::Placeholder)
      throw ParseError("'" + t.text + "' is reserved for placeholders and cannot be used here",
                       t.pos);
    if (t.kind != Tok::Ident) throw ParseError("expected a variable, found '" + t.text + "'", t.pos);
    return t.text;
  }

  Formula unit() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Ident:
        return Formula::var(t.text);
      case Tok::Bot:
        return Formula::bottom();
      case Tok::Top:
        return Formula::top();
      case Tok::Placeholder: {
        const std::string digits = t.text.substr(1);
        if (digits.size() > 6 || std::stoi(digits) < 1)
          throw ParseError("placeholder index out of range: '" + t.text + "'", t.pos);
        return Formula::placeholder(std::stoi(digits));
      }
      case Tok::Bang:
        return Formula::neg_var(variable(next()));
      case Tok::Tilde:
        if (mode_ == ParseMode::InqL) return Formula::negation(unit());
        return Formula::neg_var(variable(next()));
      case Tok::DepOpen:
        return dependence_atom();
      case Tok::LParen: {
        Formula f = implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        throw ParseError(t.kind == Tok::End ? "unexpected end of input"
                                            : "unexpected '" + t.text + "'",
                         t.pos);
    }
  }

  // Called after "=(".
  Formula dependence_atom() {
    std::vector<std::string> names{variable(next())};
    while (accept(Tok::Comma)) names.push_back(variable(next()));
    if (accept(Tok::Semi)) {
      std::string target = variable(next());
      expect(Tok::RParen, "')'");
      return Formula::dep(std::move(names), std::move(target));
    }
    if (names.size() > 1)
      throw ParseError("dependence atom needs ';' before its target", peek().pos);
    expect(Tok::RParen, "')'");
    return Formula::dep({}, std::move(names.front()));
  }

  std::vector<Token> toks_;
  ParseMode mode_;
  std::size_t at_ = 0;
};

}  // namespace

Formula parse(std::string_view text, ParseMode mode) {
  return Parser(lex(text), mode).parse_all();
}

}  // namespace tsw
