#include "dcec/core/sexpr.hpp"

#include <cctype>

namespace dcec {

std::string to_string(const Position& pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

const std::string& Sexpr::head() const {
  static const std::string kEmpty;
  if (!is_list || items.empty() || items.front().is_list) return kEmpty;
  return items.front().atom;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<Sexpr> read_all() {
    std::vector<Sexpr> out;
    skip_space();
    while (i_ < text_.size()) {
      out.push_back(read());
      skip_space();
    }
    return out;
  }

 private:
  Sexpr read() {
    skip_space();
    if (i_ >= text_.size()) throw ParseError(here(), "unexpected end of input");
    const Position start = here();
    const char c = text_[i_];
    if (c == '(') {
      advance();
      Sexpr list;
      list.is_list = true;
      list.pos = start;
      for (;;) {
        skip_space();
        if (i_ >= text_.size()) throw ParseError(start, "unbalanced '(': missing ')'");
        if (text_[i_] == ')') {
          advance();
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')') throw ParseError(start, "unexpected ')'");
    Sexpr atom;
    atom.pos = start;
    if (c == ':' || c == '=') {
      atom.atom = std::string(1, c);
      advance();
      return atom;
    }
    if (c == '-' && i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
      atom.atom = "->";
      advance();
      advance();
      return atom;
    }
    const bool negative = c == '-' && i_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_ + 1]));
    if (negative || std::isdigit(static_cast<unsigned char>(c))) {
      if (negative) {
        atom.atom.push_back('-');
        advance();
      }
      while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
        atom.atom.push_back(text_[i_]);
        advance();
      }
      if (i_ < text_.size() && ident_char(text_[i_]))
        throw ParseError(here(), "malformed integer literal");
      return atom;
    }
    if (ident_start(c)) {
      while (i_ < text_.size() && ident_char(text_[i_])) {
        atom.atom.push_back(text_[i_]);
        advance();
      }
      return atom;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }

  void skip_space() {
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == ';') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  Position here() const { return {line_, col_}; }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Sexpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

bool is_identifier(std::string_view text) {
  if (text.empty() || !ident_start(text.front())) return false;
  for (char c : text)
    if (!ident_char(c)) return false;
  return true;
}

bool is_integer(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace dcec
