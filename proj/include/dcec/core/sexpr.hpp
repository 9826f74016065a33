#ifndef DCEC_CORE_SEXPR_HPP
#define DCEC_CORE_SEXPR_HPP

#include <string>
#include <string_view>
#include <vector>

#include "dcec/core/error.hpp"

namespace dcec {

// A positioned S-expression. Atoms are identifiers, integers (possibly
// negative), `:`, `=` and `->`.
struct Sexpr {
  bool is_list = false;
  std::string atom;
  std::vector<Sexpr> items;
  Position pos;

  bool is_atom() const { return !is_list; }
  bool is_atom(std::string_view text) const { return !is_list && atom == text; }
  // Head keyword of a list whose first element is an atom, or "".
  const std::string& head() const;
};

// Reads every top-level expression in `text`. `;` starts a comment that runs
// to the end of the line.
std::vector<Sexpr> read_sexprs(std::string_view text);

bool is_identifier(std::string_view text);
bool is_integer(std::string_view text);

}  // namespace dcec

#endif  // DCEC_CORE_SEXPR_HPP
