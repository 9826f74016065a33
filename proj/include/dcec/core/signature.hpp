#ifndef DCEC_CORE_SIGNATURE_HPP
#define DCEC_CORE_SIGNATURE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcec/core/syntax.hpp"

namespace dcec {

struct SymbolDecl {
  std::vector<std::string> arg_sorts;
  std::string result_sort;
};

// Declared sorts (with a subsort relation), predicate and function symbols,
// and constants. A default-constructed Signature already carries the built-in
// sorts, the event-calculus vocabulary, Prevents/Block, the action(.,.)
// constructor and the situation constant `sigma_default`.
class Signature {
 public:
  Signature();

  // Throws SortError on redeclaration or unknown parent.
  void add_sort(const std::string& name, const std::vector<std::string>& parents = {});
  void add_constant(const std::string& name, const std::string& sort);
  void add_predicate(const std::string& name, std::vector<std::string> arg_sorts);
  void add_function(const std::string& name, std::vector<std::string> arg_sorts,
                    std::string result_sort);

  bool has_sort(const std::string& name) const { return parents_.count(name) > 0; }
  // Reflexive-transitive subsort relation.
  bool is_subsort(const std::string& sub, const std::string& super) const;
  const std::set<std::string>& parents(const std::string& sort) const;
  std::vector<std::string> sorts() const;

  std::optional<std::string> constant_sort(const std::string& name) const;
  const SymbolDecl* predicate(const std::string& name) const;
  const SymbolDecl* function(const std::string& name) const;

  const std::map<std::string, std::string>& constants() const { return constants_; }
  const std::map<std::string, SymbolDecl>& predicates() const { return predicates_; }
  const std::map<std::string, SymbolDecl>& functions() const { return functions_; }

  // Eager well-sortedness check. Function symbols that are not declared
  // (e.g. Skolem functions) are accepted when `allow_undeclared_functions`.
  void check(const Formula& f, bool allow_undeclared_functions = false) const;
  void check(const Term& t, bool allow_undeclared_functions = false) const;

 private:
  void check_name_free(const std::string& name) const;

  std::map<std::string, std::set<std::string>> parents_;
  std::map<std::string, std::string> constants_;
  std::map<std::string, SymbolDecl> predicates_;
  std::map<std::string, SymbolDecl> functions_;
};

}  // namespace dcec

#endif  // DCEC_CORE_SIGNATURE_HPP
