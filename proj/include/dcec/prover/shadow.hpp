// Shadowing replaces each maximal modal subformula by a first-order atom.
//
// The atom's arguments are the subformula's "liftable" term occurrences:
// every maximal term that mentions no variable bound inside the subformula.
// What remains (the template) names the shadow predicate. Because lifted
// positions become ordinary arguments, shadowing commutes with substitution:
// shadow(m[x := s]) == shadow(m)[x := s], so first-order unification works on
// shadow atoms the way it would on the modal formulas themselves.

#ifndef DCEC_PROVER_SHADOW_HPP
#define DCEC_PROVER_SHADOW_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcec/core/syntax.hpp"

namespace dcec {

class ShadowMap {
 public:
  // Purely first-order result; extends the map with unseen templates.
  Formula shadow(const Formula& f);
  // Replaces every shadow atom by its modal formula.
  Formula unshadow(const Formula& f) const;
  std::optional<Formula> unshadow_atom(const std::string& predicate, std::span<const Term> args) const;

  static bool is_shadow_symbol(const std::string& predicate) {
    return !predicate.empty() && predicate[0] == '$';
  }
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::string symbol;
    Formula tmpl;
    std::vector<Term> placeholders;
  };
  Formula shadow_modal(const Formula& m);

  std::map<std::string, std::size_t> by_key_;
  std::map<std::string, std::size_t> by_symbol_;
  std::vector<Entry> entries_;
};

}  // namespace dcec

#endif  // DCEC_PROVER_SHADOW_HPP
