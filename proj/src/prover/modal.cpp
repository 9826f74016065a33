#include "dcec/prover/modal.hpp"

#include <set>

namespace dcec {

std::optional<std::size_t> Expansion::find(const Formula& f) const {
  auto it = index_.find(alpha_key(f));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Formula> Expansion::formulas() const {
  std::vector<Formula> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.formula);
  return out;
}

bool Expansion::add(Formula f, const char* rule, std::vector<std::size_t> premises, int depth) {
  auto [it, inserted] = index_.emplace(alpha_key(f), entries_.size());
  if (!inserted) return false;
  entries_.push_back({std::move(f), rule, std::move(premises), depth});
  return true;
}

namespace {

bool is_epistemic(const Formula& f) {
  return f.is_modal(ModalOp::Knows) || f.is_modal(ModalOp::Believes);
}

void collect_targets(const Formula& f, std::vector<Formula>& out, std::set<std::string>& seen) {
  if (is_epistemic(f) && f.body().is(Formula::Kind::And) && is_closed(f) && seen.insert(alpha_key(f)).second)
    out.push_back(f);
  for (const Formula& c : f.children()) collect_targets(c, out, seen);
}

}  // namespace

std::vector<Formula> conjunction_targets(const std::vector<Formula>& fs) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  for (const Formula& f : fs) collect_targets(f, out, seen);
  return out;
}

Expansion expand_modal_derivations(const std::vector<Formula>& assumptions, int depth,
                                   const std::vector<Formula>& targets) {
  Expansion ex;
  for (const Formula& a : assumptions) ex.add(a, rules::kAssume, {}, 0);

  // An entry usable as a premise at level d has depth < d.
  auto usable = [&ex](const Formula& f, int level) -> std::optional<std::size_t> {
    auto idx = ex.find(f);
    if (idx && ex.entries()[*idx].depth < level) return idx;
    return std::nullopt;
  };

  std::vector<Formula> all_targets = targets;
  std::set<std::string> target_keys;
  for (const Formula& t : targets) target_keys.insert(alpha_key(t));

  for (int level = 1; level <= depth; ++level) {
    bool grew = false;
    const std::size_t n = ex.entries().size();
    for (std::size_t i = 0; i < n; ++i) {
      // Copy: `add` may reallocate the entry vector.
      const Formula f = ex.entries()[i].formula;
      if (!is_epistemic(f)) continue;
      const Formula& body = f.body();
      if (f.is_modal(ModalOp::Knows)) {
        grew |= ex.add(body, rules::kS1, {i}, level);
        grew |= ex.add(Formula::believes(f.agent(), f.moment(), body), rules::kS2, {i}, level);
      }
      if (body.is(Formula::Kind::And))
        for (const Formula& conjunct : body.children())
          grew |= ex.add(Formula::modal(f.op(), f.agent(), f.moment(), conjunct), rules::kS4, {i}, level);
      if (body.is(Formula::Kind::Implies)) {
        const Formula antecedent = Formula::modal(f.op(), f.agent(), f.moment(), body.children()[0]);
        if (auto j = usable(antecedent, level))
          grew |= ex.add(Formula::modal(f.op(), f.agent(), f.moment(), body.children()[1]), rules::kS3,
                         {*j, i}, level);
      }
    }
    // A known implication with a conjunctive antecedent makes that antecedent
    // worth assembling.
    for (std::size_t i = 0; i < ex.entries().size(); ++i) {
      const Formula& f = ex.entries()[i].formula;
      if (!is_epistemic(f) || !f.body().is(Formula::Kind::Implies)) continue;
      const Formula& ante = f.body().children()[0];
      if (!ante.is(Formula::Kind::And)) continue;
      Formula t = Formula::modal(f.op(), f.agent(), f.moment(), ante);
      if (is_closed(t) && target_keys.insert(alpha_key(t)).second) all_targets.push_back(t);
    }
    for (const Formula& target : all_targets) {
      if (ex.find(target)) continue;
      std::vector<std::size_t> premises;
      for (const Formula& conjunct : target.body().children()) {
        auto j = usable(Formula::modal(target.op(), target.agent(), target.moment(), conjunct), level);
        if (!j) break;
        premises.push_back(*j);
      }
      if (premises.size() == target.body().children().size())
        grew |= ex.add(target, rules::kS4, std::move(premises), level);
    }
    if (!grew) break;
  }
  return ex;
}

std::vector<Formula> expand_modal(const std::vector<Formula>& assumptions, int depth) {
  return expand_modal_derivations(assumptions, depth, conjunction_targets(assumptions)).formulas();
}

}  // namespace dcec
