#include "dcec/guard/scenario.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "dcec/core/parse.hpp"
#include "dcec/core/sexpr.hpp"

namespace dcec {

void Scenario::validate() const {
  for (const Formula& f : facts) {
    signature.check(f);
    if (!is_closed(f)) throw SortError("fact is not closed: " + print_formula(f));
  }
  theory.validate(signature);
  hierarchy.validate();
  utilities.validate();
  for (const Term* t : {&request.agent, &guardian}) {
    auto sort = signature.constant_sort(t->name());
    if (!t->is_constant() || !sort || !signature.is_subsort(*sort, std::string(sorts::kAgent)))
      throw SortError(print_term(*t) + " is not a declared Agent constant");
  }
  signature.check(request.atype);
  if (!signature.is_subsort(request.atype.sort(), std::string(sorts::kActionType)))
    throw SortError(print_term(request.atype) + " is not an ActionType");
  if (request.moment < 0 || request.moment > theory.horizon)
    throw ECError("request moment " + std::to_string(request.moment) + " lies outside [0, " +
                  std::to_string(theory.horizon) + "]");
}

Occurrence Scenario::request_occurrence() const {
  return {Term::apply("action", {request.agent, request.atype}, std::string(sorts::kAction)), request.moment};
}

ECTheory Scenario::hypothetical_theory() const { return theory.with_occurrence(request_occurrence()); }

DdeProblem Scenario::dde_problem() const {
  DdeProblem p;
  p.signature = signature;
  p.theory = theory;
  p.hierarchy = hierarchy;
  p.utilities = utilities;
  p.facts = facts;
  p.agent = request.agent;
  p.atype = request.atype;
  p.moment = request.moment;
  return p;
}

namespace {

[[noreturn]] void fail(const Sexpr& at, const std::string& message) { throw ParseError(at.pos, message); }

std::int64_t integer(const Sexpr& e, const std::string& what, bool allow_negative = false) {
  const bool negative = allow_negative && !e.is_list && e.atom.size() > 1 && e.atom[0] == '-';
  if (e.is_list || !is_integer(negative ? e.atom.substr(1) : e.atom)) fail(e, "expected an integer " + what);
  try {
    return std::stoll(e.atom);
  } catch (const std::out_of_range&) {
    fail(e, "integer out of range");
  }
}

const std::string& word(const Sexpr& e, const std::string& what) {
  if (e.is_list) fail(e, "expected " + what);
  return e.atom;
}

class Loader {
 public:
  explicit Loader(std::string name) { sc_.name = std::move(name); }

  Scenario run(std::string_view text) {
    const std::vector<Sexpr> top = read_sexprs(text);
    std::map<std::string, const Sexpr*> sections;
    for (const Sexpr& s : top) {
      if (s.is_atom() || s.head().empty()) fail(s, "expected a section");
      if (s.head() == "sorts" || s.head() == "constants" || s.head() == "predicates" || s.head() == "functions") {
        apply_declaration(s, sc_.signature);
        continue;
      }
      static const char* known[] = {"facts",     "initial",   "axioms",  "occurrences", "horizon",
                                    "hierarchy", "utilities", "request", "guardian"};
      if (std::find(std::begin(known), std::end(known), s.head()) == std::end(known))
        fail(s, "unknown section '" + s.head() + "'");
      if (!sections.emplace(s.head(), &s).second) fail(s, "duplicate section '" + s.head() + "'");
    }
    if (!sc_.signature.predicate("innocent")) sc_.signature.add_predicate("innocent", {std::string(sorts::kAgent)});

    const Position start{1, 1};
    for (const char* required : {"horizon", "request", "guardian"})
      if (!sections.count(required)) throw ParseError(start, std::string("missing section '") + required + "'");

    horizon(*sections.at("horizon"));
    if (auto it = sections.find("facts"); it != sections.end()) facts(*it->second);
    if (auto it = sections.find("initial"); it != sections.end()) initial(*it->second);
    if (auto it = sections.find("axioms"); it != sections.end()) axioms(*it->second);
    if (auto it = sections.find("occurrences"); it != sections.end()) occurrences(*it->second);
    if (auto it = sections.find("hierarchy"); it != sections.end()) hierarchy(*it->second);
    if (auto it = sections.find("utilities"); it != sections.end()) utilities(*it->second);
    request(*sections.at("request"));
    guardian(*sections.at("guardian"));

    try {
      sc_.validate();
    } catch (const std::exception& e) {
      throw ParseError(start, e.what());
    }
    return std::move(sc_);
  }

 private:
  Term term(const Sexpr& e, const VarEnv& env = {}) { return parse_term(e, sc_.signature, env); }

  Term sorted_term(const Sexpr& e, std::string_view sort, const VarEnv& env = {}) {
    Term t = term(e, env);
    if (!sc_.signature.is_subsort(t.sort(), std::string(sort)))
      fail(e, "expected " + std::string(sort) + ", found " + t.sort());
    return t;
  }

  VarEnv vars(const Sexpr& section) {
    VarEnv env;
    for (std::size_t i = 1; i < section.items.size(); ++i) {
      const Sexpr& d = section.items[i];
      if (d.is_atom() || d.items.size() != 2 || d.items[0].is_list || d.items[1].is_list)
        fail(d, "expected (variable Sort)");
      if (!sc_.signature.has_sort(d.items[1].atom)) fail(d.items[1], "unknown sort '" + d.items[1].atom + "'");
      env.push_back(Term::variable(d.items[0].atom, d.items[1].atom));
    }
    return env;
  }

  void horizon(const Sexpr& s) {
    if (s.items.size() != 2) fail(s, "expected (horizon n)");
    sc_.theory.horizon = integer(s.items[1], "horizon");
  }

  void facts(const Sexpr& s) {
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      Formula f = parse_formula(s.items[i], sc_.signature);
      if (!is_closed(f)) fail(s.items[i], "fact is not closed");
      sc_.facts.push_back(std::move(f));
    }
  }

  void initial(const Sexpr& s) {
    for (std::size_t i = 1; i < s.items.size(); ++i)
      sc_.theory.initial.push_back(sorted_term(s.items[i], sorts::kFluent));
  }

  void axioms(const Sexpr& s) {
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      const Sexpr& a = s.items[i];
      if (a.is_atom() || a.items.size() < 3) fail(a, "expected (event initiates|terminates fluent ...)");
      VarEnv env;
      for (std::size_t j = 3; j < a.items.size(); ++j)
        if (a.items[j].head() == "vars") env = vars(a.items[j]);
      Term event = sorted_term(a.items[0], sorts::kEvent, env);
      const std::string& kind = word(a.items[1], "initiates or terminates");
      if (kind != "initiates" && kind != "terminates") fail(a.items[1], "expected initiates or terminates");
      EffectAxiom ax{std::move(event), kind == "initiates", sorted_term(a.items[2], sorts::kFluent, env), {}};
      for (std::size_t j = 3; j < a.items.size(); ++j) {
        const Sexpr& x = a.items[j];
        if (x.head() == "vars") continue;
        if (x.head() != "guard") fail(x, "expected (guard ...) or (vars ...)");
        for (std::size_t k = 1; k < x.items.size(); ++k) {
          const Sexpr& lit = x.items[k];
          if (lit.head() == "not") {
            if (lit.items.size() != 2) fail(lit, "expected (not fluent)");
            ax.guard.push_back({sorted_term(lit.items[1], sorts::kFluent, env), false});
          } else {
            ax.guard.push_back({sorted_term(lit, sorts::kFluent, env), true});
          }
        }
      }
      sc_.theory.axioms.push_back(std::move(ax));
    }
  }

  void occurrences(const Sexpr& s) {
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      const Sexpr& o = s.items[i];
      if (o.head() != "happens" || o.items.size() != 3) fail(o, "expected (happens event moment)");
      Term ev = sorted_term(o.items[1], sorts::kEvent);
      if (!ev.ground()) fail(o.items[1], "occurrence must be ground");
      const std::int64_t m = integer(o.items[2], "moment");
      if (m > sc_.theory.horizon) fail(o.items[2], "moment beyond the horizon");
      Occurrence occ{ev, m};
      if (std::find(sc_.theory.occurrences.begin(), sc_.theory.occurrences.end(), occ) != sc_.theory.occurrences.end())
        fail(o, "duplicate occurrence");
      sc_.theory.occurrences.push_back(std::move(occ));
    }
  }

  void hierarchy(const Sexpr& s) {
    EthicalHierarchy& h = sc_.hierarchy;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      const Sexpr& x = s.items[i];
      if (x.is_atom()) fail(x, "expected a list");
      if (x.head() == "classify") {
        if (x.items.size() != 3) fail(x, "expected (classify atype category)");
        Term at = sorted_term(x.items[1], sorts::kActionType);
        h.classification[print_term(at)] = word(x.items[2], "a category");
      } else if (x.head() == "neutral") {
        if (x.items.size() != 2) fail(x, "expected (neutral category)");
        h.neutral = word(x.items[1], "a category");
      } else {
        h.categories.clear();
        for (const Sexpr& c : x.items) h.categories.push_back(word(c, "a category"));
      }
    }
    try {
      h.validate();
    } catch (const EthicsError& e) {
      fail(s, e.what());
    }
  }

  void utilities(const Sexpr& s) {
    VarEnv env;
    for (std::size_t i = 1; i < s.items.size(); ++i)
      if (s.items[i].head() == "vars") env = vars(s.items[i]);
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      const Sexpr& x = s.items[i];
      if (x.head() == "vars") continue;
      if (x.head() == "gamma") {
        if (x.items.size() != 2) fail(x, "expected (gamma n)");
        sc_.utilities.gamma = integer(x.items[1], "gamma");
        continue;
      }
      if (x.is_atom() || x.items.size() != 3) fail(x, "expected (fluent initiated|terminated value)");
      Term pattern = sorted_term(x.items[0], sorts::kFluent, env);
      const std::string& pol = word(x.items[1], "initiated or terminated");
      if (pol != "initiated" && pol != "terminated") fail(x.items[1], "expected initiated or terminated");
      sc_.utilities.entries.push_back({std::move(pattern), pol == "initiated" ? Polarity::Initiated : Polarity::Terminated,
                                       integer(x.items[2], "utility", true)});
    }
  }

  Term agent_constant(const Sexpr& e) {
    Term t = sorted_term(e, sorts::kAgent);
    if (!t.is_constant()) fail(e, "expected an Agent constant");
    return t;
  }

  void request(const Sexpr& s) {
    if (s.items.size() != 4) fail(s, "expected (request agent atype moment)");
    sc_.request.agent = agent_constant(s.items[1]);
    sc_.request.atype = sorted_term(s.items[2], sorts::kActionType);
    sc_.request.moment = integer(s.items[3], "moment");
    if (sc_.request.moment > sc_.theory.horizon) fail(s.items[3], "request moment beyond the horizon");
  }

  void guardian(const Sexpr& s) {
    if (s.items.size() != 2) fail(s, "expected (guardian agent)");
    sc_.guardian = agent_constant(s.items[1]);
  }

  Scenario sc_;
};

}  // namespace

Scenario parse_scenario(std::string_view text, std::string name) { return Loader(std::move(name)).run(text); }

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.stem().string());
}

}  // namespace dcec
