#ifndef DCEC_TESTS_CORPUS_HPP
#define DCEC_TESTS_CORPUS_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcec/core/parse.hpp"

namespace dcec::testing {

struct CorpusProblem {
  std::string name;
  std::string expect;  // "proved" or "no-proof"
  std::vector<Formula> assumptions;
  Formula goal = Formula::truth();
};

struct Corpus {
  Signature signature;
  std::vector<CorpusProblem> problems;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Declaration sections plus `(problem name expect (assume f...) (goal f))`.
inline Corpus load_corpus(const std::string& path) {
  Corpus c;
  const auto exprs = read_sexprs(read_file(path));
  for (const Sexpr& e : exprs)
    if (e.head() != "problem" && !apply_declaration(e, c.signature))
      throw ParseError(e.pos, "unexpected section in corpus");
  for (const Sexpr& e : exprs) {
    if (e.head() != "problem") continue;
    CorpusProblem p;
    p.name = e.items.at(1).atom;
    p.expect = e.items.at(2).atom;
    for (std::size_t i = 3; i < e.items.size(); ++i) {
      const Sexpr& part = e.items[i];
      if (part.head() == "assume")
        for (std::size_t j = 1; j < part.items.size(); ++j)
          p.assumptions.push_back(parse_formula(part.items[j], c.signature));
      else if (part.head() == "goal")
        p.goal = parse_formula(part.items.at(1), c.signature);
    }
    c.problems.push_back(std::move(p));
  }
  return c;
}

}  // namespace dcec::testing

#endif  // DCEC_TESTS_CORPUS_HPP
