#ifndef DCEC_PROVER_SAT_HPP
#define DCEC_PROVER_SAT_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace dcec {

// Small CDCL solver (watched literals, first-UIP learning, activity-based
// branching, restarts). Literals are DIMACS-style: +v / -v for v >= 1.
class SatSolver {
 public:
  int new_var();
  int num_vars() const { return static_cast<int>(assign_.size()) - 1; }
  void add_clause(std::vector<int> lits);

  // true = satisfiable, false = unsatisfiable, nullopt = conflict limit hit.
  std::optional<bool> solve(std::uint64_t max_conflicts = 0);
  // Valid after a satisfiable solve.
  bool value(int var) const { return assign_[var] == 1; }

 private:
  using Lit = int;  // 2*var + (negative ? 1 : 0)
  static Lit encode(int dimacs) { return dimacs > 0 ? 2 * dimacs : 2 * -dimacs + 1; }
  static int var_of(Lit l) { return l >> 1; }
  static Lit neg(Lit l) { return l ^ 1; }

  int lit_value(Lit l) const {  // 1 true, -1 false, 0 unassigned
    int v = assign_[var_of(l)];
    return (l & 1) ? -v : v;
  }
  void enqueue(Lit l, int reason);
  int propagate();  // conflicting clause index or -1
  void analyze(int conflict, std::vector<Lit>& learnt, int& back_level);
  void backtrack(int level);
  void bump(int var);
  int pick_branch() const;
  bool attach(int ci);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_{2};  // literal -> clause indices
  std::vector<int> assign_{0};
  std::vector<int> level_{0};
  std::vector<int> reason_{-1};
  std::vector<double> activity_{0.0};
  std::vector<char> phase_{0};
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  double bump_inc_ = 1.0;
  bool inconsistent_ = false;
  std::vector<std::vector<Lit>> pending_units_;
};

}  // namespace dcec

#endif  // DCEC_PROVER_SAT_HPP
