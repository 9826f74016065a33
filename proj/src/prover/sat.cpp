#include "dcec/prover/sat.hpp"

#include <algorithm>

namespace dcec {

int SatSolver::new_var() {
  assign_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  phase_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return num_vars();
}

void SatSolver::add_clause(std::vector<int> dimacs) {
  std::vector<Lit> lits;
  lits.reserve(dimacs.size());
  for (int d : dimacs) lits.push_back(encode(d));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i] == neg(lits[i - 1])) return;  // tautology
  if (lits.empty()) {
    inconsistent_ = true;
    return;
  }
  if (lits.size() == 1) {
    pending_units_.push_back(std::move(lits));
    return;
  }
  clauses_.push_back(std::move(lits));
  attach(static_cast<int>(clauses_.size()) - 1);
}

bool SatSolver::attach(int ci) {
  const auto& c = clauses_[ci];
  watches_[c[0]].push_back(ci);
  watches_[c[1]].push_back(ci);
  return true;
}

void SatSolver::enqueue(Lit l, int reason) {
  const int v = var_of(l);
  assign_[v] = (l & 1) ? -1 : 1;
  level_[v] = static_cast<int>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(l);
}

int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit falsified = neg(p);
    auto& ws = watches_[falsified];
    std::size_t keep = 0;
    for (std::size_t k = 0; k < ws.size(); ++k) {
      const int ci = ws[k];
      auto& c = clauses_[ci];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t j = 2; j < c.size(); ++j)
        if (lit_value(c[j]) != -1) {
          std::swap(c[1], c[j]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      if (moved) continue;
      ws[keep++] = ci;
      if (lit_value(c[0]) == -1) {
        for (std::size_t r = k + 1; r < ws.size(); ++r) ws[keep++] = ws[r];
        ws.resize(keep);
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(keep);
  }
  return -1;
}

void SatSolver::bump(int var) {
  activity_[var] += bump_inc_;
  if (activity_[var] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    bump_inc_ *= 1e-100;
  }
}

void SatSolver::analyze(int conflict, std::vector<Lit>& learnt, int& back_level) {
  const int current = static_cast<int>(trail_lim_.size());
  std::vector<char> seen(assign_.size(), 0);
  learnt.assign(1, 0);
  int pending = 0;
  Lit p = -1;
  std::size_t idx = trail_.size();
  int ci = conflict;
  do {
    const auto& c = clauses_[ci];
    for (std::size_t j = (p == -1 ? 0 : 1); j < c.size(); ++j) {
      const Lit q = c[j];
      const int v = var_of(q);
      if (seen[v] || level_[v] == 0) continue;
      seen[v] = 1;
      bump(v);
      if (level_[v] == current)
        ++pending;
      else
        learnt.push_back(q);
    }
    while (!seen[var_of(trail_[--idx])]) {
    }
    p = trail_[idx];
    ci = reason_[var_of(p)];
    seen[var_of(p)] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = neg(p);
  back_level = 0;
  std::size_t max_i = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (level_[var_of(learnt[i])] > back_level) {
      back_level = level_[var_of(learnt[i])];
      max_i = i;
    }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  bump_inc_ *= 1.05;
}

void SatSolver::backtrack(int level) {
  if (static_cast<int>(trail_lim_.size()) <= level) return;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[level];) {
    const int v = var_of(trail_[i]);
    phase_[v] = static_cast<char>(trail_[i] & 1);
    assign_[v] = 0;
    reason_[v] = -1;
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

int SatSolver::pick_branch() const {
  int best = 0;
  double best_a = -1.0;
  for (int v = 1; v <= num_vars(); ++v)
    if (assign_[v] == 0 && activity_[v] > best_a) {
      best = v;
      best_a = activity_[v];
    }
  return best;
}

std::optional<bool> SatSolver::solve(std::uint64_t max_conflicts) {
  if (inconsistent_) return false;
  backtrack(0);
  for (const auto& u : pending_units_) {
    const int val = lit_value(u[0]);
    if (val == -1) {
      inconsistent_ = true;
      return false;
    }
    if (val == 0) enqueue(u[0], -1);
  }
  if (propagate() != -1) {
    inconsistent_ = true;
    return false;
  }

  std::uint64_t conflicts = 0;
  std::uint64_t restart_at = 100;
  std::vector<Lit> learnt;
  for (;;) {
    const int conflict = propagate();
    if (conflict != -1) {
      ++conflicts;
      if (trail_lim_.empty()) {
        inconsistent_ = true;
        return false;
      }
      int back_level = 0;
      analyze(conflict, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        clauses_.push_back(learnt);
        const int ci = static_cast<int>(clauses_.size()) - 1;
        attach(ci);
        enqueue(learnt[0], ci);
      }
      if (max_conflicts && conflicts >= max_conflicts) {
        backtrack(0);
        return std::nullopt;
      }
      continue;
    }
    if (conflicts >= restart_at) {
      restart_at += restart_at / 2 + 100;
      backtrack(0);
    }
    const int v = pick_branch();
    if (v == 0) return true;
    trail_lim_.push_back(trail_.size());
    enqueue(phase_[v] ? 2 * v + 1 : 2 * v, -1);
  }
}

}  // namespace dcec
