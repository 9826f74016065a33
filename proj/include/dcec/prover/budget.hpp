#ifndef DCEC_PROVER_BUDGET_HPP
#define DCEC_PROVER_BUDGET_HPP

#include <chrono>
#include <cstddef>
#include <stdexcept>

namespace dcec {

struct Budget {
  std::chrono::milliseconds wall_clock{10000};
  int max_depth = 4;
  std::size_t max_clauses = 200000;

  void validate() const {
    if (wall_clock.count() <= 0 || max_depth <= 0 || max_clauses == 0)
      throw std::invalid_argument("budget limits must be strictly positive");
  }
};

}  // namespace dcec

#endif  // DCEC_PROVER_BUDGET_HPP
