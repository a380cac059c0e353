#include "rrsp/cnf.hpp"

#include <algorithm>
#include <cstdlib>

namespace rrsp {

bool literal_true(int literal, const std::vector<bool>& assignment) {
  const bool value = assignment[static_cast<std::size_t>(std::abs(literal) - 1)];
  return literal > 0 ? value : !value;
}

bool clause_satisfied(const std::vector<int>& clause, const std::vector<bool>& assignment) {
  return std::any_of(clause.begin(), clause.end(),
                     [&](int lit) { return literal_true(lit, assignment); });
}

int count_satisfied(const CnfFormula& formula, const std::vector<bool>& assignment) {
  return static_cast<int>(std::count_if(formula.clauses.begin(), formula.clauses.end(),
                                        [&](const auto& c) { return clause_satisfied(c, assignment); }));
}

}  // namespace rrsp
