#pragma once

#include <vector>

namespace rrsp {

// CNF over variables 1..variable_count; literals are signed variable indices.
struct CnfFormula {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;
};

// assignment[i] is the value of variable i + 1.
bool literal_true(int literal, const std::vector<bool>& assignment);
bool clause_satisfied(const std::vector<int>& clause, const std::vector<bool>& assignment);
int count_satisfied(const CnfFormula& formula, const std::vector<bool>& assignment);

}  // namespace rrsp
