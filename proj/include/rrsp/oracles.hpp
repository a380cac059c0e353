#pragma once

// Exhaustive solvers for the source problems of the reductions, and the
// end-to-end checks that tie them to the robust solver.

#include <optional>
#include <string>
#include <vector>

#include "rrsp/cnf.hpp"
#include "rrsp/reductions.hpp"
#include "rrsp/solver.hpp"

namespace rrsp {

// A Hamiltonian path as a 0-based node order, or nullopt. Backtracking over
// start nodes in ascending order, pruned by in/out-degree-zero counts.
std::optional<std::vector<int>> hp_oracle(const SourceDigraph& g);

struct MaxSatResult {
  int s_max = 0;
  std::vector<bool> assignment;
};

// Exhaustive; among maximizers returns the smallest assignment reading x_1 as
// the least significant bit. Throws CapExceeded above `max_variables`.
MaxSatResult max3sat_oracle(const CnfFormula& formula, int max_variables = 20);

struct HpVerification {
  int n = 0;
  BudgetKind budget = BudgetKind::kContinuous;
  RecoveryKind kind = RecoveryKind::kIncl;
  Rational opt;
  Rational threshold;
  std::optional<std::vector<int>> hamiltonian_path;
  SolveResult solution;
  bool pass = false;
  std::string detail;
};

// Generates the matching instance, solves it and checks:
//   continuous: HP exists <=> OPT = gamma/n, otherwise OPT >= gamma/(n-1)
//   discrete:   HP exists <=> OPT = 0,       otherwise OPT = 1
HpVerification verify_hp_reduction(const SourceDigraph& g, RecoveryKind kind, BudgetKind budget,
                                   const Rational& gamma = Rational(1), const SolveOptions& options = {});

struct AssignmentCheck {
  std::vector<bool> assignment;
  int satisfied = 0;
  Rational total;  // first stage + worst recovery of the solid path
  bool pass = false;
};

struct SatVerification {
  int q = 0;
  RecoveryKind kind = RecoveryKind::kIncl;
  int s_max = 0;
  Rational opt;
  Rational expected;  // 1 / s_max^q
  SolveResult solution;
  std::vector<AssignmentCheck> assignments;
  bool pass = false;
  std::string detail;
};

// Checks OPT = 1 / s_max^q and, for every assignment a satisfying l(a) >= 1
// clauses, that the solid path of a scores exactly 1 / l(a)^q (and more than
// 1 when l(a) = 0).
SatVerification verify_sat_reduction(const CnfFormula& formula, int q, RecoveryKind kind,
                                     const SolveOptions& options = {});

}  // namespace rrsp
