#pragma once

// Small exact linear programming: dense two-phase simplex over rationals with
// Bland's anti-cycling rule.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rrsp/rational.hpp"

namespace rrsp {

enum class LpSense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpVariable {
  std::optional<Rational> lower = Rational(0);  // nullopt = unbounded below
  std::optional<Rational> upper;                // nullopt = unbounded above
};

struct LpConstraint {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

struct LinearProgram {
  LpSense sense = LpSense::kMaximize;
  std::vector<LpVariable> variables;
  std::vector<Rational> objective;  // one coefficient per variable
  std::vector<LpConstraint> constraints;

  std::size_t add_variable(std::optional<Rational> lower, std::optional<Rational> upper,
                           Rational objective_coefficient = Rational(0));
  void add_constraint(std::vector<std::pair<std::size_t, Rational>> terms, Relation relation,
                      Rational rhs);
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;              // valid iff optimal
  std::vector<Rational> point;  // valid iff optimal
};

LpResult lp_solve(const LinearProgram& lp);

}  // namespace rrsp
