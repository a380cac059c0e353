#include "rrsp/lp.hpp"

#include <stdexcept>

namespace rrsp {
namespace {

// Dense tableau for: maximize c'y, rows [A | b] with a basis, y >= 0.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<std::size_t> basis, std::size_t columns)
      : rows_(std::move(rows)), basis_(std::move(basis)), columns_(columns), allowed_(columns, true) {}

  void forbid(std::size_t col) { allowed_[col] = false; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t basic(std::size_t row) const { return basis_[row]; }
  const Rational& entry(std::size_t row, std::size_t col) const { return rows_[row][col]; }
  const Rational& rhs(std::size_t row) const { return rows_[row][columns_]; }

  void set_objective(const std::vector<Rational>& cost) {
    reduced_.assign(columns_ + 1, Rational(0));
    for (std::size_t j = 0; j < columns_; ++j) reduced_[j] = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (rows_[i][j] != 0) reduced_[j] -= cb * rows_[i][j];
      }
    }
  }

  Rational objective_value() const { return -reduced_[columns_]; }

  // Returns false if the objective is unbounded.
  bool optimize() {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (allowed_[j] && reduced_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best_ratio;
      Rational ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][*enter];
        if (a <= 0) continue;
        ratio = rows_[i][columns_] / a;
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& prow = rows_[row];
    const Rational inv = 1 / prow[col];
    for (auto& v : prow) {
      if (v != 0) v *= inv;
    }
    Rational factor;
    auto eliminate = [&](std::vector<Rational>& target) {
      if (target[col] == 0) return;
      factor = target[col];
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (prow[j] != 0) target[j] -= factor * prow[j];
      }
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != row) eliminate(rows_[i]);
    }
    if (!reduced_.empty()) eliminate(reduced_);
    basis_[row] = col;
  }

  void drop_row(std::size_t row) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(row));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
  }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
  std::size_t columns_;
  std::vector<bool> allowed_;
  std::vector<Rational> reduced_;
};

// x_j = offset + sum(sign * y_col) over its columns.
struct VariableMap {
  Rational offset;
  std::vector<std::pair<std::size_t, int>> columns;
};

}  // namespace

std::size_t LinearProgram::add_variable(std::optional<Rational> lower, std::optional<Rational> upper,
                                        Rational objective_coefficient) {
  variables.push_back({std::move(lower), std::move(upper)});
  objective.push_back(std::move(objective_coefficient));
  return variables.size() - 1;
}

void LinearProgram::add_constraint(std::vector<std::pair<std::size_t, Rational>> terms,
                                   Relation relation, Rational rhs) {
  constraints.push_back({std::move(terms), relation, std::move(rhs)});
}

LpResult lp_solve(const LinearProgram& lp) {
  if (lp.objective.size() != lp.variables.size()) {
    throw std::invalid_argument("objective size does not match variable count");
  }
  LpResult result;

  // Substitute every variable by nonnegative columns.
  std::vector<VariableMap> maps(lp.variables.size());
  std::size_t structural = 0;
  struct BoundRow {
    std::size_t column;
    Rational width;
  };
  std::vector<BoundRow> bound_rows;
  for (std::size_t j = 0; j < lp.variables.size(); ++j) {
    const LpVariable& v = lp.variables[j];
    if (v.lower && v.upper && *v.upper < *v.lower) return result;  // infeasible
    if (v.lower) {
      maps[j].offset = *v.lower;
      maps[j].columns.push_back({structural, 1});
      if (v.upper) bound_rows.push_back({structural, *v.upper - *v.lower});
      ++structural;
    } else if (v.upper) {
      maps[j].offset = *v.upper;
      maps[j].columns.push_back({structural++, -1});
    } else {
      maps[j].columns.push_back({structural++, 1});
      maps[j].columns.push_back({structural++, -1});
    }
  }

  struct Row {
    std::vector<Rational> coeffs;
    Relation relation;
    Rational rhs;
  };
  std::vector<Row> rows;
  for (const LpConstraint& c : lp.constraints) {
    Row row{std::vector<Rational>(structural, Rational(0)), c.relation, c.rhs};
    for (const auto& [var, coef] : c.terms) {
      if (var >= lp.variables.size()) throw std::invalid_argument("constraint references unknown variable");
      row.rhs -= coef * maps[var].offset;
      for (const auto& [col, sign] : maps[var].columns) row.coeffs[col] += sign * coef;
    }
    rows.push_back(std::move(row));
  }
  for (const BoundRow& b : bound_rows) {
    Row row{std::vector<Rational>(structural, Rational(0)), Relation::kLessEqual, b.width};
    row.coeffs[b.column] = 1;
    rows.push_back(std::move(row));
  }
  for (Row& row : rows) {
    if (row.rhs < 0) {
      row.rhs = -row.rhs;
      for (auto& v : row.coeffs) v = -v;
      if (row.relation == Relation::kLessEqual) {
        row.relation = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        row.relation = Relation::kLessEqual;
      }
    }
  }

  // Columns: structural | one slack or surplus per inequality | artificials.
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (const Row& row : rows) {
    if (row.relation != Relation::kEqual) ++slack_count;
    if (row.relation != Relation::kLessEqual) ++artificial_count;
  }
  const std::size_t first_slack = structural;
  const std::size_t first_artificial = structural + slack_count;
  const std::size_t columns = first_artificial + artificial_count;

  std::vector<std::vector<Rational>> dense;
  std::vector<std::size_t> basis;
  std::size_t next_slack = first_slack;
  std::size_t next_artificial = first_artificial;
  for (const Row& row : rows) {
    std::vector<Rational> line(columns + 1, Rational(0));
    for (std::size_t j = 0; j < structural; ++j) line[j] = row.coeffs[j];
    line[columns] = row.rhs;
    if (row.relation == Relation::kLessEqual) {
      line[next_slack] = 1;
      basis.push_back(next_slack++);
    } else {
      if (row.relation == Relation::kGreaterEqual) line[next_slack++] = -1;
      line[next_artificial] = 1;
      basis.push_back(next_artificial++);
    }
    dense.push_back(std::move(line));
  }

  Tableau tableau(std::move(dense), std::move(basis), columns);

  if (artificial_count > 0) {
    std::vector<Rational> phase1(columns, Rational(0));
    for (std::size_t j = first_artificial; j < columns; ++j) phase1[j] = -1;
    tableau.set_objective(phase1);
    tableau.optimize();  // bounded below by zero
    if (tableau.objective_value() < 0) return result;
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t i = 0; i < tableau.rows();) {
      if (tableau.basic(i) < first_artificial) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (tableau.entry(i, j) != 0) {
          col = j;
          break;
        }
      }
      if (col) {
        tableau.pivot(i, *col);
        ++i;
      } else {
        tableau.drop_row(i);  // redundant equality
      }
    }
    for (std::size_t j = first_artificial; j < columns; ++j) tableau.forbid(j);
  }

  const Rational sign = lp.sense == LpSense::kMaximize ? Rational(1) : Rational(-1);
  std::vector<Rational> phase2(columns, Rational(0));
  for (std::size_t j = 0; j < lp.variables.size(); ++j) {
    for (const auto& [col, s] : maps[j].columns) phase2[col] += sign * s * lp.objective[j];
  }
  tableau.set_objective(phase2);
  if (!tableau.optimize()) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  std::vector<Rational> y(columns, Rational(0));
  for (std::size_t i = 0; i < tableau.rows(); ++i) y[tableau.basic(i)] = tableau.rhs(i);
  result.status = LpStatus::kOptimal;
  result.point.resize(lp.variables.size());
  result.value = 0;
  for (std::size_t j = 0; j < lp.variables.size(); ++j) {
    Rational x = maps[j].offset;
    for (const auto& [col, s] : maps[j].columns) x += s * y[col];
    result.value += lp.objective[j] * x;
    result.point[j] = std::move(x);
  }
  return result;
}

}  // namespace rrsp
