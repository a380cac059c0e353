#include "rrsp/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "rrsp/adversary.hpp"

namespace rrsp {
namespace {

bool extend(const std::vector<std::vector<int>>& adj, int n, std::vector<int>& order, std::uint64_t used) {
  if (static_cast<int>(order.size()) == n) return true;
  for (int w : adj[order.back()]) {
    if (used & (std::uint64_t{1} << w)) continue;
    order.push_back(w);
    if (extend(adj, n, order, used | (std::uint64_t{1} << w))) return true;
    order.pop_back();
  }
  return false;
}

Rational integer_power(int base, int exp) {
  mpz_class acc(1);
  for (int i = 0; i < exp; ++i) acc *= base;
  return Rational(acc);
}

}  // namespace

std::optional<std::vector<int>> hp_oracle(const SourceDigraph& g) {
  check_source_digraph(g);
  const int n = g.node_count;
  if (n > 64) throw CapExceeded("Hamiltonian path oracle supports at most 64 nodes", 64);
  std::vector<std::vector<int>> adj(n);
  std::vector<int> indeg(n, 0), outdeg(n, 0);
  for (const auto& [a, b] : g.arcs) {
    adj[a].push_back(b);
    ++outdeg[a];
    ++indeg[b];
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  if (n == 1) return std::vector<int>{0};

  std::vector<int> sources, sinks;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) sources.push_back(v);
    if (outdeg[v] == 0) sinks.push_back(v);
  }
  if (sources.size() > 1 || sinks.size() > 1) return std::nullopt;

  std::vector<int> starts;
  if (!sources.empty()) {
    starts = sources;
  } else {
    for (int v = 0; v < n; ++v) starts.push_back(v);
  }
  for (int start : starts) {
    std::vector<int> order = {start};
    if (extend(adj, n, order, std::uint64_t{1} << start)) return order;
  }
  return std::nullopt;
}

MaxSatResult max3sat_oracle(const CnfFormula& formula, int max_variables) {
  const int n = formula.variable_count;
  if (n > max_variables || n > 62) {
    throw CapExceeded("too many variables for exhaustive MAX-SAT", static_cast<std::size_t>(max_variables));
  }
  MaxSatResult best{-1, {}};
  std::vector<bool> assignment(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (int i = 0; i < n; ++i) assignment[i] = (mask >> i) & 1U;
    const int sat = count_satisfied(formula, assignment);
    if (sat > best.s_max) best = {sat, assignment};
  }
  return best;
}

HpVerification verify_hp_reduction(const SourceDigraph& g, RecoveryKind kind, BudgetKind budget,
                                   const Rational& gamma, const SolveOptions& options) {
  HpVerification v;
  v.n = g.node_count;
  v.budget = budget;
  v.kind = kind;
  const HpReduction red =
      budget == BudgetKind::kContinuous ? reduce_hp_continuous(g, kind, gamma) : reduce_hp_discrete(g, kind);
  v.threshold = red.meta.threshold;
  v.hamiltonian_path = hp_oracle(g);
  v.solution = solve(red.instance, options);
  v.opt = v.solution.opt;

  const bool has_hp = v.hamiltonian_path.has_value();
  std::ostringstream why;
  if (budget == BudgetKind::kContinuous) {
    const Rational lower = gamma / (v.n - 1);
    if (has_hp) {
      v.pass = v.opt == v.threshold;
      if (!v.pass) why << "Hamiltonian path exists but OPT != " << to_string(v.threshold);
    } else {
      v.pass = v.opt > v.threshold && v.opt >= lower;
      if (!v.pass) why << "no Hamiltonian path but OPT < " << to_string(lower);
    }
  } else {
    if (has_hp) {
      v.pass = v.opt == 0;
      if (!v.pass) why << "Hamiltonian path exists but OPT != 0";
    } else {
      v.pass = v.opt == 1;
      if (!v.pass) why << "no Hamiltonian path but OPT != 1";
    }
  }
  v.detail = why.str();
  return v;
}

SatVerification verify_sat_reduction(const CnfFormula& formula, int q, RecoveryKind kind,
                                     const SolveOptions& options) {
  SatVerification v;
  v.q = q;
  v.kind = kind;
  const SatReduction red = reduce_max3sat(formula, q, kind);
  const MaxSatResult oracle = max3sat_oracle(formula);
  v.s_max = oracle.s_max;
  v.expected = 1 / integer_power(oracle.s_max, q);
  v.solution = solve(red.instance, options);
  v.opt = v.solution.opt;

  std::ostringstream why;
  bool all_ok = true;
  const int n = formula.variable_count;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    AssignmentCheck check;
    check.assignment.resize(n);
    for (int i = 0; i < n; ++i) check.assignment[i] = (mask >> i) & 1U;
    check.satisfied = count_satisfied(formula, check.assignment);
    const Path x = red.meta.codec.encode(check.assignment);
    check.total = first_stage_cost(red.instance.graph, x) +
                  worst_continuous(red.instance, x, options.adversary).value;
    check.pass = check.satisfied > 0 ? check.total == 1 / integer_power(check.satisfied, q) : check.total > 1;
    if (!check.pass && all_ok) why << "assignment " << mask << " scores " << to_string(check.total) << "; ";
    all_ok = all_ok && check.pass;
    v.assignments.push_back(std::move(check));
  }
  const bool opt_ok = v.opt == v.expected;
  if (!opt_ok) why << "OPT " << to_string(v.opt) << " != " << to_string(v.expected);
  v.pass = opt_ok && all_ok;
  v.detail = why.str();
  return v;
}

}  // namespace rrsp
