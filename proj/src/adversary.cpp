#include "rrsp/adversary.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "rrsp/lp.hpp"

namespace rrsp {
namespace {

void require_budget(const Instance& inst, BudgetKind kind) {
  if (inst.budget.kind != kind) {
    throw std::invalid_argument(kind == BudgetKind::kContinuous ? "instance budget is not continuous"
                                                                : "instance budget is not discrete");
  }
}

Recovery must_recover(const RecoverySearch& search, std::span<const Rational> costs) {
  auto rec = search.best_for_costs(costs);
  // X itself always lies in its own neighborhood.
  if (!rec) throw std::logic_error("empty recovery neighborhood");
  return std::move(*rec);
}

std::vector<Rational> nominal_costs(const Digraph& g) {
  std::vector<Rational> costs(g.arc_count());
  for (std::size_t i = 0; i < g.arc_count(); ++i) costs[i] = g.arc(i).nominal;
  return costs;
}

// Minimum cost over an explicit path list; first minimum wins.
Recovery cheapest(const Digraph& g, const std::vector<Path>& paths, const Scenario& scenario) {
  Recovery best;
  bool found = false;
  for (const Path& p : paths) {
    Rational c = second_stage_cost(g, p, scenario);
    if (!found || c < best.cost) {
      best = {p, std::move(c)};
      found = true;
    }
  }
  if (!found) throw std::logic_error("empty recovery neighborhood");
  return best;
}

// Binomial coefficient, saturating at `limit + 1`.
std::size_t bounded_binomial(std::size_t n, std::size_t r, std::size_t limit) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > limit) return limit + 1;
  }
  return static_cast<std::size_t>(acc);
}

// Advances `combo` (strictly increasing indices below n) to the next
// combination in lexicographic order; false when exhausted.
bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t r = combo.size();
  for (std::size_t i = r; i-- > 0;) {
    if (combo[i] < n - r + i) {
      ++combo[i];
      for (std::size_t j = i + 1; j < r; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> uncertain_arcs(const Digraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    if (g.arc(i).deviation_cap > 0) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<Path> enumerate_neighborhood(const Instance& inst, const Path& x, std::size_t cap) {
  std::vector<Path> out;
  for_each_st_path(inst.graph, cap, [&](const Path& y) {
    if (neighborhood_contains(x, y, inst.rule)) out.push_back(y);
  });
  return out;
}

AdversaryResult worst_continuous(const RecoverySearch& search, const AdversaryOptions& options) {
  const Instance& inst = search.instance();
  require_budget(inst, BudgetKind::kContinuous);
  const Digraph& g = inst.graph;
  const Rational& budget = inst.budget.gamma_c;

  AdversaryResult result;
  std::vector<Rational> costs = nominal_costs(g);
  result.recovery = must_recover(search, costs);
  result.value = result.recovery.cost;
  result.iterations = 1;
  if (budget == 0 || uncertain_arcs(g).empty()) return result;
  if (options.cutoff && result.value >= *options.cutoff) {
    result.cut_off = true;
    return result;
  }

  std::vector<Path> pool = {result.recovery.path};
  std::set<Path> in_pool(pool.begin(), pool.end());
  for (;;) {
    // Group uncertain arcs by the set of pool paths containing them.
    std::vector<std::vector<std::size_t>> membership(g.arc_count());
    for (std::size_t p = 0; p < pool.size(); ++p) {
      for (ArcId id : pool[p].arc_ids) {
        const std::size_t idx = *g.index_of(id);
        if (g.arc(idx).deviation_cap > 0) membership[idx].push_back(p);
      }
    }
    std::map<std::vector<std::size_t>, std::size_t> group_of;
    std::vector<std::vector<std::size_t>> group_arcs;
    for (std::size_t idx = 0; idx < g.arc_count(); ++idx) {
      if (membership[idx].empty()) continue;
      auto [it, inserted] = group_of.emplace(membership[idx], group_arcs.size());
      if (inserted) group_arcs.emplace_back();
      group_arcs[it->second].push_back(idx);
    }

    LinearProgram lp;
    lp.sense = LpSense::kMaximize;
    const std::size_t t = lp.add_variable(Rational(0), std::nullopt, Rational(1));
    std::vector<std::size_t> group_var(group_arcs.size());
    std::vector<std::pair<std::size_t, Rational>> budget_terms;
    for (std::size_t gi = 0; gi < group_arcs.size(); ++gi) {
      Rational cap(0);
      for (std::size_t idx : group_arcs[gi]) cap += g.arc(idx).deviation_cap;
      group_var[gi] = lp.add_variable(Rational(0), cap);
      budget_terms.emplace_back(group_var[gi], Rational(1));
    }
    std::vector<std::vector<std::size_t>> path_groups(pool.size());
    for (const auto& [members, gi] : group_of) {
      for (std::size_t p : members) path_groups[p].push_back(gi);
    }
    for (std::size_t p = 0; p < pool.size(); ++p) {
      std::vector<std::pair<std::size_t, Rational>> terms = {{t, Rational(1)}};
      for (std::size_t gi : path_groups[p]) terms.emplace_back(group_var[gi], Rational(-1));
      lp.add_constraint(std::move(terms), Relation::kLessEqual,
                        second_stage_cost(g, pool[p], Scenario{}));
    }
    lp.add_constraint(std::move(budget_terms), Relation::kLessEqual, budget);

    const LpResult sol = lp_solve(lp);
    if (sol.status != LpStatus::kOptimal) throw std::logic_error("adversary LP not optimal");

    Scenario scenario;
    for (std::size_t gi = 0; gi < group_arcs.size(); ++gi) {
      Rational remaining = sol.point[group_var[gi]];
      for (std::size_t idx : group_arcs[gi]) {
        if (remaining <= 0) break;
        const Rational take = std::min(remaining, g.arc(idx).deviation_cap);
        scenario.set(g.arc(idx).id, take);
        remaining -= take;
      }
    }
    costs = realized_costs(g, scenario);
    Recovery rec = must_recover(search, costs);
    ++result.iterations;

    const Rational& upper = sol.point[t];
    if (rec.cost >= upper) {
      result.scenario = std::move(scenario);
      result.value = rec.cost;
      result.recovery = std::move(rec);
      return result;
    }
    if (options.cutoff && rec.cost >= *options.cutoff) {
      result.scenario = std::move(scenario);
      result.value = rec.cost;
      result.recovery = std::move(rec);
      result.cut_off = true;
      return result;
    }
    if (pool.size() >= options.pool_cap) {
      throw CapExceeded("cutting-plane recovery pool overflow", options.pool_cap);
    }
    if (!in_pool.insert(rec.path).second) throw std::logic_error("separation returned a pooled path");
    pool.push_back(std::move(rec.path));
  }
}

AdversaryResult worst_continuous(const Instance& inst, const Path& x, const AdversaryOptions& options) {
  return worst_continuous(RecoverySearch(inst, x), options);
}

AdversaryResult worst_continuous_full(const Instance& inst, const Path& x,
                                      const AdversaryOptions& options) {
  require_budget(inst, BudgetKind::kContinuous);
  if (!is_st_path(inst.graph, x)) throw std::invalid_argument("first-stage path is not a source-sink path");
  const Digraph& g = inst.graph;
  const std::vector<Path> hood = enumerate_neighborhood(inst, x, options.path_cap);

  AdversaryResult result;
  result.iterations = 1;
  if (inst.budget.gamma_c == 0) {
    result.recovery = cheapest(g, hood, result.scenario);
    result.value = result.recovery.cost;
    return result;
  }

  // One deviation variable per uncertain arc used by some neighborhood path.
  std::map<std::size_t, std::size_t> var_of;
  LinearProgram lp;
  lp.sense = LpSense::kMaximize;
  const std::size_t t = lp.add_variable(Rational(0), std::nullopt, Rational(1));
  for (const Path& y : hood) {
    for (ArcId id : y.arc_ids) {
      const std::size_t idx = *g.index_of(id);
      if (g.arc(idx).deviation_cap > 0 && !var_of.count(idx)) {
        var_of[idx] = lp.add_variable(Rational(0), g.arc(idx).deviation_cap);
      }
    }
  }
  for (const Path& y : hood) {
    std::vector<std::pair<std::size_t, Rational>> terms = {{t, Rational(1)}};
    Rational nominal(0);
    for (ArcId id : y.arc_ids) {
      const std::size_t idx = *g.index_of(id);
      nominal += g.arc(idx).nominal;
      if (auto it = var_of.find(idx); it != var_of.end()) terms.emplace_back(it->second, Rational(-1));
    }
    lp.add_constraint(std::move(terms), Relation::kLessEqual, nominal);
  }
  std::vector<std::pair<std::size_t, Rational>> budget_terms;
  for (const auto& [idx, var] : var_of) budget_terms.emplace_back(var, Rational(1));
  if (!budget_terms.empty()) {
    lp.add_constraint(std::move(budget_terms), Relation::kLessEqual, inst.budget.gamma_c);
  }

  const LpResult sol = lp_solve(lp);
  if (sol.status != LpStatus::kOptimal) throw std::logic_error("adversary LP not optimal");
  for (const auto& [idx, var] : var_of) result.scenario.set(g.arc(idx).id, sol.point[var]);
  result.recovery = cheapest(g, hood, result.scenario);
  result.value = sol.point[t];
  if (result.recovery.cost != result.value) throw std::logic_error("full adversary LP inconsistent");
  return result;
}

AdversaryResult worst_discrete(const RecoverySearch& search, const AdversaryOptions& options) {
  const Instance& inst = search.instance();
  require_budget(inst, BudgetKind::kDiscrete);
  const Digraph& g = inst.graph;
  const std::vector<std::size_t> candidates = uncertain_arcs(g);
  const std::size_t size =
      std::min(candidates.size(), static_cast<std::size_t>(std::max(inst.budget.gamma_d, 0)));
  if (bounded_binomial(candidates.size(), size, options.subset_cap) > options.subset_cap) {
    throw CapExceeded("too many discrete deviation supports", options.subset_cap);
  }

  std::vector<Rational> costs = nominal_costs(g);
  AdversaryResult result;
  std::vector<std::size_t> combo(size);
  for (std::size_t i = 0; i < size; ++i) combo[i] = i;
  std::vector<std::size_t> best_combo;
  bool have = false;
  do {
    for (std::size_t i : combo) costs[candidates[i]] += g.arc(candidates[i]).deviation_cap;
    Recovery rec = must_recover(search, costs);
    for (std::size_t i : combo) costs[candidates[i]] = g.arc(candidates[i]).nominal;
    ++result.iterations;
    if (!have || rec.cost > result.value) {
      have = true;
      result.value = rec.cost;
      result.recovery = std::move(rec);
      best_combo = combo;
      if (options.cutoff && result.value >= *options.cutoff) {
        result.cut_off = true;
        break;
      }
    }
  } while (next_combination(combo, candidates.size()));

  for (std::size_t i : best_combo) {
    result.scenario.set(g.arc(candidates[i]).id, g.arc(candidates[i]).deviation_cap);
  }
  return result;
}

AdversaryResult worst_discrete(const Instance& inst, const Path& x, const AdversaryOptions& options) {
  return worst_discrete(RecoverySearch(inst, x), options);
}

AdversaryResult worst_discrete_exhaustive(const Instance& inst, const Path& x,
                                          const AdversaryOptions& options) {
  require_budget(inst, BudgetKind::kDiscrete);
  if (!is_st_path(inst.graph, x)) throw std::invalid_argument("first-stage path is not a source-sink path");
  const Digraph& g = inst.graph;
  const std::vector<Path> hood = enumerate_neighborhood(inst, x, options.path_cap);
  const std::vector<std::size_t> candidates = uncertain_arcs(g);
  const std::size_t max_size =
      std::min(candidates.size(), static_cast<std::size_t>(std::max(inst.budget.gamma_d, 0)));

  std::size_t total = 0;
  for (std::size_t r = 0; r <= max_size; ++r) {
    total += bounded_binomial(candidates.size(), r, options.subset_cap);
    if (total > options.subset_cap) throw CapExceeded("too many discrete deviation supports", options.subset_cap);
  }

  AdversaryResult result;
  bool have = false;
  for (std::size_t r = 0; r <= max_size; ++r) {
    std::vector<std::size_t> combo(r);
    for (std::size_t i = 0; i < r; ++i) combo[i] = i;
    do {
      Scenario scenario;
      for (std::size_t i : combo) scenario.set(g.arc(candidates[i]).id, g.arc(candidates[i]).deviation_cap);
      Recovery rec = cheapest(g, hood, scenario);
      ++result.iterations;
      if (!have || rec.cost > result.value) {
        have = true;
        result.value = rec.cost;
        result.recovery = std::move(rec);
        result.scenario = std::move(scenario);
      }
    } while (next_combination(combo, candidates.size()));
  }
  return result;
}

AdversaryResult worst_case(const RecoverySearch& search, const AdversaryOptions& options) {
  return search.instance().budget.kind == BudgetKind::kContinuous ? worst_continuous(search, options)
                                                                  : worst_discrete(search, options);
}

}  // namespace rrsp
