#include "rrsp/solver.hpp"

#include <stdexcept>
#include <string>

#include "rrsp/recovery.hpp"

namespace rrsp {
namespace {

void require_valid(const Instance& inst) {
  const auto violations = validate_instance(inst);
  if (!violations.empty()) throw std::invalid_argument("invalid instance: " + violations.front());
}

// Cheapest first-stage cost from each node to the sink; nullopt if unreachable.
std::vector<std::optional<Rational>> first_stage_to_sink(const Digraph& g) {
  std::vector<std::optional<Rational>> dist(g.node_count());
  dist[g.sink()] = Rational(0);
  const auto& order = *g.cached_topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (std::size_t idx : g.out_arcs(*it)) {
      const Arc& a = g.arc(idx);
      if (!dist[a.head]) continue;
      Rational via = a.first_stage_cost + *dist[a.head];
      if (!dist[*it] || via < *dist[*it]) dist[*it] = std::move(via);
    }
  }
  return dist;
}

}  // namespace

SolveResult solve(const Instance& inst, const SolveOptions& options) {
  require_valid(inst);
  std::optional<SolveResult> best;
  std::size_t explored = 0;
  const std::vector<Rational> nominal = realized_costs(inst.graph, Scenario{});
  const auto to_sink = first_stage_to_sink(inst.graph);
  // prefix[d] is the first-stage cost of the current prefix of d arcs.
  std::vector<Rational> prefix(1, Rational(0));
  const auto extend = [&](const Arc& a, std::size_t depth) {
    prefix.resize(depth + 2);
    prefix[depth + 1] = prefix[depth] + a.first_stage_cost;
    return !best || prefix[depth + 1] + *to_sink[a.head] < best->opt;
  };
  try {
    for_each_st_path(inst.graph, options.path_cap, [&](const Path& x) {
      ++explored;
      const Rational first = first_stage_cost(inst.graph, x);
      if (best && first >= best->opt) return;
      const RecoverySearch search(inst, x);
      const auto nominal_recovery = search.best_for_costs(nominal);
      if (best && first + nominal_recovery->cost >= best->opt) return;

      AdversaryOptions adv = options.adversary;
      if (best) adv.cutoff = best->opt - first;
      AdversaryResult worst = worst_case(search, adv);
      if (worst.cut_off) return;
      Rational total = first + worst.value;
      if (!best || total < best->opt) {
        best = SolveResult{std::move(total), x, std::move(worst.scenario), std::move(worst.recovery.path), 0};
      }
    }, extend);
  } catch (const CapExceeded& e) {
    if (best) best->explored = explored;
    throw SolveOverflow(e, best);
  }
  if (!best) throw std::logic_error("instance has no source-sink path");
  best->explored = explored;
  return *best;
}

SolveResult brute_solve(const Instance& inst, const SolveOptions& options) {
  require_valid(inst);
  std::optional<SolveResult> best;
  std::size_t explored = 0;
  try {
    for_each_st_path(inst.graph, options.path_cap, [&](const Path& x) {
      ++explored;
      AdversaryResult worst = inst.budget.kind == BudgetKind::kContinuous
                                  ? worst_continuous_full(inst, x, options.adversary)
                                  : worst_discrete_exhaustive(inst, x, options.adversary);
      Rational total = first_stage_cost(inst.graph, x) + worst.value;
      if (!best || total < best->opt) {
        best = SolveResult{std::move(total), x, std::move(worst.scenario), std::move(worst.recovery.path), 0};
      }
    });
  } catch (const CapExceeded& e) {
    if (best) best->explored = explored;
    throw SolveOverflow(e, best);
  }
  if (!best) throw std::logic_error("instance has no source-sink path");
  best->explored = explored;
  return *best;
}

}  // namespace rrsp
