#include "rrsp/random_instances.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rrsp {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(engine_());
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return lo + static_cast<std::int64_t>(draw % range);
}

namespace {

Rational half_steps(std::int64_t steps) {
  Rational r(static_cast<long>(steps), 2L);
  r.canonicalize();
  return r;
}

}  // namespace

Rational Rng::grid(std::int64_t max_value, std::int64_t denominator) {
  Rational r(static_cast<long>(uniform(0, max_value * denominator)), static_cast<long>(denominator));
  r.canonicalize();
  return r;
}

Digraph random_dag(Rng& rng, const RandomDagOptions& options) {
  if (options.nodes < 2) throw std::invalid_argument("random_dag needs at least 2 nodes");
  if (options.arcs < options.nodes - 1) throw std::invalid_argument("random_dag needs arcs >= nodes - 1");
  std::vector<std::pair<int, int>> ends;
  for (int v = 0; v + 1 < options.nodes; ++v) ends.push_back({v, v + 1});
  while (static_cast<int>(ends.size()) < options.arcs) {
    int u = static_cast<int>(rng.uniform(0, options.nodes - 1));
    int v = static_cast<int>(rng.uniform(0, options.nodes - 1));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    ends.push_back({u, v});
  }
  // Shuffle so backbone arcs do not always carry the smallest ids.
  for (std::size_t i = ends.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
    std::swap(ends[i - 1], ends[j]);
  }
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    Arc a;
    a.id = static_cast<ArcId>(i);
    a.tail = ends[i].first;
    a.head = ends[i].second;
    a.first_stage_cost = options.zero_first_stage ? Rational(0) : rng.grid(options.max_cost, options.cost_denominator);
    a.nominal = rng.grid(options.max_cost, options.cost_denominator);
    a.deviation_cap = rng.grid(options.max_cost, options.cost_denominator);
    arcs.push_back(std::move(a));
  }
  return Digraph(options.nodes, std::move(arcs), 0, options.nodes - 1);
}

Instance random_instance(Rng& rng, const RandomDagOptions& options, BudgetKind budget, int max_k) {
  Digraph g = random_dag(rng, options);
  const auto kind = static_cast<RecoveryKind>(rng.uniform(0, 2));
  const int k = static_cast<int>(rng.uniform(0, max_k));
  Budget b = budget == BudgetKind::kContinuous ? Budget::continuous(rng.grid(3, 2))
                                               : Budget::discrete(static_cast<int>(rng.uniform(0, 3)));
  return Instance{std::move(g), RecoveryRule{kind, k}, std::move(b)};
}

Scenario random_scenario(Rng& rng, const Instance& inst) {
  Scenario s;
  std::vector<std::size_t> order(inst.graph.arc_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
    std::swap(order[i - 1], order[j]);
  }
  if (inst.budget.kind == BudgetKind::kDiscrete) {
    int left = inst.budget.gamma_d;
    for (std::size_t idx : order) {
      if (left == 0) break;
      const Arc& a = inst.graph.arc(idx);
      if (a.deviation_cap == 0 || !rng.coin()) continue;
      Rational d = a.deviation_cap * half_steps(rng.uniform(0, 2));
      if (d == 0) continue;
      s.set(a.id, d);
      --left;
    }
    return s;
  }
  Rational left = inst.budget.gamma_c;
  for (std::size_t idx : order) {
    const Arc& a = inst.graph.arc(idx);
    const Rational room = std::min(left, a.deviation_cap);
    if (room <= 0) continue;
    Rational d = room * half_steps(rng.uniform(0, 2));
    s.set(a.id, d);
    left -= d;
  }
  return s;
}

SourceDigraph random_source_digraph(Rng& rng, int n, int numerator, int denominator) {
  SourceDigraph g;
  g.node_count = n;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && rng.uniform(0, denominator - 1) < numerator) g.arcs.push_back({u, v});
    }
  }
  return g;
}

}  // namespace rrsp
