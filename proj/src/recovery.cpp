#include "rrsp/recovery.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace rrsp {
namespace {

struct Counts {
  std::size_t only_y = 0;
  std::size_t only_x = 0;
};

Counts difference_counts(const Path& x, const Path& y) {
  const std::set<ArcId> xs(x.arc_ids.begin(), x.arc_ids.end());
  const std::set<ArcId> ys(y.arc_ids.begin(), y.arc_ids.end());
  Counts c;
  for (ArcId id : ys) c.only_y += xs.count(id) == 0 ? 1 : 0;
  for (ArcId id : xs) c.only_x += ys.count(id) == 0 ? 1 : 0;
  return c;
}

constexpr int kUnreachable = std::numeric_limits<int>::min();

}  // namespace

bool neighborhood_contains(const Path& x, const Path& y, const RecoveryRule& rule) {
  const Counts c = difference_counts(x, y);
  const auto k = static_cast<std::size_t>(std::max(rule.k, 0));
  switch (rule.kind) {
    case RecoveryKind::kIncl: return c.only_y <= k;
    case RecoveryKind::kExcl: return c.only_x <= k;
    case RecoveryKind::kSym: return c.only_y + c.only_x <= k;
  }
  return false;
}

std::vector<Rational> realized_costs(const Digraph& g, const Scenario& scenario) {
  std::vector<Rational> costs(g.arc_count());
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    costs[i] = g.arc(i).nominal + scenario.deviation(g.arc(i).id);
  }
  return costs;
}

RecoverySearch::RecoverySearch(const Instance& inst, const Path& first_stage)
    : inst_(&inst), first_stage_(first_stage) {
  const Digraph& g = inst.graph;
  if (!g.is_acyclic()) throw std::invalid_argument("recovery requires an acyclic graph");
  if (!is_st_path(g, first_stage)) {
    throw std::invalid_argument("first-stage path is not a source-sink path of the instance");
  }
  const int n = g.node_count();
  const NodeId sink = g.sink();
  const auto& topo = *g.cached_topological_order();

  std::vector<bool> in_x(g.arc_count(), false);
  for (ArcId id : first_stage.arc_ids) in_x[*g.index_of(id)] = true;
  const int x_size = static_cast<int>(first_stage.size());
  const int k = inst.rule.k;

  // Most X arcs collectable on a path from each node to the sink.
  std::vector<int> max_x(n, kUnreachable);
  max_x[sink] = 0;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const NodeId v = *it;
    if (v == sink) continue;
    for (std::size_t idx : g.out_arcs(v)) {
      const int below = max_x[g.arc(idx).head];
      if (below != kUnreachable) max_x[v] = std::max(max_x[v], below + (in_x[idx] ? 1 : 0));
    }
  }

  const RecoveryKind kind = inst.rule.kind;
  auto step = [&](std::size_t idx) {
    switch (kind) {
      case RecoveryKind::kIncl: return in_x[idx] ? 0 : 1;
      case RecoveryKind::kExcl: return in_x[idx] ? 1 : 0;
      case RecoveryKind::kSym: return in_x[idx] ? -1 : 1;
    }
    return 0;
  };
  auto dead = [&](NodeId v, int r) {
    if (max_x[v] == kUnreachable) return true;
    switch (kind) {
      case RecoveryKind::kIncl: return r > k;
      case RecoveryKind::kExcl: return r + max_x[v] < x_size - k;
      case RecoveryKind::kSym: return r - max_x[v] > k - x_size;
    }
    return true;
  };

  // Forward sweep collecting reachable resource values per node.
  std::vector<std::vector<int>> values(n);
  if (!dead(g.source(), 0)) values[g.source()].push_back(0);
  std::vector<std::size_t> first_state(n, 0);
  for (NodeId v : topo) {
    auto& vals = values[v];
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    first_state[v] = state_node_.size();
    state_node_.insert(state_node_.end(), vals.size(), v);
    if (v == sink) continue;
    for (int r : vals) {
      for (std::size_t idx : g.out_arcs(v)) {
        const NodeId w = g.arc(idx).head;
        const int next = r + step(idx);
        if (!dead(w, next)) values[w].push_back(next);
      }
    }
  }

  auto state_of = [&](NodeId v, int r) -> std::optional<std::size_t> {
    const auto& vals = values[v];
    auto it = std::lower_bound(vals.begin(), vals.end(), r);
    if (it == vals.end() || *it != r) return std::nullopt;
    return first_state[v] + static_cast<std::size_t>(it - vals.begin());
  };

  trans_offsets_.assign(state_node_.size() + 1, 0);
  for (NodeId v : topo) {
    if (v == sink) {
      continue;
    }
    for (std::size_t i = 0; i < values[v].size(); ++i) {
      const std::size_t sid = first_state[v] + i;
      const int r = values[v][i];
      for (std::size_t idx : g.out_arcs(v)) {
        if (auto target = state_of(g.arc(idx).head, r + step(idx))) {
          transitions_.push_back({idx, *target});
          ++trans_offsets_[sid + 1];
        }
      }
    }
  }
  // State ids follow the topological node order, and transitions were
  // appended in state-id order.
  for (std::size_t s = 0; s < state_node_.size(); ++s) trans_offsets_[s + 1] += trans_offsets_[s];
  start_ = state_of(g.source(), 0);
}

std::optional<Recovery> RecoverySearch::best(const Scenario& scenario) const {
  return best_for_costs(realized_costs(inst_->graph, scenario));
}

std::optional<Recovery> RecoverySearch::best_for_costs(std::span<const Rational> arc_costs) const {
  if (!start_) return std::nullopt;
  const Digraph& g = inst_->graph;
  const std::size_t count = state_node_.size();
  std::vector<Rational> value(count);
  std::vector<char> feasible(count, 0);
  Rational candidate;
  for (std::size_t s = count; s-- > 0;) {
    if (state_node_[s] == g.sink()) {
      value[s] = 0;
      feasible[s] = 1;
      continue;
    }
    for (std::size_t t = trans_offsets_[s]; t < trans_offsets_[s + 1]; ++t) {
      const Transition& tr = transitions_[t];
      if (!feasible[tr.target]) continue;
      mpq_add(candidate.get_mpq_t(), arc_costs[tr.arc].get_mpq_t(), value[tr.target].get_mpq_t());
      if (!feasible[s] || candidate < value[s]) {
        value[s] = candidate;
        feasible[s] = 1;
      }
    }
  }
  if (!feasible[*start_]) return std::nullopt;

  Recovery out;
  out.cost = value[*start_];
  std::size_t s = *start_;
  while (state_node_[s] != g.sink()) {
    for (std::size_t t = trans_offsets_[s]; t < trans_offsets_[s + 1]; ++t) {
      const Transition& tr = transitions_[t];
      if (!feasible[tr.target]) continue;
      mpq_add(candidate.get_mpq_t(), arc_costs[tr.arc].get_mpq_t(), value[tr.target].get_mpq_t());
      if (candidate == value[s]) {
        out.path.arc_ids.push_back(g.arc(tr.arc).id);
        s = tr.target;
        break;
      }
    }
  }
  return out;
}

std::optional<Recovery> best_recovery(const Instance& inst, const Path& x, const Scenario& scenario) {
  return RecoverySearch(inst, x).best(scenario);
}

}  // namespace rrsp
