#pragma once

// Test-only helpers and independent oracles. Nothing here calls the recovery
// DP, the adversaries or the solver.

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rrsp/graph.hpp"

namespace rrsp::test {

struct ArcSpec {
  NodeId tail;
  NodeId head;
  const char* c1;
  const char* chat;
  const char* delta;
};

inline Digraph make_graph(int nodes, const std::vector<ArcSpec>& specs, NodeId source, NodeId sink,
                          ArcId first_id = 0) {
  std::vector<Arc> arcs;
  ArcId id = first_id;
  for (const ArcSpec& s : specs) {
    Arc a;
    a.id = id++;
    a.tail = s.tail;
    a.head = s.head;
    a.first_stage_cost = parse_rational(s.c1);
    a.nominal = parse_rational(s.chat);
    a.deviation_cap = parse_rational(s.delta);
    arcs.push_back(std::move(a));
  }
  return Digraph(nodes, std::move(arcs), source, sink);
}

inline Instance make_instance(int nodes, const std::vector<ArcSpec>& specs, NodeId source, NodeId sink,
                              RecoveryRule rule, Budget budget) {
  return Instance{make_graph(nodes, specs, source, sink), rule, std::move(budget)};
}

// Number of source-sink paths by memoized recursion over successors.
inline Rational count_paths_dp(const Digraph& g) {
  std::map<NodeId, Rational> memo;
  std::function<Rational(NodeId)> count = [&](NodeId v) -> Rational {
    if (v == g.sink()) return Rational(1);
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    Rational total(0);
    for (const Arc& a : g.arcs()) {
      if (a.tail == v) total += count(a.head);
    }
    memo[v] = total;
    return total;
  };
  return count(g.source());
}

inline std::set<ArcId> arc_set(const Path& p) { return {p.arc_ids.begin(), p.arc_ids.end()}; }

inline std::size_t difference_size(const std::set<ArcId>& a, const std::set<ArcId>& b) {
  std::vector<ArcId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

inline bool in_neighborhood(const Path& x, const Path& y, const RecoveryRule& rule) {
  const auto xs = arc_set(x);
  const auto ys = arc_set(y);
  const std::size_t added = difference_size(ys, xs);
  const std::size_t removed = difference_size(xs, ys);
  const auto k = static_cast<std::size_t>(rule.k);
  switch (rule.kind) {
    case RecoveryKind::kIncl:
      return added <= k;
    case RecoveryKind::kExcl:
      return removed <= k;
    case RecoveryKind::kSym:
      return added + removed <= k;
  }
  return false;
}

// Minimum second-stage cost over the filtered path list.
inline std::optional<Rational> brute_recovery(const Instance& inst, const Path& x, const Scenario& scenario) {
  std::optional<Rational> best;
  for (const Path& y : enumerate_st_paths(inst.graph)) {
    if (!in_neighborhood(x, y, inst.rule)) continue;
    Rational c(0);
    for (ArcId id : y.arc_ids) c += inst.graph.arc_by_id(id).nominal + scenario.deviation(id);
    if (!best || c < *best) best = c;
  }
  return best;
}

}  // namespace rrsp::test
