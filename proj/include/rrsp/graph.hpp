#pragma once

// Problem data model: acyclic multigraph with interval second-stage costs,
// recovery rules, budgets, paths and scenarios.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rrsp/rational.hpp"

namespace rrsp {

using NodeId = int;
using ArcId = int;

inline constexpr std::size_t kDefaultPathCap = 1'000'000;

enum class ArcRole { kVertical, kDiagonal, kDashed, kDotted, kSolidNormal, kSolidFat, kPlain };

std::string_view to_string(ArcRole role);
std::optional<ArcRole> parse_arc_role(std::string_view text);

struct Arc {
  ArcId id = 0;
  NodeId tail = 0;
  NodeId head = 0;
  Rational first_stage_cost;  // C_e
  Rational nominal;           // lower end of the second-stage interval
  Rational deviation_cap;     // width of the second-stage interval
  std::optional<ArcRole> role;
};

// Thrown when a graph contains a directed cycle. `cycle` lists the nodes of
// one cycle in traversal order.
class CycleError : public std::runtime_error {
 public:
  explicit CycleError(std::vector<NodeId> cycle);
  const std::vector<NodeId>& cycle() const { return cycle_; }

 private:
  std::vector<NodeId> cycle_;
};

// Raised by every enumeration that exceeds its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string what, std::size_t cap);
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

// Immutable multigraph. Arcs are stored sorted by id, so arc indices order
// the same way as arc ids. Construction rejects out-of-range endpoints and
// duplicate ids; semantic problems (cycles, negative costs, unreachable sink)
// are left to validate_instance.
class Digraph {
 public:
  Digraph(int node_count, std::vector<Arc> arcs, NodeId source, NodeId sink);

  int node_count() const { return node_count_; }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  std::size_t arc_count() const { return arcs_.size(); }

  std::span<const Arc> arcs() const { return arcs_; }
  const Arc& arc(std::size_t index) const { return arcs_[index]; }
  std::optional<std::size_t> index_of(ArcId id) const;
  // Throws std::out_of_range for an unknown id.
  const Arc& arc_by_id(ArcId id) const;

  // Outgoing arc indices of `node`, ascending by arc id.
  std::span<const std::size_t> out_arcs(NodeId node) const;

  bool is_acyclic() const { return topo_.has_value(); }
  // Deterministic topological order (ties by ascending node id); nullopt if
  // the graph has a cycle.
  const std::optional<std::vector<NodeId>>& cached_topological_order() const { return topo_; }

  // Copy keeping only the arcs accepted by `keep`.
  Digraph filtered(const std::function<bool(const Arc&)>& keep) const;

 private:
  int node_count_;
  NodeId source_;
  NodeId sink_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_offsets_;
  std::vector<std::size_t> out_list_;
  std::optional<std::vector<NodeId>> topo_;
};

enum class RecoveryKind { kIncl, kExcl, kSym };

std::string_view to_string(RecoveryKind kind);
std::optional<RecoveryKind> parse_recovery_kind(std::string_view text);

struct RecoveryRule {
  RecoveryKind kind = RecoveryKind::kIncl;
  int k = 0;
};

enum class BudgetKind { kContinuous, kDiscrete };

struct Budget {
  BudgetKind kind = BudgetKind::kContinuous;
  Rational gamma_c;  // meaningful iff continuous
  int gamma_d = 0;   // meaningful iff discrete

  static Budget continuous(Rational gamma) { return {BudgetKind::kContinuous, std::move(gamma), 0}; }
  static Budget discrete(int gamma) { return {BudgetKind::kDiscrete, Rational(0), gamma}; }
  bool is_zero() const { return kind == BudgetKind::kContinuous ? gamma_c == 0 : gamma_d == 0; }
};

struct Instance {
  Digraph graph;
  RecoveryRule rule;
  Budget budget;
};

// An s-t path as its arc id sequence. Ordering is lexicographic on ids.
struct Path {
  std::vector<ArcId> arc_ids;

  std::size_t size() const { return arc_ids.size(); }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path& a, const Path& b) { return a.arc_ids <=> b.arc_ids; }
};

// Per-arc deviation above the nominal cost. Only nonzero entries are stored.
class Scenario {
 public:
  Scenario() = default;

  const Rational& deviation(ArcId id) const;
  void set(ArcId id, const Rational& value);
  const std::map<ArcId, Rational>& entries() const { return deviations_; }
  Rational total() const;
  std::size_t support_size() const { return deviations_.size(); }

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  std::map<ArcId, Rational> deviations_;
};

// Returns a human-readable list of violations; empty means valid.
std::vector<std::string> validate_instance(const Instance& inst);

// Throws CycleError if `g` has a cycle.
std::vector<NodeId> topological_order(const Digraph& g);

// Calls `visit` for every source-sink path in lexicographic order of arc ids.
// Throws CapExceeded once more than `cap` paths exist.
void for_each_st_path(const Digraph& g, std::size_t cap,
                      const std::function<void(const Path&)>& visit);
// Same order, but `extend(arc, depth)` is asked before the walk appends `arc`
// to a prefix of `depth` arcs; returning false skips every path through that
// extension. Only emitted paths count toward `cap`.
void for_each_st_path(const Digraph& g, std::size_t cap,
                      const std::function<void(const Path&)>& visit,
                      const std::function<bool(const Arc&, std::size_t)>& extend);
std::vector<Path> enumerate_st_paths(const Digraph& g, std::size_t cap = kDefaultPathCap);

// True iff `p` is a chain of existing arcs from source to sink.
bool is_st_path(const Digraph& g, const Path& p);

// Sum of C_e over the path. Throws std::out_of_range for unknown arc ids.
Rational first_stage_cost(const Digraph& g, const Path& p);
// Sum of nominal + deviation over the path.
Rational second_stage_cost(const Digraph& g, const Path& p, const Scenario& scenario);

// Checks bounds and the budget constraint of `scenario` for `inst`.
bool scenario_is_feasible(const Instance& inst, const Scenario& scenario);

}  // namespace rrsp
