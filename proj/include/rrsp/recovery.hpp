#pragma once

// Recovery neighborhoods and the inner minimization over them.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rrsp/graph.hpp"

namespace rrsp {

// Set semantics on arc ids: incl bounds |Y \ X|, excl bounds |X \ Y|, sym
// bounds the symmetric difference.
bool neighborhood_contains(const Path& x, const Path& y, const RecoveryRule& rule);

struct Recovery {
  Path path;
  Rational cost;
};

// Resource-constrained shortest path over the DAG for one fixed first-stage
// path X. The reachable (node, resource) state space depends only on X and the
// rule, so it is built once and reused for every scenario.
//
// The resource is a single counter per kind:
//   incl: arcs outside X so far            (final value <= k)
//   excl: arcs of X so far                 (final value >= |X| - k)
//   sym:  arcs outside X minus arcs of X   (final value <= k - |X|)
// A state is dropped as soon as no completion can satisfy the final test,
// using the maximum number of X arcs still collectable from its node.
//
// Ties between optimal recoveries go to the lexicographically smallest arc-id
// sequence. The referenced instance must outlive the search object.
class RecoverySearch {
 public:
  // Throws std::invalid_argument if `first_stage` is not an s-t path of inst.
  RecoverySearch(const Instance& inst, const Path& first_stage);

  std::optional<Recovery> best(const Scenario& scenario) const;
  // `arc_costs` holds the realized second-stage cost per arc index.
  std::optional<Recovery> best_for_costs(std::span<const Rational> arc_costs) const;

  const Instance& instance() const { return *inst_; }
  const Path& first_stage() const { return first_stage_; }
  std::size_t state_count() const { return state_node_.size(); }

 private:
  struct Transition {
    std::size_t arc;
    std::size_t target;
  };

  const Instance* inst_;
  Path first_stage_;
  // State ids follow topological node order, so transitions always point to
  // larger ids.
  std::vector<NodeId> state_node_;
  std::vector<std::size_t> trans_offsets_;
  std::vector<Transition> transitions_;
  std::optional<std::size_t> start_;
};

// Minimum-cost Y in the neighborhood of X under `scenario`; nullopt only if
// the neighborhood is empty.
std::optional<Recovery> best_recovery(const Instance& inst, const Path& x, const Scenario& scenario);

// Realized second-stage costs (nominal + deviation) indexed by arc index.
std::vector<Rational> realized_costs(const Digraph& g, const Scenario& scenario);

}  // namespace rrsp
