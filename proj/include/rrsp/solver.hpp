#pragma once

// Outer minimization over first-stage paths.

#include <cstddef>
#include <optional>

#include "rrsp/adversary.hpp"
#include "rrsp/graph.hpp"

namespace rrsp {

struct SolveResult {
  Rational opt;
  Path first_stage;
  Scenario worst_scenario;
  Path best_recovery;
  std::size_t explored = 0;  // complete first-stage paths enumerated
};

struct SolveOptions {
  std::size_t path_cap = kDefaultPathCap;
  AdversaryOptions adversary;
};

// Path enumeration overflowed; `partial` is the incumbent at that point.
class SolveOverflow : public CapExceeded {
 public:
  SolveOverflow(const CapExceeded& cause, std::optional<SolveResult> partial)
      : CapExceeded(cause), partial_(std::move(partial)) {}
  const std::optional<SolveResult>& partial() const { return partial_; }

 private:
  std::optional<SolveResult> partial_;
};

// Exact optimum. Every s-t path is a candidate, scanned in lexicographic
// order. A prefix is abandoned once its first-stage cost plus the cheapest
// first-stage completion reaches the incumbent. A complete candidate is
// skipped as soon as a lower bound on its score (first stage alone, then plus
// the nominal recovery, then the adversary's running certified value) reaches
// the incumbent. Only strict improvements replace the incumbent, so the
// lexicographically first optimal path is returned.
// Throws std::invalid_argument for instances failing validate_instance.
SolveResult solve(const Instance& inst, const SolveOptions& options = {});

// Oracle: no pruning, adversary by full neighborhood enumeration
// (continuous: one LP over all paths; discrete: every support).
SolveResult brute_solve(const Instance& inst, const SolveOptions& options = {});

}  // namespace rrsp
