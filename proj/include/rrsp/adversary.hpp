#pragma once

// Worst-case second-stage scenarios: max over the budgeted uncertainty set of
// the best recovery cost, computed exactly.

#include <cstddef>
#include <optional>
#include <vector>

#include "rrsp/graph.hpp"
#include "rrsp/recovery.hpp"

namespace rrsp {

struct AdversaryOptions {
  std::size_t pool_cap = 100'000;         // recovery paths kept by the cutting plane
  std::size_t path_cap = kDefaultPathCap;  // full enumeration of the neighborhood
  std::size_t subset_cap = 1'000'000;     // discrete deviation supports examined
  // When set, stop as soon as some scenario certifies a value >= cutoff.
  std::optional<Rational> cutoff;
};

struct AdversaryResult {
  Scenario scenario;
  Rational value;
  Recovery recovery;  // a best recovery under `scenario`; its cost equals value
  std::size_t iterations = 0;
  // Stopped at the cutoff; `value` is then only a certified lower bound.
  bool cut_off = false;
};

// Cutting plane: the recovery DP acts as separation oracle for
//   max t  s.t.  t <= sum_{e in Y} (nominal_e + d_e) for Y in pool,
//                0 <= d_e <= cap_e,  sum d_e <= budget.
// Arcs that lie in exactly the same pool paths are merged into one LP column;
// the merged deviation is split back across arcs in ascending id order.
// Throws CapExceeded if the pool outgrows options.pool_cap.
AdversaryResult worst_continuous(const RecoverySearch& search, const AdversaryOptions& options = {});
AdversaryResult worst_continuous(const Instance& inst, const Path& x, const AdversaryOptions& options = {});

// Same contract, but one LP over every path of the neighborhood, found by
// brute-force enumeration and filtering (no recovery DP involved).
AdversaryResult worst_continuous_full(const Instance& inst, const Path& x,
                                      const AdversaryOptions& options = {});

// Extreme scenarios: every subset of min(budget, #uncertain arcs) uncertain
// arcs raised to their caps, in lexicographic order. Raising more arcs never
// lowers the recovery cost, so smaller supports are dominated. Ties keep the
// lexicographically smallest subset.
AdversaryResult worst_discrete(const RecoverySearch& search, const AdversaryOptions& options = {});
AdversaryResult worst_discrete(const Instance& inst, const Path& x, const AdversaryOptions& options = {});

// Oracle variant of worst_discrete: all supports of size <= budget, each scored
// by brute-force neighborhood enumeration.
AdversaryResult worst_discrete_exhaustive(const Instance& inst, const Path& x,
                                          const AdversaryOptions& options = {});

// Dispatches on the instance's budget kind.
AdversaryResult worst_case(const RecoverySearch& search, const AdversaryOptions& options = {});

// Paths of the neighborhood of x, by enumeration of all s-t paths.
std::vector<Path> enumerate_neighborhood(const Instance& inst, const Path& x,
                                         std::size_t cap = kDefaultPathCap);

}  // namespace rrsp
