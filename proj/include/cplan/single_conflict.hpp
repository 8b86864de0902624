#pragma once

#include <string>
#include <vector>

#include "cplan/conmultigraph.hpp"

// Decides the residual instances in which every con-edge crosses at most one
// other con-edge: propagation (forced bridges, self-loops after contraction,
// the exactly-one rule along conflict pairs, disconnection) plus bounded
// backtracking over the lowest undecided pair, memoized on a fingerprint of
// the undecided set and the contraction partition.

namespace cplan {

struct ResidueOutcome {
  bool accepted = false;
  std::vector<int> selected;   // con-edge ids chosen into the spanning trees
  std::vector<int> evidence;   // on rejection: the edges or cluster pinned down
  std::string reason;
  long exploredNodes = 0;      // search-tree nodes, for reporting only
};

ResidueOutcome solveSingleConflict(const ConMultigraph& A);

}  // namespace cplan
