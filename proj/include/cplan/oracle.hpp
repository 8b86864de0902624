#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cplan/conmultigraph.hpp"
#include "cplan/instance.hpp"

// Exhaustive ground truth: spanning-tree enumeration per cluster with
// conflict-pruned combination. Exact on small inputs, refuses larger ones.

namespace cplan {

struct OracleResult {
  bool accepted = false;
  std::vector<int> selected;  // a witness when accepted
};

class OracleBoundExceeded : public std::runtime_error {
public:
  explicit OracleBoundExceeded(const std::string& m) : std::runtime_error(m) {}
};

// Decides whether a planar set of spanning trees exists for the live part of
// A. Throws OracleBoundExceeded above edgeBound live con-edges (hard cap 62).
OracleResult oraclePssttm(const ConMultigraph& A, int edgeBound = 24);

// Visits every planar set of spanning trees; stop early by returning false.
void forEachPlanarSpanningSet(const ConMultigraph& A, int edgeBound,
                              const std::function<bool(const std::vector<int>&)>& visit);

// Report-style witness check: S restricts to a spanning tree inside every
// cluster and contains no conflicting pair. Empty result means valid.
std::vector<std::string> verifySolution(const ConMultigraph& A, const std::vector<int>& S);

// Enclosure ground truth: enumerates every simple monochromatic cycle
// explicitly and checks both sides. Matches admissibleOuterFaces.
std::vector<char> oracleEnclosure(const Instance& inst, const FaceSet& faces,
                                  int vertexBound = 12);

}  // namespace cplan
