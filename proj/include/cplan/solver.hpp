#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cplan/conmultigraph.hpp"

// Fixpoint driver over the con-edge multigraph: four rejection tests and
// eight simplifications, rerun from the top after every mutation, followed by
// the single-conflict residue decision. Requires Property 1 on input.

namespace cplan {

struct TraceEntry {
  int step = 0;
  std::string rule;    // test1..test4, simpl1..simpl8, single_conflict
  std::string detail;  // stable tag naming the pattern
  std::vector<int> edges;
  std::string action;  // select | remove | contract | reject
};

struct Rejection {
  std::string rule;
  std::string detail;
  std::vector<int> evidence;  // con-edge ids; test1 carries the cluster id instead
};

struct SolveResult {
  bool accepted = false;
  std::vector<int> selected;  // con-edge ids, ascending
  std::optional<Rejection> rejection;
  std::vector<TraceEntry> trace;
};

// BFS layering of the conflict component of a root con-edge: H[0] = {root},
// L[j] = odd layers, H[j] = even layers. Only valid once the component is
// bipartite (distance parity), which holds whenever the bipartiteness test
// has already passed.
struct ConflictingStructure {
  int root = -1;
  std::vector<std::vector<int>> H;  // H[j], j >= 0
  std::vector<std::vector<int>> L;  // L[j], j >= 1; L[0] kept empty
  std::map<int, int> depth;         // edge -> BFS distance from root

  bool isH(int e) const {
    auto it = depth.find(e);
    return it != depth.end() && it->second % 2 == 0;
  }
  std::vector<int> hSide() const;  // all H layers, ascending ids
  std::vector<int> lSide() const;  // all L layers, ascending ids
};

ConflictingStructure conflictingStructure(const ConMultigraph& A, int e);

// Forced cluster-wise mapping between two structures; true iff it is a
// layer- and conflict-preserving bijection.
bool structuresIsomorphic(const ConMultigraph& A, const ConflictingStructure& a,
                          const ConflictingStructure& b);

// A donut around a multi-crossed con-edge: a cyclic sequence of spokes and
// facial cycles of one cluster, every spoke crossed by the same clusters in
// the same order, with the connecting arcs clean of the inner crossers.
struct Donut {
  ClusterId cluster = -1;
  std::vector<int> spokes;                      // k >= 2
  std::vector<int> cycleIds;                    // cycleIds[j], cycleIds[j+1] share spokes[j]
  std::vector<ClusterId> crossClusters;         // beta_1..beta_m, m >= 2
  std::vector<std::vector<int>> spokeCrossers;  // [spoke][j] = crosser for beta_j
  AlphaEmbedding embedding;                     // snapshot the cycles live in

  int spokeCount() const { return static_cast<int>(spokes.size()); }
};

// Builds the donut for a con-edge crossing >= 2 clusters by the facial-cycle
// walk; throws std::logic_error if the walk cannot close (solver bug, not
// user error). Runs the property checker before returning.
Donut computeDonut(const ConMultigraph& A, int rootEdge);

// Asserts donut properties (a)-(f); returns a diagnostic or empty string.
std::string checkDonut(const ConMultigraph& A, const Donut& d);

struct SolverHooks {
  // Called with the rule tag and the multigraph before/after each mutation.
  std::function<void(const std::string&, const ConMultigraph&)> beforeRule;
  std::function<void(const std::string&, const ConMultigraph&)> afterRule;
  // Every donut computed during the run, with the multigraph it was built on.
  std::function<void(const Donut&, const ConMultigraph&)> onDonut;
};

class Solver {
public:
  explicit Solver(ConMultigraph a, SolverHooks hooks = {});

  SolveResult run();

  // Individual phases, exposed for tests. Each returns true if it mutated A
  // (simplifications) or fired (tests fill the rejection).
  std::optional<Rejection> runTests();       // tests 1..4 in order, no mutation
  bool findLocalSimplification();            // first of simplifications 1..4
  bool applyDonutRule(const Donut& donut);   // first of simplifications 5..8

  const ConMultigraph& graph() const { return a_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

private:
  bool test1(Rejection& r) const;
  bool test2(Rejection& r) const;
  bool test3(Rejection& r) const;
  bool test4(Rejection& r) const;
  bool simpl1();
  bool simpl2();
  bool simpl3();
  bool simpl4();
  bool donutStep();  // computes the donut at the lowest multi-crossed edge

  void record(const std::string& rule, const std::string& detail, std::string action,
              std::vector<int> edges);
  void removeBatch(const std::string& rule, const std::string& detail,
                   const std::vector<int>& edges);
  void selectBatch(const std::string& rule, const std::string& detail,
                   const std::vector<int>& edges);
  int lowestMultiCrossed() const;  // -1 if none

  ConMultigraph a_;
  SolverHooks hooks_;
  std::vector<TraceEntry> trace_;
  std::vector<int> selected_;
  int step_ = 0;
};

}  // namespace cplan
