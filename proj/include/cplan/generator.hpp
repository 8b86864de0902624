#pragma once

#include <cstdint>
#include <vector>

#include "cplan/conmultigraph.hpp"
#include "cplan/instance.hpp"

// Seeded, reproducible test-data supply: random embedded clustered graphs
// (apollonian growth, edge thinning, constrained cluster growth), chord-level
// fixtures on tree hosts, and explicit donut templates.

namespace cplan {

struct GeneratorParams {
  std::uint64_t seed = 1;
  int minVertices = 6;
  int maxVertices = 10;
  int minClusters = 2;
  int maxClusters = 5;
  double edgeKeepProbability = 0.7;
  bool enforceFaceLimit = true;
  int retryBudget = 400;
};

// Random connected plane multigraph with a flat clustering; if the limit flag
// is set, no face sees more than two vertices of one cluster. Pure function
// of the parameters. Throws std::runtime_error when the retry budget runs out.
Instance genInstance(const GeneratorParams& params);

struct ChordSystemParams {
  std::uint64_t seed = 1;
  int vertices = 9;
  int clusters = 3;
  double conKeepProbability = 0.8;
  bool requireProperty1 = true;
  int retryBudget = 400;
};

// Chord-level fixture: faces as disks over a random tree host, random chord
// subset, reduced until Property 1 holds (rejection sampling). Rotations are
// embedded; the result is ready for the solver.
ConMultigraph genChordSystem(const ChordSystemParams& params);

// Explicit donut: one cluster with `spokes` parallel con-edges, every spoke
// crossed by the same `crossers` clusters in the same order; each crossing
// cluster is chained into one component. The seed doubles some chain links.
ConMultigraph donutTemplate(int spokes, int crossers, std::uint64_t seed = 0);

}  // namespace cplan
