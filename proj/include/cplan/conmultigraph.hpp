#pragma once

#include <string>
#include <vector>

#include "cplan/instance.hpp"

// The multigraph A of con-edges. A con-edge is a chord between two boundary
// occurrences of distinct same-cluster vertices on one face, joining different
// connected components of the cluster's induced subgraph. A-vertices are those
// components, contracted to points; each cluster's part A[alpha] carries a
// plane embedding given per A-vertex as the cyclic order of con-edge ends.

namespace cplan {

struct ConEdge {
  int id = -1;
  ClusterId cluster = -1;
  FaceId face = -1;
  int occA = -1, occB = -1;  // boundary positions, occA < occB
  int endA = -1, endB = -1;  // A-vertex ids; endA is the component of vertexA
  VertexId vertexA = -1, vertexB = -1;
};

struct AVertexInfo {
  ClusterId cluster = -1;
  VertexId representative = -1;  // smallest G-vertex of the component, or synthetic id
};

// A-darts: 2*edge+0 runs endA -> endB, 2*edge+1 runs endB -> endA.
inline int aDart(int edge, int dir) { return 2 * edge + dir; }
inline int aDartEdge(int d) { return d >> 1; }
inline int aDartReverse(int d) { return d ^ 1; }

struct ConMultigraph {
  int clusterCount = 0;
  std::vector<AVertexInfo> avertices;
  std::vector<char> avAlive;
  std::vector<ConEdge> edges;
  std::vector<char> alive;
  std::vector<std::vector<int>> conflictAdj;  // by con-edge id, includes dead edges
  std::vector<int> faceLength;                // host-face boundary lengths
  std::vector<std::vector<int>> rotation;     // per A-vertex: outgoing A-darts, cyclic

  int aliveEdgeCount() const;
  int tailOf(int d) const { return (d & 1) ? edges[d >> 1].endB : edges[d >> 1].endA; }
  int headOf(int d) const { return tailOf(aDartReverse(d)); }
  bool conflicts(int e, int g) const;
  std::vector<int> aliveConflicts(int e) const;
  std::vector<int> clusterAVertices(ClusterId c) const;  // alive A-vertices of the cluster
  std::vector<int> clusterEdges(ClusterId c) const;      // alive con-edges of the cluster

  void removeEdge(int e);
  // Contract a live con-edge that currently crosses no live con-edge.
  // Its endpoints merge; the lower A-vertex id survives.
  void contractEdge(int e);

  // Occurrence arc test on the host face of edge e: is position p strictly
  // inside the arc from s to t (excluding both), where s,t are e's endpoints?
  bool insideArc(int face, int from, int to, int p) const;
};

// Do chords (a1,b1) and (a2,b2) on a common face of length len alternate?
bool occurrencesAlternate(int a1, int b1, int a2, int b2);

// --- construction from an instance ---------------------------------------

// All con-edges of the instance, ids in (face, occA, occB) lexicographic order.
std::vector<ConEdge> generateConEdges(const Instance& inst, const FaceSet& faces);

// Builds A: components, con-edges, conflicts. Rotations are left empty;
// call embedRotations (after any reduction) to fill them.
ConMultigraph buildConMultigraph(const Instance& inst, const FaceSet& faces);

// Recomputes the conflict adjacency from the chord positions (all edges,
// dead ones included). Used by generators that assemble A directly.
void computeConflicts(ConMultigraph& A);

// Rotation systems for the contracted components, derived by walking each
// component's contours through the host faces.
void embedRotations(ConMultigraph& A, const Instance& inst, const FaceSet& faces);

// --- Property 1 reduction --------------------------------------------------

// Per connected component of the conflict graph, no cluster may own two
// con-edges. Removes con-edges that are crossed by a separating family of
// another cluster's parallel con-edges, and collapses parallel con-edges
// whose foreign conflict sets are comparable. Runs to a fixpoint; returns the
// number of removed edges.
int reduceProperty1(ConMultigraph& A);

bool property1Holds(const ConMultigraph& A);

// --- embedding queries -----------------------------------------------------

struct FacialCycle {
  int id = -1;           // index within the cluster's cycle list
  int aface = -1;        // index of the A[alpha]-face it bounds
  std::vector<int> darts;  // A-darts in traversal order
  std::vector<int> edgeIds;
};

// Faces and facial cycles of A[alpha] under the current rotations.
struct AlphaEmbedding {
  ClusterId cluster = -1;
  std::vector<std::vector<int>> faceWalks;  // per A-face: A-darts
  std::vector<int> dartFaceA;               // A-dart -> A-face index (-1 if foreign/dead)
  std::vector<FacialCycle> cycles;
  std::vector<std::vector<int>> cyclesOfEdge;  // con-edge -> cycle ids (2 if non-bridge)

  const FacialCycle* otherCycleThrough(int edge, int notCycleId) const;
};

AlphaEmbedding computeAlphaEmbedding(const ConMultigraph& A, ClusterId cluster);

// Live con-edges crossing e, ordered along e as met when e is traversed in
// the direction of A-dart d (tail to head).
std::vector<int> crossingOrderAlong(const ConMultigraph& A, int dartOfE);

// For a con-edge g sharing e's host face and not crossing e: which A-dart of
// e faces g? The A[alpha]-face traced through the returned dart contains g.
int sideDartOf(const ConMultigraph& A, int e, int g);

// DOT rendering of the conflict graph (con-edges as nodes, conflicts as edges).
std::string conflictGraphDot(const ConMultigraph& A);

}  // namespace cplan
