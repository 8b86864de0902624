#pragma once

// Hand-built instances and con-edge multigraphs shared by the test suites.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cplan/conmultigraph.hpp"
#include "cplan/instance.hpp"

namespace fixtures {

using namespace cplan;

inline Instance makeInstance(int n, std::vector<std::pair<int, int>> edges,
                             std::vector<std::vector<int>> rotations,
                             std::vector<std::vector<int>> clusters) {
  Instance inst;
  for (int v = 0; v < n; ++v) inst.vertexLabels.push_back(v);
  for (auto& e : edges) inst.edges.push_back({e.first, e.second});
  inst.rotations = std::move(rotations);
  for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
    std::string name = "c";
    name += static_cast<char>('a' + c);
    inst.clusterNames.push_back(name);
  }
  inst.clusterVertices.assign(clusters.size(), {});
  inst.clusterOf.assign(n, -1);
  for (int c = 0; c < static_cast<int>(clusters.size()); ++c)
    for (int v : clusters[c]) {
      inst.clusterOf[v] = c;
      inst.clusterVertices[c].push_back(v);
    }
  inst.buildDarts();
  validateInstance(inst);
  return inst;
}

// Triangle on three singleton clusters.
inline Instance triangle() {
  return makeInstance(3, {{0, 1}, {1, 2}, {2, 0}}, {{0, 2}, {1, 0}, {2, 1}},
                      {{0}, {1}, {2}});
}

// Path 0-1-2; two faces? no: one face of length 4.
inline Instance path3() {
  return makeInstance(3, {{0, 1}, {1, 2}}, {{0}, {0, 1}, {1}}, {{0, 2}, {1}});
}

// Path 0-1-2-3 with clusters {1,3} | {0,2}: vertex 1 occurs twice on the
// single face, giving two parallel con-edges for cluster "ca" = {1,3}.
inline Instance path4() {
  return makeInstance(4, {{0, 1}, {1, 2}, {2, 3}}, {{0}, {0, 1}, {1, 2}, {2}},
                      {{1, 3}, {0, 2}});
}

// Alpha-triangle 0,1,2 with a foreign pendant 3 inside it; optionally a
// second foreign pendant 4 outside, blocking both sides.
inline Instance enclosureTriangle(bool bothSides) {
  if (!bothSides)
    return makeInstance(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}},
                        {{0, 2, 3}, {1, 0}, {2, 1}, {3}}, {{0, 1, 2}, {3}});
  return makeInstance(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {0, 4}},
                      {{0, 4, 2, 3}, {1, 0}, {2, 1}, {3}, {4}}, {{0, 1, 2}, {3, 4}});
}

// Pentagon u-y-p-v-q with a pendant x on u; one face reads (u,x,u,y,p,v,q),
// the other (y,u,q,v,p). Clusters: {u,v} and {x,y}; p,q singletons. The
// occurrence pattern is the base shape of the parallel-con-edge reduction.
// u=0, x=1, y=2, v=3, p=4, q=5.
inline Instance reductionPentagon() {
  return makeInstance(6, {{0, 1}, {0, 2}, {2, 4}, {4, 3}, {3, 5}, {5, 0}},
                      {{0, 1, 5}, {0}, {1, 2}, {3, 4}, {2, 3}, {4, 5}},
                      {{0, 3}, {1, 2}, {4}, {5}});
}

// Subdivided prism: inner square p0..p3 (vertices 0..3), outer square q0..q3
// (4..7), spoke of quad i subdivided by a_i (8+i). Cluster "ca" holds the a_i;
// every other vertex is a singleton. A[ca] is a 4-cycle of con-edges, one in
// each quad face.
inline Instance prismRing() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 4; ++i) edges.push_back({i, (i + 1) % 4});          // e0..e3 inner
  for (int i = 0; i < 4; ++i) edges.push_back({4 + i, 4 + (i + 1) % 4});  // e4..e7 outer
  for (int i = 0; i < 4; ++i) edges.push_back({i, 8 + i});                // e8..e11 lower half
  for (int i = 0; i < 4; ++i) edges.push_back({8 + i, 4 + i});            // e12..e15 upper half
  std::vector<std::vector<int>> rot(12);
  for (int i = 0; i < 4; ++i) {
    rot[i] = {8 + i, (i + 3) % 4, i};          // spoke, inner-prev, inner-next
    rot[4 + i] = {4 + (i + 3) % 4, 12 + i, 4 + i};  // outer-prev, spoke, outer-next
    rot[8 + i] = {8 + i, 12 + i};
  }
  std::vector<std::vector<int>> clusters{{8, 9, 10, 11}};
  for (int v = 0; v < 8; ++v) clusters.push_back({v});
  return makeInstance(12, edges, rot, clusters);
}

// Insert a pendant vertex (fresh singleton cluster) attached to `anchor`,
// hanging inside the face that currently contains `cornerDart` in its corner
// list. Returns the new vertex id.
inline Instance withPendantAt(const Instance& base, VertexId anchor, Dart cornerDart) {
  Instance inst = base;
  int v = inst.vertexCount();
  inst.vertexLabels.push_back(v);
  int e = inst.edgeCount();
  inst.edges.push_back({anchor, v});
  auto& rot = inst.rotations[anchor];
  // Insert right after the corner dart's edge occurrence.
  auto darts = inst.rotationDarts[anchor];
  for (size_t i = 0; i < darts.size(); ++i)
    if (darts[i] == cornerDart) {
      rot.insert(rot.begin() + i + 1, e);
      break;
    }
  inst.rotations.push_back({e});
  std::string name = "p" + std::to_string(v);
  inst.clusterNames.push_back(name);
  std::sort(inst.clusterNames.begin(), inst.clusterNames.end());
  // Rebuild the cluster tables from scratch against the sorted names.
  std::vector<std::string> names = inst.clusterNames;
  std::map<std::string, int> idx;
  for (int c = 0; c < static_cast<int>(names.size()); ++c) idx[names[c]] = c;
  std::vector<std::vector<VertexId>> byName(names.size());
  for (VertexId w = 0; w < v; ++w) {
    // Old cluster name of w.
    // clusterOf refers to the pre-insert name table, which is a subset.
    byName[idx[base.clusterNames[base.clusterOf[w]]]].push_back(w);
  }
  byName[idx[name]].push_back(v);
  inst.clusterVertices = byName;
  inst.clusterOf.assign(v + 1, -1);
  for (int c = 0; c < static_cast<int>(byName.size()); ++c)
    for (VertexId w : byName[c]) inst.clusterOf[w] = c;
  inst.buildDarts();
  validateInstance(inst);
  return inst;
}

// Abstract con-edge multigraphs for solver unit tests. Every A-vertex must
// have degree <= 2 so the rotation order is forced.
struct AbstractChord {
  int cluster, face, occA, occB, endA, endB;
};

inline ConMultigraph abstractA(int clusterCount, int avertexCount,
                               const std::vector<int>& avClusters,
                               const std::vector<int>& faceLengths,
                               const std::vector<AbstractChord>& chords) {
  ConMultigraph A;
  A.clusterCount = clusterCount;
  for (int v = 0; v < avertexCount; ++v) A.avertices.push_back({avClusters[v], v});
  A.avAlive.assign(avertexCount, 1);
  A.faceLength = faceLengths;
  for (const AbstractChord& c : chords) {
    ConEdge e;
    e.id = static_cast<int>(A.edges.size());
    e.cluster = c.cluster;
    e.face = c.face;
    e.occA = c.occA;
    e.occB = c.occB;
    e.endA = c.endA;
    e.endB = c.endB;
    e.vertexA = 1000 + e.id * 2;
    e.vertexB = 1000 + e.id * 2 + 1;
    A.edges.push_back(e);
  }
  A.alive.assign(A.edges.size(), 1);
  computeConflicts(A);
  A.rotation.assign(avertexCount, {});
  for (const ConEdge& e : A.edges) {
    A.rotation[e.endA].push_back(aDart(e.id, 0));
    A.rotation[e.endB].push_back(aDart(e.id, 1));
  }
  for (auto& r : A.rotation)
    if (r.size() > 2) throw std::logic_error("abstractA: rotation order would matter");
  return A;
}

// Euler characteristic check of A[cluster]: every connected component with at
// least one edge must satisfy V - E + F = 2 under the stored rotations.
inline bool alphaEulerHolds(const ConMultigraph& A, ClusterId cluster) {
  AlphaEmbedding em = computeAlphaEmbedding(A, cluster);
  // Component decomposition over alive edges.
  std::map<int, int> comp;  // avertex -> component
  int nc = 0;
  auto edges = A.clusterEdges(cluster);
  std::map<int, std::vector<int>> adj;
  for (int e : edges) {
    adj[A.edges[e].endA].push_back(A.edges[e].endB);
    adj[A.edges[e].endB].push_back(A.edges[e].endA);
  }
  for (auto& [v, nb] : adj) {
    if (comp.count(v)) continue;
    std::vector<int> stack{v};
    comp[v] = nc;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (!comp.count(w)) {
          comp[w] = nc;
          stack.push_back(w);
        }
    }
    ++nc;
  }
  std::vector<int> vCount(nc, 0), eCount(nc, 0), fCount(nc, 0);
  for (auto& [v, c] : comp) ++vCount[c];
  for (int e : edges) ++eCount[comp[A.edges[e].endA]];
  for (auto& walk : em.faceWalks) {
    if (walk.empty()) continue;
    ++fCount[comp[A.tailOf(walk[0])]];
  }
  for (int c = 0; c < nc; ++c)
    if (vCount[c] - eCount[c] + fCount[c] != 2) return false;
  return true;
}

}  // namespace fixtures
