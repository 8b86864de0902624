#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Embedded flat clustered graphs: a connected plane multigraph given by a
// rotation system, plus a flat partition of the vertices into clusters.
// Vertices and edges are dense indices; darts encode directed edges.

namespace cplan {

using VertexId = int;
using EdgeId = int;
using FaceId = int;
using ClusterId = int;
using Dart = int; // 2*edge + dir; dir 0 runs from the stored tail to the stored head

inline Dart makeDart(EdgeId e, int dir) { return 2 * e + dir; }
inline EdgeId dartEdge(Dart d) { return d >> 1; }
inline int dartDir(Dart d) { return d & 1; }
inline Dart dartReverse(Dart d) { return d ^ 1; }

enum class InstanceErrorKind {
  Malformed,
  RotationInconsistent,
  Disconnected,
  NonPlanar,
};

class InstanceError : public std::runtime_error {
public:
  InstanceError(InstanceErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  InstanceErrorKind kind() const { return kind_; }

private:
  InstanceErrorKind kind_;
};

struct Instance {
  std::vector<std::int64_t> vertexLabels;               // original ids, ascending
  std::vector<std::pair<VertexId, VertexId>> edges;     // dense endpoints, input order
  std::vector<std::vector<EdgeId>> rotations;           // clockwise edge ids per vertex
  std::vector<std::vector<Dart>> rotationDarts;         // same order, as outgoing darts
  std::vector<std::string> clusterNames;                // ascending
  std::vector<ClusterId> clusterOf;                     // per vertex
  std::vector<std::vector<VertexId>> clusterVertices;
  std::optional<std::vector<VertexId>> outerFaceHint;   // dense boundary vertex sequence

  int vertexCount() const { return static_cast<int>(vertexLabels.size()); }
  int edgeCount() const { return static_cast<int>(edges.size()); }
  int clusterCount() const { return static_cast<int>(clusterNames.size()); }

  VertexId dartTail(Dart d) const {
    const auto& e = edges[dartEdge(d)];
    return dartDir(d) == 0 ? e.first : e.second;
  }
  VertexId dartHead(Dart d) const { return dartTail(dartReverse(d)); }

  // Successor of dart d (outgoing at its tail) in the tail's rotation.
  Dart rotationNext(Dart d) const;

  // Fills rotationDarts from rotations; validates rotation consistency.
  void buildDarts();
};

// Throws InstanceError on malformed documents. Runs full validation
// (rotation consistency, connectivity, Euler genus check).
Instance parseInstance(const std::string& text);

// Validation pieces, usable on programmatically built instances.
void validateInstance(const Instance& inst);

struct FaceOccurrence {
  VertexId vertex;
  Dart in;   // dart arriving at the vertex along the boundary walk
  Dart out;  // dart leaving it
};

struct Face {
  FaceId id = 0;
  std::vector<Dart> walk;  // walk[p] leaves occurrence p; boundary length = walk size
  std::vector<FaceOccurrence> boundary;
};

struct FaceSet {
  std::vector<Face> faces;
  std::vector<FaceId> dartFace;  // dart -> face containing it
  std::vector<int> dartPos;      // dart -> its index in that face's walk
  std::vector<FaceId> cornerFace;  // corner key dart k (at v, between k and next) -> face
  std::vector<int> cornerPos;      // corner key dart -> occurrence position

  int faceLen(FaceId f) const { return static_cast<int>(faces[f].walk.size()); }
  FaceId faceOfVertex(const Instance& inst, VertexId v) const;
};

// Traces all faces of the embedding. Faces are keyed by their least dart and
// numbered in ascending least-dart order; each walk starts at the least dart.
FaceSet traceFaces(const Instance& inst);

struct FaceLimitViolation {
  FaceId face;
  ClusterId cluster;
  std::vector<VertexId> vertices;  // distinct vertices of the cluster on the face
};

// Every face may see at most two distinct vertices of each cluster.
std::vector<FaceLimitViolation> checkPerFaceLimit(const Instance& inst, const FaceSet& faces);

// For a simple cycle given by its edge set, splits the faces into the two
// sides of the cycle. Returns 0/1 per face.
std::vector<char> faceSidesOfCycle(const Instance& inst, const FaceSet& faces,
                                   const std::vector<EdgeId>& cycleEdges);

// Admissible outer faces: choosing such a face as outer face, no cycle of
// same-cluster vertices encloses a vertex of a different cluster. Decided via
// the face cycles of the biconnected components of each induced subgraph.
std::vector<char> admissibleOuterFaces(const Instance& inst, const FaceSet& faces);

// All simple cycles (as edge-id sets) of the subgraph induced by one cluster.
// Exponential; used by the enclosure oracle and tests.
std::vector<std::vector<EdgeId>> enumerateInducedCycles(const Instance& inst, ClusterId cluster);

}  // namespace cplan
