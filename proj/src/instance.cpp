#include "cplan/instance.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "json.hpp"

namespace cplan {

Dart Instance::rotationNext(Dart d) const {
  VertexId v = dartTail(d);
  const auto& rot = rotationDarts[v];
  auto it = std::find(rot.begin(), rot.end(), d);
  if (it == rot.end())
    throw InstanceError(InstanceErrorKind::RotationInconsistent, "dart missing from rotation");
  ++it;
  return it == rot.end() ? rot.front() : *it;
}

void Instance::buildDarts() {
  rotationDarts.assign(vertexCount(), {});
  std::vector<int> seenLoop(edgeCount(), 0);
  std::vector<int> uses(edgeCount(), 0);
  for (VertexId v = 0; v < vertexCount(); ++v) {
    rotationDarts[v].reserve(rotations[v].size());
    for (EdgeId e : rotations[v]) {
      if (e < 0 || e >= edgeCount())
        throw InstanceError(InstanceErrorKind::RotationInconsistent,
                            "rotation references unknown edge " + std::to_string(e));
      auto [a, b] = edges[e];
      Dart d;
      if (a == b) {
        if (v != a)
          throw InstanceError(InstanceErrorKind::RotationInconsistent,
                              "self-loop listed at a non-endpoint");
        d = makeDart(e, seenLoop[e]++);
        if (seenLoop[e] > 2)
          throw InstanceError(InstanceErrorKind::RotationInconsistent,
                              "self-loop listed more than twice");
      } else if (v == a) {
        d = makeDart(e, 0);
      } else if (v == b) {
        d = makeDart(e, 1);
      } else {
        throw InstanceError(InstanceErrorKind::RotationInconsistent,
                            "rotation of vertex lists a non-incident edge");
      }
      ++uses[e];
      rotationDarts[v].push_back(d);
    }
  }
  for (EdgeId e = 0; e < edgeCount(); ++e) {
    if (uses[e] != 2)
      throw InstanceError(InstanceErrorKind::RotationInconsistent,
                          "edge " + std::to_string(e) + " must appear in exactly two rotation slots");
  }
  // No duplicate darts (a non-loop edge listed twice at one endpoint).
  std::vector<char> dartSeen(2 * edgeCount(), 0);
  for (VertexId v = 0; v < vertexCount(); ++v)
    for (Dart d : rotationDarts[v]) {
      if (dartSeen[d])
        throw InstanceError(InstanceErrorKind::RotationInconsistent, "duplicate dart in rotations");
      dartSeen[d] = 1;
    }
}

void validateInstance(const Instance& inst) {
  int n = inst.vertexCount();
  if (n == 0) throw InstanceError(InstanceErrorKind::Malformed, "no vertices");
  // Cluster partition.
  std::vector<int> covered(n, 0);
  for (ClusterId c = 0; c < inst.clusterCount(); ++c) {
    if (inst.clusterVertices[c].empty())
      throw InstanceError(InstanceErrorKind::Malformed,
                          "cluster " + inst.clusterNames[c] + " is empty");
    for (VertexId v : inst.clusterVertices[c]) ++covered[v];
  }
  for (VertexId v = 0; v < n; ++v)
    if (covered[v] != 1)
      throw InstanceError(InstanceErrorKind::Malformed,
                          "vertex must belong to exactly one cluster");
  // Connectivity.
  std::vector<char> vis(n, 0);
  std::vector<VertexId> stack{0};
  vis[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (Dart d : inst.rotationDarts[v]) {
      VertexId w = inst.dartHead(d);
      if (!vis[w]) {
        vis[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n)
    throw InstanceError(InstanceErrorKind::Disconnected, "underlying graph is disconnected");
  // Genus check via face tracing.
  FaceSet fs = traceFaces(inst);
  long euler = static_cast<long>(n) - inst.edgeCount() + static_cast<long>(fs.faces.size());
  if (euler != 2)
    throw InstanceError(InstanceErrorKind::NonPlanar,
                        "rotation system is not a planar embedding (V-E+F=" +
                            std::to_string(euler) + ")");
}

FaceSet traceFaces(const Instance& inst) {
  FaceSet fs;
  int m = inst.edgeCount();
  fs.dartFace.assign(2 * m, -1);
  fs.dartPos.assign(2 * m, -1);
  fs.cornerFace.assign(2 * m, -1);
  fs.cornerPos.assign(2 * m, -1);
  if (m == 0) {
    fs.faces.push_back(Face{0, {}, {}});
    return fs;
  }
  for (Dart start = 0; start < 2 * m; ++start) {
    if (fs.dartFace[start] != -1) continue;
    Face face;
    face.id = static_cast<FaceId>(fs.faces.size());
    Dart d = start;
    do {
      fs.dartFace[d] = face.id;
      fs.dartPos[d] = static_cast<int>(face.walk.size());
      face.walk.push_back(d);
      d = inst.rotationNext(dartReverse(d));
    } while (d != start);
    int len = static_cast<int>(face.walk.size());
    face.boundary.resize(len);
    for (int p = 0; p < len; ++p) {
      Dart out = face.walk[p];
      Dart in = face.walk[(p + len - 1) % len];
      face.boundary[p] = FaceOccurrence{inst.dartTail(out), in, out};
      fs.cornerFace[dartReverse(in)] = face.id;
      fs.cornerPos[dartReverse(in)] = p;
    }
    fs.faces.push_back(std::move(face));
  }
  return fs;
}

FaceId FaceSet::faceOfVertex(const Instance& inst, VertexId v) const {
  if (inst.rotationDarts[v].empty()) return 0;
  return cornerFace[inst.rotationDarts[v].front()];
}

std::vector<FaceLimitViolation> checkPerFaceLimit(const Instance& inst, const FaceSet& faces) {
  std::vector<FaceLimitViolation> out;
  for (const Face& f : faces.faces) {
    std::map<ClusterId, std::set<VertexId>> perCluster;
    for (const FaceOccurrence& oc : f.boundary)
      perCluster[inst.clusterOf[oc.vertex]].insert(oc.vertex);
    for (auto& [c, verts] : perCluster)
      if (verts.size() > 2)
        out.push_back(FaceLimitViolation{f.id, c, {verts.begin(), verts.end()}});
  }
  return out;
}

std::vector<char> faceSidesOfCycle(const Instance& inst, const FaceSet& faces,
                                   const std::vector<EdgeId>& cycleEdges) {
  std::vector<char> wall(inst.edgeCount(), 0);
  for (EdgeId e : cycleEdges) wall[e] = 1;
  int nf = static_cast<int>(faces.faces.size());
  std::vector<char> side(nf, -1);
  int groups = 0;
  for (FaceId seed = 0; seed < nf; ++seed) {
    if (side[seed] != -1) continue;
    if (groups >= 2)
      throw std::logic_error("cycle does not split faces into two sides");
    char label = static_cast<char>(groups++);
    std::vector<FaceId> stack{seed};
    side[seed] = label;
    while (!stack.empty()) {
      FaceId f = stack.back();
      stack.pop_back();
      for (Dart d : faces.faces[f].walk) {
        if (wall[dartEdge(d)]) continue;
        FaceId g = faces.dartFace[dartReverse(d)];
        if (side[g] == -1) {
          side[g] = label;
          stack.push_back(g);
        }
      }
    }
  }
  if (groups != 2)
    throw std::logic_error("cycle does not split faces into two sides");
  return side;
}

namespace {

// Faces of the subgraph spanned by an edge set, under the inherited rotations.
// Returns the dart walks. Only edges with keep[e]==1 participate.
std::vector<std::vector<Dart>> traceRestrictedFaces(const Instance& inst,
                                                    const std::vector<char>& keep) {
  int m = inst.edgeCount();
  std::vector<Dart> next(2 * m, -1);
  for (VertexId v = 0; v < inst.vertexCount(); ++v) {
    std::vector<Dart> local;
    for (Dart d : inst.rotationDarts[v])
      if (keep[dartEdge(d)]) local.push_back(d);
    for (size_t i = 0; i < local.size(); ++i)
      next[local[i]] = local[(i + 1) % local.size()];
  }
  std::vector<std::vector<Dart>> walks;
  std::vector<char> done(2 * m, 0);
  for (Dart start = 0; start < 2 * m; ++start) {
    if (!keep[dartEdge(start)] || done[start]) continue;
    std::vector<Dart> walk;
    Dart d = start;
    do {
      done[d] = 1;
      walk.push_back(d);
      d = next[dartReverse(d)];
    } while (d != start);
    walks.push_back(std::move(walk));
  }
  return walks;
}

// Biconnected blocks (edge sets) of the subgraph induced by one cluster.
// Self-loops form their own blocks.
std::vector<std::vector<EdgeId>> inducedBlocks(const Instance& inst, ClusterId cluster) {
  int n = inst.vertexCount();
  std::vector<char> inCluster(n, 0);
  for (VertexId v : inst.clusterVertices[cluster]) inCluster[v] = 1;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(n);
  std::vector<std::vector<EdgeId>> blocks;
  for (EdgeId e = 0; e < inst.edgeCount(); ++e) {
    auto [a, b] = inst.edges[e];
    if (!inCluster[a] || !inCluster[b]) continue;
    if (a == b) {
      blocks.push_back({e});
      continue;
    }
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeId> edgeStack;
  int timer = 0;
  std::function<void(VertexId, EdgeId)> dfs = [&](VertexId u, EdgeId viaEdge) {
    disc[u] = low[u] = timer++;
    for (auto [w, e] : adj[u]) {
      if (e == viaEdge) continue;
      if (disc[w] == -1) {
        edgeStack.push_back(e);
        dfs(w, e);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          std::vector<EdgeId> block;
          while (true) {
            EdgeId top = edgeStack.back();
            edgeStack.pop_back();
            block.push_back(top);
            if (top == e) break;
          }
          blocks.push_back(std::move(block));
        }
      } else if (disc[w] < disc[u]) {
        edgeStack.push_back(e);
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };
  for (VertexId v : inst.clusterVertices[cluster])
    if (disc[v] == -1) dfs(v, -1);
  return blocks;
}

}  // namespace

std::vector<char> admissibleOuterFaces(const Instance& inst, const FaceSet& faces) {
  int nf = static_cast<int>(faces.faces.size());
  std::vector<char> admissible(nf, 1);
  for (ClusterId c = 0; c < inst.clusterCount(); ++c) {
    std::set<std::vector<EdgeId>> cycles;
    for (auto& block : inducedBlocks(inst, c)) {
      if (block.size() == 1 && inst.edges[block[0]].first != inst.edges[block[0]].second)
        continue;  // bridge, no cycle
      std::vector<char> keep(inst.edgeCount(), 0);
      for (EdgeId e : block) keep[e] = 1;
      for (auto& walk : traceRestrictedFaces(inst, keep)) {
        std::vector<EdgeId> cyc;
        cyc.reserve(walk.size());
        for (Dart d : walk) cyc.push_back(dartEdge(d));
        std::sort(cyc.begin(), cyc.end());
        cycles.insert(std::move(cyc));
      }
    }
    for (const auto& cyc : cycles) {
      std::vector<char> side = faceSidesOfCycle(inst, faces, cyc);
      std::vector<char> onCycle(inst.vertexCount(), 0);
      for (EdgeId e : cyc) {
        onCycle[inst.edges[e].first] = 1;
        onCycle[inst.edges[e].second] = 1;
      }
      bool foreign[2] = {false, false};
      for (VertexId v = 0; v < inst.vertexCount(); ++v) {
        if (onCycle[v] || inst.clusterOf[v] == c) continue;
        foreign[static_cast<int>(side[faces.faceOfVertex(inst, v)])] = true;
      }
      for (FaceId f = 0; f < nf; ++f) {
        int enclosedSide = 1 - side[f];
        if (foreign[enclosedSide]) admissible[f] = 0;
      }
    }
  }
  return admissible;
}

std::vector<std::vector<EdgeId>> enumerateInducedCycles(const Instance& inst, ClusterId cluster) {
  int n = inst.vertexCount();
  std::vector<char> inCluster(n, 0);
  for (VertexId v : inst.clusterVertices[cluster]) inCluster[v] = 1;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(n);
  std::vector<std::vector<EdgeId>> out;
  for (EdgeId e = 0; e < inst.edgeCount(); ++e) {
    auto [a, b] = inst.edges[e];
    if (!inCluster[a] || !inCluster[b]) continue;
    if (a == b) {
      out.push_back({e});
      continue;
    }
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  std::vector<char> onPath(n, 0);
  std::vector<EdgeId> pathEdges;
  std::function<void(VertexId, VertexId)> extend = [&](VertexId s, VertexId u) {
    for (auto [w, e] : adj[u]) {
      if (std::find(pathEdges.begin(), pathEdges.end(), e) != pathEdges.end()) continue;
      if (w == s) {
        if (pathEdges.empty()) continue;
        if (pathEdges.front() < e) {
          auto cyc = pathEdges;
          cyc.push_back(e);
          std::sort(cyc.begin(), cyc.end());
          out.push_back(std::move(cyc));
        }
        continue;
      }
      if (w < s || onPath[w]) continue;
      onPath[w] = 1;
      pathEdges.push_back(e);
      extend(s, w);
      pathEdges.pop_back();
      onPath[w] = 0;
    }
  };
  for (VertexId s : inst.clusterVertices[cluster]) {
    onPath[s] = 1;
    extend(s, s);
    onPath[s] = 0;
  }
  return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& msg) {
  throw InstanceError(InstanceErrorKind::Malformed, msg);
}

}  // namespace

Instance parseInstance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("document must be a JSON object");
  for (const char* key : {"vertices", "edges", "rotations", "clusters"})
    if (!doc.contains(key)) malformed(std::string("missing field '") + key + "'");

  Instance inst;
  std::map<std::int64_t, VertexId> denseOf;
  if (!doc["vertices"].is_array()) malformed("'vertices' must be an array");
  for (const auto& v : doc["vertices"]) {
    if (!v.is_number_integer()) malformed("vertex ids must be integers");
    inst.vertexLabels.push_back(v.get<std::int64_t>());
  }
  std::sort(inst.vertexLabels.begin(), inst.vertexLabels.end());
  if (std::adjacent_find(inst.vertexLabels.begin(), inst.vertexLabels.end()) !=
      inst.vertexLabels.end())
    malformed("duplicate vertex id");
  for (VertexId i = 0; i < inst.vertexCount(); ++i) denseOf[inst.vertexLabels[i]] = i;

  auto lookupVertex = [&](const json& j) -> VertexId {
    if (!j.is_number_integer()) malformed("vertex reference must be an integer");
    auto it = denseOf.find(j.get<std::int64_t>());
    if (it == denseOf.end()) malformed("reference to unknown vertex " + j.dump());
    return it->second;
  };

  if (!doc["edges"].is_array()) malformed("'edges' must be an array");
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2) malformed("each edge must be a pair [u, v]");
    inst.edges.emplace_back(lookupVertex(e[0]), lookupVertex(e[1]));
  }

  inst.rotations.assign(inst.vertexCount(), {});
  if (!doc["rotations"].is_object()) malformed("'rotations' must be an object");
  for (auto it = doc["rotations"].begin(); it != doc["rotations"].end(); ++it) {
    std::int64_t label;
    try {
      label = std::stoll(it.key());
    } catch (...) {
      malformed("rotation key must be a vertex id: " + it.key());
    }
    auto dv = denseOf.find(label);
    if (dv == denseOf.end()) malformed("rotation for unknown vertex " + it.key());
    if (!it.value().is_array()) malformed("rotation must be an array of edge indices");
    for (const auto& e : it.value()) {
      if (!e.is_number_integer()) malformed("rotation entries must be edge indices");
      inst.rotations[dv->second].push_back(e.get<int>());
    }
  }

  if (!doc["clusters"].is_object()) malformed("'clusters' must be an object");
  for (auto it = doc["clusters"].begin(); it != doc["clusters"].end(); ++it)
    inst.clusterNames.push_back(it.key());
  std::sort(inst.clusterNames.begin(), inst.clusterNames.end());
  inst.clusterVertices.assign(inst.clusterCount(), {});
  inst.clusterOf.assign(inst.vertexCount(), -1);
  for (ClusterId c = 0; c < inst.clusterCount(); ++c) {
    for (const auto& v : doc["clusters"][inst.clusterNames[c]]) {
      VertexId dv = lookupVertex(v);
      if (inst.clusterOf[dv] != -1) malformed("vertex assigned to two clusters");
      inst.clusterOf[dv] = c;
      inst.clusterVertices[c].push_back(dv);
    }
    std::sort(inst.clusterVertices[c].begin(), inst.clusterVertices[c].end());
  }

  if (doc.contains("outer_face")) {
    if (!doc["outer_face"].is_array()) malformed("'outer_face' must be an array of vertex ids");
    std::vector<VertexId> hint;
    for (const auto& v : doc["outer_face"]) hint.push_back(lookupVertex(v));
    inst.outerFaceHint = std::move(hint);
  }

  inst.buildDarts();
  validateInstance(inst);
  return inst;
}

}  // namespace cplan
