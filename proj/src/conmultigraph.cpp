#include "cplan/conmultigraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cplan {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;  // smaller id wins, keeps numbering canonical
    return true;
  }
};

}  // namespace

int ConMultigraph::aliveEdgeCount() const {
  return static_cast<int>(std::count(alive.begin(), alive.end(), 1));
}

bool ConMultigraph::conflicts(int e, int g) const {
  const auto& adj = conflictAdj[e];
  return std::find(adj.begin(), adj.end(), g) != adj.end();
}

std::vector<int> ConMultigraph::aliveConflicts(int e) const {
  std::vector<int> out;
  for (int g : conflictAdj[e])
    if (alive[g]) out.push_back(g);
  return out;
}

std::vector<int> ConMultigraph::clusterAVertices(ClusterId c) const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(avertices.size()); ++v)
    if (avAlive[v] && avertices[v].cluster == c) out.push_back(v);
  return out;
}

std::vector<int> ConMultigraph::clusterEdges(ClusterId c) const {
  std::vector<int> out;
  for (const ConEdge& e : edges)
    if (alive[e.id] && e.cluster == c) out.push_back(e.id);
  return out;
}

bool ConMultigraph::insideArc(int face, int from, int to, int p) const {
  int len = faceLength[face];
  int a = ((p - from) % len + len) % len;
  int b = ((to - from) % len + len) % len;
  return a > 0 && a < b;
}

void ConMultigraph::removeEdge(int e) {
  if (!alive[e]) throw std::logic_error("removing a dead con-edge");
  alive[e] = 0;
  for (int side = 0; side < 2; ++side) {
    int v = side == 0 ? edges[e].endA : edges[e].endB;
    auto& rot = rotation[v];
    rot.erase(std::remove(rot.begin(), rot.end(), aDart(e, side)), rot.end());
  }
}

void ConMultigraph::contractEdge(int e) {
  if (!alive[e]) throw std::logic_error("contracting a dead con-edge");
  if (!aliveConflicts(e).empty())
    throw std::logic_error("contracting a con-edge that still crosses others");
  int a = edges[e].endA, b = edges[e].endB;
  if (a == b) throw std::logic_error("contracting a self-loop");
  int keep = std::min(a, b), gone = std::max(a, b);
  int dKeep = edges[e].endA == keep ? aDart(e, 0) : aDart(e, 1);
  int dGone = aDartReverse(dKeep);
  auto& rk = rotation[keep];
  auto& rg = rotation[gone];
  auto ik = std::find(rk.begin(), rk.end(), dKeep);
  auto ig = std::find(rg.begin(), rg.end(), dGone);
  if (ik == rk.end() || ig == rg.end())
    throw std::logic_error("contraction: dart missing from rotation");
  std::vector<int> merged;
  merged.reserve(rk.size() + rg.size() - 2);
  merged.insert(merged.end(), rk.begin(), ik);
  merged.insert(merged.end(), ig + 1, rg.end());
  merged.insert(merged.end(), rg.begin(), ig);
  merged.insert(merged.end(), ik + 1, rk.end());
  rotation[keep] = std::move(merged);
  rotation[gone].clear();
  avAlive[gone] = 0;
  alive[e] = 0;
  for (ConEdge& g : edges) {
    if (g.endA == gone) g.endA = keep;
    if (g.endB == gone) g.endB = keep;
  }
}

bool occurrencesAlternate(int a1, int b1, int a2, int b2) {
  if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) return false;
  auto inside = [&](int x) { return a1 < x && x < b1; };
  return inside(a2) != inside(b2);
}

std::vector<ConEdge> generateConEdges(const Instance& inst, const FaceSet& faces) {
  // Components of each induced subgraph.
  Dsu dsu(inst.vertexCount());
  for (EdgeId e = 0; e < inst.edgeCount(); ++e) {
    auto [a, b] = inst.edges[e];
    if (inst.clusterOf[a] == inst.clusterOf[b]) dsu.unite(a, b);
  }
  std::vector<ConEdge> out;
  for (const Face& f : faces.faces) {
    std::map<ClusterId, std::map<VertexId, std::vector<int>>> occs;
    for (int p = 0; p < static_cast<int>(f.boundary.size()); ++p) {
      VertexId v = f.boundary[p].vertex;
      occs[inst.clusterOf[v]][v].push_back(p);
    }
    for (auto& [c, byVertex] : occs) {
      for (auto itU = byVertex.begin(); itU != byVertex.end(); ++itU)
        for (auto itV = std::next(itU); itV != byVertex.end(); ++itV) {
          if (dsu.find(itU->first) == dsu.find(itV->first)) continue;
          for (int pu : itU->second)
            for (int pv : itV->second) {
              ConEdge ce;
              ce.cluster = c;
              ce.face = f.id;
              ce.occA = std::min(pu, pv);
              ce.occB = std::max(pu, pv);
              ce.vertexA = f.boundary[ce.occA].vertex;
              ce.vertexB = f.boundary[ce.occB].vertex;
              out.push_back(ce);
            }
        }
    }
  }
  std::sort(out.begin(), out.end(), [](const ConEdge& x, const ConEdge& y) {
    return std::tie(x.face, x.occA, x.occB) < std::tie(y.face, y.occA, y.occB);
  });
  for (int i = 0; i < static_cast<int>(out.size()); ++i) out[i].id = i;
  return out;
}

void computeConflicts(ConMultigraph& A) {
  A.conflictAdj.assign(A.edges.size(), {});
  std::map<FaceId, std::vector<int>> byFace;
  for (const ConEdge& e : A.edges) byFace[e.face].push_back(e.id);
  for (auto& [f, ids] : byFace)
    for (size_t i = 0; i < ids.size(); ++i)
      for (size_t j = i + 1; j < ids.size(); ++j) {
        const ConEdge& x = A.edges[ids[i]];
        const ConEdge& y = A.edges[ids[j]];
        if (occurrencesAlternate(x.occA, x.occB, y.occA, y.occB)) {
          A.conflictAdj[x.id].push_back(y.id);
          A.conflictAdj[y.id].push_back(x.id);
        }
      }
  for (auto& adj : A.conflictAdj) std::sort(adj.begin(), adj.end());
}

ConMultigraph buildConMultigraph(const Instance& inst, const FaceSet& faces) {
  ConMultigraph A;
  A.clusterCount = inst.clusterCount();
  Dsu dsu(inst.vertexCount());
  for (EdgeId e = 0; e < inst.edgeCount(); ++e) {
    auto [a, b] = inst.edges[e];
    if (inst.clusterOf[a] == inst.clusterOf[b]) dsu.unite(a, b);
  }
  std::vector<int> avOf(inst.vertexCount(), -1);
  for (ClusterId c = 0; c < inst.clusterCount(); ++c) {
    std::vector<VertexId> reps;
    for (VertexId v : inst.clusterVertices[c])
      if (dsu.find(v) == v) reps.push_back(v);
    for (VertexId r : reps) {
      int id = static_cast<int>(A.avertices.size());
      A.avertices.push_back(AVertexInfo{c, r});
      avOf[r] = id;
    }
  }
  for (VertexId v = 0; v < inst.vertexCount(); ++v) avOf[v] = avOf[dsu.find(v)];

  A.edges = generateConEdges(inst, faces);
  for (ConEdge& e : A.edges) {
    e.endA = avOf[e.vertexA];
    e.endB = avOf[e.vertexB];
  }
  A.alive.assign(A.edges.size(), 1);
  A.avAlive.assign(A.avertices.size(), 1);
  A.faceLength.resize(faces.faces.size());
  for (const Face& f : faces.faces) A.faceLength[f.id] = static_cast<int>(f.walk.size());
  computeConflicts(A);
  A.rotation.assign(A.avertices.size(), {});
  return A;
}

void embedRotations(ConMultigraph& A, const Instance& inst, const FaceSet& faces) {
  // Ends attached to each occurrence slot, fanned by decreasing walk distance
  // so that a contour sweep in rotation direction lists them consistently.
  std::map<std::pair<FaceId, int>, std::vector<int>> slotEnds;
  for (const ConEdge& e : A.edges) {
    if (!A.alive[e.id]) continue;
    slotEnds[{e.face, e.occA}].push_back(aDart(e.id, 0));
    slotEnds[{e.face, e.occB}].push_back(aDart(e.id, 1));
  }
  for (auto& [slot, ends] : slotEnds) {
    int len = A.faceLength[slot.first];
    int self = slot.second;
    std::sort(ends.begin(), ends.end(), [&](int d1, int d2) {
      const ConEdge& e1 = A.edges[aDartEdge(d1)];
      const ConEdge& e2 = A.edges[aDartEdge(d2)];
      int o1 = (d1 & 1) ? e1.occA : e1.occB;
      int o2 = (d2 & 1) ? e2.occA : e2.occB;
      int k1 = ((o1 - self) % len + len) % len;
      int k2 = ((o2 - self) % len + len) % len;
      if (k1 != k2) return k1 > k2;
      return d1 < d2;
    });
  }

  // Group vertices by A-vertex.
  Dsu dsu(inst.vertexCount());
  for (EdgeId e = 0; e < inst.edgeCount(); ++e) {
    auto [a, b] = inst.edges[e];
    if (inst.clusterOf[a] == inst.clusterOf[b]) dsu.unite(a, b);
  }
  std::map<VertexId, int> avByRep;
  for (int id = 0; id < static_cast<int>(A.avertices.size()); ++id)
    avByRep[A.avertices[id].representative] = id;

  std::vector<std::vector<VertexId>> members(A.avertices.size());
  for (VertexId v = 0; v < inst.vertexCount(); ++v) {
    auto it = avByRep.find(dsu.find(v));
    if (it != avByRep.end()) members[it->second].push_back(v);
  }

  std::vector<char> internalEdge(inst.edgeCount(), 0);
  for (EdgeId e = 0; e < inst.edgeCount(); ++e) {
    auto [a, b] = inst.edges[e];
    if (inst.clusterOf[a] == inst.clusterOf[b]) internalEdge[e] = 1;
  }

  A.rotation.assign(A.avertices.size(), {});
  for (int av = 0; av < static_cast<int>(A.avertices.size()); ++av) {
    std::vector<std::pair<FaceId, int>> contour;
    auto emitCornersFrom = [&](VertexId w, Dart g) {
      // Corners of w from dart g onward, up to (not including) the next
      // internal dart. Corner of dart k sits between k and its successor.
      Dart k = g;
      while (true) {
        contour.push_back({faces.cornerFace[k], faces.cornerPos[k]});
        k = [&] {
          const auto& r = inst.rotationDarts[w];
          auto it = std::find(r.begin(), r.end(), k);
          ++it;
          return it == r.end() ? r.front() : *it;
        }();
        if (internalEdge[dartEdge(k)]) break;
      }
    };
    if (members[av].size() == 1) {
      VertexId w = members[av][0];
      for (Dart g : inst.rotationDarts[w])
        contour.push_back({faces.cornerFace[g], faces.cornerPos[g]});
    } else {
      // Contours of the component: face walks of the component's own edges.
      std::set<Dart> internalDarts;
      for (VertexId w : members[av])
        for (Dart d : inst.rotationDarts[w])
          if (internalEdge[dartEdge(d)]) internalDarts.insert(d);
      std::vector<Dart> restrictedNext(2 * inst.edgeCount(), -1);
      for (VertexId w : members[av]) {
        std::vector<Dart> local;
        for (Dart d : inst.rotationDarts[w])
          if (internalDarts.count(d)) local.push_back(d);
        for (size_t i = 0; i < local.size(); ++i)
          restrictedNext[local[i]] = local[(i + 1) % local.size()];
      }
      std::set<Dart> doneDarts;
      for (Dart start : internalDarts) {
        if (doneDarts.count(start)) continue;
        Dart d = start;
        do {
          doneDarts.insert(d);
          VertexId w = inst.dartHead(d);
          emitCornersFrom(w, dartReverse(d));
          d = restrictedNext[dartReverse(d)];
        } while (d != start);
      }
    }
    std::vector<int> ends;
    for (auto slot : contour) {
      auto it = slotEnds.find(slot);
      if (it == slotEnds.end()) continue;
      for (int d : it->second) {
        int tail = A.tailOf(d);
        if (tail == av) ends.push_back(d);
      }
    }
    A.rotation[av] = std::move(ends);
  }
}

// --- Property 1 reduction ----------------------------------------------------

namespace {

std::vector<int> foreignConflictSet(const ConMultigraph& A, int e) {
  std::vector<int> out;
  for (int g : A.conflictAdj[e])
    if (A.alive[g] && A.edges[g].cluster != A.edges[e].cluster) out.push_back(g);
  return out;
}

// One dominance/merge sweep. A parallel con-edge whose foreign conflict set
// contains another parallel's set can be dropped: the smaller-set twin works
// in its place in any planar set of spanning trees.
bool dominancePass(ConMultigraph& A) {
  std::map<std::tuple<ClusterId, int, int>, std::vector<int>> groups;
  for (const ConEdge& e : A.edges) {
    if (!A.alive[e.id]) continue;
    groups[{e.cluster, std::min(e.endA, e.endB), std::max(e.endA, e.endB)}].push_back(e.id);
  }
  std::vector<int> toRemove;
  for (auto& [key, ids] : groups) {
    if (ids.size() < 2) continue;
    std::vector<std::vector<int>> sets(ids.size());
    for (size_t i = 0; i < ids.size(); ++i) sets[i] = foreignConflictSet(A, ids[i]);
    for (size_t j = 0; j < ids.size(); ++j) {
      for (size_t i = 0; i < ids.size(); ++i) {
        if (i == j) continue;
        bool subset = std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end());
        if (!subset) continue;
        if (sets[i].size() < sets[j].size() || ids[i] < ids[j]) {
          toRemove.push_back(ids[j]);
          break;
        }
      }
    }
  }
  for (int e : toRemove) A.removeEdge(e);
  return !toRemove.empty();
}

// Separating-family removal: if every live tau-con-edge parallel to the ones
// crossing e does cross e, and dropping that parallel class disconnects the
// two components it joins inside A[tau], then some crosser of e is in every
// planar set of spanning trees, so e is in none.
bool cutPass(ConMultigraph& A) {
  for (const ConEdge& e : A.edges) {
    if (!A.alive[e.id]) continue;
    std::map<ClusterId, std::vector<int>> byCluster;
    for (int g : A.aliveConflicts(e.id))
      if (A.edges[g].cluster != e.cluster) byCluster[A.edges[g].cluster].push_back(g);
    for (auto& [tau, crossers] : byCluster) {
      int x = std::min(A.edges[crossers[0]].endA, A.edges[crossers[0]].endB);
      int y = std::max(A.edges[crossers[0]].endA, A.edges[crossers[0]].endB);
      bool sameEnds = true;
      std::vector<int> parallelClass;
      for (int g : A.clusterEdges(tau)) {
        int a = std::min(A.edges[g].endA, A.edges[g].endB);
        int b = std::max(A.edges[g].endA, A.edges[g].endB);
        if (a == x && b == y) parallelClass.push_back(g);
      }
      for (int g : crossers) {
        int a = std::min(A.edges[g].endA, A.edges[g].endB);
        int b = std::max(A.edges[g].endA, A.edges[g].endB);
        if (a != x || b != y) sameEnds = false;
      }
      if (!sameEnds) continue;  // needs the two-per-face precondition
      if (parallelClass.size() != crossers.size()) continue;  // some parallel twin avoids e
      // Connectivity of A[tau] without the parallel class.
      Dsu dsu(static_cast<int>(A.avertices.size()));
      for (int g : A.clusterEdges(tau)) {
        int a = std::min(A.edges[g].endA, A.edges[g].endB);
        int b = std::max(A.edges[g].endA, A.edges[g].endB);
        if (a == x && b == y) continue;
        dsu.unite(A.edges[g].endA, A.edges[g].endB);
      }
      if (dsu.find(x) != dsu.find(y)) {
        A.removeEdge(e.id);
        return true;
      }
    }
  }
  return false;
}

}  // namespace

int reduceProperty1(ConMultigraph& A) {
  int before = A.aliveEdgeCount();
  bool changed = true;
  while (changed) {
    changed = false;
    if (dominancePass(A)) changed = true;
    if (cutPass(A)) changed = true;
  }
  return before - A.aliveEdgeCount();
}

bool property1Holds(const ConMultigraph& A) {
  int n = static_cast<int>(A.edges.size());
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int s = 0; s < n; ++s) {
    if (!A.alive[s] || comp[s] != -1) continue;
    std::vector<int> stack{s};
    comp[s] = nc;
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      for (int g : A.conflictAdj[e])
        if (A.alive[g] && comp[g] == -1) {
          comp[g] = nc;
          stack.push_back(g);
        }
    }
    ++nc;
  }
  std::set<std::pair<int, ClusterId>> seen;
  for (int e = 0; e < n; ++e) {
    if (!A.alive[e]) continue;
    if (!seen.insert({comp[e], A.edges[e].cluster}).second) return false;
  }
  return true;
}

// --- embedding queries ---------------------------------------------------------

const FacialCycle* AlphaEmbedding::otherCycleThrough(int edge, int notCycleId) const {
  for (int id : cyclesOfEdge[edge])
    if (id != notCycleId) return &cycles[id];
  return nullptr;
}

AlphaEmbedding computeAlphaEmbedding(const ConMultigraph& A, ClusterId cluster) {
  AlphaEmbedding em;
  em.cluster = cluster;
  int m = static_cast<int>(A.edges.size());
  em.dartFaceA.assign(2 * m, -1);
  em.cyclesOfEdge.assign(m, {});

  // Successor of a dart's reverse in the rotation at its head.
  auto nextDart = [&](int d) {
    int r = aDartReverse(d);
    const auto& rot = A.rotation[A.tailOf(r)];
    auto it = std::find(rot.begin(), rot.end(), r);
    if (it == rot.end()) throw std::logic_error("A-dart missing from rotation");
    ++it;
    return it == rot.end() ? rot.front() : *it;
  };

  for (int start = 0; start < 2 * m; ++start) {
    int e = aDartEdge(start);
    if (!A.alive[e] || A.edges[e].cluster != cluster) continue;
    if (em.dartFaceA[start] != -1) continue;
    int faceIdx = static_cast<int>(em.faceWalks.size());
    std::vector<int> walk;
    int d = start;
    do {
      em.dartFaceA[d] = faceIdx;
      walk.push_back(d);
      d = nextDart(d);
    } while (d != start);

    // Peel simple cycles off the boundary walk; bridge retractions vanish.
    std::vector<int> stack;
    std::map<int, std::vector<int>> openAt;  // A-vertex -> stack positions with that tail
    for (int wd : walk) {
      stack.push_back(wd);
      openAt[A.tailOf(wd)].push_back(static_cast<int>(stack.size()) - 1);
      int head = A.headOf(wd);
      auto it = openAt.find(head);
      if (it == openAt.end() || it->second.empty()) continue;
      int j = it->second.back();
      std::vector<int> sub(stack.begin() + j, stack.end());
      for (int p = static_cast<int>(stack.size()) - 1; p >= j; --p) {
        openAt[A.tailOf(stack[p])].pop_back();
      }
      stack.resize(j);
      if (sub.size() == 2 && aDartEdge(sub[0]) == aDartEdge(sub[1])) continue;  // bridge
      FacialCycle cyc;
      cyc.id = static_cast<int>(em.cycles.size());
      cyc.aface = faceIdx;
      cyc.darts = sub;
      for (int sd : sub) {
        cyc.edgeIds.push_back(aDartEdge(sd));
        em.cyclesOfEdge[aDartEdge(sd)].push_back(cyc.id);
      }
      em.cycles.push_back(std::move(cyc));
    }
    if (!stack.empty()) throw std::logic_error("face walk did not close into cycles");
    em.faceWalks.push_back(std::move(walk));
  }
  return em;
}

std::vector<int> crossingOrderAlong(const ConMultigraph& A, int dartOfE) {
  int e = aDartEdge(dartOfE);
  const ConEdge& ce = A.edges[e];
  int s = (dartOfE & 1) ? ce.occB : ce.occA;
  int t = (dartOfE & 1) ? ce.occA : ce.occB;
  int len = A.faceLength[ce.face];
  struct Key {
    int in, out, id;
  };
  std::vector<Key> keys;
  for (int g : A.aliveConflicts(e)) {
    const ConEdge& cg = A.edges[g];
    bool aIn = A.insideArc(ce.face, s, t, cg.occA);
    int in = aIn ? cg.occA : cg.occB;
    int out = aIn ? cg.occB : cg.occA;
    keys.push_back({((in - s) % len + len) % len, ((out - s) % len + len) % len, g});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.in != b.in) return a.in < b.in;
    if (a.out != b.out) return a.out > b.out;
    return a.id < b.id;
  });
  std::vector<int> out;
  for (const Key& k : keys) out.push_back(k.id);
  return out;
}

int sideDartOf(const ConMultigraph& A, int e, int g) {
  const ConEdge& ce = A.edges[e];
  const ConEdge& cg = A.edges[g];
  if (ce.face != cg.face) throw std::logic_error("side query across faces");
  if (A.conflicts(e, g)) throw std::logic_error("side query for a crossing con-edge");
  bool aIn = A.insideArc(ce.face, ce.occA, ce.occB, cg.occA);
  bool bIn = A.insideArc(ce.face, ce.occA, ce.occB, cg.occB);
  if (aIn != bIn) throw std::logic_error("side query: endpoints straddle the chord");
  // Host-face trace keeps the face to the left of its walk, so the arc from
  // occA to occB in walk order is the side seen from the dart led by occB.
  return aIn ? aDart(e, 1) : aDart(e, 0);
}

std::string conflictGraphDot(const ConMultigraph& A) {
  static const char* palette[] = {"lightblue", "salmon",  "palegreen", "gold",
                                  "plum",      "khaki",   "lightgray", "orange",
                                  "cyan",      "magenta", "beige",     "turquoise"};
  std::ostringstream os;
  os << "graph conflicts {\n  node [style=filled];\n";
  for (const ConEdge& e : A.edges) {
    if (!A.alive[e.id]) continue;
    os << "  e" << e.id << " [label=\"e" << e.id << "/c" << e.cluster << "\" fillcolor="
       << palette[e.cluster % 12] << "];\n";
  }
  for (const ConEdge& e : A.edges) {
    if (!A.alive[e.id]) continue;
    for (int g : A.conflictAdj[e.id])
      if (A.alive[g] && g > e.id) os << "  e" << e.id << " -- e" << g << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cplan
