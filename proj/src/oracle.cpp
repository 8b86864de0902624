#include "cplan/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

namespace cplan {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// All spanning trees of one cluster's multigraph, as edge-id sets.
void enumerateTrees(const ConMultigraph& A, const std::vector<int>& verts,
                    const std::vector<int>& edges, size_t idx, Dsu dsu, int joined,
                    std::vector<int>& chosen, std::vector<std::vector<int>>& out) {
  int need = static_cast<int>(verts.size()) - 1;
  if (joined == need) {
    out.push_back(chosen);
    return;
  }
  if (idx >= edges.size()) return;
  if (static_cast<int>(edges.size() - idx) < need - joined) return;
  int e = edges[idx];
  int ra = dsu.find(A.edges[e].endA), rb = dsu.find(A.edges[e].endB);
  if (ra != rb) {
    Dsu next = dsu;
    next.unite(ra, rb);
    chosen.push_back(e);
    enumerateTrees(A, verts, edges, idx + 1, next, joined + 1, chosen, out);
    chosen.pop_back();
  }
  // Skipping e: the rest must still be able to connect everything.
  Dsu rest = dsu;
  int possible = joined;
  for (size_t i = idx + 1; i < edges.size(); ++i)
    if (rest.unite(A.edges[edges[i]].endA, A.edges[edges[i]].endB)) ++possible;
  if (possible == need) enumerateTrees(A, verts, edges, idx + 1, dsu, joined, chosen, out);
}

struct OracleSearch {
  const ConMultigraph* a = nullptr;
  std::vector<int> liveIndex;                          // edge id -> bit position
  std::vector<std::uint64_t> conflictMask;             // by edge id
  std::vector<std::vector<std::vector<int>>> trees;    // per cluster (reordered)
  std::vector<std::vector<std::uint64_t>> treeMember;  // bitmasks per tree
  std::vector<std::vector<std::uint64_t>> treeConflict;

  bool dfs(size_t c, std::uint64_t chosenMask, std::vector<int>& acc,
           const std::function<bool(const std::vector<int>&)>& visit, bool& stopped) {
    if (c == trees.size()) {
      if (!visit(acc)) stopped = true;
      return true;
    }
    bool any = false;
    for (size_t t = 0; t < trees[c].size(); ++t) {
      if (treeConflict[c][t] & chosenMask) continue;
      size_t before = acc.size();
      acc.insert(acc.end(), trees[c][t].begin(), trees[c][t].end());
      any |= dfs(c + 1, chosenMask | treeMember[c][t], acc, visit, stopped);
      acc.resize(before);
      if (stopped) return any;
    }
    return any;
  }
};

void runOracle(const ConMultigraph& A, int edgeBound,
               const std::function<bool(const std::vector<int>&)>& visit) {
  int live = A.aliveEdgeCount();
  if (live > edgeBound || live > 62)
    throw OracleBoundExceeded("oracle bound exceeded: " + std::to_string(live) + " con-edges");

  OracleSearch s;
  s.a = &A;
  s.liveIndex.assign(A.edges.size(), -1);
  int bit = 0;
  for (const ConEdge& e : A.edges)
    if (A.alive[e.id]) s.liveIndex[e.id] = bit++;
  s.conflictMask.assign(A.edges.size(), 0);
  for (const ConEdge& e : A.edges) {
    if (!A.alive[e.id]) continue;
    for (int g : A.aliveConflicts(e.id)) s.conflictMask[e.id] |= 1ull << s.liveIndex[g];
  }

  std::vector<std::vector<std::vector<int>>> perCluster;
  for (ClusterId c = 0; c < A.clusterCount; ++c) {
    auto verts = A.clusterAVertices(c);
    auto edges = A.clusterEdges(c);
    std::vector<std::vector<int>> treesHere;
    if (verts.size() <= 1) {
      treesHere.push_back({});
    } else {
      Dsu dsu(static_cast<int>(A.avertices.size()));
      // Work over cluster vertices only; seed nothing else.
      std::vector<int> chosen;
      // Pre-check connectivity to fail fast.
      Dsu probe = dsu;
      int joined = 0;
      for (int e : edges)
        if (probe.unite(A.edges[e].endA, A.edges[e].endB)) ++joined;
      if (joined < static_cast<int>(verts.size()) - 1) {
        perCluster.clear();
        // Disconnected cluster: no trees, no solutions.
        return;
      }
      enumerateTrees(A, verts, edges, 0, dsu, 0, chosen, treesHere);
      // Drop trees with internal conflicts (possible before the reduction).
      std::vector<std::vector<int>> filtered;
      for (auto& t : treesHere) {
        bool ok = true;
        for (size_t i = 0; i < t.size() && ok; ++i)
          for (size_t j = i + 1; j < t.size() && ok; ++j)
            if (A.conflicts(t[i], t[j])) ok = false;
        if (ok) filtered.push_back(t);
      }
      treesHere = std::move(filtered);
      if (treesHere.empty()) return;
    }
    perCluster.push_back(std::move(treesHere));
  }

  // Small candidate lists first.
  std::vector<size_t> order(perCluster.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t x, size_t y) { return perCluster[x].size() < perCluster[y].size(); });
  for (size_t c : order) s.trees.push_back(std::move(perCluster[c]));

  s.treeMember.resize(s.trees.size());
  s.treeConflict.resize(s.trees.size());
  for (size_t c = 0; c < s.trees.size(); ++c)
    for (auto& t : s.trees[c]) {
      std::uint64_t mem = 0, conf = 0;
      for (int e : t) {
        mem |= 1ull << s.liveIndex[e];
        conf |= s.conflictMask[e];
      }
      s.treeMember[c].push_back(mem);
      s.treeConflict[c].push_back(conf);
    }

  std::vector<int> acc;
  bool stopped = false;
  s.dfs(0, 0, acc, visit, stopped);
}

}  // namespace

OracleResult oraclePssttm(const ConMultigraph& A, int edgeBound) {
  OracleResult r;
  runOracle(A, edgeBound, [&](const std::vector<int>& sel) {
    r.accepted = true;
    r.selected = sel;
    std::sort(r.selected.begin(), r.selected.end());
    return false;  // first witness suffices
  });
  return r;
}

void forEachPlanarSpanningSet(const ConMultigraph& A, int edgeBound,
                              const std::function<bool(const std::vector<int>&)>& visit) {
  runOracle(A, edgeBound, [&](const std::vector<int>& sel) {
    std::vector<int> sorted = sel;
    std::sort(sorted.begin(), sorted.end());
    return visit(sorted);
  });
}

std::vector<std::string> verifySolution(const ConMultigraph& A, const std::vector<int>& S) {
  std::vector<std::string> problems;
  std::set<int> chosen(S.begin(), S.end());
  for (int e : S) {
    if (e < 0 || e >= static_cast<int>(A.edges.size()) || !A.alive[e]) {
      problems.push_back("selected con-edge " + std::to_string(e) + " is not in A");
      return problems;
    }
  }
  for (ClusterId c = 0; c < A.clusterCount; ++c) {
    Dsu dsu(static_cast<int>(A.avertices.size()));
    for (int e : S) {
      if (A.edges[e].cluster != c) continue;
      if (!dsu.unite(A.edges[e].endA, A.edges[e].endB))
        problems.push_back("cluster " + std::to_string(c) + ": selected con-edges close a cycle");
    }
    auto verts = A.clusterAVertices(c);
    for (size_t i = 1; i < verts.size(); ++i)
      if (dsu.find(verts[i]) != dsu.find(verts[0])) {
        problems.push_back("cluster " + std::to_string(c) + " is not spanned");
        break;
      }
  }
  for (int e : S)
    for (int g : A.conflictAdj[e])
      if (g > e && chosen.count(g))
        problems.push_back("selected con-edges " + std::to_string(e) + " and " +
                           std::to_string(g) + " cross");
  return problems;
}

std::vector<char> oracleEnclosure(const Instance& inst, const FaceSet& faces, int vertexBound) {
  if (inst.vertexCount() > vertexBound)
    throw OracleBoundExceeded("enclosure oracle bound exceeded");
  int nf = static_cast<int>(faces.faces.size());
  std::vector<char> admissible(nf, 1);
  for (ClusterId c = 0; c < inst.clusterCount(); ++c) {
    for (const auto& cyc : enumerateInducedCycles(inst, c)) {
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
      for (FaceId f = 0; f < nf; ++f)
        if (foreign[1 - side[f]]) admissible[f] = 0;
    }
  }
  return admissible;
}

}  // namespace cplan
