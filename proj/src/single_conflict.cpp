#include "cplan/single_conflict.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cplan {

namespace {

constexpr signed char kUndecided = 0;
constexpr signed char kSelected = 1;
constexpr signed char kExcluded = -1;

struct SearchState {
  std::vector<signed char> status;  // by con-edge id
  std::vector<int> parent;          // union-find over A-vertices, selected edges contracted

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
};

struct Residue {
  const ConMultigraph* a = nullptr;
  std::vector<int> edges;                  // alive con-edges
  std::vector<int> partner;                // by edge id, -1 if conflict-free
  std::vector<std::vector<int>> clusters;  // cluster -> alive edges
  std::vector<std::vector<int>> clusterVerts;
  long nodes = 0;
  std::set<std::vector<int>> failed;

  bool setStatus(SearchState& st, int e, signed char v);

  bool select(SearchState& st, int e) {
    const ConEdge& ce = a->edges[e];
    int ra = st.find(ce.endA), rb = st.find(ce.endB);
    if (ra == rb) return false;  // would close a cycle in its cluster
    st.parent[std::max(ra, rb)] = std::min(ra, rb);
    if (partner[e] >= 0 && !setStatus(st, partner[e], kExcluded)) return false;
    return true;
  }

  bool propagate(SearchState& st);
  bool search(SearchState& st, std::vector<int>* out);
  std::vector<int> fingerprint(SearchState& st) const;
};

bool Residue::setStatus(SearchState& st, int e, signed char v) {
  if (st.status[e] == v) return true;
  if (st.status[e] != kUndecided) return false;
  st.status[e] = v;
  if (v == kSelected) return select(st, e);
  if (partner[e] >= 0 && st.status[partner[e]] == kUndecided)
    return setStatus(st, partner[e], kSelected);
  return true;
}

bool Residue::propagate(SearchState& st) {
  bool changed = true;
  while (changed) {
    changed = false;
    // Self-loops under the current contraction cannot be selected.
    for (int e : edges) {
      if (st.status[e] != kUndecided) continue;
      if (st.find(a->edges[e].endA) == st.find(a->edges[e].endB)) {
        if (!setStatus(st, e, kExcluded)) return false;
        changed = true;
      }
    }
    if (changed) continue;
    for (int c = 0; c < a->clusterCount; ++c) {
      if (clusterVerts[c].size() <= 1 && clusters[c].empty()) continue;
      // Remaining cluster graph on contraction classes.
      std::map<int, std::vector<std::pair<int, int>>> adj;
      std::set<int> classes;
      for (int v : clusterVerts[c]) classes.insert(st.find(v));
      std::vector<int> live;
      for (int e : clusters[c]) {
        if (st.status[e] == kExcluded) continue;
        if (st.status[e] == kSelected) continue;  // already contracted into classes
        int ra = st.find(a->edges[e].endA), rb = st.find(a->edges[e].endB);
        if (ra == rb) continue;
        adj[ra].push_back({rb, e});
        adj[rb].push_back({ra, e});
        live.push_back(e);
      }
      // Connectivity of the class graph.
      if (!classes.empty()) {
        std::set<int> seen{*classes.begin()};
        std::vector<int> stack{*classes.begin()};
        while (!stack.empty()) {
          int u = stack.back();
          stack.pop_back();
          for (auto [w, e] : adj[u])
            if (seen.insert(w).second) stack.push_back(w);
        }
        for (int cls : classes)
          if (!seen.count(cls)) return false;
      }
      // Bridges of the class graph are forced selections.
      std::map<int, int> disc, low;
      int timer = 0;
      std::vector<int> forced;
      std::function<void(int, int)> dfs = [&](int u, int viaEdge) {
        disc[u] = low[u] = timer++;
        for (auto [w, e] : adj[u]) {
          if (e == viaEdge) continue;
          if (!disc.count(w)) {
            dfs(w, e);
            low[u] = std::min(low[u], low[w]);
            if (low[w] > disc[u]) forced.push_back(e);
          } else {
            low[u] = std::min(low[u], disc[w]);
          }
        }
      };
      for (int cls : classes)
        if (!disc.count(cls)) dfs(cls, -1);
      for (int e : forced) {
        if (st.status[e] != kUndecided) continue;
        if (!setStatus(st, e, kSelected)) return false;
        changed = true;
      }
      if (changed) break;
    }
  }
  return true;
}

std::vector<int> Residue::fingerprint(SearchState& st) const {
  std::vector<int> fp;
  for (int e : edges)
    if (st.status[e] == kUndecided) fp.push_back(e);
  fp.push_back(-1);
  for (int v = 0; v < static_cast<int>(a->avertices.size()); ++v)
    if (a->avAlive[v]) fp.push_back(st.find(v));
  return fp;
}

bool Residue::search(SearchState& st, std::vector<int>* out) {
  ++nodes;
  if (!propagate(st)) return false;
  int pick = -1;
  for (int e : edges)
    if (st.status[e] == kUndecided) {
      pick = e;
      break;
    }
  if (pick < 0) {
    if (out) {
      for (int e : edges)
        if (st.status[e] == kSelected) out->push_back(e);
    }
    return true;
  }
  auto fp = fingerprint(st);
  if (failed.count(fp)) return false;
  for (signed char choice : {kSelected, kExcluded}) {
    SearchState branch = st;
    if (setStatus(branch, pick, choice) && search(branch, out)) {
      st = branch;
      return true;
    }
  }
  failed.insert(std::move(fp));
  return false;
}

}  // namespace

ResidueOutcome solveSingleConflict(const ConMultigraph& A) {
  Residue res;
  res.a = &A;
  res.partner.assign(A.edges.size(), -1);
  res.clusters.assign(A.clusterCount, {});
  res.clusterVerts.assign(A.clusterCount, {});
  for (const ConEdge& e : A.edges) {
    if (!A.alive[e.id]) continue;
    res.edges.push_back(e.id);
    res.clusters[e.cluster].push_back(e.id);
    auto conf = A.aliveConflicts(e.id);
    if (conf.size() > 1)
      throw std::logic_error("single-conflict solver fed a multi-crossed con-edge");
    if (!conf.empty()) res.partner[e.id] = conf[0];
  }
  for (int v = 0; v < static_cast<int>(A.avertices.size()); ++v)
    if (A.avAlive[v]) res.clusterVerts[A.avertices[v].cluster].push_back(v);

  SearchState st;
  st.status.assign(A.edges.size(), kUndecided);
  st.parent.resize(A.avertices.size());
  std::iota(st.parent.begin(), st.parent.end(), 0);

  ResidueOutcome out;
  std::vector<int> chosen;
  if (res.search(st, &chosen)) {
    out.accepted = true;
    std::sort(chosen.begin(), chosen.end());
    out.selected = std::move(chosen);
  } else {
    out.accepted = false;
    out.reason = "no planar selection of the paired residue";
    out.evidence = res.edges;
  }
  out.exploredNodes = res.nodes;
  return out;
}

}  // namespace cplan
