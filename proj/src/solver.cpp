#include "cplan/solver.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "cplan/single_conflict.hpp"

namespace cplan {

namespace {

std::vector<ClusterId> crossingClusters(const ConMultigraph& A, int e) {
  std::vector<ClusterId> out;
  for (int g : A.aliveConflicts(e)) out.push_back(A.edges[g].cluster);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int dartInCycle(const FacialCycle& c, int edge) {
  for (int d : c.darts)
    if (aDartEdge(d) == edge) return d;
  return -1;
}

// Crossing clusters of edge e in order along the cycle direction.
std::vector<ClusterId> clusterOrderAlong(const ConMultigraph& A, const FacialCycle& c, int edge) {
  std::vector<ClusterId> out;
  for (int g : crossingOrderAlong(A, dartInCycle(c, edge))) out.push_back(A.edges[g].cluster);
  return out;
}

struct DsuLocal {
  std::vector<int> p;
  explicit DsuLocal(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::vector<int> ConflictingStructure::hSide() const {
  std::vector<int> out;
  for (auto& [e, d] : depth)
    if (d % 2 == 0) out.push_back(e);
  return out;
}

std::vector<int> ConflictingStructure::lSide() const {
  std::vector<int> out;
  for (auto& [e, d] : depth)
    if (d % 2 == 1) out.push_back(e);
  return out;
}

ConflictingStructure conflictingStructure(const ConMultigraph& A, int e) {
  ConflictingStructure st;
  st.root = e;
  st.depth[e] = 0;
  std::vector<int> frontier{e};
  int dist = 0;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u : frontier)
      for (int g : A.aliveConflicts(u))
        if (!st.depth.count(g)) {
          st.depth[g] = dist + 1;
          next.push_back(g);
        }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
    ++dist;
  }
  int maxDepth = 0;
  for (auto& [g, d] : st.depth) maxDepth = std::max(maxDepth, d);
  st.H.assign(maxDepth / 2 + 1, {});
  st.L.assign((maxDepth + 1) / 2 + 1, {});
  for (auto& [g, d] : st.depth) {
    if (d % 2 == 0)
      st.H[d / 2].push_back(g);
    else
      st.L[(d + 1) / 2].push_back(g);
  }
  return st;
}

bool structuresIsomorphic(const ConMultigraph& A, const ConflictingStructure& a,
                          const ConflictingStructure& b) {
  if (a.depth.size() != b.depth.size()) return false;
  // Property 1 forces the mapping: match by cluster.
  std::map<ClusterId, int> ofA, ofB;
  for (auto& [e, d] : a.depth)
    if (!ofA.emplace(A.edges[e].cluster, e).second) return false;
  for (auto& [e, d] : b.depth)
    if (!ofB.emplace(A.edges[e].cluster, e).second) return false;
  if (ofA.size() != ofB.size()) return false;
  std::map<int, int> delta;
  for (auto& [cl, e] : ofA) {
    auto it = ofB.find(cl);
    if (it == ofB.end()) return false;
    if (a.depth.at(e) != b.depth.at(it->second)) return false;  // layer-preserving
    delta[e] = it->second;
  }
  for (auto& [e, img] : delta)
    for (auto& [f, img2] : delta) {
      bool c1 = A.alive[e] && A.alive[f] && A.conflicts(e, f);
      bool c2 = A.conflicts(img, img2);
      if (c1 != c2) return false;
    }
  return true;
}

// --- donut -------------------------------------------------------------------

namespace {

bool crossedByAll(const ConMultigraph& A, int edge, const std::vector<ClusterId>& clusters) {
  auto have = crossingClusters(A, edge);
  for (ClusterId c : clusters)
    if (!std::binary_search(have.begin(), have.end(), c)) return false;
  return true;
}

}  // namespace

Donut computeDonut(const ConMultigraph& A, int rootEdge) {
  const ConEdge& root = A.edges[rootEdge];
  Donut d;
  d.cluster = root.cluster;
  d.embedding = computeAlphaEmbedding(A, root.cluster);
  const AlphaEmbedding& em = d.embedding;
  if (em.cyclesOfEdge[rootEdge].size() != 2)
    throw std::logic_error("donut: root con-edge is not on two facial cycles");
  int c0 = em.cyclesOfEdge[rootEdge][0];
  int c1 = em.cyclesOfEdge[rootEdge][1];
  d.crossClusters = clusterOrderAlong(A, em.cycles[c0], rootEdge);
  if (d.crossClusters.size() < 2)
    throw std::logic_error("donut: root con-edge crosses fewer than two clusters");

  d.spokes = {rootEdge};
  d.cycleIds = {c0, c1};
  int guard = 0;
  while (true) {
    if (++guard > static_cast<int>(A.edges.size()) + 2)
      throw std::logic_error("donut: walk failed to close");
    const FacialCycle& cyc = em.cycles[d.cycleIds.back()];
    int prev = d.spokes.back();
    std::vector<int> candidates;
    for (int e : cyc.edgeIds)
      if (e != prev && crossedByAll(A, e, d.crossClusters)) candidates.push_back(e);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.size() != 1)
      throw std::logic_error("donut: expected exactly one next spoke, found " +
                             std::to_string(candidates.size()));
    int next = candidates[0];
    if (next == rootEdge) {
      if (d.cycleIds.back() != c0) throw std::logic_error("donut: walk closed on a wrong cycle");
      d.cycleIds.pop_back();
      break;
    }
    d.spokes.push_back(next);
    const FacialCycle* other = em.otherCycleThrough(next, d.cycleIds.back());
    if (!other) throw std::logic_error("donut: spoke without a second facial cycle");
    d.cycleIds.push_back(other->id);
  }
  if (d.spokeCount() < 2) throw std::logic_error("donut: fewer than two spokes");

  d.spokeCrossers.resize(d.spokeCount());
  for (int i = 0; i < d.spokeCount(); ++i) {
    for (ClusterId beta : d.crossClusters) {
      std::vector<int> hits;
      for (int g : A.aliveConflicts(d.spokes[i]))
        if (A.edges[g].cluster == beta) hits.push_back(g);
      if (hits.size() != 1)
        throw std::logic_error("donut: spoke crosser for a cluster is not unique");
      d.spokeCrossers[i].push_back(hits[0]);
    }
  }
  std::string err = checkDonut(A, d);
  if (!err.empty()) throw std::logic_error("donut: " + err);
  return d;
}

std::string checkDonut(const ConMultigraph& A, const Donut& d) {
  int k = d.spokeCount();
  int m = static_cast<int>(d.crossClusters.size());
  if (k < 2) return "fewer than two spokes";
  if (m < 2) return "fewer than two crossing clusters";
  const AlphaEmbedding& em = d.embedding;
  for (int j = 0; j < k; ++j) {
    const FacialCycle& cPrev = em.cycles[d.cycleIds[j]];
    const FacialCycle& cNext = em.cycles[d.cycleIds[(j + 1) % k]];
    // (c) consecutive cycles share the spoke
    if (dartInCycle(cPrev, d.spokes[j]) < 0 || dartInCycle(cNext, d.spokes[j]) < 0)
      return "spoke not shared by its two cycles";
    // (b) every crossing cluster hits every spoke
    auto have = crossingClusters(A, d.spokes[j]);
    for (ClusterId c : d.crossClusters)
      if (!std::binary_search(have.begin(), have.end(), c)) return "spoke missing a crosser";
    // (d) the crossing order along the earlier cycle lists the clusters in donut order
    std::vector<ClusterId> order;
    for (ClusterId c : clusterOrderAlong(A, cPrev, d.spokes[j]))
      if (std::find(d.crossClusters.begin(), d.crossClusters.end(), c) != d.crossClusters.end())
        order.push_back(c);
    if (order != d.crossClusters) return "crossing order differs along a spoke";
  }
  // (e)/(f) the two arcs between consecutive spokes avoid the inner crossers
  std::set<ClusterId> headSet(d.crossClusters.begin(), d.crossClusters.end() - 1);
  std::set<ClusterId> tailSet(d.crossClusters.begin() + 1, d.crossClusters.end());
  for (int j = 0; j < k; ++j) {
    const FacialCycle& cyc = em.cycles[d.cycleIds[(j + 1) % k]];
    int from = -1, to = -1;
    for (int p = 0; p < static_cast<int>(cyc.darts.size()); ++p) {
      if (aDartEdge(cyc.darts[p]) == d.spokes[j]) from = p;
      if (aDartEdge(cyc.darts[p]) == d.spokes[(j + 1) % k]) to = p;
    }
    if (from < 0 || to < 0) return "spokes missing from their shared cycle";
    int len = static_cast<int>(cyc.darts.size());
    auto scanArc = [&](int a, int b, const std::set<ClusterId>& forbidden) -> bool {
      for (int p = (a + 1) % len; p != b; p = (p + 1) % len)
        for (ClusterId c : crossingClusters(A, aDartEdge(cyc.darts[p])))
          if (forbidden.count(c)) return false;
      return true;
    };
    bool ef = scanArc(from, to, tailSet) && scanArc(to, from, headSet);
    bool fe = scanArc(from, to, headSet) && scanArc(to, from, tailSet);
    if (!ef && !fe) return "arc between spokes crosses an inner cluster";
  }
  return "";
}

// --- solver ------------------------------------------------------------------

Solver::Solver(ConMultigraph a, SolverHooks hooks) : a_(std::move(a)), hooks_(std::move(hooks)) {
  if (!property1Holds(a_))
    throw std::logic_error("solver requires the reduced con-edge multigraph");
}

void Solver::record(const std::string& rule, const std::string& detail, std::string action,
                    std::vector<int> edges) {
  trace_.push_back(TraceEntry{step_++, rule, detail, std::move(edges), std::move(action)});
}

void Solver::removeBatch(const std::string& rule, const std::string& detail,
                         const std::vector<int>& edges) {
  if (edges.empty()) return;
  record(rule, detail, "remove", edges);
  for (int e : edges) a_.removeEdge(e);
}

void Solver::selectBatch(const std::string& rule, const std::string& detail,
                         const std::vector<int>& edges) {
  if (edges.empty()) return;
  record(rule, detail, "select", edges);
  for (int e : edges) selected_.push_back(e);
  record(rule, detail, "contract", edges);
  for (int e : edges) a_.contractEdge(e);
}

int Solver::lowestMultiCrossed() const {
  for (const ConEdge& e : a_.edges)
    if (a_.alive[e.id] && a_.aliveConflicts(e.id).size() >= 2) return e.id;
  return -1;
}

bool Solver::test1(Rejection& r) const {
  for (ClusterId c = 0; c < a_.clusterCount; ++c) {
    auto verts = a_.clusterAVertices(c);
    if (verts.size() <= 1) continue;
    DsuLocal dsu(static_cast<int>(a_.avertices.size()));
    for (int e : a_.clusterEdges(c)) dsu.unite(a_.edges[e].endA, a_.edges[e].endB);
    for (size_t i = 1; i < verts.size(); ++i)
      if (dsu.find(verts[i]) != dsu.find(verts[0])) {
        r = Rejection{"test1", "disconnected_cluster", {c}};
        return true;
      }
  }
  return false;
}

bool Solver::test2(Rejection& r) const {
  int n = static_cast<int>(a_.edges.size());
  std::vector<int> color(n, -1), parent(n, -1);
  for (int s = 0; s < n; ++s) {
    if (!a_.alive[s] || color[s] != -1) continue;
    color[s] = 0;
    std::vector<int> queue{s};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int g : a_.aliveConflicts(u)) {
        if (color[g] == -1) {
          color[g] = 1 - color[u];
          parent[g] = u;
          queue.push_back(g);
        } else if (color[g] == color[u]) {
          // Odd cycle: join the two parent chains.
          std::vector<int> pu, pv;
          for (int x = u; x != -1; x = parent[x]) pu.push_back(x);
          for (int x = g; x != -1; x = parent[x]) pv.push_back(x);
          while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
            pu.pop_back();
            pv.pop_back();
          }
          std::vector<int> cycle(pu.begin(), pu.end());
          for (auto it = pv.rbegin() + 1; it != pv.rend(); ++it) cycle.push_back(*it);
          r = Rejection{"test2", "odd_conflict_cycle", cycle};
          return true;
        }
      }
    }
  }
  return false;
}

bool Solver::simpl1() {
  // Lowest-id live bridge over all clusters.
  int bridge = -1;
  for (ClusterId c = 0; c < a_.clusterCount && bridge < 0; ++c) {
    auto edges = a_.clusterEdges(c);
    if (edges.empty()) continue;
    std::map<int, std::vector<std::pair<int, int>>> adj;  // av -> (neighbor av, edge)
    for (int e : edges) {
      if (a_.edges[e].endA == a_.edges[e].endB) continue;
      adj[a_.edges[e].endA].push_back({a_.edges[e].endB, e});
      adj[a_.edges[e].endB].push_back({a_.edges[e].endA, e});
    }
    std::map<int, int> disc, low;
    int timer = 0;
    std::vector<int> found;
    std::function<void(int, int)> dfs = [&](int u, int viaEdge) {
      disc[u] = low[u] = timer++;
      for (auto [w, e] : adj[u]) {
        if (e == viaEdge) continue;
        if (!disc.count(w)) {
          dfs(w, e);
          low[u] = std::min(low[u], low[w]);
          if (low[w] > disc[u]) found.push_back(e);
        } else {
          low[u] = std::min(low[u], disc[w]);
        }
      }
    };
    for (auto& [v, l] : adj)
      if (!disc.count(v)) dfs(v, -1);
    if (!found.empty()) bridge = *std::min_element(found.begin(), found.end());
  }
  if (bridge < 0) return false;
  if (hooks_.beforeRule) hooks_.beforeRule("simpl1", a_);
  removeBatch("simpl1", "bridge", a_.aliveConflicts(bridge));
  selectBatch("simpl1", "bridge", {bridge});
  if (hooks_.afterRule) hooks_.afterRule("simpl1", a_);
  return true;
}

bool Solver::simpl2() {
  for (const ConEdge& e : a_.edges) {
    if (!a_.alive[e.id] || e.endA != e.endB) continue;
    if (hooks_.beforeRule) hooks_.beforeRule("simpl2", a_);
    removeBatch("simpl2", "self_loop", {e.id});
    if (hooks_.afterRule) hooks_.afterRule("simpl2", a_);
    return true;
  }
  return false;
}

bool Solver::simpl3() {
  for (const ConEdge& e : a_.edges) {
    if (!a_.alive[e.id] || e.endA == e.endB) continue;
    if (!a_.aliveConflicts(e.id).empty()) continue;
    if (hooks_.beforeRule) hooks_.beforeRule("simpl3", a_);
    selectBatch("simpl3", "conflict_free", {e.id});
    if (hooks_.afterRule) hooks_.afterRule("simpl3", a_);
    return true;
  }
  return false;
}

bool Solver::simpl4() {
  for (ClusterId c = 0; c < a_.clusterCount; ++c) {
    AlphaEmbedding em = computeAlphaEmbedding(a_, c);
    for (const ConEdge& e : a_.edges) {
      if (!a_.alive[e.id] || e.cluster != c) continue;
      auto clusters = crossingClusters(a_, e.id);
      if (clusters.size() < 2) continue;
      for (int cycId : em.cyclesOfEdge[e.id]) {
        const FacialCycle& cyc = em.cycles[cycId];
        for (size_t i = 0; i < clusters.size(); ++i)
          for (size_t j = i + 1; j < clusters.size(); ++j) {
            bool witness = false;
            for (int other : cyc.edgeIds) {
              if (other == e.id) continue;
              auto oc = crossingClusters(a_, other);
              if (std::binary_search(oc.begin(), oc.end(), clusters[i]) &&
                  std::binary_search(oc.begin(), oc.end(), clusters[j])) {
                witness = true;
                break;
              }
            }
            if (!witness) {
              if (hooks_.beforeRule) hooks_.beforeRule("simpl4", a_);
              removeBatch("simpl4", "lone_double_crossing", {e.id});
              if (hooks_.afterRule) hooks_.afterRule("simpl4", a_);
              return true;
            }
          }
      }
    }
  }
  return false;
}

bool Solver::test3(Rejection& r) const {
  for (ClusterId c = 0; c < a_.clusterCount; ++c) {
    AlphaEmbedding em = computeAlphaEmbedding(a_, c);
    for (const FacialCycle& cyc : em.cycles) {
      std::vector<int> es = cyc.edgeIds;
      std::sort(es.begin(), es.end());
      es.erase(std::unique(es.begin(), es.end()), es.end());
      std::vector<std::vector<ClusterId>> seqs;
      for (int e : es) seqs.push_back(clusterOrderAlong(a_, cyc, e));
      for (size_t i = 0; i < es.size(); ++i)
        for (size_t j = 0; j < es.size(); ++j) {
          if (i == j) continue;
          // A cluster pair crossed in the same order by both edges.
          for (size_t bi = 0; bi < seqs[i].size(); ++bi)
            for (size_t gi = bi + 1; gi < seqs[i].size(); ++gi) {
              ClusterId beta = seqs[i][bi], gamma = seqs[i][gi];
              auto pb = std::find(seqs[j].begin(), seqs[j].end(), beta);
              auto pg = std::find(seqs[j].begin(), seqs[j].end(), gamma);
              if (pb != seqs[j].end() && pg != seqs[j].end() && pb < pg) {
                r = Rejection{"test3", "repeated_crossing_order", {es[i], es[j]}};
                return true;
              }
            }
        }
    }
  }
  return false;
}

bool Solver::test4(Rejection& r) const {
  for (ClusterId c = 0; c < a_.clusterCount; ++c) {
    AlphaEmbedding em = computeAlphaEmbedding(a_, c);
    for (const FacialCycle& cyc : em.cycles) {
      int len = static_cast<int>(cyc.darts.size());
      std::vector<int> edgeAt(len);
      std::vector<std::vector<ClusterId>> clustersAt(len);
      for (int p = 0; p < len; ++p) {
        edgeAt[p] = aDartEdge(cyc.darts[p]);
        clustersAt[p] = crossingClusters(a_, edgeAt[p]);
      }
      for (int i = 0; i < len; ++i) {
        auto seq = clusterOrderAlong(a_, cyc, edgeAt[i]);
        if (seq.size() < 2) continue;
        for (size_t bi = 0; bi < seq.size(); ++bi)
          for (size_t gi = bi + 1; gi < seq.size(); ++gi) {
            ClusterId beta = seq[bi], gamma = seq[gi];
            for (int ip = 0; ip < len; ++ip) {
              if (ip == i || edgeAt[ip] == edgeAt[i]) continue;
              if (!std::binary_search(clustersAt[ip].begin(), clustersAt[ip].end(), beta) ||
                  !std::binary_search(clustersAt[ip].begin(), clustersAt[ip].end(), gamma))
                continue;
              for (int mid = (i + 1) % len; mid != ip; mid = (mid + 1) % len) {
                if (edgeAt[mid] == edgeAt[i] || edgeAt[mid] == edgeAt[ip]) continue;
                if (std::binary_search(clustersAt[mid].begin(), clustersAt[mid].end(), beta)) {
                  r = Rejection{"test4", "blocking_middle_crossing",
                                {edgeAt[i], edgeAt[mid], edgeAt[ip]}};
                  return true;
                }
              }
            }
          }
      }
    }
  }
  return false;
}

std::optional<Rejection> Solver::runTests() {
  Rejection r;
  if (test1(r) || test2(r) || test3(r) || test4(r)) return r;
  return std::nullopt;
}

bool Solver::findLocalSimplification() {
  return simpl1() || simpl2() || simpl3() || simpl4();
}

bool Solver::applyDonutRule(const Donut& donut) {
  int k = donut.spokeCount();
  std::vector<ConflictingStructure> st;
  st.reserve(k);
  for (int s : donut.spokes) st.push_back(conflictingStructure(a_, s));

  auto selectSide = [&](const std::string& rule, const std::string& detail,
                        const ConflictingStructure& s, bool keepH) {
    if (hooks_.beforeRule) hooks_.beforeRule(rule, a_);
    removeBatch(rule, detail, keepH ? s.lSide() : s.hSide());
    selectBatch(rule, detail, keepH ? s.hSide() : s.lSide());
    if (hooks_.afterRule) hooks_.afterRule(rule, a_);
  };

  // Simplification 5: isomorphic adjacent spokes drop the H-side of the first.
  for (int j = 0; j < k; ++j) {
    if (structuresIsomorphic(a_, st[j], st[(j + 1) % k])) {
      selectSide("simpl5", "isomorphic_spokes", st[j], /*keepH=*/false);
      return true;
    }
  }

  // Simplifications 6/7: a second-order crosser on the face toward a neighbor.
  const AlphaEmbedding& em = donut.embedding;
  for (int j = 0; j < k; ++j) {
    for (int dir : {+1, -1}) {
      int p = donut.spokes[j];
      int q = donut.spokes[((j + dir) % k + k) % k];
      int sharedCycle = dir == 1 ? donut.cycleIds[(j + 1) % k] : donut.cycleIds[j];
      if (st[j].H.size() < 2) continue;
      for (int gammaEdge : st[j].H[1]) {
        for (int b : a_.aliveConflicts(gammaEdge)) {
          auto itb = st[j].depth.find(b);
          if (itb == st[j].depth.end() || itb->second != 1) continue;  // need b in L1(p)
          ClusterId beta = a_.edges[b].cluster;
          std::vector<int> qBeta;
          for (int g : a_.aliveConflicts(q))
            if (a_.edges[g].cluster == beta) qBeta.push_back(g);
          if (qBeta.empty()) continue;
          if (qBeta.size() > 1) throw std::logic_error("duplicate crosser cluster on a spoke");
          // The witness must sit in the face shared with q.
          int sideDart = sideDartOf(a_, p, gammaEdge);
          int aface = em.dartFaceA[sideDart];
          int cycleHere = -1;
          for (int id : em.cyclesOfEdge[p])
            if (em.cycles[id].aface == aface) cycleHere = id;
          if (cycleHere != sharedCycle) continue;
          ClusterId gamma = a_.edges[gammaEdge].cluster;
          bool matched = false;
          for (int g : a_.aliveConflicts(qBeta[0]))
            if (a_.edges[g].cluster == gamma) matched = true;
          if (!matched) {
            selectSide("simpl6", "unmatched_second_crossing", st[j], /*keepH=*/true);
            return true;
          }
          if (k >= 3) {
            int r = ((j + 2 * dir) % k + k) % k;
            selectSide("simpl7", "matched_second_crossing", st[r], /*keepH=*/false);
            return true;
          }
        }
      }
    }
  }

  // Simplification 8: two spokes, minimal layer with an unmatched conflict pair.
  if (k == 2) {
    int maxJ = 0;
    for (auto& s : st) maxJ = std::max(maxJ, static_cast<int>(std::max(s.H.size(), s.L.size())));
    auto pairAt = [&](const ConflictingStructure& s, int depthMu, int depthNu, ClusterId mu,
                      ClusterId nu) {
      for (auto& [e, de] : s.depth) {
        if (de != depthMu || a_.edges[e].cluster != mu) continue;
        for (int g : a_.aliveConflicts(e)) {
          auto it = s.depth.find(g);
          if (it != s.depth.end() && it->second == depthNu && a_.edges[g].cluster == nu)
            return true;
        }
      }
      return false;
    };
    for (int j = 1; j <= maxJ; ++j) {
      for (int aIdx : {0, 1}) {
        const ConflictingStructure& sa = st[aIdx];
        const ConflictingStructure& sb = st[1 - aIdx];
        // (1) conflict between L_j and H_{j-1} present on side a, absent on side b
        for (auto& [e, de] : sa.depth) {
          if (de != 2 * j - 1) continue;
          for (int g : a_.aliveConflicts(e)) {
            auto it = sa.depth.find(g);
            if (it == sa.depth.end() || it->second != 2 * j - 2) continue;
            if (!pairAt(sb, 2 * j - 1, 2 * j - 2, a_.edges[e].cluster, a_.edges[g].cluster)) {
              selectSide("simpl8", "asymmetric_layer", sa, /*keepH=*/false);
              return true;
            }
          }
        }
        // (2) conflict between H_j and L_j present on side a, absent on side b
        for (auto& [e, de] : sa.depth) {
          if (de != 2 * j) continue;
          for (int g : a_.aliveConflicts(e)) {
            auto it = sa.depth.find(g);
            if (it == sa.depth.end() || it->second != 2 * j - 1) continue;
            if (!pairAt(sb, 2 * j, 2 * j - 1, a_.edges[e].cluster, a_.edges[g].cluster)) {
              selectSide("simpl8", "asymmetric_layer", sa, /*keepH=*/true);
              return true;
            }
          }
        }
      }
    }
  }
  return false;
}

SolveResult Solver::run() {
  while (true) {
    Rejection r;
    if (test1(r)) {
      record(r.rule, r.detail, "reject", r.evidence);
      return SolveResult{false, {}, r, trace_};
    }
    if (simpl1()) continue;
    if (test2(r)) {
      record(r.rule, r.detail, "reject", r.evidence);
      return SolveResult{false, {}, r, trace_};
    }
    if (simpl2()) continue;
    if (simpl3()) continue;
    if (simpl4()) continue;
    if (test3(r) || test4(r)) {
      record(r.rule, r.detail, "reject", r.evidence);
      return SolveResult{false, {}, r, trace_};
    }
    int root = lowestMultiCrossed();
    if (root >= 0) {
      Donut donut = computeDonut(a_, root);
      if (hooks_.onDonut) hooks_.onDonut(donut, a_);
      if (!applyDonutRule(donut))
        throw std::logic_error("donut rules exhausted on a multi-crossed con-edge");
      continue;
    }
    break;
  }

  // Residue invariant: every surviving con-edge crosses exactly one other.
  for (const ConEdge& e : a_.edges)
    if (a_.alive[e.id] && a_.aliveConflicts(e.id).size() != 1)
      throw std::logic_error("residue violates the one-conflict invariant");

  ResidueOutcome res = solveSingleConflict(a_);
  if (!res.accepted) {
    Rejection r{"single_conflict", "paired_residue", res.evidence};
    record(r.rule, r.detail, "reject", r.evidence);
    return SolveResult{false, {}, r, trace_};
  }
  if (!res.selected.empty()) record("single_conflict", "paired_residue", "select", res.selected);
  for (int e : res.selected) selected_.push_back(e);
  std::sort(selected_.begin(), selected_.end());
  return SolveResult{true, selected_, std::nullopt, trace_};
}

}  // namespace cplan
