#include "cplan/generator.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace cplan {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(splitmix(seed)) {}
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(g() % static_cast<std::uint64_t>(n)); }
  bool chance(double p) { return (g() >> 11) * 0x1.0p-53 < p; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[below(i + 1)]);
  }
};

std::string clusterName(int i) {
  std::string s = "c";
  if (i < 10) s += '0';
  s += std::to_string(i);
  return s;
}

// Plane triangulation by repeated vertex insertion into a random face,
// maintained as rotations plus the face list as dart triples.
struct Triangulation {
  std::vector<std::vector<Dart>> rot;  // outgoing darts per vertex
  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<Dart, 3>> faces;

  int tail(Dart d) const { return (d & 1) ? edges[d >> 1].second : edges[d >> 1].first; }
  int head(Dart d) const { return tail(d ^ 1); }

  Dart addEdge(int u, int v) {
    edges.push_back({u, v});
    return static_cast<Dart>(2 * (edges.size() - 1));
  }
  void insertAfter(int v, Dart after, Dart d) {
    auto& r = rot[v];
    auto it = std::find(r.begin(), r.end(), after);
    r.insert(it == r.end() ? r.end() : it + 1, d);
  }

  static Triangulation start() {
    Triangulation t;
    t.rot.assign(3, {});
    Dart ab = t.addEdge(0, 1), bc = t.addEdge(1, 2), ca = t.addEdge(2, 0);
    t.rot[0] = {ab, ca ^ 1};
    t.rot[1] = {bc, ab ^ 1};
    t.rot[2] = {ca, bc ^ 1};
    t.faces.push_back({ab, bc, ca});
    t.faces.push_back({ab ^ 1, ca ^ 1, bc ^ 1});
    return t;
  }

  // Split face f by a new vertex joined to its three corners.
  void insertVertex(int f) {
    auto [d1, d2, d3] = faces[f];
    int a = tail(d1), b = tail(d2), c = tail(d3);
    int v = static_cast<int>(rot.size());
    rot.push_back({});
    Dart av = addEdge(a, v), bv = addEdge(b, v), cv = addEdge(c, v);
    insertAfter(a, d3 ^ 1, av);
    insertAfter(b, d1 ^ 1, bv);
    insertAfter(c, d2 ^ 1, cv);
    rot[v] = {av ^ 1, cv ^ 1, bv ^ 1};
    faces[f] = {d1, bv, av ^ 1};
    faces.push_back({d2, cv, bv ^ 1});
    faces.push_back({d3, av, cv ^ 1});
  }
};

Instance finalizeInstance(const std::vector<std::vector<Dart>>& rot,
                          const std::vector<std::pair<int, int>>& edges,
                          const std::vector<int>& clusterOf, int clusterCount) {
  Instance inst;
  int n = static_cast<int>(rot.size());
  for (int v = 0; v < n; ++v) inst.vertexLabels.push_back(v);
  for (auto& e : edges) inst.edges.push_back(e);
  inst.rotations.assign(n, {});
  for (int v = 0; v < n; ++v)
    for (Dart d : rot[v]) inst.rotations[v].push_back(d >> 1);
  for (int c = 0; c < clusterCount; ++c) inst.clusterNames.push_back(clusterName(c));
  inst.clusterVertices.assign(clusterCount, {});
  inst.clusterOf.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    inst.clusterOf[v] = clusterOf[v];
    inst.clusterVertices[clusterOf[v]].push_back(v);
  }
  inst.buildDarts();
  validateInstance(inst);
  return inst;
}

Instance tryGenInstance(const GeneratorParams& p, std::uint64_t attemptSeed, bool& ok) {
  Rng rng(attemptSeed);
  ok = false;
  int n = p.minVertices + rng.below(p.maxVertices - p.minVertices + 1);
  n = std::max(n, 3);

  Triangulation t = Triangulation::start();
  while (static_cast<int>(t.rot.size()) < n) t.insertVertex(rng.below(static_cast<int>(t.faces.size())));

  // Thin edges while keeping the graph connected.
  std::vector<int> order(t.edges.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<char> kept(t.edges.size(), 1);
  for (int e : order) {
    if (rng.chance(p.edgeKeepProbability)) continue;
    kept[e] = 0;
    std::vector<int> comp(n, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    int seen = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (Dart d : t.rot[u]) {
        if (!kept[d >> 1]) continue;
        int w = t.head(d);
        if (comp[w] == -1) {
          comp[w] = 0;
          ++seen;
          stack.push_back(w);
        }
      }
    }
    if (seen != n) kept[e] = 1;
  }
  std::vector<int> newId(t.edges.size(), -1);
  std::vector<std::pair<int, int>> edges;
  for (size_t e = 0; e < t.edges.size(); ++e)
    if (kept[e]) {
      newId[e] = static_cast<int>(edges.size());
      edges.push_back(t.edges[e]);
    }
  std::vector<std::vector<Dart>> rot(n);
  for (int v = 0; v < n; ++v)
    for (Dart d : t.rot[v])
      if (kept[d >> 1]) rot[v].push_back(2 * newId[d >> 1] + (d & 1));

  // Faces of the thinned graph, for the limit check during assignment.
  Instance probe = finalizeInstance(rot, edges, std::vector<int>(n, 0), 1);
  FaceSet faces = traceFaces(probe);

  int k = p.minClusters + rng.below(p.maxClusters - p.minClusters + 1);
  k = std::min(k, n);
  std::vector<int> clusterOf(n, -1);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  for (int c = 0; c < k; ++c) clusterOf[perm[c]] = c;

  auto fits = [&](int v, int c) {
    if (!p.enforceFaceLimit) return true;
    std::set<FaceId> seenFaces;
    for (Dart d : probe.rotationDarts[v]) seenFaces.insert(faces.cornerFace[d]);
    for (FaceId f : seenFaces) {
      std::set<int> members;
      for (const FaceOccurrence& oc : faces.faces[f].boundary)
        if (clusterOf[oc.vertex] == c) members.insert(oc.vertex);
      members.insert(v);
      if (members.size() > 2) return false;
    }
    return true;
  };
  for (int c = 0; c < k; ++c)
    if (!fits(perm[c], c)) return Instance{};  // unlucky seed placement

  for (int i = k; i < n; ++i) {
    int v = perm[i];
    std::vector<int> candidates;
    for (Dart d : probe.rotationDarts[v]) {
      int w = probe.dartHead(d);
      if (clusterOf[w] != -1) candidates.push_back(clusterOf[w]);
    }
    rng.shuffle(candidates);
    std::vector<int> rest(k);
    std::iota(rest.begin(), rest.end(), 0);
    rng.shuffle(rest);
    candidates.insert(candidates.end(), rest.begin(), rest.end());
    int chosen = -1;
    for (int c : candidates)
      if (fits(v, c)) {
        chosen = c;
        break;
      }
    if (chosen == -1) return Instance{};
    clusterOf[v] = chosen;
  }
  ok = true;
  return finalizeInstance(rot, edges, clusterOf, k);
}

}  // namespace

Instance genInstance(const GeneratorParams& p) {
  for (int attempt = 0; attempt < p.retryBudget; ++attempt) {
    bool ok = false;
    Instance inst = tryGenInstance(p, splitmix(p.seed) ^ splitmix(attempt * 0x51ull + 17), ok);
    if (ok) return inst;
  }
  throw std::runtime_error("instance generator: retry budget exhausted");
}

ConMultigraph genChordSystem(const ChordSystemParams& p) {
  for (int attempt = 0; attempt < p.retryBudget; ++attempt) {
    Rng rng(splitmix(p.seed) ^ splitmix(attempt * 0x9dull + 3));
    int n = std::max(p.vertices, 3);
    int k = std::min(p.clusters, n);
    // Random labelled tree with random rotations: always a plane embedding.
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.push_back({rng.below(v), v});
    std::vector<std::vector<Dart>> rot(n);
    for (int e = 0; e < n - 1; ++e) {
      rot[edges[e].first].push_back(2 * e);
      rot[edges[e].second].push_back(2 * e + 1);
    }
    for (auto& r : rot) rng.shuffle(r);
    std::vector<int> clusterOf(n);
    for (int v = 0; v < n; ++v) clusterOf[v] = v < k ? v : rng.below(k);

    Instance inst = finalizeInstance(rot, edges, clusterOf, k);
    FaceSet faces = traceFaces(inst);
    ConMultigraph A = buildConMultigraph(inst, faces);
    for (const ConEdge& e : A.edges)
      if (!rng.chance(p.conKeepProbability)) A.alive[e.id] = 0;
    reduceProperty1(A);
    if (p.requireProperty1 && !property1Holds(A)) continue;
    embedRotations(A, inst, faces);
    return A;
  }
  throw std::runtime_error("chord system generator: retry budget exhausted");
}

ConMultigraph donutTemplate(int spokes, int crossers, std::uint64_t seed) {
  if (spokes < 2 || crossers < 2)
    throw std::runtime_error("donut template needs >= 2 spokes and >= 2 crossing clusters");
  Rng rng(splitmix(seed ^ 0xd0u));
  int k = spokes, m = crossers;
  ConMultigraph A;
  A.clusterCount = 1 + 2 * m;  // alpha, beta_1..beta_m, omega_1..omega_m

  // A-vertices: the two alpha hubs; per beta cluster the chain endpoints
  // X(j,i), Y(j,i); per omega cluster one hub pair.
  const int U = 0, W = 1;
  A.avertices.push_back({0, 0});
  A.avertices.push_back({0, 1});
  auto X = [&](int j, int i) { return 2 + (j - 1) * 2 * k + 2 * i; };
  auto Y = [&](int j, int i) { return 2 + (j - 1) * 2 * k + 2 * i + 1; };
  for (int j = 1; j <= m; ++j)
    for (int i = 0; i < k; ++i) {
      A.avertices.push_back({j, 100 * j + 2 * i});
      A.avertices.push_back({j, 100 * j + 2 * i + 1});
    }
  auto P = [&](int j) { return 2 + 2 * k * m + 2 * (j - 1); };
  auto Q = [&](int j) { return 2 + 2 * k * m + 2 * (j - 1) + 1; };
  for (int j = 1; j <= m; ++j) {
    A.avertices.push_back({m + j, 900 + 2 * j});
    A.avertices.push_back({m + j, 900 + 2 * j + 1});
  }

  auto addChord = [&](ClusterId cl, int face, int a, int b, int ea, int eb) {
    ConEdge e;
    e.cluster = cl;
    e.face = face;
    e.occA = a;
    e.occB = b;
    e.endA = ea;
    e.endB = eb;
    e.vertexA = 10000 + 2 * static_cast<int>(A.edges.size());
    e.vertexB = e.vertexA + 1;
    e.id = static_cast<int>(A.edges.size());
    A.edges.push_back(e);
    return e.id;
  };

  // Spoke faces: [U, X(1..m), W, Y(m..1)] with the spoke chord (0, m+1).
  std::vector<int> spokeEdge(k);
  for (int i = 0; i < k; ++i) {
    int f = static_cast<int>(A.faceLength.size());
    A.faceLength.push_back(2 * m + 2);
    spokeEdge[i] = addChord(0, f, 0, m + 1, U, W);
    for (int j = 1; j <= m; ++j) addChord(j, f, j, 2 * m + 2 - j, X(j, i), Y(j, i));
  }
  // Chain faces: Y(j,i) -- X(j,i+1), occasionally doubled.
  for (int j = 1; j <= m; ++j)
    for (int i = 0; i + 1 < k; ++i) {
      int copies = rng.chance(0.3) ? 2 : 1;
      for (int rep = 0; rep < copies; ++rep) {
        int f = static_cast<int>(A.faceLength.size());
        A.faceLength.push_back(2);
        addChord(j, f, 0, 1, Y(j, i), X(j, i + 1));
      }
    }
  // Twin faces: a parallel fallback for every crosser, itself crossed by one
  // of the omega cluster's parallel edges so nothing is bridge or free.
  for (int j = 1; j <= m; ++j)
    for (int i = 0; i < k; ++i) {
      int f = static_cast<int>(A.faceLength.size());
      A.faceLength.push_back(4);
      addChord(j, f, 0, 2, X(j, i), Y(j, i));
      addChord(m + j, f, 1, 3, P(j), Q(j));
    }

  A.alive.assign(A.edges.size(), 1);
  A.avAlive.assign(A.avertices.size(), 1);
  computeConflicts(A);

  // Rotations: parallel bundles list tails in id order and heads reversed,
  // which keeps every parallel class untwisted. The spoke bundle is explicit.
  A.rotation.assign(A.avertices.size(), {});
  for (int i = 0; i < k; ++i) A.rotation[U].push_back(aDart(spokeEdge[i], 0));
  for (int i = k - 1; i >= 0; --i) A.rotation[W].push_back(aDart(spokeEdge[i], 1));
  std::vector<std::vector<int>> tails(A.avertices.size()), heads(A.avertices.size());
  for (const ConEdge& e : A.edges) {
    if (e.cluster == 0) continue;
    tails[e.endA].push_back(aDart(e.id, 0));
    heads[e.endB].push_back(aDart(e.id, 1));
  }
  for (size_t v = 2; v < A.avertices.size(); ++v) {
    auto& r = A.rotation[v];
    r.insert(r.end(), tails[v].begin(), tails[v].end());
    r.insert(r.end(), heads[v].rbegin(), heads[v].rend());
  }
  return A;
}

}  // namespace cplan
