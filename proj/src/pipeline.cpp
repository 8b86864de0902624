#include "cplan/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "cplan/oracle.hpp"
#include "json.hpp"

namespace cplan {

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Does the face's boundary vertex sequence match the hint up to rotation?
bool faceMatchesHint(const Face& f, const std::vector<VertexId>& hint) {
  size_t n = f.boundary.size();
  if (hint.size() != n) return false;
  if (n == 0) return true;
  for (size_t shift = 0; shift < n; ++shift) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i)
      if (f.boundary[(shift + i) % n].vertex != hint[i]) ok = false;
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::string contentFingerprint(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunReport decideInstance(const Instance& inst, const PipelineOptions& opt) {
  RunReport rep;
  rep.fingerprint = contentFingerprint(instanceJson(inst));
  auto t0 = Clock::now();
  FaceSet faces = traceFaces(inst);
  rep.timings.facesMs = msSince(t0);

  t0 = Clock::now();
  auto violations = checkPerFaceLimit(inst, faces);
  rep.timings.limitMs = msSince(t0);
  if (!violations.empty()) {
    rep.verdict = Verdict::LimitViolated;
    rep.reason = "face " + std::to_string(violations[0].face) + " sees " +
                 std::to_string(violations[0].vertices.size()) + " vertices of cluster " +
                 inst.clusterNames[violations[0].cluster];
    return rep;
  }

  t0 = Clock::now();
  std::vector<char> admissible = admissibleOuterFaces(inst, faces);
  if (inst.outerFaceHint) {
    int match = -1;
    for (const Face& f : faces.faces)
      if (faceMatchesHint(f, *inst.outerFaceHint)) {
        match = f.id;
        break;
      }
    if (match < 0) {
      rep.verdict = Verdict::Invalid;
      rep.reason = "outer_face hint matches no face of the embedding";
      return rep;
    }
    std::vector<char> only(faces.faces.size(), 0);
    only[match] = admissible[match];
    admissible = std::move(only);
  }
  rep.timings.enclosureMs = msSince(t0);
  if (std::none_of(admissible.begin(), admissible.end(), [](char c) { return c != 0; })) {
    rep.verdict = Verdict::NotCPlanar;
    rep.reason = "enclosure";
    rep.trace.push_back(TraceEntry{0, "enclosure", "monochromatic_cycle", {}, "reject"});
    return rep;
  }

  t0 = Clock::now();
  ConMultigraph A = buildConMultigraph(inst, faces);
  rep.timings.buildMs = msSince(t0);

  t0 = Clock::now();
  reduceProperty1(A);
  rep.timings.reduceMs = msSince(t0);
  embedRotations(A, inst, faces);

  t0 = Clock::now();
  Solver solver(A, opt.hooks);
  SolveResult res = solver.run();
  rep.timings.solveMs = msSince(t0);
  rep.trace = res.trace;
  if (opt.keepGraph) rep.graph = A;
  if (res.accepted) {
    rep.verdict = Verdict::CPlanar;
    rep.witnessEdges = res.selected;
    auto problems = verifySolution(A, res.selected);
    if (!problems.empty())
      throw std::logic_error("accepted witness failed verification: " + problems[0]);
  } else {
    rep.verdict = Verdict::NotCPlanar;
    rep.reason = res.rejection ? res.rejection->rule : "rejected";
  }
  return rep;
}

RunReport decideDocument(const std::string& text, const PipelineOptions& opt) {
  RunReport rep;
  rep.fingerprint = contentFingerprint(text);
  auto t0 = Clock::now();
  Instance inst;
  try {
    inst = parseInstance(text);
  } catch (const InstanceError& e) {
    rep.verdict = Verdict::Invalid;
    rep.reason = e.what();
    rep.timings.parseMs = msSince(t0);
    return rep;
  }
  double parseMs = msSince(t0);
  rep = decideInstance(inst, opt);
  rep.fingerprint = contentFingerprint(text);
  rep.timings.parseMs = parseMs;
  return rep;
}

std::string instanceJson(const Instance& inst) {
  nlohmann::json doc;
  doc["vertices"] = inst.vertexLabels;
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (auto [u, v] : inst.edges)
    edges.push_back({inst.vertexLabels[u], inst.vertexLabels[v]});
  auto& rot = doc["rotations"] = nlohmann::json::object();
  for (VertexId v = 0; v < inst.vertexCount(); ++v)
    rot[std::to_string(inst.vertexLabels[v])] = inst.rotations[v];
  auto& clusters = doc["clusters"] = nlohmann::json::object();
  for (ClusterId c = 0; c < inst.clusterCount(); ++c) {
    auto& arr = clusters[inst.clusterNames[c]] = nlohmann::json::array();
    for (VertexId v : inst.clusterVertices[c]) arr.push_back(inst.vertexLabels[v]);
  }
  if (inst.outerFaceHint) {
    auto& arr = doc["outer_face"] = nlohmann::json::array();
    for (VertexId v : *inst.outerFaceHint) arr.push_back(inst.vertexLabels[v]);
  }
  return doc.dump(2) + "\n";
}

std::string witnessJson(const ConMultigraph& A, const Instance& inst,
                        const std::vector<int>& witnessEdges) {
  nlohmann::json arr = nlohmann::json::array();
  for (int id : witnessEdges) {
    const ConEdge& e = A.edges[id];
    nlohmann::json item;
    item["face"] = e.face;
    item["occurrences"] = {e.occA, e.occB};
    item["cluster"] = inst.clusterNames[e.cluster];
    item["endpoints"] = {inst.vertexLabels[e.vertexA], inst.vertexLabels[e.vertexB]};
    arr.push_back(item);
  }
  return arr.dump(2) + "\n";
}

std::string traceJson(const std::vector<TraceEntry>& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TraceEntry& t : trace) {
    nlohmann::json item;
    item["step"] = t.step;
    item["rule"] = t.rule;
    item["lemma"] = t.detail;
    item["edges"] = t.edges;
    item["action"] = t.action;
    arr.push_back(item);
  }
  return arr.dump(2) + "\n";
}

}  // namespace cplan
