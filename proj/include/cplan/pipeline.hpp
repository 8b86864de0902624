#pragma once

#include <optional>
#include <string>

#include "cplan/conmultigraph.hpp"
#include "cplan/instance.hpp"
#include "cplan/solver.hpp"

// Full decision pipeline: parse, validate, faces, per-face limit, enclosure,
// con-edges, Property 1 reduction, fixpoint solver, witness mapping.

namespace cplan {

enum class Verdict { CPlanar, NotCPlanar, Invalid, LimitViolated };

inline int exitCodeOf(Verdict v) {
  switch (v) {
    case Verdict::CPlanar: return 0;
    case Verdict::NotCPlanar: return 1;
    case Verdict::Invalid: return 2;
    case Verdict::LimitViolated: return 3;
  }
  return 2;
}

struct PhaseTimings {
  double parseMs = 0, facesMs = 0, limitMs = 0, enclosureMs = 0;
  double buildMs = 0, reduceMs = 0, solveMs = 0;
};

struct RunReport {
  Verdict verdict = Verdict::Invalid;
  std::string fingerprint;  // content hash of the instance document
  std::string reason;       // rejection rule or error text
  std::vector<TraceEntry> trace;
  std::vector<int> witnessEdges;       // selected original con-edge ids
  std::optional<ConMultigraph> graph;  // reduced A, kept when requested
  PhaseTimings timings;
};

struct PipelineOptions {
  bool keepGraph = false;  // retain the reduced multigraph in the report
  SolverHooks hooks;
};

RunReport decideDocument(const std::string& text, const PipelineOptions& opt = {});
RunReport decideInstance(const Instance& inst, const PipelineOptions& opt = {});

// Document renderers. All UTF-8 JSON.
std::string instanceJson(const Instance& inst);
std::string witnessJson(const ConMultigraph& A, const Instance& inst,
                        const std::vector<int>& witnessEdges);
std::string traceJson(const std::vector<TraceEntry>& trace);

std::string contentFingerprint(const std::string& text);

}  // namespace cplan
