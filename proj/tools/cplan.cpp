// Command-line front end: decide c-planarity of embedded flat clustered
// graphs, generate random instances, cross-check the solver against the
// brute-force oracle, and benchmark scaling.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cplan/generator.hpp"
#include "cplan/oracle.hpp"
#include "cplan/pipeline.hpp"

namespace {

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

const char* verdictName(cplan::Verdict v) {
  switch (v) {
    case cplan::Verdict::CPlanar: return "c-planar";
    case cplan::Verdict::NotCPlanar: return "not-c-planar";
    case cplan::Verdict::Invalid: return "invalid";
    case cplan::Verdict::LimitViolated: return "precondition-violated";
  }
  return "invalid";
}

int cmdCheck(const std::string& path, const std::string& traceOut, const std::string& witnessOut,
             const std::string& dotOut) {
  std::string text = readFile(path);
  cplan::PipelineOptions opt;
  opt.keepGraph = !dotOut.empty() || !witnessOut.empty();
  cplan::RunReport rep = cplan::decideDocument(text, opt);
  std::cout << "instance " << rep.fingerprint << ": " << verdictName(rep.verdict);
  if (!rep.reason.empty()) std::cout << " (" << rep.reason << ")";
  std::cout << "\n";
  std::cout << "timing ms: parse " << rep.timings.parseMs << ", faces " << rep.timings.facesMs
            << ", limit " << rep.timings.limitMs << ", enclosure " << rep.timings.enclosureMs
            << ", build " << rep.timings.buildMs << ", reduce " << rep.timings.reduceMs
            << ", solve " << rep.timings.solveMs << "\n";
  if (!traceOut.empty()) writeFile(traceOut, cplan::traceJson(rep.trace));
  if (!witnessOut.empty() && rep.verdict == cplan::Verdict::CPlanar && rep.graph) {
    cplan::Instance inst = cplan::parseInstance(text);
    writeFile(witnessOut, cplan::witnessJson(*rep.graph, inst, rep.witnessEdges));
  }
  if (!dotOut.empty() && rep.graph) writeFile(dotOut, cplan::conflictGraphDot(*rep.graph));
  return cplan::exitCodeOf(rep.verdict);
}

int cmdGen(std::uint64_t seed, const std::string& out, cplan::GeneratorParams params) {
  params.seed = seed;
  cplan::Instance inst = cplan::genInstance(params);
  std::string doc = cplan::instanceJson(inst);
  if (out.empty())
    std::cout << doc;
  else
    writeFile(out, doc);
  return 0;
}

int cmdCrosscheck(int n, std::uint64_t seed, int maxVertices, int oracleBound) {
  cplan::GeneratorParams params;
  params.maxVertices = maxVertices;
  int agreeYes = 0, agreeNo = 0;
  for (int i = 0; i < n; ++i) {
    params.seed = seed + i;
    cplan::Instance inst = cplan::genInstance(params);
    cplan::FaceSet faces = cplan::traceFaces(inst);
    cplan::ConMultigraph A = cplan::buildConMultigraph(inst, faces);
    cplan::reduceProperty1(A);
    if (A.aliveEdgeCount() > oracleBound) continue;  // outside the oracle regime
    cplan::embedRotations(A, inst, faces);
    cplan::Solver solver(A);
    cplan::SolveResult got = solver.run();
    cplan::OracleResult want = cplan::oraclePssttm(A, oracleBound);
    if (got.accepted != want.accepted) {
      std::cout << "disagreement at seed " << (seed + i) << ": solver says "
                << (got.accepted ? "yes" : "no") << ", oracle says "
                << (want.accepted ? "yes" : "no") << "\n";
      return 1;
    }
    ++(got.accepted ? agreeYes : agreeNo);
  }
  std::cout << "agreement on " << (agreeYes + agreeNo) << " instances (" << agreeYes
            << " accepted, " << agreeNo << " rejected), 0 disagreements\n";
  return 0;
}

int cmdBench(const std::vector<int>& sizes, std::uint64_t seed, int reps) {
  using Clock = std::chrono::steady_clock;
  std::vector<double> medians;
  for (int size : sizes) {
    cplan::GeneratorParams params;
    params.seed = seed + size;
    params.minVertices = size;
    params.maxVertices = size;
    params.minClusters = std::max(2, size / 12);
    params.maxClusters = std::max(3, size / 8);
    params.retryBudget = 4000;
    std::vector<double> times;
    for (int r = 0; r < reps; ++r) {
      params.seed = seed + size * 131 + r;
      cplan::Instance inst = cplan::genInstance(params);
      auto t0 = Clock::now();
      cplan::decideInstance(inst);
      times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    double median = times[times.size() / 2];
    medians.push_back(median);
    std::cout << "size " << size << ": median " << median << " ms over " << reps << " runs\n";
  }
  if (sizes.size() >= 2) {
    // Least-squares slope on log-log points.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = static_cast<int>(sizes.size());
    for (int i = 0; i < n; ++i) {
      double x = std::log(static_cast<double>(sizes[i]));
      double y = std::log(std::max(medians[i], 1e-3));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    std::cout << "fitted log-log slope: " << slope << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"c-planarity tester for embedded flat clustered graphs"};
  app.require_subcommand(1);

  std::string path, traceOut, witnessOut, dotOut;
  auto* check = app.add_subcommand("check", "decide one instance document");
  check->add_option("file", path, "instance JSON")->required();
  check->add_option("--trace", traceOut, "write the rule trace here");
  check->add_option("--witness", witnessOut, "write the saturator witness here");
  check->add_option("--dot", dotOut, "write the conflict graph as DOT here");

  std::uint64_t seed = 1;
  std::string out;
  cplan::GeneratorParams gp;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out, "output path (stdout if omitted)");
  gen->add_option("--min-vertices", gp.minVertices);
  gen->add_option("--max-vertices", gp.maxVertices);
  gen->add_option("--min-clusters", gp.minClusters);
  gen->add_option("--max-clusters", gp.maxClusters);
  gen->add_option("--edge-keep", gp.edgeKeepProbability);
  gen->add_flag("--no-face-limit", [&gp](std::int64_t) { gp.enforceFaceLimit = false; },
                "allow faces with more than two vertices of a cluster");

  int n = 2000, maxVertices = 10, oracleBound = 24;
  std::uint64_t ccSeed = 1;
  auto* cc = app.add_subcommand("crosscheck", "compare solver and oracle on random instances");
  cc->add_option("--n", n, "number of instances");
  cc->add_option("--seed", ccSeed, "base seed");
  cc->add_option("--max-vertices", maxVertices);
  cc->add_option("--oracle-bound", oracleBound);

  std::vector<int> sizes{250, 500, 1000, 2000};
  std::uint64_t benchSeed = 1;
  int reps = 3;
  auto* bench = app.add_subcommand("bench", "timing table over instance sizes");
  bench->add_option("--sizes", sizes, "vertex counts")->delimiter(',');
  bench->add_option("--seed", benchSeed);
  bench->add_option("--reps", reps);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*check) return cmdCheck(path, traceOut, witnessOut, dotOut);
    if (*gen) return cmdGen(seed, out, gp);
    if (*cc) return cmdCrosscheck(n, ccSeed, maxVertices, oracleBound);
    if (*bench) return cmdBench(sizes, benchSeed, reps);
  } catch (const cplan::InstanceError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
