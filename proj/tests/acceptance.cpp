// Acceptance suite: exercises the whole library (CLI excluded) against the
// brute-force oracles on seeded random inputs and prints one line per
// criterion. Exit code 0 iff criteria 1-8 pass; criterion 9 is informational.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <vector>

#include "cplan/generator.hpp"
#include "cplan/oracle.hpp"
#include "cplan/pipeline.hpp"
#include "cplan/single_conflict.hpp"
#include "cplan/solver.hpp"

using namespace cplan;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  bool informational = false;
  std::string note;
};

struct DonutRecord {
  Donut donut;
  ConMultigraph at;
};

int failuresTotal = 0;

void report(const Criterion& c) {
  std::cout << "criterion " << c.id << " [" << c.name << "]: "
            << (c.pass ? "PASS" : (c.informational ? "INFO-FAIL" : "FAIL"));
  if (!c.note.empty()) std::cout << " (" << c.note << ")";
  std::cout << std::endl;
  if (!c.pass && !c.informational) ++failuresTotal;
}

}  // namespace

int main() {
  const int kSuiteSize = 2000;
  const int kOracleBound = 24;

  Criterion c1{1, "oracle equivalence on random instances"};
  Criterion c2{2, "witness soundness"};
  Criterion c3{3, "per-rule metamorphic soundness"};
  Criterion c4{4, "single-conflict residue invariant"};
  Criterion c5{5, "every oracle witness uses exactly one donut spoke"};
  Criterion c6{6, "Property-1 reduction preserves the verdict"};
  Criterion c7{7, "enclosure check equals the cycle-enumeration oracle"};
  Criterion c8{8, "donut property checker on template instances"};
  Criterion c9{9, "cubic scaling (soft)"};
  c9.informational = true;

  // ---- criteria 1-5: the main randomized suite -----------------------------
  long ruleFirings = 0, donutsSeen = 0, accepted = 0, rejected = 0;
  long metamorphicChecked = 0, spokeChecks = 0;
  std::map<std::string, long> firingsByRule;
  auto t0 = Clock::now();

  GeneratorParams gp;
  gp.maxVertices = 10;
  gp.minVertices = 6;
  gp.minClusters = 2;
  gp.maxClusters = 5;

  int used = 0;
  for (std::uint64_t seed = 1; used < kSuiteSize && seed < 20u * kSuiteSize; ++seed) {
    gp.seed = seed;
    Instance inst;
    try {
      inst = genInstance(gp);
    } catch (const std::runtime_error&) {
      continue;
    }
    FaceSet faces = traceFaces(inst);
    ConMultigraph A = buildConMultigraph(inst, faces);
    reduceProperty1(A);
    if (A.aliveEdgeCount() > kOracleBound) continue;
    if (!property1Holds(A)) {
      c1.pass = false;
      c1.note = "Property 1 unreachable at seed " + std::to_string(seed);
      break;
    }
    embedRotations(A, inst, faces);
    ++used;

    std::vector<DonutRecord> donuts;
    ConMultigraph before;
    SolverHooks hooks;
    hooks.beforeRule = [&](const std::string&, const ConMultigraph& a) { before = a; };
    hooks.afterRule = [&](const std::string& rule, const ConMultigraph& after) {
      ++ruleFirings;
      ++firingsByRule[rule];
      bool wantBefore = oraclePssttm(before, kOracleBound).accepted;
      bool wantAfter = oraclePssttm(after, kOracleBound).accepted;
      ++metamorphicChecked;
      if (wantBefore != wantAfter && c3.pass) {
        c3.pass = false;
        c3.note = rule + " changed the verdict at seed " + std::to_string(seed);
      }
    };
    hooks.onDonut = [&](const Donut& d, const ConMultigraph& at) {
      ++donutsSeen;
      donuts.push_back({d, at});
    };

    bool solverAccepted = false;
    std::vector<int> witness;
    try {
      Solver solver(A, hooks);
      SolveResult res = solver.run();
      solverAccepted = res.accepted;
      witness = res.selected;
    } catch (const std::logic_error& e) {
      c4.pass = false;
      c4.note = std::string(e.what()) + " at seed " + std::to_string(seed);
      break;
    }

    bool oracleAccepted = oraclePssttm(A, kOracleBound).accepted;
    if (solverAccepted != oracleAccepted && c1.pass) {
      c1.pass = false;
      c1.note = "disagreement at seed " + std::to_string(seed);
    }
    ++(solverAccepted ? accepted : rejected);

    if (solverAccepted) {
      auto problems = verifySolution(A, witness);
      if (!problems.empty() && c2.pass) {
        c2.pass = false;
        c2.note = problems[0] + " at seed " + std::to_string(seed);
      }
    }

    for (const DonutRecord& rec : donuts) {
      bool bad = false;
      forEachPlanarSpanningSet(rec.at, kOracleBound, [&](const std::vector<int>& sol) {
        int spokesIn = 0;
        for (int s : rec.donut.spokes)
          if (std::binary_search(sol.begin(), sol.end(), s)) ++spokesIn;
        if (spokesIn != 1) bad = true;
        ++spokeChecks;
        return !bad;
      });
      if (bad && c5.pass) {
        c5.pass = false;
        c5.note = "donut spoke count off at seed " + std::to_string(seed);
      }
    }
  }
  double suiteSeconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (used < kSuiteSize) {
    c1.pass = false;
    if (c1.note.empty()) c1.note = "only " + std::to_string(used) + " instances in range";
  }
  if (c1.pass)
    c1.note = std::to_string(used) + " instances (" + std::to_string(accepted) + " yes / " +
              std::to_string(rejected) + " no) in " + std::to_string(suiteSeconds) + "s";
  if (c2.pass) c2.note = std::to_string(accepted) + " witnesses verified";
  if (c3.pass) {
    c3.note = std::to_string(metamorphicChecked) + " firings checked:";
    for (auto& [rule, n] : firingsByRule) c3.note += " " + rule + "=" + std::to_string(n);
  }
  if (c4.pass) c4.note = "residue invariant held on every exit";
  if (c5.pass)
    c5.note = std::to_string(donutsSeen) + " donuts, " + std::to_string(spokeChecks) +
              " witness checks";
  report(c1);
  report(c2);
  report(c3);
  report(c4);
  report(c5);

  // ---- criterion 6: reduction preserves the oracle verdict ----------------
  {
    int used6 = 0;
    GeneratorParams p6;
    p6.maxVertices = 9;
    for (std::uint64_t seed = 50000; used6 < 500 && seed < 80000; ++seed) {
      p6.seed = seed;
      Instance inst;
      try {
        inst = genInstance(p6);
      } catch (const std::runtime_error&) {
        continue;
      }
      FaceSet faces = traceFaces(inst);
      ConMultigraph A = buildConMultigraph(inst, faces);
      if (A.aliveEdgeCount() > 30) continue;
      ++used6;
      bool beforeVerdict;
      try {
        beforeVerdict = oraclePssttm(A, 30).accepted;
      } catch (const OracleBoundExceeded&) {
        --used6;
        continue;
      }
      ConMultigraph reduced = A;
      reduceProperty1(reduced);
      bool afterVerdict = oraclePssttm(reduced, 30).accepted;
      if (beforeVerdict != afterVerdict) {
        c6.pass = false;
        c6.note = "verdict changed at seed " + std::to_string(seed);
        break;
      }
      if (!property1Holds(reduced)) {
        c6.pass = false;
        c6.note = "Property 1 violated at seed " + std::to_string(seed);
        break;
      }
    }
    if (c6.pass) c6.note = std::to_string(used6) + " instances";
    report(c6);
  }

  // ---- criterion 7: enclosure equivalence ----------------------------------
  {
    int used7 = 0;
    GeneratorParams p7;
    p7.maxVertices = 10;
    for (std::uint64_t seed = 90000; used7 < 500 && seed < 120000; ++seed) {
      p7.seed = seed;
      Instance inst;
      try {
        inst = genInstance(p7);
      } catch (const std::runtime_error&) {
        continue;
      }
      ++used7;
      FaceSet faces = traceFaces(inst);
      if (admissibleOuterFaces(inst, faces) != oracleEnclosure(inst, faces)) {
        c7.pass = false;
        c7.note = "mismatch at seed " + std::to_string(seed);
        break;
      }
    }
    if (c7.pass) c7.note = std::to_string(used7) + " instances";
    report(c7);
  }

  // ---- criterion 8: donut templates -----------------------------------------
  {
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 200; ++seed) {
      int k = 2 + static_cast<int>(seed % 6);
      int m = 2 + static_cast<int>((seed / 6) % 3);
      ConMultigraph A = donutTemplate(k, m, seed);
      int root = -1;
      for (const ConEdge& e : A.edges)
        if (e.cluster == 0) {
          root = e.id;
          break;
        }
      try {
        Donut d = computeDonut(A, root);
        std::string err = checkDonut(A, d);
        if (d.spokeCount() != k || !err.empty()) {
          c8.pass = false;
          c8.note = "template k=" + std::to_string(k) + " m=" + std::to_string(m) + ": " +
                    (err.empty() ? "wrong spoke count" : err);
          break;
        }
      } catch (const std::logic_error& e) {
        c8.pass = false;
        c8.note = e.what();
        break;
      }
      ++checked;
    }
    if (c8.pass) c8.note = "200 templates";
    report(c8);
  }

  // ---- criterion 9: scaling (informational) ---------------------------------
  {
    std::vector<int> sizes{250, 500, 1000, 2000};
    std::vector<double> medians;
    for (int size : sizes) {
      GeneratorParams p9;
      p9.minVertices = size;
      p9.maxVertices = size;
      p9.minClusters = std::max(2, size / 12);
      p9.maxClusters = std::max(3, size / 8);
      p9.retryBudget = 4000;
      std::vector<double> times;
      for (int rep = 0; rep < 3; ++rep) {
        p9.seed = 7000 + size * 13 + rep;
        Instance inst = genInstance(p9);
        auto t = Clock::now();
        decideInstance(inst);
        times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t).count());
      }
      std::sort(times.begin(), times.end());
      medians.push_back(times[1]);
    }
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
    c9.pass = slope <= 3.5;
    char buf[160];
    snprintf(buf, sizeof buf, "slope %.2f; medians ms: %.1f %.1f %.1f %.1f", slope, medians[0],
             medians[1], medians[2], medians[3]);
    c9.note = buf;
    report(c9);
  }

  return failuresTotal == 0 ? 0 : 1;
}
