#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pitchopt/solver.hpp"

using namespace pitchopt;
using namespace testutil;

namespace {

SearchOptions withSymmetry(Symmetry s) {
  SearchOptions o;
  o.symmetry = s;
  return o;
}

}  // namespace

TEST_CASE("solveExact matches brute force on small unconstrained instances") {
  for (int n = 2; n <= 7; ++n) {
    const Instance inst = plainInstance(catalog23(), n);
    const OracleBest oracle = oracleSolve(inst, true);
    REQUIRE(oracle.feasible);
    for (Symmetry s : {Symmetry::kNone, Symmetry::kRotationCuts}) {
      const SolveResult got = solveExact(inst, withSymmetry(s));
      REQUIRE(got.feasible);
      CHECK(got.optimal);
      CHECK(got.exactNoise == doctest::Approx(oracle.noise).epsilon(1e-12));
    }
  }
}

TEST_CASE("solveExact matches brute force under industrial constraints") {
  const PitchCatalog cat = catalog23();
  struct Case {
    int n;
    std::vector<int> minOcc, maxOcc, maxSeq;
    std::set<std::pair<int, int>> pairs;
  };
  const Case cases[] = {
      {6, {1, 1}, {5, 5}, {}, {}},
      {6, {2, 2}, {4, 4}, {2, 2}, {}},
      {7, {1, 1}, {6, 6}, {3, 3}, {{1, 1}}},
      {8, {2, 2}, {6, 6}, {0, 0}, {{0, 0}, {1, 1}}},  // no same-type adjacency at all
      {8, {3, 3}, {5, 5}, {2, 2}, {{1, 0}}},
  };
  for (const Case& c : cases) {
    const Instance inst(cat, c.n, c.minOcc, c.maxOcc, c.maxSeq, c.pairs,
                        Instance::defaultFourierK(c.n));
    const OracleBest oracle = oracleSolve(inst, true);
    const SolveResult got = solveExact(inst);
    REQUIRE(got.feasible == oracle.feasible);
    if (!oracle.feasible) continue;
    CHECK(got.exactNoise == doctest::Approx(oracle.noise).epsilon(1e-12));
    // The witness itself satisfies the cyclic constraint reading.
    const PitchSequence best(got.bestTypes, cat);
    CHECK(validateSequence(best, inst).allCyclicOk());
  }
}

TEST_CASE("solveExact result invariants") {
  const Instance inst = plainInstance(catalog456(), 6);
  const SolveResult got = solveExact(inst);
  REQUIRE(got.feasible);
  CHECK(got.optimal);
  // The reported sequence is the canonical rotation of its class.
  CHECK(canonicalRotation(got.bestTypes) == got.bestTypes);
  // Reported noises are recomputed on that representative.
  const Spectrum sp = profileSpectrum(PitchSequence(got.bestTypes, inst.catalog()),
                                      inst.catalog(), inst.fourierK());
  CHECK(got.exactNoise == exactNoise(sp).value);
  CHECK(got.approxNoise == approxNoise(sp).value);
  CHECK(got.exactHarmonic == exactNoise(sp).harmonic);
  // Log: strictly decreasing, final entry is the winner.
  REQUIRE(!got.incumbentLog.empty());
  for (std::size_t i = 1; i < got.incumbentLog.size(); ++i)
    CHECK(got.incumbentLog[i].exactNoise < got.incumbentLog[i - 1].exactNoise);
  CHECK(got.incumbentLog.back().types == got.bestTypes);
  CHECK(got.incumbentLog.back().exactNoise == got.exactNoise);
  CHECK(incumbentLog(got).size() == got.incumbentLog.size());
  // Per-length table: the optimum is the minimum over tire lengths.
  double minOverLengths = 1e300;
  for (const auto& [j, v] : got.perLengthBest) {
    CHECK(j >= 0);
    CHECK(j < inst.emptySlotCount());
    minOverLengths = std::min(minOverLengths, v);
  }
  CHECK(minOverLengths == doctest::Approx(got.exactNoise).epsilon(1e-9));
  CHECK(got.nodesExplored > 0);
  CHECK(got.candidatesEvaluated > 0);
  CHECK(got.bestString().size() == 6);
}

TEST_CASE("the three symmetry options return the same optimum") {
  const PitchCatalog cat = catalog456();
  const Instance inst(cat, 8, {1, 1, 1}, {6, 6, 6}, {}, {}, 12);
  const SolveResult none = solveExact(inst, withSymmetry(Symmetry::kNone));
  const SolveResult fix = solveExact(inst, withSymmetry(Symmetry::kFixFirst));
  const SolveResult cuts = solveExact(inst, withSymmetry(Symmetry::kRotationCuts));
  REQUIRE(none.feasible);
  // Bit-identical: all modes report the same canonical representative.
  CHECK(none.exactNoise == fix.exactNoise);
  CHECK(none.exactNoise == cuts.exactNoise);
  CHECK(none.bestTypes == fix.bestTypes);
  CHECK(none.bestTypes == cuts.bestTypes);
  // Rotation cuts prune real work.
  CHECK(cuts.candidatesEvaluated < none.candidatesEvaluated);
}

TEST_CASE("fix-first requires the first type to be forced") {
  const Instance inst = plainInstance(catalog456(), 5);  // minOcc all 0
  CHECK_THROWS_AS(solveExact(inst, withSymmetry(Symmetry::kFixFirst)), std::invalid_argument);
}

TEST_CASE("an infeasible occurrence window is reported, not searched") {
  const PitchCatalog cat = catalog456();
  const Instance inst(cat, 5, {3, 3, 3}, {5, 5, 5}, {}, {}, 8);  // needs 9 pitches
  const SolveResult got = solveExact(inst);
  CHECK_FALSE(got.feasible);
  CHECK(got.optimal);
  CHECK(got.nodesExplored == 0);
}

TEST_CASE("solveApprox minimizes the approximated reading") {
  for (int n = 4; n <= 6; ++n) {
    const Instance inst = plainInstance(catalog456(), n);
    const OracleBest oracle = oracleSolve(inst, false);
    const SolveResult got = solveApprox(inst);
    REQUIRE(got.feasible);
    CHECK(got.approxNoise == doctest::Approx(oracle.noise).epsilon(1e-12));
    // The approx search reports the literal first minimizer in tuple order.
    CHECK(got.bestTypes == oracle.types);
    // Sandwich between the two readings of the same sequence.
    CHECK(got.approxNoise <= got.exactNoise * (1 + 1e-12));
    CHECK(got.exactNoise <= std::sqrt(2.0) * got.approxNoise * (1 + 1e-12));
  }
}

TEST_CASE("solveApprox reports the gap against a supplied optimum") {
  const Instance inst = plainInstance(catalog456(), 5);
  const SolveResult exact = solveExact(inst);
  const SolveResult approx = solveApprox(inst, exact.exactNoise);
  REQUIRE(approx.feasible);
  REQUIRE(approx.gapPercent.has_value());
  const double expected =
      (approx.exactNoise - exact.exactNoise) / approx.exactNoise * 100.0;
  CHECK(*approx.gapPercent == doctest::Approx(expected).epsilon(1e-12));
  CHECK(*approx.gapPercent >= -1e-9);  // the real noise of any sequence bounds the optimum
}

TEST_CASE("a seeded upper bound preserves the optimum") {
  const Instance inst = plainInstance(catalog456(), 6);
  const SolveResult plain = solveExact(inst);
  SearchOptions seeded;
  seeded.seedUpperBound = plain.exactNoise;  // exactly the optimum
  const SolveResult got = solveExact(inst, seeded);
  REQUIRE(got.feasible);
  CHECK(got.exactNoise == plain.exactNoise);
  CHECK(got.bestTypes == plain.bestTypes);
}

TEST_CASE("a time limit stops the search and clears the optimal flag") {
  const Instance inst = plainInstance(catalog456(), 13);
  SearchOptions o;
  o.timeLimitSec = 0.02;
  const SolveResult got = solveExact(inst, o);
  CHECK_FALSE(got.optimal);
  CHECK(got.wallTimeSec < 5.0);
  if (got.feasible) {
    CHECK(!got.bestTypes.empty());
    CHECK(got.exactNoise > 0.0);
  }
}

TEST_CASE("large instances demand an explicit time limit") {
  const Instance inst = plainInstance(catalog456(), 17);
  CHECK_THROWS_AS(solveExact(inst), std::invalid_argument);
  CHECK_THROWS_AS(solveApprox(inst), std::invalid_argument);
  SearchOptions o;
  o.timeLimitSec = 0.01;
  const SolveResult got = solveExact(inst, o);  // budgeted run is accepted
  CHECK_FALSE(got.optimal);
}

TEST_CASE("worker parallelism does not change the reported result") {
  const PitchCatalog cat = catalog456();
  const Instance inst(cat, 9, {1, 1, 1}, {7, 7, 7}, {2, 3, 3}, {}, 13);
  const SolveResult one = solveExact(inst);
  SearchOptions par;
  par.workers = 4;
  const SolveResult four = solveExact(inst, par);
  REQUIRE(one.feasible);
  REQUIRE(four.feasible);
  CHECK(one.exactNoise == four.exactNoise);
  CHECK(one.bestTypes == four.bestTypes);
  CHECK(one.candidatesEvaluated == four.candidatesEvaluated);

  const SolveResult oneApprox = solveApprox(inst);
  const SolveResult fourApprox = solveApprox(inst, std::nullopt, par);
  CHECK(oneApprox.approxNoise == fourApprox.approxNoise);
  CHECK(oneApprox.bestTypes == fourApprox.bestTypes);
}
