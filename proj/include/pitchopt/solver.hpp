#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pitchopt/instance.hpp"
#include "pitchopt/sequence.hpp"
#include "pitchopt/spectrum.hpp"

namespace pitchopt {

enum class Symmetry { kNone, kFixFirst, kRotationCuts };

struct SearchOptions {
  Symmetry symmetry = Symmetry::kRotationCuts;
  /// Objective value of a known feasible sequence (e.g. a GA result), used
  /// to pre-seed pruning. Must be attainable: a bound below the true
  /// optimum prunes every candidate and the search reports infeasible.
  std::optional<double> seedUpperBound;
  /// Wall-time budget. Optional up to 16 pitches; instances with more than
  /// 16 pitches are rejected without one (exhaustive search beyond that is
  /// a matter of days, not minutes — give a budget or use the GA).
  std::optional<double> timeLimitSec;
  int workers = 1;  // search tree partitioned by leading pitch types
};

struct IncumbentRecord {
  std::vector<int> types;
  double exactNoise = 0.0;
  double timeSec = 0.0;
};

struct SolveResult {
  bool feasible = false;
  bool optimal = false;  // false when a time limit cut the search short
  /// Winning sequence: the canonical rotation of its class for solveExact
  /// (exact noise is rotation invariant); the literal tuple found for
  /// solveApprox (the approximated reading is rotation sensitive).
  std::vector<int> bestTypes;
  double exactNoise = 0.0;
  double approxNoise = 0.0;  // of the same sequence
  int exactHarmonic = 0;
  int approxHarmonic = 0;
  std::int64_t nodesExplored = 0;
  std::int64_t candidatesEvaluated = 0;
  int incumbentUpdates = 0;
  double wallTimeSec = 0.0;
  /// j (trailing empty units) -> best value of the driving objective among
  /// sequences of tire length lmax - j (exact noise for solveExact, approx
  /// noise for solveApprox).
  std::map<int, double> perLengthBest;
  std::vector<IncumbentRecord> incumbentLog;
  /// Gap of this result's exact noise versus a supplied optimum, in percent
  /// of this result's exact noise.
  std::optional<double> gapPercent;

  std::string bestString() const;
};

/// Globally minimal exact noise over every feasible sequence and every tire
/// length. Exhaustive over the constraint-feasible type tuples; symmetry
/// options only change how many duplicates of each rotation class are
/// evaluated, never the optimum. An infeasible occurrence window yields a
/// result with feasible == false. kFixFirst needs minOcc of type 1 to be at
/// least 1 and is otherwise rejected with std::invalid_argument.
SolveResult solveExact(const Instance& instance, const SearchOptions& options = {});

/// Same search engine driven by the approximated noise max(|a_k|, |b_k|),
/// the objective the positional model minimizes. No symmetry reduction is
/// sound here (the approximated reading is not rotation invariant), so every
/// feasible tuple is evaluated. Reports both noises of the winner and, when
/// `knownOptimal` is given, the percentage gap of its real noise versus it.
SolveResult solveApprox(const Instance& instance,
                        std::optional<double> knownOptimal = std::nullopt,
                        const SearchOptions& options = {});

/// The incumbent log of a result: noise values are strictly decreasing and
/// the final entry matches the best sequence.
const std::vector<IncumbentRecord>& incumbentLog(const SolveResult& result);

}  // namespace pitchopt
