#pragma once

#include <iosfwd>

#include "pitchopt/instance.hpp"
#include "pitchopt/solver.hpp"

namespace pitchopt {

struct GaTracePoint {
  int generation = 0;
  double bestNoise = 0.0;
  double meanNoise = 0.0;
};

struct GaResult {
  SolveResult result;
  std::vector<GaTracePoint> trace;
  int generationsRun = 0;
};

/// Genetic-algorithm baseline: individuals are length-N type vectors kept
/// inside the occurrence window by repair, fitness is the exact noise.
/// Deterministic for a fixed rngSeed.
GaResult solveGa(const Instance& instance, const GaConfig& config);

/// CSV trace: generation,best,mean.
void writeGaTraceCsv(const GaResult& result, std::ostream& out);

}  // namespace pitchopt
