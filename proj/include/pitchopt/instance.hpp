#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pitchopt/catalog.hpp"

namespace pitchopt {

/// Genetic algorithm configuration, readable from the `ga.` section of an
/// instance file.
struct GaConfig {
  int populationSize = 1500;
  double crossoverProb = 0.3;
  double mutationProb = 0.15;
  enum class Selection { kRoulette, kRanking };
  Selection selection = Selection::kRanking;
  double selectionPressure = 0.4;
  int maxGenerations = 500;
  int stagnationLimit = 100;
  std::uint64_t rngSeed = 1;

  void validate() const;
};

/// One problem instance: a catalog, the pitch count N, per-type occurrence
/// bounds, per-type run-length caps (0 = unbounded), forbidden ordered
/// adjacencies, and the Fourier truncation K.
class Instance {
 public:
  Instance(PitchCatalog catalog, int pitchCount, std::vector<int> minOcc,
           std::vector<int> maxOcc, std::vector<int> maxSeq,
           std::set<std::pair<int, int>> incompatiblePairs, int fourierK);

  const PitchCatalog& catalog() const { return catalog_; }
  int pitchCount() const { return pitchCount_; }
  const std::vector<int>& minOcc() const { return minOcc_; }
  const std::vector<int>& maxOcc() const { return maxOcc_; }
  /// 0 means no cap for that type.
  const std::vector<int>& maxSeq() const { return maxSeq_; }
  /// Ordered pairs (a, b): a pitch of type b may not immediately follow one
  /// of type a. Types are 0-based here.
  const std::set<std::pair<int, int>>& incompatiblePairs() const { return incompatiblePairs_; }
  int fourierK() const { return fourierK_; }

  int minTireLength() const { return pitchCount_ * catalog_.minLength(); }
  int maxTireLength() const { return pitchCount_ * catalog_.maxLength(); }
  /// Number of possible trailing-empty-unit counts: j in {0 .. lmax - lmin}.
  int emptySlotCount() const { return maxTireLength() - minTireLength() + 1; }
  int tireLengthForSlots(int j) const { return maxTireLength() - j; }

  bool occurrenceWindowFeasible() const;

  const GaConfig& gaConfig() const { return gaConfig_; }
  GaConfig& gaConfig() { return gaConfig_; }

  /// Default Fourier truncation: 1.5 harmonics per pitch (capped at 200).
  /// The peak modulus of a valid pitch profile sits well below that horizon;
  /// this multiplier is the library's single spectral-precision calibration
  /// knob and reproduces the reference optima in the test corpus.
  static int defaultFourierK(int pitchCount);

  /// Parses the flat key=value instance file format (see README).
  static Instance loadFile(const std::string& path);
  static Instance parse(const std::string& text, const std::string& originName = "<string>");

 private:
  PitchCatalog catalog_;
  int pitchCount_;
  std::vector<int> minOcc_;
  std::vector<int> maxOcc_;
  std::vector<int> maxSeq_;
  std::set<std::pair<int, int>> incompatiblePairs_;
  int fourierK_;
  GaConfig gaConfig_;
};

}  // namespace pitchopt
