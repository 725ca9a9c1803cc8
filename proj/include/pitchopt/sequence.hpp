#pragma once

#include <string>
#include <vector>

#include "pitchopt/catalog.hpp"
#include "pitchopt/instance.hpp"

namespace pitchopt {

/// An ordered pitch sequence around the tire. Types are 0-based indices
/// into the catalog; positions and the total length are in units.
class PitchSequence {
 public:
  PitchSequence(std::vector<int> types, const PitchCatalog& catalog);

  const std::vector<int>& types() const { return types_; }
  int size() const { return static_cast<int>(types_.size()); }
  int totalLength() const { return totalLength_; }
  const std::vector<int>& lengths() const { return lengths_; }

  /// 1-based start positions: startPositions()[0] == 1 and the last pitch
  /// ends exactly at totalLength().
  std::vector<int> startPositions() const;
  /// 0-based start offsets (cumulative length before each pitch).
  const std::vector<int>& startOffsets() const { return offsets_; }

  /// Digit string, types printed 1-based ("1311323331").
  std::string str() const;
  static PitchSequence fromString(const std::string& digits, const PitchCatalog& catalog);

  friend bool operator==(const PitchSequence& a, const PitchSequence& b) {
    return a.types_ == b.types_;
  }

 private:
  std::vector<int> types_;
  std::vector<int> lengths_;
  std::vector<int> offsets_;
  int totalLength_;
};

/// Per-constraint validity of a sequence against an instance. Adjacency and
/// run-length are reported twice: with the wrap between last and first pitch
/// counted (the tire is a circle) and without (the linear reading used by
/// the positional model).
struct ValidityReport {
  bool occurrenceOk = true;
  bool incompatibilityCyclicOk = true;
  bool incompatibilityLinearOk = true;
  bool maxSeqCyclicOk = true;
  bool maxSeqLinearOk = true;
  std::vector<std::string> failures;

  bool allCyclicOk() const { return occurrenceOk && incompatibilityCyclicOk && maxSeqCyclicOk; }
  bool allLinearOk() const { return occurrenceOk && incompatibilityLinearOk && maxSeqLinearOk; }
};

ValidityReport validateSequence(const PitchSequence& seq, const Instance& inst);

/// Lexicographically minimal rotation of the type vector. Noise-preserving:
/// members of a rotation class share their peak modulus spectrum.
std::vector<int> canonicalRotation(const std::vector<int>& types);

/// Lexicographically minimal vector over all rotations of the sequence and
/// all rotations of its reversal. Two sequences compare equal here iff they
/// are rotation/reflection equivalent.
std::vector<int> canonicalForm(const std::vector<int>& types);

PitchSequence canonicalForm(const PitchSequence& seq, const PitchCatalog& catalog);

}  // namespace pitchopt
