#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pitchopt/contribution.hpp"
#include "pitchopt/instance.hpp"
#include "pitchopt/sequence.hpp"

namespace pitchopt {

/// Which optional constraint blocks to generate alongside the core model.
struct MilpOptions {
  bool minMaxOcc = true;
  bool maxSeq = false;
  bool incompatibility = false;
  bool symmetryFix = false;  // pin the first position to type 1
};

enum class VarKind { kBinary, kContinuous };

struct MilpVar {
  std::string name;
  VarKind kind = VarKind::kBinary;
  double lb = 0.0;
  double ub = 1.0;
  bool freeVar = false;  // continuous with no bounds
};

enum class Sense { kLe, kEq, kGe };

struct MilpConstraint {
  std::string name;            // carries the source equation tag, e.g. "c8_fill"
  std::vector<int> vars;       // variable indices
  std::vector<double> coefs;   // matching coefficients
  Sense sense = Sense::kEq;
  double rhs = 0.0;
};

/// The positional model for one tire length T_j = lmax - j: binaries
/// x[p][i] marking a pitch of type p starting at position i, continuous
/// za_k / zb_k tracking the two coefficient families and z bounding their
/// absolute values from above. Minimizing z minimizes the approximated
/// noise of the encoded sequence.
class MilpModel {
 public:
  MilpModel(const Instance& instance, int emptySlots, const MilpOptions& options);

  const Instance& instance() const { return *instance_; }
  int emptySlots() const { return j_; }
  int tireLength() const { return slice_.tireLength(); }
  int fourierK() const { return slice_.fourierK(); }
  const ContributionSlice& slice() const { return slice_; }

  const std::vector<MilpVar>& variables() const { return vars_; }
  const std::vector<MilpConstraint>& constraints() const { return constraints_; }
  int binaryCount() const { return binaryCount_; }
  int continuousCount() const { return static_cast<int>(vars_.size()) - binaryCount_; }

  /// Variable indices. x positions use the conventional 1-based i.
  int xIndex(int type, int position) const;
  int zaIndex(int k) const;
  int zbIndex(int k) const;
  int zIndex() const;
  int objectiveVar() const { return zIndex(); }

  /// Binary vector (one entry per x variable, slice column order) encoding
  /// a sequence whose total length is this model's tire length.
  std::vector<int> encodeSequence(const PitchSequence& seq) const;
  /// Decodes a feasible binary vector back to the unique sequence it tiles.
  /// Throws std::invalid_argument when the assignment is not a tiling.
  PitchSequence decodeAssignment(const std::vector<int>& x) const;

 private:
  const Instance* instance_;
  int j_;
  ContributionSlice slice_;
  MilpOptions options_;
  std::vector<MilpVar> vars_;
  std::vector<MilpConstraint> constraints_;
  int binaryCount_ = 0;
  int zaBase_ = 0, zbBase_ = 0, zVar_ = 0;
};

struct AssignmentEvaluation {
  bool feasible = true;
  std::vector<std::string> violated;  // names of violated rows
  double objective = 0.0;             // z: max over k of max(|za_k|, |zb_k|)
  int harmonic = 0;
};

/// Substitutes a binary assignment, derives za/zb/z from it and checks every
/// stored row. The objective is reported even when infeasible.
AssignmentEvaluation evaluateAssignment(const MilpModel& model, const std::vector<int>& x,
                                        double tolerance = 1e-6);

/// Serializes the model in LP text format (objective, named rows, bounds,
/// binaries). Deterministic ordering.
void exportLp(const MilpModel& model, std::ostream& out);
void exportLpFile(const MilpModel& model, const std::string& path);

/// Section counts recovered by re-parsing an LP file.
struct LpCounts {
  int constraintCount = 0;
  int binaryCount = 0;
  int variableCount = 0;  // distinct names seen anywhere
};
LpCounts parseLpCounts(std::istream& in);
LpCounts parseLpCountsFile(const std::string& path);

}  // namespace pitchopt
