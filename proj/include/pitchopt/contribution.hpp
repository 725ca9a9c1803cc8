#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pitchopt/instance.hpp"
#include "pitchopt/sequence.hpp"
#include "pitchopt/spectrum.hpp"

namespace pitchopt {

/// Column identity within a contribution slice: pitch type p (0-based)
/// starting at unit offset `start` (0-based; the conventional 1-based
/// position is start+1).
struct VarRef {
  int type = 0;
  int start = 0;
};

/// Per-pitch Fourier contribution table for one tire length T: column
/// (p, i) holds the a_k and b_k contributions of a single pitch of type p
/// starting at unit i on a tire of period T. Summing the columns of any
/// exact tiling reproduces the profile spectrum coefficients for k >= 1;
/// row 0 of A sums to the profile mean (half of a_0).
class ContributionSlice {
 public:
  ContributionSlice(const PitchCatalog& catalog, int tireLength, int fourierK);

  int tireLength() const { return tireLength_; }
  int fourierK() const { return fourierK_; }
  int columnCount() const { return static_cast<int>(vars_.size()); }
  const std::vector<VarRef>& vars() const { return vars_; }

  /// Column index for type p starting at 0-based offset `start`;
  /// -1 when the pitch does not fit.
  int column(int type, int start) const;

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::MatrixXd& B() const { return B_; }
  double a(int k, int type, int start) const { return A_(k, column(type, start)); }
  double b(int k, int type, int start) const { return B_(k, column(type, start)); }

  /// Accumulates the spectrum of a tiling given as (type, start-offset)
  /// pitches; offsets must tile [0, T) exactly for the result to equal the
  /// profile spectrum.
  Spectrum spectrumOf(const std::vector<int>& types, const std::vector<int>& startOffsets) const;

 private:
  const PitchCatalog* catalog_;
  int tireLength_;
  int fourierK_;
  std::vector<VarRef> vars_;
  std::vector<int> colBase_;  // per type: first column index
  Eigen::MatrixXd A_;         // (K+1) x columnCount
  Eigen::MatrixXd B_;         // (K+1) x columnCount, row 0 zero
};

/// The full A_{k,j,i,p} / B_{k,j,i,p} family over all trailing-empty-unit
/// counts j of an instance. Slice j describes tires of length lmax - j.
class ContributionTables {
 public:
  explicit ContributionTables(const Instance& instance);

  const Instance& instance() const { return *instance_; }
  int sliceCount() const { return static_cast<int>(slices_.size()); }
  const ContributionSlice& slice(int j) const { return slices_[static_cast<std::size_t>(j)]; }

  /// Convention-following accessors: j trailing empty units, i 1-based start
  /// position, p 0-based type.
  double A(int k, int j, int i, int p) const { return slice(j).a(k, p, i - 1); }
  double B(int k, int j, int i, int p) const { return slice(j).b(k, p, i - 1); }

 private:
  const Instance* instance_;
  std::vector<ContributionSlice> slices_;
};

}  // namespace pitchopt
