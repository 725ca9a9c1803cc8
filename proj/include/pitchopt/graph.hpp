#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pitchopt/contribution.hpp"
#include "pitchopt/sequence.hpp"

namespace pitchopt {

/// Layered start-position graph for a tire of fixed length T: node v_p^i
/// means "a pitch of type p starts at position i". Arcs run from each pitch
/// to every pitch that can start where it ends; s fans out to position 1
/// and arcs into t leave pitches ending exactly at T. Arcs departing v_p^i
/// carry the contribution column of (p, i) as their harmonic weights.
class PitchGraph {
 public:
  struct Arc {
    int from;  // node id
    int to;    // node id
    int weightColumn;  // column in the slice; -1 for source arcs
  };

  PitchGraph(const PitchCatalog& catalog, int tireLength, int fourierK);

  int tireLength() const { return slice_.tireLength(); }
  int nodeCount() const;  // r*T pitch nodes plus s and t
  int arcCount() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const ContributionSlice& slice() const { return slice_; }
  const PitchCatalog& catalog() const { return *catalog_; }

  int sourceId() const { return 0; }
  int sinkId() const { return 1; }
  /// Node id of v_p^i (i 1-based).
  int nodeId(int type, int position) const;
  /// Inverse of nodeId; returns nothing for s/t.
  std::optional<VarRef> nodeRef(int id) const;

  /// Number of s-t paths with exactly nPitches pitch arcs (dynamic
  /// programming; no enumeration).
  std::int64_t countPaths(int nPitches) const;

  /// All s-t paths of exactly nPitches pitches, as pitch sequences of total
  /// length T, in lexicographic type order.
  std::vector<PitchSequence> enumeratePaths(int nPitches) const;

  /// Calls visit(types) for each path without materializing the list.
  void forEachPath(int nPitches, const std::function<void(const std::vector<int>&)>& visit) const;

  /// Plain text edge list: one arc per line "from to" using v_p_i labels.
  void dumpEdgeList(std::ostream& out) const;

 private:
  const PitchCatalog* catalog_;
  ContributionSlice slice_;
  std::vector<Arc> arcs_;
};

enum class NoiseObjective { kExact, kApprox };

struct PathSearchResult {
  bool feasible = false;
  std::vector<int> types;  // empty when infeasible
  double noise = 0.0;
  int harmonic = 0;
  std::int64_t pathsExamined = 0;
};

/// Minimum-noise path among all nPitches-pitch s-t paths: sums the arc
/// weight columns along each path and takes the peak harmonic under the
/// chosen objective. Ties go to the path whose canonical form is
/// lexicographically smallest.
PathSearchResult minNoisePath(const PitchGraph& graph, int nPitches, NoiseObjective objective);

}  // namespace pitchopt
