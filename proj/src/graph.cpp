#include "pitchopt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "pitchopt/spectrum.hpp"

namespace pitchopt {

PitchGraph::PitchGraph(const PitchCatalog& catalog, int tireLength, int fourierK)
    : catalog_(&catalog), slice_(catalog, tireLength, fourierK) {
  const int t = tireLength;
  const int r = catalog.typeCount();
  for (int p = 0; p < r; ++p) arcs_.push_back({sourceId(), nodeId(p, 1), -1});
  for (int p = 0; p < r; ++p) {
    const int l = catalog.length(p);
    for (int i = 1; i + l - 1 <= t; ++i) {
      const int col = slice_.column(p, i - 1);
      const int next = i + l;
      if (next > t) {
        arcs_.push_back({nodeId(p, i), sinkId(), col});
      } else {
        for (int pn = 0; pn < r; ++pn) arcs_.push_back({nodeId(p, i), nodeId(pn, next), col});
      }
    }
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) {
    return std::tie(x.from, x.to) < std::tie(y.from, y.to);
  });
}

int PitchGraph::nodeCount() const { return catalog_->typeCount() * tireLength() + 2; }

int PitchGraph::nodeId(int type, int position) const {
  return 2 + type * tireLength() + (position - 1);
}

std::optional<VarRef> PitchGraph::nodeRef(int id) const {
  if (id < 2 || id >= nodeCount()) return std::nullopt;
  const int k = id - 2;
  return VarRef{k / tireLength(), k % tireLength()};
}

std::int64_t PitchGraph::countPaths(int nPitches) const {
  if (nPitches < 1) return 0;
  const int t = tireLength();
  // ways[i] after m rounds = number of m-pitch tilings of the first i units.
  std::vector<std::int64_t> ways(static_cast<std::size_t>(t) + 1, 0);
  ways[0] = 1;
  for (int m = 0; m < nPitches; ++m) {
    std::vector<std::int64_t> next(static_cast<std::size_t>(t) + 1, 0);
    for (int i = 0; i <= t; ++i) {
      if (ways[static_cast<std::size_t>(i)] == 0) continue;
      for (int p = 0; p < catalog_->typeCount(); ++p) {
        const int j = i + catalog_->length(p);
        if (j <= t) next[static_cast<std::size_t>(j)] += ways[static_cast<std::size_t>(i)];
      }
    }
    ways.swap(next);
  }
  return ways[static_cast<std::size_t>(t)];
}

void PitchGraph::forEachPath(
    int nPitches, const std::function<void(const std::vector<int>&)>& visit) const {
  if (nPitches < 1) return;
  const int t = tireLength();
  const int r = catalog_->typeCount();

  // reach[m][i]: an m-pitch tiling of the last t-i units exists. Pruning on
  // it makes the walk linear in the number of emitted paths.
  std::vector<std::vector<char>> reach(static_cast<std::size_t>(nPitches) + 1,
                                       std::vector<char>(static_cast<std::size_t>(t) + 1, 0));
  reach[0][static_cast<std::size_t>(t)] = 1;
  for (int m = 1; m <= nPitches; ++m)
    for (int i = 0; i <= t; ++i)
      for (int p = 0; p < r && !reach[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]; ++p) {
        const int j = i + catalog_->length(p);
        if (j <= t && reach[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j)])
          reach[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] = 1;
      }

  std::vector<int> types;
  types.reserve(static_cast<std::size_t>(nPitches));
  auto walk = [&](auto&& self, int pos, int remaining) -> void {
    if (remaining == 0) {
      if (pos == t) visit(types);
      return;
    }
    for (int p = 0; p < r; ++p) {
      const int next = pos + catalog_->length(p);
      if (next > t) continue;
      if (!reach[static_cast<std::size_t>(remaining - 1)][static_cast<std::size_t>(next)]) continue;
      types.push_back(p);
      self(self, next, remaining - 1);
      types.pop_back();
    }
  };
  walk(walk, 0, nPitches);
}

std::vector<PitchSequence> PitchGraph::enumeratePaths(int nPitches) const {
  std::vector<PitchSequence> out;
  forEachPath(nPitches, [&](const std::vector<int>& types) {
    out.emplace_back(types, *catalog_);
  });
  return out;
}

void PitchGraph::dumpEdgeList(std::ostream& out) const {
  auto label = [&](int id) -> std::string {
    if (id == sourceId()) return "s";
    if (id == sinkId()) return "t";
    const auto ref = nodeRef(id);
    return "v" + std::to_string(ref->type + 1) + "_" + std::to_string(ref->start + 1);
  };
  for (const auto& arc : arcs_) out << label(arc.from) << ' ' << label(arc.to) << '\n';
}

PathSearchResult minNoisePath(const PitchGraph& graph, int nPitches, NoiseObjective objective) {
  PathSearchResult result;
  const ContributionSlice& slice = graph.slice();
  const int kMax = slice.fourierK();

  Eigen::VectorXd a(kMax + 1), b(kMax + 1);
  std::vector<int> bestCanonical;
  graph.forEachPath(nPitches, [&](const std::vector<int>& types) {
    ++result.pathsExamined;
    a.setZero();
    b.setZero();
    int pos = 0;
    for (int p : types) {
      const int c = slice.column(p, pos);
      a += slice.A().col(c);
      b += slice.B().col(c);
      pos += graph.catalog().length(p);
    }
    double peak = 0.0;
    int harmonic = 0;
    for (int k = 1; k <= kMax; ++k) {
      const double v = objective == NoiseObjective::kExact
                           ? std::hypot(a[k], b[k])
                           : std::max(std::abs(a[k]), std::abs(b[k]));
      if (v > peak) {
        peak = v;
        harmonic = k;
      }
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(result.noise));
    if (!result.feasible || peak < result.noise - tol) {
      result.feasible = true;
      result.noise = peak;
      result.harmonic = harmonic;
      result.types = types;
      bestCanonical = canonicalForm(types);
    } else if (peak <= result.noise + tol) {
      auto cand = canonicalForm(types);
      if (cand < bestCanonical) {
        result.noise = std::min(result.noise, peak);
        result.harmonic = harmonic;
        result.types = types;
        bestCanonical = std::move(cand);
      }
    }
  });
  return result;
}

}  // namespace pitchopt
