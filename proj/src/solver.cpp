#include "pitchopt/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pitchopt/contribution.hpp"

namespace pitchopt {

namespace {

using Clock = std::chrono::steady_clock;

double relTol(double reference) { return 1e-9 * std::max(1.0, std::abs(reference)); }

std::string typeDigits(const std::vector<int>& types) {
  bool wide = false;
  for (int t : types) wide = wide || t > 8;
  std::ostringstream os;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (wide && i) os << '.';
    os << types[i] + 1;
  }
  return os.str();
}

/// Pruning bound shared across worker threads; the authoritative winner is
/// merged from per-worker results afterwards.
struct SharedBound {
  std::atomic<double> value;
  explicit SharedBound(double v) : value(v) {}

  void lower(double v) {
    double cur = value.load(std::memory_order_relaxed);
    while (v < cur && !value.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  }
};

struct WorkerResult {
  bool found = false;
  std::vector<int> types;      // literal winning tuple
  std::vector<int> canonical;  // its canonical rotation
  double noise = 0.0;          // driving objective of the winner
  std::int64_t nodes = 0;
  std::int64_t evaluated = 0;
  std::map<int, double> perLength;
  std::vector<IncumbentRecord> log;
  int updates = 0;
  bool hitTimeLimit = false;
};

class Search {
 public:
  Search(const Instance& inst, bool exactObjective, Symmetry symmetry,
         std::optional<double> timeLimitSec, SharedBound& bound, Clock::time_point start)
      : inst_(inst),
        cat_(inst.catalog()),
        r_(cat_.typeCount()),
        n_(inst.pitchCount()),
        exactObjective_(exactObjective),
        symmetry_(symmetry),
        timeLimitSec_(timeLimitSec),
        bound_(bound),
        start_(start) {
    slices_.resize(static_cast<std::size_t>(inst.maxTireLength() - inst.minTireLength() + 1));
    types_.reserve(static_cast<std::size_t>(n_));
    occ_.assign(static_cast<std::size_t>(r_), 0);
    deficit_ = std::accumulate(inst_.minOcc().begin(), inst_.minOcc().end(), 0);
    a_.resize(inst_.fourierK() + 1);
    b_.resize(inst_.fourierK() + 1);
  }

  /// DFS over all tuples whose first two types match one of the given root
  /// blocks ((first, second) pairs; second is -1 for the N == 1 tree).
  void run(const std::vector<std::pair<int, int>>& roots) {
    for (const auto& [first, second] : roots) {
      if (stop_) break;
      if (!push(first)) continue;
      if (second < 0) {
        descend();
      } else if (push(second)) {
        descend();
        pop(second);
      }
      pop(first);
    }
  }

  WorkerResult take() { return std::move(result_); }

 private:
  bool timeExceeded() {
    if (!timeLimitSec_) return false;
    const double elapsed = std::chrono::duration<double>(Clock::now() - start_).count();
    return elapsed > *timeLimitSec_;
  }

  /// Appends type p if the monotone feasibility rules allow it; returns
  /// false without changing state otherwise.
  bool push(int p) {
    const int depth = static_cast<int>(types_.size());
    const auto pu = static_cast<std::size_t>(p);
    if (occ_[pu] + 1 > inst_.maxOcc()[pu]) return false;
    const bool towardMin = occ_[pu] < inst_.minOcc()[pu];
    const int deficitAfter = deficit_ - (towardMin ? 1 : 0);
    if (deficitAfter > n_ - depth - 1) return false;
    if (depth > 0) {
      const int last = types_.back();
      if (inst_.incompatiblePairs().count({last, p})) return false;
      const int cap = inst_.maxSeq()[pu];
      if (cap > 0 && p == last && runLen_ + 1 > cap) return false;
      // A canonical rotation starts with its minimal type.
      if (symmetry_ == Symmetry::kRotationCuts && p < types_.front()) return false;
    }
    prevRunLen_.push_back(runLen_);
    runLen_ = (depth > 0 && types_.back() == p) ? runLen_ + 1 : 1;
    types_.push_back(p);
    ++occ_[pu];
    deficit_ = deficitAfter;
    length_ += cat_.length(p);
    return true;
  }

  void pop(int p) {
    const auto pu = static_cast<std::size_t>(p);
    types_.pop_back();
    --occ_[pu];
    if (occ_[pu] < inst_.minOcc()[pu]) ++deficit_;
    runLen_ = prevRunLen_.back();
    prevRunLen_.pop_back();
    length_ -= cat_.length(p);
  }

  void descend() {
    ++result_.nodes;
    if ((result_.nodes & 0x1fff) == 0 && timeExceeded()) {
      stop_ = true;
      result_.hitTimeLimit = true;
      return;
    }
    if (static_cast<int>(types_.size()) == n_) {
      leaf();
      return;
    }
    for (int p = 0; p < r_; ++p) {
      if (!push(p)) continue;
      descend();
      pop(p);
      if (stop_) return;
    }
  }

  bool cyclicFeasible() const {
    if (inst_.incompatiblePairs().count({types_.back(), types_.front()})) return false;
    const int p = types_.front();
    if (types_.back() == p) {
      const int cap = inst_.maxSeq()[static_cast<std::size_t>(p)];
      if (cap > 0) {
        int head = 0;
        while (head < n_ && types_[static_cast<std::size_t>(head)] == p) ++head;
        if (head == n_) return n_ <= cap;
        int tail = 0;
        while (types_[static_cast<std::size_t>(n_ - 1 - tail)] == p) ++tail;
        if (head + tail > cap) return false;
      }
    }
    return true;
  }

  const ContributionSlice& sliceFor(int tireLength) {
    auto& slot = slices_[static_cast<std::size_t>(tireLength - inst_.minTireLength())];
    if (!slot) slot.emplace(cat_, tireLength, inst_.fourierK());
    return *slot;
  }

  void leaf() {
    if (!cyclicFeasible()) return;
    if (symmetry_ == Symmetry::kRotationCuts && canonicalRotation(types_) != types_) return;

    const ContributionSlice& slice = sliceFor(length_);
    a_.setZero();
    b_.setZero();
    int pos = 0;
    for (int p : types_) {
      const int col = slice.column(p, pos);
      a_ += slice.A().col(col);
      b_ += slice.B().col(col);
      pos += cat_.length(p);
    }
    double peak = 0.0;
    for (int k = 1; k <= inst_.fourierK(); ++k) {
      const double v = exactObjective_ ? std::hypot(a_[k], b_[k])
                                       : std::max(std::abs(a_[k]), std::abs(b_[k]));
      if (v > peak) peak = v;
    }
    ++result_.evaluated;

    const int j = inst_.maxTireLength() - length_;
    auto [it, inserted] = result_.perLength.try_emplace(j, peak);
    if (!inserted && peak < it->second) it->second = peak;

    const double shared = bound_.value.load(std::memory_order_relaxed);
    if (peak > shared + relTol(shared)) return;  // cannot beat or tie any incumbent

    if (!result_.found || peak < result_.noise - relTol(result_.noise)) {
      result_.found = true;
      result_.noise = peak;
      result_.types = types_;
      result_.canonical = canonicalRotation(types_);
      const double t = std::chrono::duration<double>(Clock::now() - start_).count();
      result_.log.push_back({result_.canonical, peak, t});
      ++result_.updates;
      bound_.lower(peak);
    } else if (exactObjective_ && peak <= result_.noise + relTol(result_.noise)) {
      // Same noise class under the rotation-invariant objective: keep the
      // lexicographically smallest representative, refreshing in place.
      auto cand = canonicalRotation(types_);
      if (cand < result_.canonical) {
        result_.noise = std::min(result_.noise, peak);
        result_.types = types_;
        result_.canonical = std::move(cand);
        if (!result_.log.empty()) {
          result_.log.back().types = result_.canonical;
          result_.log.back().exactNoise = result_.noise;
        }
      }
    }
  }

  const Instance& inst_;
  const PitchCatalog& cat_;
  int r_;
  int n_;
  bool exactObjective_;
  Symmetry symmetry_;
  std::optional<double> timeLimitSec_;
  SharedBound& bound_;
  Clock::time_point start_;

  std::vector<std::optional<ContributionSlice>> slices_;
  std::vector<int> types_;
  std::vector<int> occ_;
  std::vector<int> prevRunLen_;
  int deficit_ = 0;
  int runLen_ = 0;
  int length_ = 0;
  bool stop_ = false;
  Eigen::VectorXd a_, b_;
  WorkerResult result_;
};

SolveResult runSearch(const Instance& instance, bool exactObjective, Symmetry symmetry,
                      const SearchOptions& options, std::optional<double> knownOptimal) {
  // Exhaustive search beyond 16 pitches is out of desk scale; demand an
  // explicit wall-time budget instead of running open-ended for days.
  if (instance.pitchCount() > 16 && !options.timeLimitSec)
    throw std::invalid_argument(
        "exhaustive search over more than 16 pitches requires an explicit time limit");
  SolveResult result;
  const auto start = Clock::now();
  if (!instance.occurrenceWindowFeasible()) {
    result.feasible = false;
    result.optimal = true;
    return result;
  }
  if (symmetry == Symmetry::kFixFirst && instance.minOcc()[0] < 1)
    throw std::invalid_argument(
        "symmetry fix-first requires the first type's minOcc to be at least 1");

  const int r = instance.catalog().typeCount();
  const int n = instance.pitchCount();

  std::vector<std::pair<int, int>> roots;
  for (int p0 = 0; p0 < r; ++p0) {
    if (symmetry == Symmetry::kFixFirst && p0 != 0) continue;
    if (n == 1) {
      roots.emplace_back(p0, -1);
    } else {
      for (int p1 = 0; p1 < r; ++p1) roots.emplace_back(p0, p1);
    }
  }

  const int workers = std::max(1, options.workers);
  SharedBound bound(options.seedUpperBound ? *options.seedUpperBound
                                           : std::numeric_limits<double>::infinity());

  std::vector<WorkerResult> partials;
  if (workers == 1) {
    Search search(instance, exactObjective, symmetry, options.timeLimitSec, bound, start);
    search.run(roots);
    partials.push_back(search.take());
  } else {
    partials.resize(static_cast<std::size_t>(workers));
    std::vector<std::vector<std::pair<int, int>>> assigned(static_cast<std::size_t>(workers));
    for (std::size_t i = 0; i < roots.size(); ++i)
      assigned[i % static_cast<std::size_t>(workers)].push_back(roots[i]);
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        Search search(instance, exactObjective, symmetry, options.timeLimitSec, bound, start);
        search.run(assigned[static_cast<std::size_t>(w)]);
        partials[static_cast<std::size_t>(w)] = search.take();
      });
    }
    for (auto& t : threads) t.join();
  }

  // Deterministic merge: global minimum; ties go to the lexicographically
  // smallest canonical rotation (exact) or literal tuple (approx), matching
  // the single-worker first-found-in-lex-order behavior.
  bool timedOut = false;
  const WorkerResult* winner = nullptr;
  for (const WorkerResult& part : partials) {
    result.nodesExplored += part.nodes;
    result.candidatesEvaluated += part.evaluated;
    timedOut = timedOut || part.hitTimeLimit;
    for (const auto& [j, v] : part.perLength) {
      auto [it, inserted] = result.perLengthBest.try_emplace(j, v);
      if (!inserted && v < it->second) it->second = v;
    }
    if (!part.found) continue;
    const auto& key = exactObjective ? part.canonical : part.types;
    const auto* winnerKey = winner ? (exactObjective ? &winner->canonical : &winner->types) : nullptr;
    if (!winner || part.noise < winner->noise - relTol(winner->noise) ||
        (part.noise <= winner->noise + relTol(winner->noise) && key < *winnerKey))
      winner = &part;
  }

  result.optimal = !timedOut;
  if (!winner) {
    result.feasible = false;
    result.wallTimeSec = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
  }

  result.feasible = true;
  result.incumbentUpdates = winner->updates;
  result.incumbentLog = winner->log;

  // Report on one fixed representative so every symmetry option (and worker
  // count) prints bit-identical numbers. Exact noise is rotation invariant;
  // the approximated objective is not, so the approx search keeps the tuple
  // it actually found.
  result.bestTypes = exactObjective ? winner->canonical : winner->types;
  const PitchSequence best(result.bestTypes, instance.catalog());
  const Spectrum spectrum = profileSpectrum(best, instance.catalog(), instance.fourierK());
  const NoisePeak exact = exactNoise(spectrum);
  const NoisePeak approx = approxNoise(spectrum);
  result.exactNoise = exact.value;
  result.exactHarmonic = exact.harmonic;
  result.approxNoise = approx.value;
  result.approxHarmonic = approx.harmonic;
  if (!result.incumbentLog.empty()) {
    result.incumbentLog.back().types = result.bestTypes;
    result.incumbentLog.back().exactNoise = exactObjective ? result.exactNoise : result.approxNoise;
  }
  if (knownOptimal)
    result.gapPercent = (result.exactNoise - *knownOptimal) / result.exactNoise * 100.0;
  result.wallTimeSec = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace

std::string SolveResult::bestString() const { return typeDigits(bestTypes); }

SolveResult solveExact(const Instance& instance, const SearchOptions& options) {
  return runSearch(instance, true, options.symmetry, options, std::nullopt);
}

SolveResult solveApprox(const Instance& instance, std::optional<double> knownOptimal,
                        const SearchOptions& options) {
  // The approximated reading is not rotation invariant, so no symmetry
  // reduction is sound here: every feasible tuple is enumerated.
  return runSearch(instance, false, Symmetry::kNone, options, knownOptimal);
}

const std::vector<IncumbentRecord>& incumbentLog(const SolveResult& result) {
  return result.incumbentLog;
}

}  // namespace pitchopt
