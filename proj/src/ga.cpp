#include "pitchopt/ga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "pitchopt/contribution.hpp"

namespace pitchopt {

namespace {

using Clock = std::chrono::steady_clock;

// Hand-rolled draws: the standard distributions are implementation-defined,
// and fixed-seed runs must reproduce bit-identically everywhere.
double uniformDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniformInt(std::mt19937_64& rng, int bound) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

/// Exact-noise fitness with a cached contribution slice per tire length.
class Fitness {
 public:
  explicit Fitness(const Instance& inst)
      : inst_(inst),
        slices_(static_cast<std::size_t>(inst.maxTireLength() - inst.minTireLength() + 1)),
        a_(inst.fourierK() + 1),
        b_(inst.fourierK() + 1) {}

  double operator()(const std::vector<int>& types) {
    const PitchCatalog& cat = inst_.catalog();
    int length = 0;
    for (int p : types) length += cat.length(p);
    auto& slot = slices_[static_cast<std::size_t>(length - inst_.minTireLength())];
    if (!slot) slot.emplace(cat, length, inst_.fourierK());
    a_.setZero();
    b_.setZero();
    int pos = 0;
    for (int p : types) {
      const int col = slot->column(p, pos);
      a_ += slot->A().col(col);
      b_ += slot->B().col(col);
      pos += cat.length(p);
    }
    double peak = 0.0;
    for (int k = 1; k <= inst_.fourierK(); ++k)
      peak = std::max(peak, std::hypot(a_[k], b_[k]));
    lastLength_ = length;
    return peak;
  }

  int lastLength() const { return lastLength_; }

 private:
  const Instance& inst_;
  std::vector<std::optional<ContributionSlice>> slices_;
  Eigen::VectorXd a_, b_;
  int lastLength_ = 0;
};

/// Penalty added to the fitness of individuals violating the cyclic
/// adjacency / run-length constraints; keeps selection pressure pointing at
/// the feasible region without ever letting a violator win.
constexpr double kInfeasiblePenalty = 1e9;

bool cyclicOk(const std::vector<int>& types, const Instance& inst) {
  if (inst.incompatiblePairs().empty() &&
      std::all_of(inst.maxSeq().begin(), inst.maxSeq().end(), [](int c) { return c == 0; }))
    return true;
  const PitchSequence seq(types, inst.catalog());
  const ValidityReport rep = validateSequence(seq, inst);
  return rep.allCyclicOk();
}

/// Forces the occurrence counts into [minOcc, maxOcc] by randomly
/// reassigning surplus genes.
void repair(std::vector<int>& types, const Instance& inst, std::mt19937_64& rng) {
  const int r = inst.catalog().typeCount();
  const int n = static_cast<int>(types.size());
  std::vector<int> occ(static_cast<std::size_t>(r), 0);
  for (int t : types) ++occ[static_cast<std::size_t>(t)];

  auto overCap = [&]() {
    for (int p = 0; p < r; ++p)
      if (occ[static_cast<std::size_t>(p)] > inst.maxOcc()[static_cast<std::size_t>(p)]) return p;
    return -1;
  };
  for (int p = overCap(); p >= 0; p = overCap()) {
    // A random position holding the surplus type moves to a random type
    // with headroom.
    int pick = uniformInt(rng, occ[static_cast<std::size_t>(p)]);
    int pos = -1;
    for (int i = 0; i < n; ++i)
      if (types[static_cast<std::size_t>(i)] == p && pick-- == 0) {
        pos = i;
        break;
      }
    std::vector<int> room;
    for (int q = 0; q < r; ++q)
      if (q != p && occ[static_cast<std::size_t>(q)] < inst.maxOcc()[static_cast<std::size_t>(q)])
        room.push_back(q);
    const int q = room[static_cast<std::size_t>(uniformInt(rng, static_cast<int>(room.size())))];
    types[static_cast<std::size_t>(pos)] = q;
    --occ[static_cast<std::size_t>(p)];
    ++occ[static_cast<std::size_t>(q)];
  }

  auto underMin = [&]() {
    for (int q = 0; q < r; ++q)
      if (occ[static_cast<std::size_t>(q)] < inst.minOcc()[static_cast<std::size_t>(q)]) return q;
    return -1;
  };
  for (int q = underMin(); q >= 0; q = underMin()) {
    // A random position whose type has slack above its own minimum donates.
    std::vector<int> donors;
    for (int i = 0; i < n; ++i) {
      const int p = types[static_cast<std::size_t>(i)];
      if (p != q && occ[static_cast<std::size_t>(p)] > inst.minOcc()[static_cast<std::size_t>(p)])
        donors.push_back(i);
    }
    const int pos = donors[static_cast<std::size_t>(uniformInt(rng, static_cast<int>(donors.size())))];
    const int p = types[static_cast<std::size_t>(pos)];
    types[static_cast<std::size_t>(pos)] = q;
    --occ[static_cast<std::size_t>(p)];
    ++occ[static_cast<std::size_t>(q)];
  }
}

}  // namespace

GaResult solveGa(const Instance& instance, const GaConfig& config) {
  config.validate();
  const auto start = Clock::now();
  GaResult out;
  out.result.optimal = false;  // a heuristic never certifies optimality
  if (!instance.occurrenceWindowFeasible()) {
    out.result.feasible = false;
    return out;
  }

  const int r = instance.catalog().typeCount();
  const int n = instance.pitchCount();
  const int m = config.populationSize;
  std::mt19937_64 rng(config.rngSeed);
  Fitness fitness(instance);

  std::vector<std::vector<int>> population(static_cast<std::size_t>(m));
  std::vector<double> noise(static_cast<std::size_t>(m));

  std::vector<int> bestTypes;
  double bestNoise = std::numeric_limits<double>::infinity();

  auto evaluate = [&](int idx) {
    const auto& ind = population[static_cast<std::size_t>(idx)];
    double v = fitness(ind);
    ++out.result.candidatesEvaluated;
    const int j = instance.maxTireLength() - fitness.lastLength();
    const bool valid = cyclicOk(ind, instance);
    if (valid) {
      auto [it, inserted] = out.result.perLengthBest.try_emplace(j, v);
      if (!inserted && v < it->second) it->second = v;
      if (v < bestNoise) {
        bestNoise = v;
        bestTypes = ind;
        const double t = std::chrono::duration<double>(Clock::now() - start).count();
        out.result.incumbentLog.push_back({canonicalRotation(ind), v, t});
        ++out.result.incumbentUpdates;
        return v;
      }
    }
    if (!valid) v += kInfeasiblePenalty;
    return v;
  };

  for (int i = 0; i < m; ++i) {
    auto& ind = population[static_cast<std::size_t>(i)];
    ind.resize(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g) ind[static_cast<std::size_t>(g)] = uniformInt(rng, r);
    repair(ind, instance, rng);
    noise[static_cast<std::size_t>(i)] = evaluate(i);
  }

  auto tracePoint = [&](int gen) {
    const double mean =
        std::accumulate(noise.begin(), noise.end(), 0.0) / static_cast<double>(m);
    out.trace.push_back({gen, bestNoise, mean});
  };
  tracePoint(0);

  // Selection machinery. Ranking: linear ranking over fitness order with
  // slope = selectionPressure. Roulette: inverse-noise weights.
  std::vector<int> order(static_cast<std::size_t>(m));
  std::vector<double> cumulative(static_cast<std::size_t>(m));
  auto rebuildSelector = [&]() {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int u, int v) {
      return noise[static_cast<std::size_t>(u)] < noise[static_cast<std::size_t>(v)];
    });
    double total = 0.0;
    for (int rank = 0; rank < m; ++rank) {
      double w;
      if (config.selection == GaConfig::Selection::kRanking) {
        w = m > 1 ? 1.0 + config.selectionPressure * (m - 1 - 2.0 * rank) / (m - 1) : 1.0;
      } else {
        w = 1.0 / std::max(noise[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])],
                           1e-12);
      }
      total += w;
      cumulative[static_cast<std::size_t>(rank)] = total;
    }
  };
  auto select = [&]() {
    const double u = uniformDouble(rng) * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto rank = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
    return population[static_cast<std::size_t>(order[rank])];
  };

  int stagnant = 0;
  for (int gen = 1; gen <= config.maxGenerations && stagnant < config.stagnationLimit; ++gen) {
    rebuildSelector();
    const double prevBest = bestNoise;

    std::vector<std::vector<int>> next;
    next.reserve(static_cast<std::size_t>(m));
    if (!bestTypes.empty()) next.push_back(bestTypes);  // elitism of one

    while (static_cast<int>(next.size()) < m) {
      std::vector<int> childA = select();
      std::vector<int> childB = select();
      if (n > 1 && uniformDouble(rng) < config.crossoverProb) {
        const int cut = 1 + uniformInt(rng, n - 1);
        for (int g = cut; g < n; ++g)
          std::swap(childA[static_cast<std::size_t>(g)], childB[static_cast<std::size_t>(g)]);
      }
      for (auto* child : {&childA, &childB}) {
        if (uniformDouble(rng) < config.mutationProb) {
          const int pos = uniformInt(rng, n);
          (*child)[static_cast<std::size_t>(pos)] = uniformInt(rng, r);
        }
        repair(*child, instance, rng);
        if (static_cast<int>(next.size()) < m) next.push_back(std::move(*child));
      }
    }

    population = std::move(next);
    for (int i = 0; i < m; ++i) noise[static_cast<std::size_t>(i)] = evaluate(i);
    out.generationsRun = gen;
    tracePoint(gen);
    stagnant = bestNoise < prevBest - 1e-12 ? 0 : stagnant + 1;
  }

  if (bestTypes.empty()) {
    out.result.feasible = false;
    out.result.wallTimeSec = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
  }

  out.result.feasible = true;
  out.result.nodesExplored = out.result.candidatesEvaluated;
  out.result.bestTypes = canonicalRotation(bestTypes);
  const PitchSequence best(out.result.bestTypes, instance.catalog());
  const Spectrum spectrum = profileSpectrum(best, instance.catalog(), instance.fourierK());
  const NoisePeak exact = exactNoise(spectrum);
  const NoisePeak approx = approxNoise(spectrum);
  out.result.exactNoise = exact.value;
  out.result.exactHarmonic = exact.harmonic;
  out.result.approxNoise = approx.value;
  out.result.approxHarmonic = approx.harmonic;
  if (!out.result.incumbentLog.empty()) {
    out.result.incumbentLog.back().types = out.result.bestTypes;
    out.result.incumbentLog.back().exactNoise = out.result.exactNoise;
  }
  out.result.wallTimeSec = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

void writeGaTraceCsv(const GaResult& result, std::ostream& out) {
  out << "generation,best,mean\n";
  for (const GaTracePoint& p : result.trace)
    out << p.generation << ',' << p.bestNoise << ',' << p.meanNoise << '\n';
}

}  // namespace pitchopt
