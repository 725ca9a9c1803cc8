#pragma once

// Shared fixtures and independent oracles for the test suite. The oracles
// recompute spectra, optima and path counts from first principles so the
// library is checked against them rather than against itself.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pitchopt/instance.hpp"
#include "pitchopt/sequence.hpp"
#include "pitchopt/spectrum.hpp"

namespace testutil {

using namespace pitchopt;

inline PitchCatalog catalog456(double height = 100.0) {
  return PitchCatalog({Rational(1), Rational(5, 4), Rational(3, 2)}, height, Rational(1, 10));
}

inline PitchCatalog catalog23(double height = 100.0) {
  return PitchCatalog({Rational(1), Rational(3, 2)}, height, Rational(1, 10));
}

inline PitchCatalog catalog234(double height = 100.0) {
  return PitchCatalog({Rational(1), Rational(3, 2), Rational(2)}, height, Rational(1, 10));
}

/// Unconstrained instance over a catalog (per-type defaults).
inline Instance plainInstance(PitchCatalog cat, int n, int fourierK = 0) {
  return Instance(std::move(cat), n, {}, {}, {}, {},
                  fourierK > 0 ? fourierK : Instance::defaultFourierK(n));
}

/// Visits every type tuple of length n over r types (odometer order).
inline void forEachTuple(int r, int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  while (true) {
    f(t);
    int i = n - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == r - 1) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
  }
}

struct OracleBest {
  bool feasible = false;
  double noise = 0.0;
  std::vector<int> types;
  std::int64_t evaluated = 0;
};

/// Brute-force reference optimum: every tuple, the library validator's
/// cyclic reading, spectra recomputed per tuple.
inline OracleBest oracleSolve(const Instance& inst, bool exactObjective) {
  OracleBest best;
  double bound = 1e300;
  forEachTuple(inst.catalog().typeCount(), inst.pitchCount(), [&](const std::vector<int>& t) {
    PitchSequence seq(t, inst.catalog());
    if (!validateSequence(seq, inst).allCyclicOk()) return;
    const Spectrum sp = profileSpectrum(seq, inst.catalog(), inst.fourierK());
    const double v = exactObjective ? exactNoise(sp).value : approxNoise(sp).value;
    ++best.evaluated;
    if (v < bound) {
      bound = v;
      best.noise = v;
      best.types = t;
      best.feasible = true;
    }
  });
  return best;
}

/// Number of ways to write `total` as an ordered sum of exactly `n` parts
/// drawn from `parts` (repetition allowed).
inline std::int64_t compositionCount(int total, int n, const std::vector<int>& parts) {
  if (total < 0 || n < 0) return 0;
  std::vector<std::vector<std::int64_t>> ways(
      static_cast<std::size_t>(total) + 1,
      std::vector<std::int64_t>(static_cast<std::size_t>(n) + 1, 0));
  ways[0][0] = 1;
  for (int t = 1; t <= total; ++t)
    for (int m = 1; m <= n; ++m)
      for (int p : parts)
        if (t >= p) ways[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)] +=
            ways[static_cast<std::size_t>(t - p)][static_cast<std::size_t>(m - 1)];
  return ways[static_cast<std::size_t>(total)][static_cast<std::size_t>(n)];
}

/// Raised intervals [start, end) of a sequence's step profile, in real units.
inline std::vector<std::pair<double, double>> upIntervals(const PitchSequence& seq,
                                                          const PitchCatalog& cat) {
  std::vector<std::pair<double, double>> up;
  const double q = cat.grooveValue();
  for (std::size_t i = 0; i < seq.types().size(); ++i) {
    const double s = seq.startOffsets()[i];
    const double l = seq.lengths()[i];
    up.push_back({s, s + (1.0 - q) * l});
  }
  return up;
}

struct RawSpectrum {
  std::vector<double> a, b;
};

/// Textbook Fourier coefficients of a union of height-h intervals over a
/// period T; independent of the library's phase-reduction tricks.
inline RawSpectrum intervalSpectrum(const std::vector<std::pair<double, double>>& up, double T,
                                    double h, int K) {
  constexpr double kPi = 3.14159265358979323846;
  RawSpectrum s;
  s.a.assign(static_cast<std::size_t>(K) + 1, 0.0);
  s.b.assign(static_cast<std::size_t>(K) + 1, 0.0);
  for (const auto& [u, v] : up) {
    s.a[0] += 2.0 * h * (v - u) / T;
    for (int k = 1; k <= K; ++k) {
      const double wu = 2.0 * kPi * k * u / T;
      const double wv = 2.0 * kPi * k * v / T;
      s.a[static_cast<std::size_t>(k)] += h / (k * kPi) * (std::sin(wv) - std::sin(wu));
      s.b[static_cast<std::size_t>(k)] -= h / (k * kPi) * (std::cos(wv) - std::cos(wu));
    }
  }
  return s;
}

/// Uniformly random type tuple of length n over r types.
inline std::vector<int> randomTuple(std::mt19937_64& rng, int r, int n) {
  std::vector<int> t(static_cast<std::size_t>(n));
  for (auto& x : t) x = static_cast<int>(rng() % static_cast<std::uint64_t>(r));
  return t;
}

inline std::string dataPath(const std::string& name) {
  return std::string(PITCHOPT_DATA_DIR) + "/" + name;
}

}  // namespace testutil
