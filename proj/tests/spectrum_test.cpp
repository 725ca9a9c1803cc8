#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "pitchopt/spectrum.hpp"

using namespace pitchopt;
using namespace testutil;

TEST_CASE("profileSpectrum matches the interval-integral oracle") {
  const PitchCatalog cat = catalog456();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const PitchSequence seq(randomTuple(rng, cat.typeCount(), n), cat);
    const int K = 3 * n;
    const Spectrum sp = profileSpectrum(seq, cat, K);
    const RawSpectrum ref =
        intervalSpectrum(upIntervals(seq, cat), seq.totalLength(), cat.height(), K);
    for (int k = 0; k <= K; ++k) {
      CHECK(std::abs(sp.a[k] - ref.a[static_cast<std::size_t>(k)]) < 1e-9);
      if (k > 0) CHECK(std::abs(sp.b[k] - ref.b[static_cast<std::size_t>(k)]) < 1e-9);
    }
  }
}

TEST_CASE("a_0 is twice the profile mean: 2h(1-q)") {
  const PitchCatalog cat = catalog456();
  const Spectrum sp = profileSpectrum(PitchSequence::fromString("1312", cat), cat, 6);
  CHECK(sp.a[0] == doctest::Approx(2.0 * 100.0 * 0.9).epsilon(1e-12));
  CHECK(sp.b[0] == 0.0);
  CHECK(sp.modulus[0] == 0.0);
}

TEST_CASE("reference sequences reproduce the reference optima at K = 1.5N") {
  const PitchCatalog cat = catalog456();
  const std::pair<const char*, double> rows[] = {
      {"1311323331", 9.019},
      {"1233331231", 9.247},
      {"1333221311", 9.268},
      {"1231233321", 9.368},
  };
  for (const auto& [digits, expected] : rows) {
    const Spectrum sp = profileSpectrum(PitchSequence::fromString(digits, cat), cat, 15);
    CHECK(exactNoise(sp).value == doctest::Approx(expected).epsilon(1e-4));
  }
}

TEST_CASE("noise peaks report the maximizing harmonic") {
  const PitchCatalog cat = catalog456();
  const Spectrum sp = profileSpectrum(PitchSequence::fromString("1311323331", cat), cat, 15);
  const NoisePeak exact = exactNoise(sp);
  const NoisePeak approx = approxNoise(sp);
  double bestExact = 0.0, bestApprox = 0.0;
  int argExact = 0, argApprox = 0;
  for (int k = 1; k <= sp.harmonicCount(); ++k) {
    if (sp.modulus[k] > bestExact) {
      bestExact = sp.modulus[k];
      argExact = k;
    }
    const double m = std::max(std::abs(sp.a[k]), std::abs(sp.b[k]));
    if (m > bestApprox) {
      bestApprox = m;
      argApprox = k;
    }
  }
  CHECK(exact.value == bestExact);
  CHECK(exact.harmonic == argExact);
  CHECK(approx.value == bestApprox);
  CHECK(approx.harmonic == argApprox);
}

TEST_CASE("approx and exact readings sandwich each other") {
  const PitchCatalog cat = catalog456();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 8);
    const PitchSequence seq(randomTuple(rng, cat.typeCount(), n), cat);
    const Spectrum sp = profileSpectrum(seq, cat, 3 * n);
    const double ex = exactNoise(sp).value;
    const double ap = approxNoise(sp).value;
    CHECK(ap <= ex * (1 + 1e-12));
    CHECK(ex <= std::sqrt(2.0) * ap * (1 + 1e-12));
  }
}

TEST_CASE("rotating a sequence leaves the modulus spectrum unchanged") {
  const PitchCatalog cat = catalog456();
  std::vector<int> types{0, 2, 2, 1, 0, 1, 2};
  const Spectrum base = profileSpectrum(PitchSequence(types, cat), cat, 21);
  for (std::size_t r = 1; r < types.size(); ++r) {
    std::rotate(types.begin(), types.begin() + 1, types.end());
    const Spectrum rot = profileSpectrum(PitchSequence(types, cat), cat, 21);
    for (int k = 0; k <= 21; ++k) CHECK(std::abs(rot.modulus[k] - base.modulus[k]) < 1e-10);
  }
}

TEST_CASE("modulus obeys the 2Nh/(k pi) envelope") {
  constexpr double kPi = 3.14159265358979323846;
  const PitchCatalog cat = catalog456();
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 8);
    const PitchSequence seq(randomTuple(rng, cat.typeCount(), n), cat);
    const Spectrum sp = profileSpectrum(seq, cat, 3 * n);
    for (int k = 1; k <= sp.harmonicCount(); ++k)
      CHECK(sp.modulus[k] <= 2.0 * n * cat.height() / (k * kPi) + 1e-9);
  }
}

TEST_CASE("diracSpectrum of a uniform comb concentrates on multiples of n") {
  const Spectrum sp = diracSpectrum({0, 4, 8}, 12, 9);
  for (int k = 1; k <= 9; ++k) {
    if (k % 3 == 0)
      CHECK(sp.modulus[k] == doctest::Approx(3.0 * 2.0 / 12.0).epsilon(1e-12));
    else
      CHECK(std::abs(sp.modulus[k]) < 1e-9);
  }
}

TEST_CASE("writeSpectrumCsv emits one row per harmonic") {
  const PitchCatalog cat = catalog456();
  const Spectrum sp = profileSpectrum(PitchSequence::fromString("123", cat), cat, 4);
  std::ostringstream out;
  writeSpectrumCsv(sp, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,a_k,b_k,modulus");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);
}
