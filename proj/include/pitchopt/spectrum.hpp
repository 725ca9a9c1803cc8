#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "pitchopt/sequence.hpp"

namespace pitchopt {

/// Fourier spectrum of a tire profile over one period of tireLength units.
/// Arrays are indexed by harmonic k; entry 0 holds the a_0 term (twice the
/// profile mean) and is excluded from noise maxima. modulus[k] stores
/// sqrt(a_k^2 + b_k^2), i.e. 2|c_k|.
struct Spectrum {
  int tireLength = 0;
  Eigen::ArrayXd a;        // size K+1
  Eigen::ArrayXd b;        // size K+1, b[0] == 0
  Eigen::ArrayXd modulus;  // size K+1, modulus[0] == 0

  int harmonicCount() const { return static_cast<int>(a.size()) - 1; }
};

/// Peak of a spectrum under one of the two noise readings: the value and
/// the harmonic attaining it.
struct NoisePeak {
  double value = 0.0;
  int harmonic = 0;
};

/// Spectrum of the step-function profile of `seq`: each pitch is elevated at
/// height h over its first (1-q)*l units and recessed over the trailing q*l.
/// The period is seq.totalLength(). Throws std::invalid_argument for K < 1
/// or an empty sequence.
Spectrum profileSpectrum(const PitchSequence& seq, const PitchCatalog& catalog, int fourierK);

/// max over k >= 1 of sqrt(a_k^2 + b_k^2)  (= 2 max|c_k|).
NoisePeak exactNoise(const Spectrum& spectrum);

/// max over k >= 1 of max(|a_k|, |b_k|). Bounds the exact reading within a
/// factor of sqrt(2) either way.
NoisePeak approxNoise(const Spectrum& spectrum);

/// Spectrum of a train of N unit impulses at integer positions within
/// [0, T). a_k and b_k carry the 2/T-scaled cosine and sine sums, so
/// modulus[k] equals 2|c_k| as in the step model.
Spectrum diracSpectrum(const std::vector<int>& positions, int tireLength, int fourierK);

/// CSV with header k,a_k,b_k,modulus and one row per harmonic 0..K.
void writeSpectrumCsv(const Spectrum& spectrum, std::ostream& out);

}  // namespace pitchopt
