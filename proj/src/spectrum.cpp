#include "pitchopt/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace pitchopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Angles here are rational multiples of 2*pi. Reducing the fraction mod 1 in
// exact integer arithmetic before touching doubles keeps high harmonics of
// long tires from losing phase accuracy.
inline double wrappedAngle(std::int64_t num, std::int64_t den) {
  return kTwoPi * static_cast<double>(num % den) / static_cast<double>(den);
}

}  // namespace

Spectrum profileSpectrum(const PitchSequence& seq, const PitchCatalog& catalog, int fourierK) {
  if (fourierK < 1) throw std::invalid_argument("profileSpectrum: K must be positive");
  const int t = seq.totalLength();
  const double h = catalog.height();
  const Rational q = catalog.groove();

  Spectrum sp;
  sp.tireLength = t;
  sp.a = Eigen::ArrayXd::Zero(fourierK + 1);
  sp.b = Eigen::ArrayXd::Zero(fourierK + 1);
  sp.modulus = Eigen::ArrayXd::Zero(fourierK + 1);
  sp.a[0] = 2.0 * h * (1.0 - q.toDouble());

  // Phase of the elevated part's end for pitch j at harmonic k, as a fraction
  // of a turn: k * (s_j * qden + (qden - qnum) * l_j) / (t * qden).
  const std::int64_t qden = q.den();
  const std::int64_t rise = qden - q.num();
  const std::int64_t den = static_cast<std::int64_t>(t) * qden;

  for (std::size_t j = 0; j < seq.types().size(); ++j) {
    const std::int64_t s = seq.startOffsets()[j];
    const std::int64_t l = seq.lengths()[j];
    const std::int64_t endNum = s * qden + rise * l;
    const std::int64_t startNum = s * qden;
    for (int k = 1; k <= fourierK; ++k) {
      const double end = wrappedAngle(k * endNum, den);
      const double start = wrappedAngle(k * startNum, den);
      sp.a[k] += std::sin(end) - std::sin(start);
      sp.b[k] -= std::cos(end) - std::cos(start);
    }
  }
  for (int k = 1; k <= fourierK; ++k) {
    const double scale = h / (k * std::numbers::pi);
    sp.a[k] *= scale;
    sp.b[k] *= scale;
    sp.modulus[k] = std::hypot(sp.a[k], sp.b[k]);
  }
  return sp;
}

NoisePeak exactNoise(const Spectrum& spectrum) {
  NoisePeak peak;
  for (int k = 1; k <= spectrum.harmonicCount(); ++k) {
    if (spectrum.modulus[k] > peak.value) {
      peak.value = spectrum.modulus[k];
      peak.harmonic = k;
    }
  }
  return peak;
}

NoisePeak approxNoise(const Spectrum& spectrum) {
  NoisePeak peak;
  for (int k = 1; k <= spectrum.harmonicCount(); ++k) {
    const double v = std::max(std::abs(spectrum.a[k]), std::abs(spectrum.b[k]));
    if (v > peak.value) {
      peak.value = v;
      peak.harmonic = k;
    }
  }
  return peak;
}

Spectrum diracSpectrum(const std::vector<int>& positions, int tireLength, int fourierK) {
  if (fourierK < 1) throw std::invalid_argument("diracSpectrum: K must be positive");
  if (tireLength < 1) throw std::invalid_argument("diracSpectrum: tire length must be positive");
  Spectrum sp;
  sp.tireLength = tireLength;
  sp.a = Eigen::ArrayXd::Zero(fourierK + 1);
  sp.b = Eigen::ArrayXd::Zero(fourierK + 1);
  sp.modulus = Eigen::ArrayXd::Zero(fourierK + 1);
  const double scale = 2.0 / tireLength;
  sp.a[0] = scale * static_cast<double>(positions.size());
  for (int pos : positions) {
    for (int k = 1; k <= fourierK; ++k) {
      const double angle = wrappedAngle(static_cast<std::int64_t>(k) * pos, tireLength);
      sp.a[k] += scale * std::cos(angle);
      sp.b[k] += scale * std::sin(angle);
    }
  }
  for (int k = 1; k <= fourierK; ++k) sp.modulus[k] = std::hypot(sp.a[k], sp.b[k]);
  return sp;
}

void writeSpectrumCsv(const Spectrum& spectrum, std::ostream& out) {
  out << "k,a_k,b_k,modulus\n";
  for (int k = 0; k <= spectrum.harmonicCount(); ++k)
    out << k << ',' << spectrum.a[k] << ',' << spectrum.b[k] << ',' << spectrum.modulus[k] << '\n';
}

}  // namespace pitchopt
