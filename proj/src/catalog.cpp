#include "pitchopt/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace pitchopt {

namespace {
constexpr std::int64_t kMaxDecimalDenominator = 1000000;
}

Rational Rational::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::int64_t n = std::stoll(s.substr(0, slash));
    const std::int64_t d = std::stoll(s.substr(slash + 1));
    return Rational(n, d);
  }
  const auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(s));

  const std::string intPart = dot == 0 ? "0" : s.substr(0, dot);
  std::string fracPart = s.substr(dot + 1);
  if (fracPart.empty()) return Rational(std::stoll(intPart));
  std::int64_t den = 1;
  for (std::size_t i = 0; i < fracPart.size(); ++i) {
    den *= 10;
    if (den > kMaxDecimalDenominator)
      throw std::invalid_argument("decimal literal exceeds denominator bound 10^6: " + text);
  }
  const bool negative = !intPart.empty() && intPart[0] == '-';
  const std::int64_t whole = std::stoll(intPart);
  const std::int64_t frac = std::stoll(fracPart);
  std::int64_t num = (negative ? -whole : whole) * den + frac;
  if (negative) num = -num;
  return Rational(num, den);
}

UnitReduction deriveUnit(const std::vector<Rational>& ratios) {
  if (ratios.empty()) throw std::invalid_argument("deriveUnit: no ratios given");
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!ratios[i].isPositive())
      throw std::invalid_argument("deriveUnit: ratios must be positive");
    if (i > 0 && !(ratios[i - 1] < ratios[i]))
      throw std::invalid_argument("deriveUnit: ratios must be strictly ascending");
  }

  // Common denominator, then the integer gcd of the scaled numerators is
  // the largest common divisor of the ratio set.
  std::int64_t commonDen = 1;
  for (const auto& r : ratios) commonDen = std::lcm(commonDen, r.den());
  std::vector<std::int64_t> scaled;
  scaled.reserve(ratios.size());
  std::int64_t g = 0;
  for (const auto& r : ratios) {
    const std::int64_t n = r.num() * (commonDen / r.den());
    scaled.push_back(n);
    g = std::gcd(g, n);
  }

  UnitReduction out;
  out.unit = Rational(g, commonDen);
  out.lengths.reserve(scaled.size());
  for (std::int64_t n : scaled) out.lengths.push_back(static_cast<int>(n / g));
  return out;
}

PitchCatalog::PitchCatalog(std::vector<Rational> ratios, double height, Rational groove)
    : ratios_(std::move(ratios)), height_(height), groove_(groove) {
  auto reduction = deriveUnit(ratios_);
  lengths_ = std::move(reduction.lengths);
  unit_ = reduction.unit;
  if (height_ <= 0.0) throw std::invalid_argument("PitchCatalog: height must be positive");
  if (!(Rational(0) < groove_) || !(groove_ < Rational(1)))
    throw std::invalid_argument("PitchCatalog: groove fraction must lie in (0,1)");
}

}  // namespace pitchopt
