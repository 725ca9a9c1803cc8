#pragma once

#include <utility>
#include <vector>

#include "pitchopt/rational.hpp"

namespace pitchopt {

/// Result of reducing a list of relative pitch lengths to integers:
/// `unit` is the largest length dividing every ratio integrally and
/// `lengths` are the ratios expressed in that unit (coprime as a set).
struct UnitReduction {
  Rational unit;
  std::vector<int> lengths;
};

/// Reduces positive ascending rational ratios to coprime integer lengths.
/// lengths[i] / lengths[j] == ratios[i] / ratios[j] exactly, and no larger
/// unit achieves integrality. Throws std::invalid_argument on non-positive
/// or unsorted input.
UnitReduction deriveUnit(const std::vector<Rational>& ratios);

/// The pitch type catalog: r pitch types with integer reduced lengths
/// l_1 < ... < l_r, the physical unit they are expressed in, the common
/// pitch height and the groove fraction of each pitch.
class PitchCatalog {
 public:
  PitchCatalog(std::vector<Rational> ratios, double height, Rational groove);

  int typeCount() const { return static_cast<int>(lengths_.size()); }
  const std::vector<int>& lengths() const { return lengths_; }
  int length(int type) const { return lengths_[static_cast<std::size_t>(type)]; }
  int minLength() const { return lengths_.front(); }
  int maxLength() const { return lengths_.back(); }
  const std::vector<Rational>& ratios() const { return ratios_; }
  const Rational& unit() const { return unit_; }
  double height() const { return height_; }
  const Rational& groove() const { return groove_; }
  double grooveValue() const { return groove_.toDouble(); }

 private:
  std::vector<Rational> ratios_;
  std::vector<int> lengths_;
  Rational unit_;
  double height_;
  Rational groove_;
};

}  // namespace pitchopt
