#include "pitchopt/contribution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pitchopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double wrappedAngle(std::int64_t num, std::int64_t den) {
  return kTwoPi * static_cast<double>(num % den) / static_cast<double>(den);
}

}  // namespace

ContributionSlice::ContributionSlice(const PitchCatalog& catalog, int tireLength, int fourierK)
    : catalog_(&catalog), tireLength_(tireLength), fourierK_(fourierK) {
  if (tireLength_ < 1) throw std::invalid_argument("ContributionSlice: tire length must be positive");
  if (fourierK_ < 1) throw std::invalid_argument("ContributionSlice: K must be positive");

  const int r = catalog.typeCount();
  colBase_.resize(static_cast<std::size_t>(r));
  int cols = 0;
  for (int p = 0; p < r; ++p) {
    colBase_[static_cast<std::size_t>(p)] = cols;
    const int fits = tireLength_ - catalog.length(p) + 1;
    for (int start = 0; start < fits; ++start) vars_.push_back({p, start});
    cols += std::max(0, fits);
  }

  A_ = Eigen::MatrixXd::Zero(fourierK_ + 1, cols);
  B_ = Eigen::MatrixXd::Zero(fourierK_ + 1, cols);

  const double h = catalog.height();
  const Rational q = catalog.groove();
  const std::int64_t qden = q.den();
  const std::int64_t rise = qden - q.num();
  const std::int64_t den = static_cast<std::int64_t>(tireLength_) * qden;
  const double mean = (1.0 - q.toDouble()) * h / tireLength_;

  for (int c = 0; c < cols; ++c) {
    const auto [p, start] = vars_[static_cast<std::size_t>(c)];
    const std::int64_t l = catalog.length(p);
    const std::int64_t endNum = static_cast<std::int64_t>(start) * qden + rise * l;
    const std::int64_t startNum = static_cast<std::int64_t>(start) * qden;
    A_(0, c) = mean * static_cast<double>(l);
    for (int k = 1; k <= fourierK_; ++k) {
      const double scale = h / (k * std::numbers::pi);
      const double end = wrappedAngle(k * endNum, den);
      const double begin = wrappedAngle(k * startNum, den);
      A_(k, c) = scale * (std::sin(end) - std::sin(begin));
      B_(k, c) = -scale * (std::cos(end) - std::cos(begin));
    }
  }
}

int ContributionSlice::column(int type, int start) const {
  if (type < 0 || type >= catalog_->typeCount()) return -1;
  if (start < 0 || start + catalog_->length(type) > tireLength_) return -1;
  return colBase_[static_cast<std::size_t>(type)] + start;
}

Spectrum ContributionSlice::spectrumOf(const std::vector<int>& types,
                                       const std::vector<int>& startOffsets) const {
  if (types.size() != startOffsets.size())
    throw std::invalid_argument("spectrumOf: types and offsets differ in length");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(fourierK_ + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(fourierK_ + 1);
  for (std::size_t j = 0; j < types.size(); ++j) {
    const int c = column(types[j], startOffsets[j]);
    if (c < 0) throw std::invalid_argument("spectrumOf: pitch does not fit the tire");
    a += A_.col(c);
    b += B_.col(c);
  }
  Spectrum sp;
  sp.tireLength = tireLength_;
  sp.a = a.array();
  sp.b = b.array();
  sp.a[0] *= 2.0;  // columns carry the mean; the spectrum convention stores a_0
  sp.b[0] = 0.0;
  sp.modulus = (sp.a.square() + sp.b.square()).sqrt();
  sp.modulus[0] = 0.0;
  return sp;
}

ContributionTables::ContributionTables(const Instance& instance) : instance_(&instance) {
  const int slices = instance.emptySlotCount();
  slices_.reserve(static_cast<std::size_t>(slices));
  for (int j = 0; j < slices; ++j)
    slices_.emplace_back(instance.catalog(), instance.tireLengthForSlots(j), instance.fourierK());
}

}  // namespace pitchopt
