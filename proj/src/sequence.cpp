#include "pitchopt/sequence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pitchopt {

PitchSequence::PitchSequence(std::vector<int> types, const PitchCatalog& catalog)
    : types_(std::move(types)) {
  if (types_.empty()) throw std::invalid_argument("PitchSequence: empty type vector");
  lengths_.reserve(types_.size());
  offsets_.reserve(types_.size());
  int cursor = 0;
  for (int t : types_) {
    if (t < 0 || t >= catalog.typeCount())
      throw std::invalid_argument("PitchSequence: type index out of range");
    offsets_.push_back(cursor);
    const int l = catalog.length(t);
    lengths_.push_back(l);
    cursor += l;
  }
  totalLength_ = cursor;
}

std::vector<int> PitchSequence::startPositions() const {
  std::vector<int> out;
  out.reserve(offsets_.size());
  for (int o : offsets_) out.push_back(o + 1);
  return out;
}

std::string PitchSequence::str() const {
  std::string s;
  s.reserve(types_.size());
  for (int t : types_) {
    if (t > 8) {  // multi-digit types need separators
      std::ostringstream os;
      for (std::size_t i = 0; i < types_.size(); ++i) {
        if (i) os << '.';
        os << types_[i] + 1;
      }
      return os.str();
    }
    s.push_back(static_cast<char>('1' + t));
  }
  return s;
}

PitchSequence PitchSequence::fromString(const std::string& text, const PitchCatalog& catalog) {
  std::vector<int> types;
  if (text.find('.') != std::string::npos) {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, '.')) types.push_back(std::stoi(item) - 1);
  } else {
    for (char c : text) {
      if (c < '1' || c > '9')
        throw std::invalid_argument("sequence string must use digits 1..9: '" + text + "'");
      types.push_back(c - '1');
    }
  }
  return PitchSequence(std::move(types), catalog);
}

ValidityReport validateSequence(const PitchSequence& seq, const Instance& inst) {
  ValidityReport rep;
  const auto& types = seq.types();
  const int n = static_cast<int>(types.size());
  const int r = inst.catalog().typeCount();

  std::vector<int> occ(r, 0);
  for (int t : types) ++occ[t];
  for (int p = 0; p < r; ++p) {
    if (occ[p] < inst.minOcc()[p] || occ[p] > inst.maxOcc()[p]) {
      rep.occurrenceOk = false;
      std::ostringstream os;
      os << "type " << p + 1 << " occurs " << occ[p] << " times, outside ["
         << inst.minOcc()[p] << ", " << inst.maxOcc()[p] << "]";
      rep.failures.push_back(os.str());
    }
  }

  // Pairs are ordered: (a, b) forbids b from immediately following a.
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if (!inst.incompatiblePairs().count({types[i], types[j]})) continue;
    const bool wraps = (j == 0);
    if (!wraps) rep.incompatibilityLinearOk = false;
    rep.incompatibilityCyclicOk = false;
    std::ostringstream os;
    os << "incompatible adjacency " << types[i] + 1 << "-" << types[j] + 1 << " at position "
       << i + 1 << (wraps ? " (wrap)" : "");
    rep.failures.push_back(os.str());
  }

  for (int p = 0; p < r; ++p) {
    const int cap = inst.maxSeq()[p];
    if (cap <= 0) continue;
    // Longest linear run of type p.
    int run = 0, maxLinear = 0;
    for (int t : types) {
      run = (t == p) ? run + 1 : 0;
      maxLinear = std::max(maxLinear, run);
    }
    // Cyclic run: join prefix and suffix runs unless the whole tire is one type.
    int maxCyclic = maxLinear;
    if (occ[p] < n) {
      int head = 0;
      while (head < n && types[head] == p) ++head;
      int tail = 0;
      while (tail < n && types[n - 1 - tail] == p) ++tail;
      maxCyclic = std::max(maxCyclic, head + tail);
    } else {
      maxCyclic = n;
    }
    if (maxLinear > cap) {
      rep.maxSeqLinearOk = false;
      std::ostringstream os;
      os << "type " << p + 1 << " repeats " << maxLinear << " > maxSeq " << cap;
      rep.failures.push_back(os.str());
    }
    if (maxCyclic > cap) {
      rep.maxSeqCyclicOk = false;
      if (maxLinear <= cap) {
        std::ostringstream os;
        os << "type " << p + 1 << " repeats " << maxCyclic << " across the seam > maxSeq " << cap;
        rep.failures.push_back(os.str());
      }
    }
  }
  return rep;
}

namespace {

// Booth-style lexicographically minimal rotation, O(n^2) is fine for our sizes.
std::vector<int> minRotation(const std::vector<int>& v) {
  const int n = static_cast<int>(v.size());
  int best = 0;
  for (int cand = 1; cand < n; ++cand) {
    for (int k = 0; k < n; ++k) {
      const int a = v[(best + k) % n];
      const int b = v[(cand + k) % n];
      if (a != b) {
        if (b < a) best = cand;
        break;
      }
    }
  }
  std::vector<int> out(n);
  for (int k = 0; k < n; ++k) out[k] = v[(best + k) % n];
  return out;
}

}  // namespace

std::vector<int> canonicalRotation(const std::vector<int>& types) {
  if (types.empty()) return {};
  return minRotation(types);
}

std::vector<int> canonicalForm(const std::vector<int>& types) {
  if (types.empty()) return {};
  const auto fwd = minRotation(types);
  std::vector<int> rev(types.rbegin(), types.rend());
  const auto bwd = minRotation(rev);
  return std::min(fwd, bwd);
}

PitchSequence canonicalForm(const PitchSequence& seq, const PitchCatalog& catalog) {
  return PitchSequence(canonicalForm(seq.types()), catalog);
}

}  // namespace pitchopt
