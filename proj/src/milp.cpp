#include "pitchopt/milp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pitchopt {

namespace {

std::string xName(int type, int position) {
  return "x_p" + std::to_string(type + 1) + "_i" + std::to_string(position);
}

}  // namespace

MilpModel::MilpModel(const Instance& instance, int emptySlots, const MilpOptions& options)
    : instance_(&instance),
      j_(emptySlots),
      slice_(instance.catalog(), instance.tireLengthForSlots(emptySlots), instance.fourierK()),
      options_(options) {
  if (emptySlots < 0 || emptySlots >= instance.emptySlotCount())
    throw std::out_of_range("MilpModel: j outside the tire-length range");

  const PitchCatalog& cat = instance.catalog();
  const int r = cat.typeCount();
  const int t = slice_.tireLength();
  const int kMax = slice_.fourierK();

  // Binaries first, in slice column order, so a binary's index doubles as its
  // contribution column.
  for (const VarRef& v : slice_.vars())
    vars_.push_back({xName(v.type, v.start + 1), VarKind::kBinary, 0.0, 1.0, false});
  binaryCount_ = static_cast<int>(vars_.size());

  zaBase_ = static_cast<int>(vars_.size());
  for (int k = 1; k <= kMax; ++k)
    vars_.push_back({"za_k" + std::to_string(k), VarKind::kContinuous, 0.0, 0.0, true});
  zbBase_ = static_cast<int>(vars_.size());
  for (int k = 1; k <= kMax; ++k)
    vars_.push_back({"zb_k" + std::to_string(k), VarKind::kContinuous, 0.0, 0.0, true});
  zVar_ = static_cast<int>(vars_.size());
  vars_.push_back({"z", VarKind::kContinuous, 0.0, 0.0, false});  // z >= 0

  auto tag = [](const char* base, int k) { return std::string(base) + std::to_string(k); };

  // (1)-(4): z dominates |za_k| and |zb_k|.
  for (int k = 1; k <= kMax; ++k)
    constraints_.push_back({tag("c1_k", k), {zaIndex(k), zVar_}, {1.0, -1.0}, Sense::kLe, 0.0});
  for (int k = 1; k <= kMax; ++k)
    constraints_.push_back({tag("c2_k", k), {zaIndex(k), zVar_}, {-1.0, -1.0}, Sense::kLe, 0.0});
  for (int k = 1; k <= kMax; ++k)
    constraints_.push_back({tag("c3_k", k), {zbIndex(k), zVar_}, {1.0, -1.0}, Sense::kLe, 0.0});
  for (int k = 1; k <= kMax; ++k)
    constraints_.push_back({tag("c4_k", k), {zbIndex(k), zVar_}, {-1.0, -1.0}, Sense::kLe, 0.0});

  // (5)-(6): za_k / zb_k equal the summed per-pitch contributions.
  for (int k = 1; k <= kMax; ++k) {
    MilpConstraint c{tag("c5_k", k), {zaIndex(k)}, {1.0}, Sense::kEq, 0.0};
    for (int col = 0; col < binaryCount_; ++col) {
      c.vars.push_back(col);
      c.coefs.push_back(-slice_.A()(k, col));
    }
    constraints_.push_back(std::move(c));
  }
  for (int k = 1; k <= kMax; ++k) {
    MilpConstraint c{tag("c6_k", k), {zbIndex(k)}, {1.0}, Sense::kEq, 0.0};
    for (int col = 0; col < binaryCount_; ++col) {
      c.vars.push_back(col);
      c.coefs.push_back(-slice_.B()(k, col));
    }
    constraints_.push_back(std::move(c));
  }

  // (7): at most one pitch starts at each position.
  for (int i = 1; i <= t; ++i) {
    MilpConstraint c{tag("c7_i", i), {}, {}, Sense::kLe, 1.0};
    for (int p = 0; p < r; ++p) {
      const int col = slice_.column(p, i - 1);
      if (col >= 0) {
        c.vars.push_back(col);
        c.coefs.push_back(1.0);
      }
    }
    if (!c.vars.empty()) constraints_.push_back(std::move(c));
  }

  // (8): the tire is completely filled.
  {
    MilpConstraint c{"c8_fill", {}, {}, Sense::kEq, static_cast<double>(t)};
    for (int col = 0; col < binaryCount_; ++col) {
      c.vars.push_back(col);
      c.coefs.push_back(static_cast<double>(cat.length(slice_.vars()[col].type)));
    }
    constraints_.push_back(std::move(c));
  }

  // (9): a pitch starts at i exactly when one ends at i-1. The printed range
  // starts at i = 1 where the predecessor sum is empty; that reading forbids
  // any first pitch, so rows begin after the shortest pitch and an anchor row
  // pins position 1.
  for (int i = cat.minLength() + 1; i <= t; ++i) {
    MilpConstraint c{tag("c9_i", i), {}, {}, Sense::kEq, 0.0};
    for (int p = 0; p < r; ++p) {
      const int col = slice_.column(p, i - 1);
      if (col >= 0) {
        c.vars.push_back(col);
        c.coefs.push_back(1.0);
      }
    }
    for (int p = 0; p < r; ++p) {
      const int prev = i - cat.length(p);
      if (prev < 1) continue;
      const int col = slice_.column(p, prev - 1);
      if (col >= 0) {
        c.vars.push_back(col);
        c.coefs.push_back(-1.0);
      }
    }
    constraints_.push_back(std::move(c));
  }
  {
    MilpConstraint c{"c9_anchor", {}, {}, Sense::kEq, 1.0};
    for (int p = 0; p < r; ++p) {
      const int col = slice_.column(p, 0);
      if (col >= 0) {
        c.vars.push_back(col);
        c.coefs.push_back(1.0);
      }
    }
    constraints_.push_back(std::move(c));
  }

  // (10): exactly N pitches.
  {
    MilpConstraint c{"c10_count", {}, {}, Sense::kEq,
                     static_cast<double>(instance.pitchCount())};
    for (int col = 0; col < binaryCount_; ++col) {
      c.vars.push_back(col);
      c.coefs.push_back(1.0);
    }
    constraints_.push_back(std::move(c));
  }

  // (13)-(14): occurrence window per type.
  if (options_.minMaxOcc) {
    for (int p = 0; p < r; ++p) {
      MilpConstraint lo{"c13_p" + std::to_string(p + 1), {}, {}, Sense::kGe,
                        static_cast<double>(instance.minOcc()[p])};
      MilpConstraint hi{"c14_p" + std::to_string(p + 1), {}, {}, Sense::kLe,
                        static_cast<double>(instance.maxOcc()[p])};
      for (int col = 0; col < binaryCount_; ++col) {
        if (slice_.vars()[col].type != p) continue;
        lo.vars.push_back(col);
        lo.coefs.push_back(1.0);
        hi.vars.push_back(col);
        hi.coefs.push_back(1.0);
      }
      constraints_.push_back(std::move(lo));
      constraints_.push_back(std::move(hi));
    }
  }

  // (15): no run of maxSeq_p + 1 consecutive same-type pitches. The printed
  // form sums only maxSeq_p terms, which is vacuous; the window is one wider.
  if (options_.maxSeq) {
    for (int p = 0; p < r; ++p) {
      const int cap = instance.maxSeq()[p];
      if (cap <= 0) continue;
      const int l = cat.length(p);
      for (int i = 1; i + cap * l + l - 1 <= t; ++i) {
        MilpConstraint c{"c15_p" + std::to_string(p + 1) + "_i" + std::to_string(i), {}, {},
                         Sense::kLe, static_cast<double>(cap)};
        for (int w = 0; w <= cap; ++w) {
          c.vars.push_back(slice_.column(p, i - 1 + w * l));
          c.coefs.push_back(1.0);
        }
        constraints_.push_back(std::move(c));
      }
    }
  }

  // (16)-(17): pitch b may not start where pitch a ends, per ordered pair.
  if (options_.incompatibility) {
    for (const auto& [a, b] : instance.incompatiblePairs()) {
      const int la = cat.length(a), lb = cat.length(b);
      for (int i = 1; i + la + lb - 1 <= t; ++i) {
        MilpConstraint c{"c16_p" + std::to_string(a + 1) + "p" + std::to_string(b + 1) + "_i" +
                             std::to_string(i),
                         {slice_.column(a, i - 1), slice_.column(b, i - 1 + la)},
                         {1.0, 1.0},
                         Sense::kLe,
                         1.0};
        constraints_.push_back(std::move(c));
      }
    }
  }

  // (22): pin the first position to type 1.
  if (options_.symmetryFix) {
    const int col = slice_.column(0, 0);
    if (col >= 0) constraints_.push_back({"c22_fix", {col}, {1.0}, Sense::kEq, 1.0});
  }
}

int MilpModel::xIndex(int type, int position) const {
  const int col = slice_.column(type, position - 1);
  if (col < 0) throw std::out_of_range("MilpModel: no variable x for that (type, position)");
  return col;
}

int MilpModel::zaIndex(int k) const {
  if (k < 1 || k > slice_.fourierK()) throw std::out_of_range("MilpModel: harmonic out of range");
  return zaBase_ + (k - 1);
}

int MilpModel::zbIndex(int k) const {
  if (k < 1 || k > slice_.fourierK()) throw std::out_of_range("MilpModel: harmonic out of range");
  return zbBase_ + (k - 1);
}

int MilpModel::zIndex() const { return zVar_; }

std::vector<int> MilpModel::encodeSequence(const PitchSequence& seq) const {
  if (seq.totalLength() != slice_.tireLength())
    throw std::invalid_argument("encodeSequence: sequence length differs from the model tire");
  std::vector<int> x(static_cast<std::size_t>(binaryCount_), 0);
  for (std::size_t m = 0; m < seq.types().size(); ++m)
    x[static_cast<std::size_t>(slice_.column(seq.types()[m], seq.startOffsets()[m]))] = 1;
  return x;
}

PitchSequence MilpModel::decodeAssignment(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) < binaryCount_)
    throw std::invalid_argument("decodeAssignment: assignment shorter than the binary count");
  std::vector<VarRef> on;
  for (int col = 0; col < binaryCount_; ++col)
    if (x[static_cast<std::size_t>(col)] != 0) on.push_back(slice_.vars()[col]);
  std::sort(on.begin(), on.end(), [](const VarRef& u, const VarRef& v) { return u.start < v.start; });
  std::vector<int> types;
  int cursor = 0;
  for (const VarRef& v : on) {
    if (v.start != cursor)
      throw std::invalid_argument("decodeAssignment: pitches do not tile the tire");
    types.push_back(v.type);
    cursor += instance_->catalog().length(v.type);
  }
  if (cursor != slice_.tireLength())
    throw std::invalid_argument("decodeAssignment: pitches do not tile the tire");
  return PitchSequence(types, instance_->catalog());
}

AssignmentEvaluation evaluateAssignment(const MilpModel& model, const std::vector<int>& x,
                                        double tolerance) {
  const int kMax = model.fourierK();
  std::vector<double> value(model.variables().size(), 0.0);
  for (int col = 0; col < model.binaryCount(); ++col)
    value[static_cast<std::size_t>(col)] = x[static_cast<std::size_t>(col)] ? 1.0 : 0.0;

  AssignmentEvaluation eval;
  // Derive za/zb per (5)-(6) and z as the max per (1)-(4).
  for (int k = 1; k <= kMax; ++k) {
    double za = 0.0, zb = 0.0;
    for (int col = 0; col < model.binaryCount(); ++col) {
      if (!x[static_cast<std::size_t>(col)]) continue;
      za += model.slice().A()(k, col);
      zb += model.slice().B()(k, col);
    }
    value[static_cast<std::size_t>(model.zaIndex(k))] = za;
    value[static_cast<std::size_t>(model.zbIndex(k))] = zb;
    const double mag = std::max(std::abs(za), std::abs(zb));
    if (mag > eval.objective) {
      eval.objective = mag;
      eval.harmonic = k;
    }
  }
  value[static_cast<std::size_t>(model.zIndex())] = eval.objective;

  for (const MilpConstraint& c : model.constraints()) {
    double lhs = 0.0;
    for (std::size_t m = 0; m < c.vars.size(); ++m)
      lhs += c.coefs[m] * value[static_cast<std::size_t>(c.vars[m])];
    const bool ok = c.sense == Sense::kLe   ? lhs <= c.rhs + tolerance
                    : c.sense == Sense::kGe ? lhs >= c.rhs - tolerance
                                            : std::abs(lhs - c.rhs) <= tolerance;
    if (!ok) {
      eval.feasible = false;
      eval.violated.push_back(c.name);
    }
  }
  return eval;
}

namespace {

void writeLinearTerms(std::ostream& out, const MilpModel& model, const MilpConstraint& c) {
  std::vector<std::string> pieces;
  bool first = true;
  for (std::size_t m = 0; m < c.vars.size(); ++m) {
    const double coef = c.coefs[m];
    if (coef == 0.0) continue;
    std::ostringstream term;
    if (!first || coef < 0) term << (coef < 0 ? "- " : "+ ");
    first = false;
    const double mag = std::abs(coef);
    if (mag != 1.0) term << std::setprecision(17) << mag << ' ';
    term << model.variables()[static_cast<std::size_t>(c.vars[m])].name;
    pieces.push_back(term.str());
  }
  std::size_t lineLen = 0;
  for (const std::string& piece : pieces) {
    if (lineLen == 0) {
      out << piece;
      lineLen = piece.size();
    } else if (lineLen + 1 + piece.size() > 220) {
      out << "\n   " << piece;
      lineLen = 3 + piece.size();
    } else {
      out << ' ' << piece;
      lineLen += 1 + piece.size();
    }
  }
}

}  // namespace

void exportLp(const MilpModel& model, std::ostream& out) {
  out << "\\ pitch sequence noise model, tire length " << model.tireLength() << " (j="
      << model.emptySlots() << "), K=" << model.fourierK() << "\n";
  out << "Minimize\n obj: z\nSubject To\n";
  for (const MilpConstraint& c : model.constraints()) {
    out << ' ' << c.name << ": ";
    writeLinearTerms(out, model, c);
    switch (c.sense) {
      case Sense::kLe: out << " <= "; break;
      case Sense::kGe: out << " >= "; break;
      case Sense::kEq: out << " = "; break;
    }
    out << std::setprecision(17) << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (const MilpVar& v : model.variables())
    if (v.freeVar) out << ' ' << v.name << " free\n";
  out << "Binaries\n";
  std::string line = " ";
  for (const MilpVar& v : model.variables()) {
    if (v.kind != VarKind::kBinary) continue;
    if (line.size() + v.name.size() > 240) {
      out << line << '\n';
      line = " ";
    }
    line += ' ' + v.name;
  }
  if (line.size() > 1) out << line << '\n';
  out << "End\n";
}

void exportLpFile(const MilpModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  exportLp(model, out);
}

LpCounts parseLpCounts(std::istream& in) {
  enum class Section { kPreamble, kObjective, kRows, kBounds, kBinaries, kDone };
  Section section = Section::kPreamble;
  LpCounts counts;
  std::set<std::string> names;

  auto scanTokens = [&](std::string text) {
    // Strip a leading "rowname:" label.
    const auto colon = text.find(':');
    if (colon != std::string::npos) text = text.substr(colon + 1);
    std::istringstream ts(text);
    std::string tok;
    while (ts >> tok) {
      if (tok == "free" || tok == "<=" || tok == ">=" || tok == "=" || tok == "+" || tok == "-")
        continue;
      const char c0 = tok[0];
      if (std::isdigit(static_cast<unsigned char>(c0)) || c0 == '.' || c0 == '-' || c0 == '+')
        continue;
      names.insert(tok);
    }
  };

  std::string line;
  while (std::getline(in, line)) {
    const auto slash = line.find('\\');
    if (slash != std::string::npos) line = line.substr(0, slash);
    std::string stripped;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) stripped += std::tolower(c);
    if (stripped.empty()) continue;
    if (stripped == "minimize" || stripped == "maximize") { section = Section::kObjective; continue; }
    if (stripped == "subjectto" || stripped == "st") { section = Section::kRows; continue; }
    if (stripped == "bounds") { section = Section::kBounds; continue; }
    if (stripped == "binaries" || stripped == "binary") { section = Section::kBinaries; continue; }
    if (stripped == "end") { section = Section::kDone; continue; }

    switch (section) {
      case Section::kRows:
        if (line.find(':') != std::string::npos) ++counts.constraintCount;
        scanTokens(line);
        break;
      case Section::kObjective:
      case Section::kBounds:
        scanTokens(line);
        break;
      case Section::kBinaries: {
        std::istringstream ts(line);
        std::string tok;
        while (ts >> tok) {
          ++counts.binaryCount;
          names.insert(tok);
        }
        break;
      }
      default:
        break;
    }
  }
  counts.variableCount = static_cast<int>(names.size());
  return counts;
}

LpCounts parseLpCountsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  return parseLpCounts(in);
}

}  // namespace pitchopt
