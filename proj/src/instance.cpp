#include "pitchopt/instance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pitchopt {

void GaConfig::validate() const {
  if (populationSize < 2) throw std::invalid_argument("ga.populationSize must be at least 2");
  for (double p : {crossoverProb, mutationProb}) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("GA probabilities must lie in [0,1]");
  }
  if (selectionPressure < 0.0 || selectionPressure > 1.0)
    throw std::invalid_argument("ga.selectionPressure must lie in [0,1]");
  if (maxGenerations < 1) throw std::invalid_argument("ga.maxGenerations must be positive");
}

Instance::Instance(PitchCatalog catalog, int pitchCount, std::vector<int> minOcc,
                   std::vector<int> maxOcc, std::vector<int> maxSeq,
                   std::set<std::pair<int, int>> incompatiblePairs, int fourierK)
    : catalog_(std::move(catalog)),
      pitchCount_(pitchCount),
      minOcc_(std::move(minOcc)),
      maxOcc_(std::move(maxOcc)),
      maxSeq_(std::move(maxSeq)),
      incompatiblePairs_(std::move(incompatiblePairs)),
      fourierK_(fourierK) {
  const auto r = static_cast<std::size_t>(catalog_.typeCount());
  if (pitchCount_ < 1) throw std::invalid_argument("Instance: N must be positive");
  if (minOcc_.empty()) minOcc_.assign(r, 0);
  if (maxOcc_.empty()) maxOcc_.assign(r, pitchCount_);
  if (maxSeq_.empty()) maxSeq_.assign(r, 0);
  if (minOcc_.size() != r || maxOcc_.size() != r || maxSeq_.size() != r)
    throw std::invalid_argument("Instance: per-type lists must have one entry per pitch type");
  for (std::size_t p = 0; p < r; ++p) {
    if (minOcc_[p] < 0 || maxOcc_[p] < 0)
      throw std::invalid_argument("Instance: occurrence bounds must be nonnegative");
    if (maxSeq_[p] < 0) throw std::invalid_argument("Instance: maxSeq must be nonnegative");
  }
  for (const auto& [a, b] : incompatiblePairs_) {
    if (a < 0 || b < 0 || a >= static_cast<int>(r) || b >= static_cast<int>(r))
      throw std::invalid_argument("Instance: incompatible pair names an unknown type");
  }
  if (fourierK_ < 1) throw std::invalid_argument("Instance: K must be positive");
}

bool Instance::occurrenceWindowFeasible() const {
  const int minSum = std::accumulate(minOcc_.begin(), minOcc_.end(), 0);
  const int maxSum = std::accumulate(maxOcc_.begin(), maxOcc_.end(), 0);
  return minSum <= pitchCount_ && pitchCount_ <= maxSum;
}

int Instance::defaultFourierK(int pitchCount) { return std::min(3 * pitchCount / 2, 200); }

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parseInt(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("instance file: bad integer for " + key + ": '" + s + "'");
  }
}

std::vector<int> parseIntList(const std::string& s, const std::string& key) {
  std::vector<int> out;
  for (const auto& item : splitList(s)) out.push_back(parseInt(item, key));
  return out;
}

}  // namespace

Instance Instance::loadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

Instance Instance::parse(const std::string& text, const std::string& originName) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(originName + ":" + std::to_string(lineNo) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (kv.count(key))
      throw std::invalid_argument(originName + ": duplicate key '" + key + "'");
    kv[key] = value;
  }

  auto require = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument(originName + ": missing required key '" + key + "'");
    return it->second;
  };

  std::vector<Rational> ratios;
  for (const auto& item : splitList(require("ratios"))) ratios.push_back(Rational::parse(item));
  const double height = std::stod(require("height"));
  const Rational groove = Rational::parse(require("groove"));
  const int n = parseInt(require("N"), "N");

  PitchCatalog catalog(std::move(ratios), height, groove);
  const auto r = static_cast<std::size_t>(catalog.typeCount());

  std::vector<int> minOcc, maxOcc, maxSeq;
  if (kv.count("minOcc")) minOcc = parseIntList(kv["minOcc"], "minOcc");
  if (kv.count("maxOcc")) maxOcc = parseIntList(kv["maxOcc"], "maxOcc");
  if (kv.count("maxSeq")) maxSeq = parseIntList(kv["maxSeq"], "maxSeq");
  // A single scalar fans out to every type.
  for (auto* v : {&minOcc, &maxOcc, &maxSeq})
    if (v->size() == 1 && r > 1) v->assign(r, (*v)[0]);

  std::set<std::pair<int, int>> pairs;
  if (kv.count("incompatible")) {
    for (const auto& item : splitList(kv["incompatible"])) {
      const auto dash = item.find('-');
      if (dash == std::string::npos)
        throw std::invalid_argument(originName + ": incompatible entries look like a-b");
      const int a = parseInt(trim(item.substr(0, dash)), "incompatible");
      const int b = parseInt(trim(item.substr(dash + 1)), "incompatible");
      pairs.emplace(a - 1, b - 1);  // types are 1-based in files
    }
  }

  const int k = kv.count("K") ? parseInt(kv["K"], "K") : defaultFourierK(n);

  Instance inst(std::move(catalog), n, std::move(minOcc), std::move(maxOcc), std::move(maxSeq),
                std::move(pairs), k);

  GaConfig& ga = inst.gaConfig();
  if (kv.count("ga.populationSize")) ga.populationSize = parseInt(kv["ga.populationSize"], "ga.populationSize");
  if (kv.count("ga.crossoverProb")) ga.crossoverProb = std::stod(kv["ga.crossoverProb"]);
  if (kv.count("ga.mutationProb")) ga.mutationProb = std::stod(kv["ga.mutationProb"]);
  if (kv.count("ga.selectionPressure")) ga.selectionPressure = std::stod(kv["ga.selectionPressure"]);
  if (kv.count("ga.maxGenerations")) ga.maxGenerations = parseInt(kv["ga.maxGenerations"], "ga.maxGenerations");
  if (kv.count("ga.stagnationLimit")) ga.stagnationLimit = parseInt(kv["ga.stagnationLimit"], "ga.stagnationLimit");
  if (kv.count("ga.rngSeed")) ga.rngSeed = std::stoull(kv["ga.rngSeed"]);
  if (kv.count("ga.selection")) {
    const std::string sel = kv["ga.selection"];
    if (sel == "roulette") ga.selection = GaConfig::Selection::kRoulette;
    else if (sel == "ranking") ga.selection = GaConfig::Selection::kRanking;
    else throw std::invalid_argument(originName + ": ga.selection must be roulette or ranking");
  }
  ga.validate();
  return inst;
}

}  // namespace pitchopt
