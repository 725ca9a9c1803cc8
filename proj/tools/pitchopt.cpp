// pitchopt — command-line front end for the pitch sequence noise library:
// exact/approximated solves, the GA baseline, model export, the start-position
// graph, and multi-instance result tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pitchopt/contribution.hpp"
#include "pitchopt/ga.hpp"
#include "pitchopt/graph.hpp"
#include "pitchopt/instance.hpp"
#include "pitchopt/milp.hpp"
#include "pitchopt/sequence.hpp"
#include "pitchopt/solver.hpp"
#include "pitchopt/spectrum.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace pitchopt;

struct CommonArgs {
  std::string instancePath;
  std::vector<std::string> instancePaths;  // table command
  std::string outDir = "pitchopt-out";
  int j = 0;
  std::string symmetry = "rotation-cuts";
  std::optional<std::uint64_t> seed;
  std::optional<double> timeLimit;
  std::optional<double> knownOptimal;
  std::string sequence;
  bool minSec = false;
};

std::string fixed3(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

std::string formatTime(double seconds, bool minSec) {
  if (!minSec) return fixed3(seconds) + " s";
  const long total = std::lround(seconds);
  const long h = total / 3600, m = (total % 3600) / 60, s = total % 60;
  std::ostringstream os;
  if (h > 0)
    os << h << ':' << std::setw(2) << std::setfill('0') << m << ':' << std::setw(2) << s;
  else
    os << m << ':' << std::setw(2) << std::setfill('0') << s;
  return os.str();
}

std::string timestampUtc() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int workerCount() {
  if (const char* env = std::getenv("PITCHOPT_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

Symmetry parseSymmetry(const std::string& name) {
  if (name == "none") return Symmetry::kNone;
  if (name == "fix-first") return Symmetry::kFixFirst;
  if (name == "rotation-cuts") return Symmetry::kRotationCuts;
  throw std::invalid_argument("unknown symmetry option: " + name);
}

void writeManifest(const CommonArgs& args, const std::string& command,
                   const std::vector<std::string>& outputs) {
  json manifest{{"command", command},
                {"toolVersion", kVersion},
                {"timestamp", timestampUtc()},
                {"outDir", args.outDir},
                {"outputs", outputs}};
  if (!args.instancePath.empty()) manifest["instance"] = args.instancePath;
  if (!args.instancePaths.empty()) manifest["instances"] = args.instancePaths;
  json options = json::object();
  options["j"] = args.j;
  options["symmetry"] = args.symmetry;
  options["workers"] = workerCount();
  if (args.seed) options["seed"] = *args.seed;
  if (args.timeLimit) options["timeLimit"] = *args.timeLimit;
  if (args.knownOptimal) options["knownOptimal"] = *args.knownOptimal;
  if (!args.sequence.empty()) options["sequence"] = args.sequence;
  manifest["options"] = options;
  std::ofstream out(fs::path(args.outDir) / "manifest.json");
  out << manifest.dump(2) << '\n';
}

json instanceEcho(const Instance& inst, const std::string& path) {
  json lengths = json::array();
  for (int l : inst.catalog().lengths()) lengths.push_back(l);
  return json{{"path", path},
              {"pitchCount", inst.pitchCount()},
              {"typeCount", inst.catalog().typeCount()},
              {"lengths", lengths},
              {"minOcc", inst.minOcc()},
              {"maxOcc", inst.maxOcc()},
              {"fourierK", inst.fourierK()}};
}

json resultJson(const SolveResult& r) {
  json perLength = json::object();
  for (const auto& [j, v] : r.perLengthBest) perLength[std::to_string(j)] = v;
  json log = json::array();
  for (const auto& rec : r.incumbentLog) {
    json entry{{"noise", rec.exactNoise}, {"timeSec", rec.timeSec}};
    std::ostringstream os;
    for (std::size_t i = 0; i < rec.types.size(); ++i) os << rec.types[i] + 1;
    entry["sequence"] = os.str();
    log.push_back(entry);
  }
  json out{{"feasible", r.feasible},
           {"optimal", r.optimal},
           {"exactNoise", r.exactNoise},
           {"approxNoise", r.approxNoise},
           {"exactHarmonic", r.exactHarmonic},
           {"approxHarmonic", r.approxHarmonic},
           {"nodesExplored", r.nodesExplored},
           {"candidatesEvaluated", r.candidatesEvaluated},
           {"incumbentUpdates", r.incumbentUpdates},
           {"wallTimeSec", r.wallTimeSec},
           {"perLengthBest", perLength},
           {"incumbents", log}};
  if (r.feasible) out["sequence"] = r.bestString();
  if (r.gapPercent) out["gapPercent"] = *r.gapPercent;
  return out;
}

void writeJson(const fs::path& path, const json& value) {
  std::ofstream out(path);
  out << value.dump(2) << '\n';
}

// An instance file the user pointed at but that cannot be read is a usage
// error (exit 2), unlike I/O failures on our own outputs (exit 1).
Instance loadInstance(const std::string& path) {
  try {
    return Instance::loadFile(path);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(e.what());
  }
}

int cmdNoise(const CommonArgs& args) {
  const Instance inst = loadInstance(args.instancePath);
  const PitchSequence seq = PitchSequence::fromString(args.sequence, inst.catalog());
  const Spectrum spectrum = profileSpectrum(seq, inst.catalog(), inst.fourierK());
  const NoisePeak exact = exactNoise(spectrum);
  const NoisePeak approx = approxNoise(spectrum);

  fs::create_directories(args.outDir);
  {
    std::ofstream csv(fs::path(args.outDir) / "spectrum.csv");
    writeSpectrumCsv(spectrum, csv);
  }
  json result{{"instance", instanceEcho(inst, args.instancePath)},
              {"sequence", args.sequence},
              {"tireLength", spectrum.tireLength},
              {"exactNoise", exact.value},
              {"exactHarmonic", exact.harmonic},
              {"approxNoise", approx.value},
              {"approxHarmonic", approx.harmonic},
              {"ratio", exact.value / approx.value}};
  writeJson(fs::path(args.outDir) / "result.json", result);
  writeManifest(args, "noise", {"spectrum.csv", "result.json"});

  std::cout << "sequence       " << args.sequence << "\n"
            << "tire length    " << spectrum.tireLength << "\n"
            << "exact noise    " << fixed3(exact.value) << " (harmonic " << exact.harmonic
            << ")\n"
            << "approx noise   " << fixed3(approx.value) << " (harmonic " << approx.harmonic
            << ")\n"
            << "exact/approx   " << fixed3(exact.value / approx.value) << "\n";
  return kExitOk;
}

int solveCommand(const CommonArgs& args, bool exactMode) {
  const Instance inst = loadInstance(args.instancePath);
  SearchOptions options;
  options.symmetry = parseSymmetry(args.symmetry);
  options.timeLimitSec = args.timeLimit;
  options.workers = workerCount();

  const SolveResult result = exactMode ? solveExact(inst, options)
                                       : solveApprox(inst, args.knownOptimal, options);

  fs::create_directories(args.outDir);
  json out = resultJson(result);
  out["instance"] = instanceEcho(inst, args.instancePath);
  writeJson(fs::path(args.outDir) / "result.json", out);
  writeManifest(args, exactMode ? "solve-exact" : "solve-approx", {"result.json"});

  if (!result.feasible) {
    std::cout << "infeasible: no sequence satisfies the constraints\n";
    return kExitInfeasible;
  }
  std::cout << "sequence       " << result.bestString() << "\n";
  if (exactMode) {
    std::cout << "exact noise    " << fixed3(result.exactNoise) << " (harmonic "
              << result.exactHarmonic << ")\n"
              << "approx noise   " << fixed3(result.approxNoise) << "\n";
  } else {
    std::cout << "approx noise   " << fixed3(result.approxNoise) << " (harmonic "
              << result.approxHarmonic << ")\n"
              << "real noise     " << fixed3(result.exactNoise) << "\n";
    if (result.gapPercent) std::cout << "gap            " << fixed3(*result.gapPercent) << " %\n";
  }
  std::cout << "nodes          " << result.nodesExplored << "\n"
            << "evaluated      " << result.candidatesEvaluated << "\n"
            << "time           " << formatTime(result.wallTimeSec, args.minSec) << "\n";
  if (!result.optimal) {
    std::cout << "time limit reached: best-so-far reported, not proven optimal\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmdGa(const CommonArgs& args) {
  Instance inst = loadInstance(args.instancePath);
  GaConfig config = inst.gaConfig();
  if (args.seed) config.rngSeed = *args.seed;

  const GaResult ga = solveGa(inst, config);

  fs::create_directories(args.outDir);
  {
    std::ofstream csv(fs::path(args.outDir) / "trace.csv");
    writeGaTraceCsv(ga, csv);
  }
  json out = resultJson(ga.result);
  out["instance"] = instanceEcho(inst, args.instancePath);
  out["generations"] = ga.generationsRun;
  out["seed"] = config.rngSeed;
  writeJson(fs::path(args.outDir) / "result.json", out);
  writeManifest(args, "ga", {"trace.csv", "result.json"});

  if (!ga.result.feasible) {
    std::cout << "infeasible: no valid individual found\n";
    return kExitInfeasible;
  }
  std::cout << "sequence       " << ga.result.bestString() << "\n"
            << "exact noise    " << fixed3(ga.result.exactNoise) << " (harmonic "
            << ga.result.exactHarmonic << ")\n"
            << "generations    " << ga.generationsRun << "\n"
            << "time           " << formatTime(ga.result.wallTimeSec, args.minSec) << "\n";
  return kExitOk;
}

int cmdExportLp(const CommonArgs& args) {
  const Instance inst = loadInstance(args.instancePath);
  if (args.j < 0 || args.j >= inst.emptySlotCount())
    throw std::invalid_argument("--j must lie in {0 .. " +
                                std::to_string(inst.emptySlotCount() - 1) + "}");
  MilpOptions options;
  options.maxSeq = std::any_of(inst.maxSeq().begin(), inst.maxSeq().end(),
                               [](int c) { return c > 0; });
  options.incompatibility = !inst.incompatiblePairs().empty();
  options.symmetryFix = parseSymmetry(args.symmetry) == Symmetry::kFixFirst;

  const MilpModel model(inst, args.j, options);
  fs::create_directories(args.outDir);
  const std::string name = "model-j" + std::to_string(args.j) + ".lp";
  exportLpFile(model, (fs::path(args.outDir) / name).string());
  writeManifest(args, "export-lp", {name});

  std::cout << "model file     " << (fs::path(args.outDir) / name).string() << "\n"
            << "tire length    " << model.tireLength() << "\n"
            << "binaries       " << model.binaryCount() << "\n"
            << "continuous     " << model.continuousCount() << "\n"
            << "constraints    " << model.constraints().size() << "\n";
  return kExitOk;
}

int cmdGraph(const CommonArgs& args) {
  const Instance inst = loadInstance(args.instancePath);
  if (args.j < 0 || args.j >= inst.emptySlotCount())
    throw std::invalid_argument("--j must lie in {0 .. " +
                                std::to_string(inst.emptySlotCount() - 1) + "}");
  const PitchGraph graph(inst.catalog(), inst.tireLengthForSlots(args.j), inst.fourierK());

  fs::create_directories(args.outDir);
  const std::string name = "graph-j" + std::to_string(args.j) + ".txt";
  {
    std::ofstream out(fs::path(args.outDir) / name);
    graph.dumpEdgeList(out);
  }
  writeManifest(args, "graph", {name});

  std::cout << "tire length    " << graph.tireLength() << "\n"
            << "nodes          " << graph.nodeCount() << "\n"
            << "arcs           " << graph.arcCount() << "\n"
            << "paths (N=" << inst.pitchCount() << ")   "
            << graph.countPaths(inst.pitchCount()) << "\n";
  return kExitOk;
}

int cmdTable(const CommonArgs& args) {
  fs::create_directories(args.outDir);
  std::ofstream csv(fs::path(args.outDir) / "table.csv");
  csv << "instance,optimalNoise,optimalSequence,approxNoise,realNoise,gapPercent,timeExact,"
         "timeApprox\n";
  std::cout << "instance,optimalNoise,optimalSequence,approxNoise,realNoise,gapPercent,"
               "timeExact,timeApprox\n";

  bool anyBad = false;
  for (const std::string& path : args.instancePaths) {
    const Instance inst = loadInstance(path);
    SearchOptions options;
    options.symmetry = parseSymmetry(args.symmetry);
    options.timeLimitSec = args.timeLimit;
    options.workers = workerCount();

    const SolveResult exact = solveExact(inst, options);
    std::ostringstream row;
    if (!exact.feasible) {
      row << path << ",infeasible,,,,,,";
      anyBad = true;
    } else {
      const SolveResult approx = solveApprox(inst, exact.exactNoise, options);
      row << path << ',' << fixed3(exact.exactNoise) << ',' << exact.bestString() << ','
          << fixed3(approx.approxNoise) << ',' << fixed3(approx.exactNoise) << ','
          << fixed3(approx.gapPercent.value_or(0.0)) << ','
          << formatTime(exact.wallTimeSec, args.minSec)
          << (exact.optimal ? "" : " (timeout)") << ','
          << formatTime(approx.wallTimeSec, args.minSec)
          << (approx.optimal ? "" : " (timeout)");
      anyBad = anyBad || !exact.optimal || !approx.optimal;
    }
    csv << row.str() << '\n';
    std::cout << row.str() << '\n';
  }
  writeManifest(args, "table", {"table.csv"});
  return anyBad ? kExitInfeasible : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pitchopt — tire pitch sequence noise optimization"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  CommonArgs args;

  auto addCommon = [&](CLI::App* cmd, bool needsInstance = true) {
    if (needsInstance)
      cmd->add_option("--instance", args.instancePath, "instance file")->required();
    cmd->add_option("--out", args.outDir, "output directory");
    cmd->add_flag("--min-sec", args.minSec, "print times as min:sec");
  };

  CLI::App* noise = app.add_subcommand("noise", "spectrum and noise of one sequence");
  addCommon(noise);
  noise->add_option("--sequence", args.sequence, "pitch type digits, e.g. 1311323331")
      ->required();

  CLI::App* exact = app.add_subcommand("solve-exact", "minimize the exact noise");
  addCommon(exact);
  exact->add_option("--symmetry", args.symmetry, "none|fix-first|rotation-cuts")
      ->check(CLI::IsMember({"none", "fix-first", "rotation-cuts"}));
  exact->add_option("--time-limit", args.timeLimit, "wall time limit in seconds");

  CLI::App* approx = app.add_subcommand("solve-approx", "minimize the approximated noise");
  addCommon(approx);
  approx->add_option("--time-limit", args.timeLimit, "wall time limit in seconds");
  approx->add_option("--known-optimal", args.knownOptimal,
                     "exact optimum for the gap column");

  CLI::App* ga = app.add_subcommand("ga", "genetic-algorithm baseline");
  addCommon(ga);
  ga->add_option("--seed", args.seed, "RNG seed (overrides the instance file)");

  CLI::App* exportLp = app.add_subcommand("export-lp", "write the positional model as LP text");
  addCommon(exportLp);
  exportLp->add_option("--j", args.j, "trailing empty units (tire length lmax - j)");
  exportLp->add_option("--symmetry", args.symmetry, "fix-first adds the pinning row")
      ->check(CLI::IsMember({"none", "fix-first", "rotation-cuts"}));

  CLI::App* graph = app.add_subcommand("graph", "dump the start-position graph");
  addCommon(graph);
  graph->add_option("--j", args.j, "trailing empty units (tire length lmax - j)");

  CLI::App* table = app.add_subcommand("table", "exact vs approximated table over instances");
  addCommon(table, false);
  table->add_option("--instance", args.instancePaths, "instance files (repeatable)");
  table->add_option("--symmetry", args.symmetry, "none|fix-first|rotation-cuts")
      ->check(CLI::IsMember({"none", "fix-first", "rotation-cuts"}));
  table->add_option("--time-limit", args.timeLimit, "per-solve wall time limit in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (noise->parsed()) return cmdNoise(args);
    if (exact->parsed()) return solveCommand(args, true);
    if (approx->parsed()) return solveCommand(args, false);
    if (ga->parsed()) return cmdGa(args);
    if (exportLp->parsed()) return cmdExportLp(args);
    if (graph->parsed()) return cmdGraph(args);
    if (table->parsed()) return cmdTable(args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  }
  return kExitUsage;
}
