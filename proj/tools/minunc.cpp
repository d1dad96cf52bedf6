// minunc: verify claim suites, analyze states, sweep the two-mode Gaussian,
// search for saturating states and certify purity bounds.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 a verified claim failed.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minunc/minunc.hpp"

using namespace minunc;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitClaim = 2;

struct Globals {
  std::string out;
  std::string format = "json";
  std::optional<double> tol;
  std::uint64_t seed = 20240601;
  double hbar = 1.0;
  int gridPoints = 512;
  std::optional<int> fockCutoff;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    io::writeText(g.out, text);
  }
}

Json header(const Globals& g, const std::string& command) {
  Json h = io::header({g.hbar, 1.0, 1.0}, command);
  h["seed"] = g.seed;
  if (g.tol) h["tol"] = *g.tol;
  return h;
}

void csvHeader(io::CsvWriter& w, const Globals& g, const std::string& command) {
  w.comment("minunc " + command + " hbar=" + io::formatReal(g.hbar) + " mass=" + io::formatReal(1.0) +
            " omega=" + io::formatReal(1.0) + " seed=" + std::to_string(g.seed));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int runVerify(const Globals& g, const std::string& which) {
  suites::SuiteConfig cfg;
  cfg.seed = g.seed;
  cfg.hbar = g.hbar;
  cfg.gridPoints = g.gridPoints;
  if (g.tol) cfg.tol = *g.tol;
  if (g.fockCutoff) cfg.fockCutoff = *g.fockCutoff;

  std::vector<std::string> names;
  if (which == "all") {
    names = suites::suiteNames();
  } else {
    names.push_back(which);
  }

  std::vector<suites::SuiteReport> reports;
  for (const auto& n : names) reports.push_back(suites::runSuite(n, cfg));

  bool ok = true;
  Json j{{"header", header(g, "verify")}, {"suites", Json::array()}};
  io::CsvWriter w({"suite", "claim", "passed", "residual", "tolerance"});
  csvHeader(w, g, "verify");
  for (const auto& r : reports) {
    ok = ok && r.passed();
    std::printf("%s %s\n", r.passed() ? "PASS" : "FAIL", r.suite.c_str());
    Json claims = Json::array();
    for (const auto& c : r.claims) {
      if (!c.passed) std::printf("  failed: %s (residual %s, tolerance %s)\n", c.name.c_str(),
                                 io::formatReal(c.residual).c_str(), io::formatReal(c.tolerance).c_str());
      claims.push_back({{"claim", c.name}, {"passed", c.passed}, {"residual", c.residual},
                        {"tolerance", c.tolerance}});
      w.row({r.suite, c.name, c.passed, c.residual, c.tolerance});
    }
    j["suites"].push_back({{"suite", r.suite}, {"passed", r.passed()}, {"claims", std::move(claims)}});
  }
  j["passed"] = ok;
  if (!g.out.empty()) emit(g, g.format == "csv" ? w.str() : dump(j));
  return ok ? kExitOk : kExitClaim;
}

int runAnalyze(const Globals& g, const std::string& stateFile, const std::string& xFile,
               const std::string& yFile, const std::string& mode) {
  const BipartiteState psi = io::stateFromJson(io::readFile(stateFile));
  const ComplexMatrix x = io::matrixFromJson(io::readFile(xFile));
  const ComplexMatrix y = io::matrixFromJson(io::readFile(yFile));
  const Bound b = io::boundFromString(mode);
  const SaturationReport r = saturationAnalysis(x, y, psi, b, g.tol.value_or(kDefaultSaturationTol));
  std::printf("%s\n", toString(r.verdict));
  if (g.format == "csv") {
    io::CsvWriter w({"mode", "varX", "varY", "hurRHS", "srRHS", "hurGap", "srGap", "schmidtRank",
                     "maxResidual", "verdict"});
    csvHeader(w, g, "analyze");
    const UncertaintyReport& u = r.uncertainty;
    w.row({std::string(toString(b)), u.varX, u.varY, u.hurRHS, u.srRHS, u.hurGap, u.srGap,
           static_cast<long long>(r.schmidtRank), r.maxAnnihilationResidual(),
           std::string(toString(r.verdict))});
    if (!g.out.empty()) emit(g, w.str());
  } else if (!g.out.empty()) {
    emit(g, dump({{"header", header(g, "analyze")}, {"report", io::toJson(r)}}));
  }
  return kExitOk;
}

struct SweepArgs {
  std::vector<double> sigma{0.5, 2.0};
  std::vector<double> omega{0.1, 1.0};
  int steps = 20;
  bool closedFormOnly = false;
};

double linspace(const std::vector<double>& range, int k, int steps) {
  if (steps == 1) return range[0];
  return range[0] + (range[1] - range[0]) * k / (steps - 1);
}

int runSweep(const Globals& g, const SweepArgs& a) {
  for (const auto* r : {&a.sigma, &a.omega}) {
    if (r->empty() || r->size() > 2) throw DomainError("ranges take one or two values");
    for (const double v : *r)
      if (!(v > 0.0)) throw DomainError("sweep ranges must be positive");
  }
  if (a.steps < 1) throw DomainError("steps must be >= 1");
  const std::vector<double> sr = a.sigma.size() == 1 ? std::vector{a.sigma[0], a.sigma[0]} : a.sigma;
  const std::vector<double> orng = a.omega.size() == 1 ? std::vector{a.omega[0], a.omega[0]} : a.omega;
  const int sigmaSteps = a.sigma.size() == 1 ? 1 : a.steps;
  const int omegaSteps = a.omega.size() == 1 ? 1 : a.steps;

  io::CsvWriter w({"sigma", "omega", "dXA", "dPA", "product", "gap", "dXA_grid", "dPA_grid",
                   "product_grid", "gap_grid", "status"});
  csvHeader(w, g, "sweep");
  Json rows = Json::array();
  const double half = 0.5 * g.hbar;
  for (int i = 0; i < sigmaSteps; ++i) {
    for (int k = 0; k < omegaSteps; ++k) {
      const EPRGaussian e(linspace(sr, i, sigmaSteps), linspace(orng, k, omegaSteps), g.gridPoints);
      const EPRMoments c = eprClosedForm(e, g.hbar);
      double gx = std::nan(""), gp = std::nan("");
      std::string status = "ok";
      if (a.closedFormOnly) {
        status = "skipped";
      } else {
        try {
          const EPRMoments m = eprGridMoments(e, g.hbar);
          gx = m.dXA;
          gp = m.dPA;
        } catch (const GridTooCoarse& ex) {
          status = std::string("GridTooCoarse: ") + ex.what();
        }
      }
      w.row({e.sigma, e.omega, c.dXA, c.dPA, c.product(), c.product() - half, gx, gp, gx * gp,
             gx * gp - half, status});
      rows.push_back({{"sigma", e.sigma}, {"omega", e.omega}, {"dXA", c.dXA}, {"dPA", c.dPA},
                      {"product", c.product()}, {"gap", c.product() - half},
                      {"dXA_grid", std::isnan(gx) ? Json(nullptr) : Json(gx)},
                      {"dPA_grid", std::isnan(gp) ? Json(nullptr) : Json(gp)},
                      {"status", status}});
    }
  }
  emit(g, g.format == "json" ? dump({{"header", header(g, "sweep")}, {"rows", rows}}) : w.str());
  return kExitOk;
}

struct SearchArgs {
  std::string problemFile;
  std::string xFile;
  std::string yFile;
  std::string observables;
  long long dimA = -1;
  long long dimB = -1;
  std::string mode;
  std::optional<double> delta;
  std::optional<int> restarts;
  std::optional<int> maxIters;
  int rank = 0;
};

ComplexMatrix namedObservable(const std::string& name, Eigen::Index& dim) {
  if (name == "sx" || name == "sy" || name == "sz") {
    dim = 2;
    return name == "sx" ? suites::pauliX() : name == "sy" ? suites::pauliY() : suites::pauliZ();
  }
  throw DomainError("unknown observable '" + name + "' (expected sx, sy or sz)");
}

int runSearch(const Globals& g, const SearchArgs& a, bool seedGiven) {
  SearchProblem p;
  if (!a.problemFile.empty()) p = io::searchProblemFromJson(io::readFile(a.problemFile));
  if (!a.observables.empty()) {
    const auto comma = a.observables.find(',');
    if (comma == std::string::npos) throw DomainError("--observables takes NAME,NAME");
    Eigen::Index d = 0;
    p.x = namedObservable(a.observables.substr(0, comma), d);
    p.y = namedObservable(a.observables.substr(comma + 1), d);
    p.dimA = d;
  }
  if (!a.xFile.empty()) p.x = io::matrixFromJson(io::readFile(a.xFile));
  if (!a.yFile.empty()) p.y = io::matrixFromJson(io::readFile(a.yFile));
  if (a.problemFile.empty() && !a.xFile.empty()) p.dimA = p.x.rows();
  if (a.dimA > 0) p.dimA = a.dimA;
  if (a.dimB > 0) p.dimB = a.dimB;
  if (!a.mode.empty()) p.mode = io::boundFromString(a.mode);
  if (a.delta) p.minSchmidtCoeff = *a.delta;
  if (a.restarts) p.restarts = *a.restarts;
  if (a.maxIters) p.maxIters = *a.maxIters;
  if (seedGiven || a.problemFile.empty()) p.seed = g.seed;
  if (g.tol) p.tolerance = *g.tol;
  if (p.x.size() == 0 || p.y.size() == 0) throw DomainError("search needs observables X and Y");

  const SearchResult r = a.rank > 0 ? saturationHunt(p, a.rank) : minimizeGap(p);
  std::printf("bestGap %s%s\n", io::formatReal(r.bestGap).c_str(),
              a.rank > 0 ? (r.witnessFound ? " witness found" : " no witness") : "");
  if (g.format == "csv") {
    io::CsvWriter w({"restart", "bestGap"});
    csvHeader(w, g, "search");
    for (std::size_t k = 0; k < r.restartBest.size(); ++k) {
      w.row({static_cast<long long>(k), r.restartBest[k]});
    }
    emit(g, w.str());
  } else {
    emit(g, dump({{"header", header(g, "search")}, {"problem", io::toJson(p)}, {"result", io::toJson(r)}}));
  }
  return kExitOk;
}

/// Zero-pads rho to dim when the Fock space is larger than the given matrix.
DensityMatrix padTo(const DensityMatrix& rho, Eigen::Index dim) {
  if (rho.dim() == dim) return rho;
  if (rho.dim() > dim) throw DimensionMismatch("density matrix larger than the Fock space");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m.topLeftCorner(rho.dim(), rho.dim()) = rho.matrix();
  return DensityMatrix(m);
}

int runBounds(const Globals& g, const std::string& rhoFile) {
  const Json j = io::readFile(rhoFile);
  const bool wrapped = j.is_object() && j.contains("rho");
  const DensityMatrix given = io::densityFromJson(wrapped ? j["rho"] : j);
  int cutoff = g.fockCutoff.value_or(static_cast<int>(given.dim()) - 1);
  io::PhysicalConstants k{g.hbar, 1.0, 1.0};
  std::optional<FockSystem> fock;
  if (wrapped && j.contains("model")) {
    auto spec = io::modelFromJson(j["model"], k);
    if (!std::holds_alternative<FockSystem>(spec)) throw DomainError("bounds needs a fock model");
    fock = std::get<FockSystem>(spec);
  } else {
    fock.emplace(std::max(cutoff, 1), 1.0, 1.0, g.hbar);
  }
  const DensityMatrix rho = padTo(given, fock->dim());
  const PurityBoundReport r = purityBounds(*fock, rho);
  std::printf("mu %s phi %s satisfied %s\n", io::formatReal(r.mu).c_str(), io::formatReal(r.phi).c_str(),
              r.satisfied() ? "true" : "false");
  if (g.format == "csv") {
    io::CsvWriter w({"mu", "phi", "dmLHS", "dmRHS", "S", "beta", "entropicRHS", "satisfied"});
    w.comment("minunc bounds hbar=" + io::formatReal(fock->hbar()) + " mass=" + io::formatReal(fock->mass()) +
              " omega=" + io::formatReal(fock->omega()) + " cutoff=" + std::to_string(fock->cutoff()));
    w.row({r.mu, r.phi, r.dmLHS, r.dmRHS, r.entropy, r.beta, r.entropicRHS, r.satisfied()});
    emit(g, w.str());
  } else {
    Json h = io::header({fock->hbar(), fock->mass(), fock->omega()}, "bounds");
    h["cutoff"] = fock->cutoff();
    emit(g, dump({{"header", h}, {"report", io::toJson(r)}}));
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"minunc: minimum-uncertainty states of entangled and mixed systems"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "Output file (default: standard output for data commands)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", g.tol, "Tolerance override");
  auto* seedOpt = app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--hbar", g.hbar, "Value of hbar (mass and omega are 1)")->check(CLI::PositiveNumber);
  app.add_option("--grid-points", g.gridPoints, "Points per grid axis")->check(CLI::Range(16, 4096));
  app.add_option("--fock-cutoff", g.fockCutoff, "Highest Fock level kept")->check(CLI::Range(1, 4096));

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a claim suite (spin, oscillator, epr, rank, mixed, all)");
  verify->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"spin", "oscillator", "epr", "rank", "mixed", "all"}));

  std::string stateFile, xFile, yFile, mode = "HUR";
  auto* analyze = app.add_subcommand("analyze", "Saturation analysis of a bipartite state");
  analyze->add_option("--state", stateFile, "State JSON")->required();
  analyze->add_option("--x", xFile, "Observable X JSON (matrix on A)")->required();
  analyze->add_option("--y", yFile, "Observable Y JSON (matrix on A)")->required();
  analyze->add_option("--mode", mode, "HUR or SR")->check(CLI::IsMember({"HUR", "SR", "hur", "sr"}));

  SweepArgs sw;
  std::string model = "epr";
  auto* sweep = app.add_subcommand("sweep", "Sweep the two-mode Gaussian over (sigma, Omega)");
  sweep->add_option("--model", model, "Model")->check(CLI::IsMember({"epr"}));
  sweep->add_option("--sigma", sw.sigma, "sigma range: MIN MAX or a single value")->expected(1, 2);
  sweep->add_option("--omega", sw.omega, "Omega range: MIN MAX or a single value")->expected(1, 2);
  sweep->add_option("--steps", sw.steps, "Points per axis given as a range");
  sweep->add_flag("--closed-form-only", sw.closedFormOnly, "Skip the grid columns");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Minimize the uncertainty gap over entangled states");
  search->add_option("--problem", sa.problemFile, "SearchProblem JSON");
  search->add_option("--x", sa.xFile, "Observable X JSON");
  search->add_option("--y", sa.yFile, "Observable Y JSON");
  search->add_option("--observables", sa.observables, "Named pair, e.g. sx,sy");
  search->add_option("--dim-a", sa.dimA, "dimA");
  search->add_option("--dim-b", sa.dimB, "dimB");
  search->add_option("--mode", sa.mode, "HUR or SR")->check(CLI::IsMember({"HUR", "SR", "hur", "sr"}));
  search->add_option("--min-schmidt", sa.delta, "Schmidt coefficient floor delta");
  search->add_option("--restarts", sa.restarts, "Restart count");
  search->add_option("--max-iters", sa.maxIters, "Simplex iterations per pass");
  search->add_option("--rank", sa.rank, "Rank target s for a saturation hunt (0: full rank)");

  std::string rhoFile;
  auto* bounds = app.add_subcommand("bounds", "Purity and entropy bounds for a Fock-space density matrix");
  bounds->add_option("--rho", rhoFile, "Density matrix JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return runVerify(g, suite);
    if (*analyze) return runAnalyze(g, stateFile, xFile, yFile, mode);
    if (*sweep) return runSweep(g, sw);
    if (*search) return runSearch(g, sa, seedOpt->count() > 0);
    if (*bounds) return runBounds(g, rhoFile);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: schema: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
