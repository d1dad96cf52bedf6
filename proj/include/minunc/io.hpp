#pragma once

// JSON and CSV serialization. Complex numbers are [re, im] pairs, matrices are
// arrays of rows, bipartite states are {"dimA", "dimB", "amplitudes"} with
// amplitudes flattened row-major.

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mixedstate.hpp"
#include "models.hpp"
#include "search.hpp"
#include "uncertainty.hpp"

namespace minunc::io {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Parsing

/// 1-based line and column of byte offset `pos` in `text`.
inline std::pair<std::size_t, std::size_t> lineColumn(std::string_view text, std::size_t pos) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

/// Parses `text`; syntax errors become ParseError("<source>:line:col: ...").
inline Json parse(std::string_view text, const std::string& source = "<input>") {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // byte is one past the offending character.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = lineColumn(text, at);
    std::string what = e.what();
    const auto cut = what.find("syntax error");
    if (cut != std::string::npos) what = what.substr(cut);
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                     what);
  }
}

inline Json readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

namespace detail {

[[noreturn]] inline void schemaError(const std::string& what) {
  throw ParseError("schema: " + what);
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schemaError(std::string("expected object with field '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) schemaError(std::string("missing field '") + key + "'");
  return *it;
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) schemaError(std::string(what) + " must be a number");
  return j.get<double>();
}

template <class T>
T valueOr(const Json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    schemaError(std::string("field '") + key + "' has the wrong type");
  }
}

} // namespace detail

inline Complex complexFromJson(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) detail::schemaError("complex must be [re, im]");
  return {detail::number(j[0], "re"), detail::number(j[1], "im")};
}

inline ComplexMatrix matrixFromJson(const Json& j) {
  if (!j.is_array() || j.empty()) detail::schemaError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) detail::schemaError("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) detail::schemaError("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complexFromJson(j[r][c]);
    }
  }
  return m;
}

inline ComplexVector vectorFromJson(const Json& j) {
  if (!j.is_array()) detail::schemaError("vector must be an array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complexFromJson(j[k]);
  return v;
}

inline BipartiteState stateFromJson(const Json& j) {
  const Json& a = detail::field(j, "dimA");
  const Json& b = detail::field(j, "dimB");
  if (!a.is_number_integer() || !b.is_number_integer()) detail::schemaError("dimA, dimB must be integers");
  return BipartiteState(a.get<Eigen::Index>(), b.get<Eigen::Index>(),
                        vectorFromJson(detail::field(j, "amplitudes")));
}

/// Either a matrix of rows or {"populations": [...]} for a diagonal state.
inline DensityMatrix densityFromJson(const Json& j) {
  if (j.is_object() && j.contains("populations")) {
    const Json& p = j["populations"];
    if (!p.is_array() || p.empty()) detail::schemaError("populations must be a non-empty array");
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.size()),
                                          static_cast<Eigen::Index>(p.size()));
    for (std::size_t k = 0; k < p.size(); ++k) {
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = detail::number(p[k], "population");
    }
    return DensityMatrix(m);
  }
  return DensityMatrix(matrixFromJson(j));
}

inline Bound boundFromString(const std::string& s) {
  if (s == "HUR" || s == "hur") return Bound::HUR;
  if (s == "SR" || s == "sr") return Bound::SR;
  detail::schemaError("mode must be HUR or SR, got '" + s + "'");
}

struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
};

using ModelSpec = std::variant<SpinSystem, FockSystem, EPRGaussian>;

/// {"type":"spin","j2":2}, {"type":"fock","cutoff":60,...}, {"type":"epr","sigma":1,"omega":0.25,"grid":{...}}.
inline ModelSpec modelFromJson(const Json& j, const PhysicalConstants& k = {}) {
  const std::string type = detail::field(j, "type").get<std::string>();
  if (type == "spin") return SpinSystem(detail::field(j, "j2").get<int>());
  if (type == "fock") {
    return FockSystem(detail::valueOr(j, "cutoff", kDefaultFockCutoff), detail::valueOr(j, "mass", k.mass),
                      detail::valueOr(j, "omega", k.omega), detail::valueOr(j, "hbar", k.hbar));
  }
  if (type == "epr") {
    int points = 512;
    std::optional<double> extent;
    if (j.contains("grid")) {
      const Json& g = j["grid"];
      points = detail::valueOr(g, "points", points);
      if (g.contains("halfExtent")) extent = detail::number(g["halfExtent"], "halfExtent");
    }
    return EPRGaussian(detail::number(detail::field(j, "sigma"), "sigma"),
                       detail::number(detail::field(j, "omega"), "omega"), points, extent);
  }
  detail::schemaError("unknown model type '" + type + "'");
}

// ---------------------------------------------------------------------------
// Emission

inline Json toJson(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json toJson(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(toJson(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json toJson(const RealVector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

inline Json toJson(const BipartiteState& s) {
  Json amps = Json::array();
  for (Eigen::Index k = 0; k < s.amplitudes().size(); ++k) amps.push_back(toJson(s.amplitudes()(k)));
  return {{"dimA", s.dimA()}, {"dimB", s.dimB()}, {"amplitudes", std::move(amps)}};
}

inline Json toJson(const UncertaintyReport& r) {
  return {{"meanX", r.meanX},       {"meanY", r.meanY},
          {"varX", r.varX},         {"varY", r.varY},
          {"iCommutator", r.iCommutator}, {"anticommutator", r.anticommutator},
          {"hurRHS", r.hurRHS},     {"srRHS", r.srRHS},
          {"hurGap", r.hurGap},     {"srGap", r.srGap}};
}

inline Json toJson(const ConditionCheck& c) { return {{"passed", c.passed}, {"residual", c.residual}}; }

inline Json toJson(const SaturationReport& r) {
  Json j = toJson(r.uncertainty);
  j["mode"] = toString(r.mode);
  j["verdict"] = toString(r.verdict);
  j["schmidtCoefficients"] = toJson(r.schmidtCoefficients);
  j["schmidtRank"] = r.schmidtRank;
  j["gamma"] = toJson(r.gamma);
  j["rolesSwapped"] = r.rolesSwapped;
  j["residuals"] = r.annihilationResiduals;
  j["expectationResiduals"] = r.expectationResiduals;
  j["varianceRatioResiduals"] = r.varianceRatioResiduals;
  j["branchBoundResiduals"] = r.branchBoundResiduals;
  j["offDiagonalMaxX"] = r.offDiagonalMaxX;
  j["offDiagonalMaxY"] = r.offDiagonalMaxY;
  j["conditions"] = {{"equalMeansX", toJson(r.conditions.equalMeansX)},
                     {"equalMeansY", toJson(r.conditions.equalMeansY)},
                     {"branchesSaturate", toJson(r.conditions.branchesSaturate)},
                     {"balancedWidths", toJson(r.conditions.balancedWidths)}};
  return j;
}

/// beta = infinity is written as null.
inline Json toJson(const PurityBoundReport& r) {
  return {{"mu", r.mu},
          {"phi", r.phi},
          {"dX", r.dX},
          {"dP", r.dP},
          {"bastiaansRHS", r.bastiaansRHS},
          {"dmLHS", r.dmLHS},
          {"dmRHS", r.dmRHS},
          {"S", r.entropy},
          {"beta", std::isinf(r.beta) ? Json(nullptr) : Json(r.beta)},
          {"entropicRHS", r.entropicRHS},
          {"truncationWeight", r.truncationWeight},
          {"dmSatisfied", r.dmSatisfied},
          {"entropicSatisfied", r.entropicSatisfied},
          {"satisfied", r.satisfied()}};
}

inline Json toJson(const SearchProblem& p) {
  return {{"dimA", p.dimA},
          {"dimB", p.dimB},
          {"X", toJson(p.x)},
          {"Y", toJson(p.y)},
          {"mode", toString(p.mode)},
          {"minSchmidtCoeff", p.minSchmidtCoeff},
          {"seed", p.seed},
          {"restarts", p.restarts},
          {"maxIters", p.maxIters},
          {"tolerance", p.tolerance}};
}

inline SearchProblem searchProblemFromJson(const Json& j) {
  SearchProblem p;
  p.dimA = detail::field(j, "dimA").get<Eigen::Index>();
  p.dimB = detail::field(j, "dimB").get<Eigen::Index>();
  p.x = matrixFromJson(detail::field(j, "X"));
  p.y = matrixFromJson(detail::field(j, "Y"));
  p.mode = boundFromString(detail::valueOr<std::string>(j, "mode", "SR"));
  p.minSchmidtCoeff = detail::valueOr(j, "minSchmidtCoeff", p.minSchmidtCoeff);
  p.seed = detail::valueOr(j, "seed", p.seed);
  p.restarts = detail::valueOr(j, "restarts", p.restarts);
  p.maxIters = detail::valueOr(j, "maxIters", p.maxIters);
  p.tolerance = detail::valueOr(j, "tolerance", p.tolerance);
  return p;
}

inline Json toJson(const SearchResult& r) {
  return {{"bestGap", r.bestGap},
          {"bestState", toJson(r.bestState)},
          {"schmidtProfile", toJson(r.schmidtProfile)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"restartBest", r.restartBest},
          {"rankTarget", r.rankTarget},
          {"witnessFound", r.witnessFound}};
}

inline SearchResult searchResultFromJson(const Json& j) {
  SearchResult r;
  r.bestGap = detail::number(detail::field(j, "bestGap"), "bestGap");
  r.bestState = stateFromJson(detail::field(j, "bestState"));
  const Json& prof = detail::field(j, "schmidtProfile");
  r.schmidtProfile.resize(static_cast<Eigen::Index>(prof.size()));
  for (std::size_t k = 0; k < prof.size(); ++k) r.schmidtProfile(static_cast<Eigen::Index>(k)) = prof[k].get<double>();
  r.iterations = detail::valueOr(j, "iterations", 0);
  r.converged = detail::valueOr(j, "converged", false);
  r.restartBest = detail::valueOr(j, "restartBest", std::vector<double>{});
  r.rankTarget = detail::valueOr(j, "rankTarget", 0);
  r.witnessFound = detail::valueOr(j, "witnessFound", false);
  return r;
}

/// Run header recorded in every output.
inline Json header(const PhysicalConstants& k, const std::string& command) {
  return {{"command", command},
          {"units", {{"hbar", k.hbar}, {"mass", k.mass}, {"omega", k.omega}}}};
}

// ---------------------------------------------------------------------------
// CSV

/// 12 significant digits, scientific, independent of the C locale.
inline std::string formatReal(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 11);
  return std::string(buf, res.ptr);
}

using CsvCell = std::variant<double, long long, bool, std::string>;

class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void comment(const std::string& line) { comments_.push_back(line); }

  void row(std::vector<CsvCell> cells) {
    if (cells.size() != columns_.size()) throw DimensionMismatch("CSV row width differs from header");
    rows_.push_back(std::move(cells));
  }

  std::size_t rows() const { return rows_.size(); }

  std::string str() const {
    std::string out;
    for (const auto& c : comments_) out += "# " + c + "\n";
    for (std::size_t k = 0; k < columns_.size(); ++k) out += (k ? "," : "") + columns_[k];
    out += "\n";
    for (const auto& r : rows_) {
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (k) out += ",";
        out += std::visit(
            [](const auto& v) -> std::string {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) return formatReal(v);
              else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
              else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
              else return v;
            },
            r[k]);
      }
      out += "\n";
    }
    return out;
  }

private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<CsvCell>> rows_;
};

inline void writeText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << text;
  if (!out) throw Error(path + ": write failed");
}

} // namespace minunc::io
