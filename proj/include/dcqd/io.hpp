// Copyright 2026 The dcqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DCQD_IO_HPP
#define DCQD_IO_HPP

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dcqd/design.hpp"
#include "dcqd/faulty.hpp"
#include "dcqd/protocol.hpp"
#include "dcqd/shortcuts.hpp"

namespace dcqd::io {

using json = nlohmann::json;

/// Malformed or inconsistent configuration / data files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::string_view kProbsSchema = "dcqd-probs/1";
inline constexpr std::string_view kChiSchema = "dcqd-chi/1";
inline constexpr std::string_view kDesignSchema = "dcqd-design/1";
inline constexpr std::string_view kVerifySchema = "dcqd-verify/1";

/// Locale-independent, 17 significant digits.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Pretty JSON with a trailing newline. nlohmann writes doubles in their
/// shortest round-trip form through its own locale-free formatter.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

//============================================================================
// Scalars, complex numbers, matrices
//============================================================================

inline double get_number(const json& j, std::string_view what) {
  if (!j.is_number()) throw ConfigError(std::string(what) + ": expected a number");
  return j.get<double>();
}

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

/// Accepts [re, im] or a bare real.
inline Complex complex_from_json(const json& j, std::string_view what = "complex") {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ConfigError(std::string(what) + ": expected [re, im]");
  return {get_number(j[0], what), get_number(j[1], what)};
}

/// Flat row-major list of [re, im] pairs.
inline json matrix_to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (const Complex& z : m.entries()) out.push_back(complex_to_json(z));
  return out;
}

/// Reads an n x n complex matrix given either flat (n*n entries) or as a list of rows.
inline ComplexMatrix matrix_from_json(const json& j, std::size_t n, std::string_view what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + ": expected an array");
  ComplexMatrix m(n, n);
  if (j.size() == n * n) {
    for (std::size_t k = 0; k < n * n; ++k) m(k / n, k % n) = complex_from_json(j[k], what);
    return m;
  }
  if (j.size() != n) throw ConfigError(std::string(what) + ": expected " + std::to_string(n) + "x" + std::to_string(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n)
      throw ConfigError(std::string(what) + ": row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = complex_from_json(j[r][c], what);
  }
  return m;
}

inline std::array<std::array<double, 4>, 4> real4x4_from_json(const json& j, std::string_view what) {
  const ComplexMatrix m = matrix_from_json(j, 4, what);
  std::array<std::array<double, 4>, 4> out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      if (m(r, c).imag() != 0.0) throw ConfigError(std::string(what) + ": entries must be real");
      out[r][c] = m(r, c).real();
    }
  return out;
}

inline json real4x4_to_json(const std::array<std::array<double, 4>, 4>& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(json(row));
  return out;
}

//============================================================================
// Channel specifications
//============================================================================

inline PauliIndex parse_axis(std::string_view s) {
  if (s == "x" || s == "X" || s == "1") return PauliIndex{1};
  if (s == "y" || s == "Y" || s == "2") return PauliIndex{2};
  if (s == "z" || s == "Z" || s == "3") return PauliIndex{3};
  throw ConfigError("unknown rotation axis '" + std::string(s) + "'");
}

inline double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ConfigError(std::string(what) + ": cannot parse '" + std::string(s) + "' as a number");
  return v;
}

/// Presets "identity", "depolarizing:EPS", "unitary:AXIS,ANGLE", or an object
/// {"chi": 4x4} or {"kraus": [2x2, ...]}. The result must be CP.
inline ChiMatrix1Q parse_channel(const json& j) {
  ChiMatrix1Q chi;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto colon = s.find(':');
    const std::string name = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (name == "identity" && arg.empty()) {
      chi = ChiMatrix1Q::identity();
    } else if (name == "depolarizing") {
      chi = depolarizing_1q(parse_real(arg, "depolarizing"));
    } else if (name == "unitary") {
      const auto comma = arg.find(',');
      if (comma == std::string::npos) throw ConfigError("unitary preset needs AXIS,ANGLE");
      chi = unitary_channel<1>(
          rotation(parse_axis(arg.substr(0, comma)), parse_real(std::string_view(arg).substr(comma + 1), "angle")));
    } else {
      throw ConfigError("unknown channel preset '" + s + "'");
    }
  } else if (j.is_object() && j.contains("chi")) {
    chi = ChiMatrix1Q(matrix_from_json(j["chi"], 4, "channel.chi"));
  } else if (j.is_object() && j.contains("kraus")) {
    if (!j["kraus"].is_array() || j["kraus"].empty()) throw ConfigError("channel.kraus: expected a non-empty list");
    std::vector<ComplexMatrix> kraus;
    for (const auto& k : j["kraus"]) kraus.push_back(matrix_from_json(k, 2, "channel.kraus"));
    chi = chi_from_kraus<1>(kraus);
  } else {
    throw ConfigError("channel: expected a preset string, {\"chi\": ...} or {\"kraus\": ...}");
  }
  require_cp(chi, "channel");
  return chi;
}

//============================================================================
// Noise specifications
//============================================================================

enum class NoiseKind { kNone, kCorrelated, kGeneralizedU, kUncorrelated, kBellDiagonal, kExplicit };

inline std::string_view noise_kind_name(NoiseKind k) {
  switch (k) {
    case NoiseKind::kNone:
      return "none";
    case NoiseKind::kCorrelated:
      return "correlated-depolarizing";
    case NoiseKind::kGeneralizedU:
      return "generalized-depolarizing";
    case NoiseKind::kUncorrelated:
      return "uncorrelated-depolarizing";
    case NoiseKind::kBellDiagonal:
      return "bell-diagonal";
    case NoiseKind::kExplicit:
      return "explicit";
  }
  return "none";
}

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kNone;
  double eps = 1.0;       // preparation
  double eps_meas = 1.0;  // measurement
  json unitary = "identity";
  BellDiagonalNoise bell = BellDiagonalNoise::identity();
  ChiMatrix2Q chi_i = ChiMatrix2Q::identity();
  ChiMatrix2Q chi_f = ChiMatrix2Q::identity();
};

/// "identity", "cnot", {"random": SEED}, or an explicit 4x4 matrix.
inline ComplexMatrix parse_unitary_2q(const json& j) {
  ComplexMatrix u;
  if (j.is_string() && j.get<std::string>() == "identity") {
    u = ComplexMatrix::identity(4);
  } else if (j.is_string() && j.get<std::string>() == "cnot") {
    u = cnot();
  } else if (j.is_object() && j.contains("random")) {
    const json& seed = j["random"];
    if (!seed.is_number_integer() || seed.get<std::int64_t>() < 0)
      throw ConfigError("unitary.random: expected a non-negative seed");
    u = random_unitary(4, j["random"].get<std::uint64_t>());
  } else {
    u = matrix_from_json(j, 4, "noise.unitary");
  }
  if (!is_unitary(u)) throw ConfigError("noise.unitary: matrix is not unitary");
  return u;
}

inline NoiseSpec parse_noise(const json& j) {
  NoiseSpec n;
  if (j.is_null()) return n;
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("noise: expected an object with a \"kind\" string");
  const std::string kind = j["kind"].get<std::string>();
  const auto eps_pair = [&] {
    n.eps = j.contains("eps") ? get_number(j["eps"], "noise.eps") : 1.0;
    n.eps_meas = j.contains("eps_meas") ? get_number(j["eps_meas"], "noise.eps_meas") : n.eps;
  };
  if (kind == "none") {
    n.kind = NoiseKind::kNone;
  } else if (kind == "correlated-depolarizing") {
    n.kind = NoiseKind::kCorrelated;
    eps_pair();
  } else if (kind == "generalized-depolarizing") {
    n.kind = NoiseKind::kGeneralizedU;
    eps_pair();
    if (j.contains("unitary")) n.unitary = j["unitary"];
    (void)parse_unitary_2q(n.unitary);
  } else if (kind == "uncorrelated-depolarizing") {
    n.kind = NoiseKind::kUncorrelated;
    eps_pair();
  } else if (kind == "bell-diagonal") {
    n.kind = NoiseKind::kBellDiagonal;
    if (!j.contains("eps_prep") || !j.contains("eps_meas"))
      throw ConfigError("bell-diagonal noise needs eps_prep and eps_meas");
    n.bell.eps_prep = real4x4_from_json(j["eps_prep"], "noise.eps_prep");
    n.bell.eps_meas = real4x4_from_json(j["eps_meas"], "noise.eps_meas");
  } else if (kind == "explicit") {
    n.kind = NoiseKind::kExplicit;
    if (!j.contains("chi_i") || !j.contains("chi_f")) throw ConfigError("explicit noise needs chi_i and chi_f");
    n.chi_i = ChiMatrix2Q(matrix_from_json(j["chi_i"], 16, "noise.chi_i"));
    n.chi_f = ChiMatrix2Q(matrix_from_json(j["chi_f"], 16, "noise.chi_f"));
  } else {
    throw ConfigError("unknown noise kind '" + kind + "'");
  }
  return n;
}

inline json noise_to_json(const NoiseSpec& n) {
  json j{{"kind", noise_kind_name(n.kind)}};
  switch (n.kind) {
    case NoiseKind::kNone:
      break;
    case NoiseKind::kCorrelated:
    case NoiseKind::kUncorrelated:
      j["eps"] = n.eps;
      j["eps_meas"] = n.eps_meas;
      break;
    case NoiseKind::kGeneralizedU:
      j["eps"] = n.eps;
      j["eps_meas"] = n.eps_meas;
      j["unitary"] = n.unitary;
      break;
    case NoiseKind::kBellDiagonal:
      j["eps_prep"] = real4x4_to_json(n.bell.eps_prep);
      j["eps_meas"] = real4x4_to_json(n.bell.eps_meas);
      break;
    case NoiseKind::kExplicit:
      j["chi_i"] = matrix_to_json(n.chi_i.mat);
      j["chi_f"] = matrix_to_json(n.chi_f.mat);
      break;
  }
  return j;
}

/// The preparation / measurement maps for a noise spec. Bell-diagonal mixing
/// acts on settings rather than states and has no such form.
inline FaultySetting to_faulty_setting(const NoiseSpec& n, const InputParams& p) {
  FaultySetting s;
  s.params = p;
  switch (n.kind) {
    case NoiseKind::kNone:
      break;
    case NoiseKind::kCorrelated:
      s.chi_i = depolarizing_2q(n.eps);
      s.chi_f = depolarizing_2q(n.eps_meas);
      break;
    case NoiseKind::kGeneralizedU:
      s.chi_i = generalized_depolarizing_2q(n.eps, parse_unitary_2q(n.unitary));
      s.chi_f = depolarizing_2q(n.eps_meas);
      break;
    case NoiseKind::kUncorrelated:
      s.chi_i = uncorrelated_depolarizing(n.eps, n.eps);
      s.chi_f = uncorrelated_depolarizing(n.eps_meas, n.eps_meas);
      break;
    case NoiseKind::kBellDiagonal:
      throw ConfigError("bell-diagonal noise mixes settings and has no preparation/measurement map form");
    case NoiseKind::kExplicit:
      s.chi_i = n.chi_i;
      s.chi_f = n.chi_f;
      break;
  }
  s.check();
  return s;
}

/// Exact outcome probabilities of the noisy experiment.
inline ProbabilityVector forward_probabilities(const ChiMatrix1Q& chi, const NoiseSpec& n, const InputParams& p) {
  if (n.kind == NoiseKind::kBellDiagonal) return bell_diagonal_transform(simulate_probabilities(chi, p), n.bell);
  if (n.kind == NoiseKind::kNone) return simulate_probabilities(chi, p);
  return total_map_probabilities(chi, to_faulty_setting(n, p));
}

//============================================================================
// Probability files
//============================================================================

struct ProbsDocument {
  InputParams params;
  NoiseSpec noise;
  std::optional<std::uint64_t> shots;  // nullopt: exact probabilities
  ProbabilityVector p;
};

inline json to_json(const ProbsDocument& d) {
  json j;
  j["schema"] = kProbsSchema;
  j["params"] = {{"theta", d.params.theta}, {"phi", d.params.phi}};
  j["noise"] = noise_to_json(d.noise);
  if (d.shots)
    j["shots"] = *d.shots;
  else
    j["shots"] = "exact";
  j["p"] = json(d.p.p);
  return j;
}

inline InputParams params_from_json(const json& j) {
  if (!j.is_object() || !j.contains("theta") || !j.contains("phi"))
    throw ConfigError("params: expected {\"theta\": ..., \"phi\": ...}");
  return {get_number(j["theta"], "params.theta"), get_number(j["phi"], "params.phi")};
}

inline ProbsDocument probs_from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != kProbsSchema)
    throw ConfigError("probability file: missing or wrong schema tag (want " + std::string(kProbsSchema) + ")");
  ProbsDocument d;
  d.params = params_from_json(j.value("params", json()));
  d.noise = parse_noise(j.value("noise", json()));
  const json& shots = j.value("shots", json("exact"));
  if (shots.is_number_unsigned())
    d.shots = shots.get<std::uint64_t>();
  else if (!(shots.is_string() && shots.get<std::string>() == "exact"))
    throw ConfigError("probability file: shots must be a count or \"exact\"");
  const json& p = j.value("p", json());
  if (!p.is_array() || p.size() != 16) throw ConfigError("probability file: p must hold 16 numbers");
  for (std::size_t k = 0; k < 16; ++k) d.p.p[k] = get_number(p[k], "p");
  return d;
}

//============================================================================
// Reconstruction reports
//============================================================================

inline constexpr std::array<std::string_view, 5> kMethods{"ideal", "faulty", "shortcut-correlated",
                                                         "shortcut-generalized-u", "shortcut-belldiag"};

struct ChiReport {
  std::string method;
  std::optional<ChiMatrix1Q> chi;  // empty when reconstruction failed
  double hermiticity_residual = 0.0;
  double psd_min_eig = 0.0;
  double cond = 0.0;
  double absdet = 0.0;
  std::string error;
};

inline json to_json(const ChiReport& r) {
  json j;
  j["schema"] = kChiSchema;
  j["method"] = r.method;
  j["chi"] = r.chi ? matrix_to_json(r.chi->mat) : json(nullptr);
  j["hermiticity_residual"] = r.hermiticity_residual;
  j["psd_min_eig"] = r.psd_min_eig;
  // JSON has no infinity; a singular system reports cond as null.
  j["cond"] = std::isfinite(r.cond) ? json(r.cond) : json(nullptr);
  j["absdet"] = r.absdet;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline ChiReport chi_report_from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != kChiSchema)
    throw ConfigError("chi file: missing or wrong schema tag (want " + std::string(kChiSchema) + ")");
  ChiReport r;
  r.method = j.value("method", "");
  if (!j.contains("chi") || !j["chi"].is_null()) r.chi = ChiMatrix1Q(matrix_from_json(j.value("chi", json()), 4, "chi"));
  r.hermiticity_residual = get_number(j.value("hermiticity_residual", json(0.0)), "hermiticity_residual");
  r.psd_min_eig = get_number(j.value("psd_min_eig", json(0.0)), "psd_min_eig");
  const json& cond = j.value("cond", json(nullptr));
  r.cond = cond.is_null() ? std::numeric_limits<double>::infinity() : get_number(cond, "cond");
  r.absdet = get_number(j.value("absdet", json(0.0)), "absdet");
  r.error = j.value("error", "");
  return r;
}

/// Runs one reconstruction method on a probability document. Throws
/// ConfigError when the method cannot handle the recorded noise kind.
inline Reconstruction reconstruct_document(const ProbsDocument& d, std::string_view method,
                                          const ReconstructOptions& ropts = {}) {
  const NoiseSpec& n = d.noise;
  const auto need = [&](std::initializer_list<NoiseKind> kinds) {
    for (NoiseKind k : kinds)
      if (n.kind == k) return;
    throw ConfigError("method " + std::string(method) + " does not apply to noise kind " +
                      std::string(noise_kind_name(n.kind)));
  };
  if (method == "ideal") return reconstruct_ideal(d.p, d.params, ropts);
  if (method == "faulty") return reconstruct_faulty(d.p, to_faulty_setting(n, d.params), ropts);
  if (method == "shortcut-correlated") {
    need({NoiseKind::kNone, NoiseKind::kCorrelated});
    return reconstruct_ideal(corrected_probabilities_correlated(d.p, n.eps, n.eps_meas), d.params, ropts);
  }
  if (method == "shortcut-generalized-u") {
    need({NoiseKind::kGeneralizedU});
    ProtocolOptions opts;
    opts.input_unitary = parse_unitary_2q(n.unitary);
    return reconstruct_ideal(corrected_probabilities_generalized_u(d.p, n.eps, n.eps_meas), d.params, ropts, opts);
  }
  if (method == "shortcut-belldiag") {
    need({NoiseKind::kBellDiagonal});
    return reconstruct_ideal(bell_diagonal_invert(d.p, n.bell), d.params, ropts);
  }
  throw ConfigError("unknown method '" + std::string(method) + "'");
}

/// The coefficient system a method inverts; used for diagnostics when the solve fails.
inline LambdaSystem method_system(const ProbsDocument& d, std::string_view method) {
  if (method == "faulty") return build_faulty_lambda(to_faulty_setting(d.noise, d.params));
  ProtocolOptions opts;
  if (method == "shortcut-generalized-u") opts.input_unitary = parse_unitary_2q(d.noise.unitary);
  return numeric_lambda(d.params, opts);
}

//============================================================================
// Design surface CSV
//============================================================================

inline void write_surface_csv(std::ostream& os, const std::vector<SurfacePoint>& surface) {
  os << "theta,phi,absdet,cond\n";
  for (const SurfacePoint& s : surface)
    os << format_double(s.theta) << ',' << format_double(s.phi) << ',' << format_double(s.absdet) << ','
       << (std::isfinite(s.cond) ? format_double(s.cond) : std::string("inf")) << '\n';
}

}  // namespace dcqd::io

#endif  // DCQD_IO_HPP
