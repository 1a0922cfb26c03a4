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

// dcqd: command-line front end.
//
//   dcqd gen-data    --config run.json [--seed N] [--shots N|exact] [--output FILE]
//   dcqd reconstruct --input probs.json [--method M] [--output FILE]
//   dcqd optimize    [--config run.json] [--surface FILE] [--grid N]
//   dcqd verify      [--config run.json] [--grid N] [--seed N]
//
// Exit codes:
//   0  success
//   1  verify: an identity failed (named on stderr)
//   2  bad command line, unreadable or invalid configuration
//   3  degenerate input angles
//   4  ill-conditioned coefficient system
//   5  singular coefficient system or singular noise correction
//
// Data goes to stdout (or --output), diagnostics to stderr. DCQD_LOG=info or
// DCQD_LOG=debug turns on progress messages.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dcqd/design.hpp"
#include "dcqd/io.hpp"
#include "dcqd/verify.hpp"

namespace {

using dcqd::io::ConfigError;
using dcqd::io::json;

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kBadConfig = 2,
  kDegenerate = 3,
  kIllConditioned = 4,
  kSingular = 5,
};

enum class LogLevel { kQuiet, kInfo, kDebug };

LogLevel log_level() {
  const char* env = std::getenv("DCQD_LOG");
  if (env == nullptr) return LogLevel::kQuiet;
  const std::string v(env);
  if (v == "debug") return LogLevel::kDebug;
  if (v == "info") return LogLevel::kInfo;
  return LogLevel::kQuiet;
}

void log(LogLevel level, const std::string& msg) {
  static const LogLevel threshold = log_level();
  if (threshold == LogLevel::kQuiet || level > threshold) return;
  std::cerr << (level == LogLevel::kDebug ? "[debug] " : "[info] ") << msg << '\n';
}

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string shots;
  std::string method;
  std::string surface_path;
  std::optional<std::size_t> grid;
  std::string input_path;
  std::string output_path;
  bool symmetrize = false;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json load_config(const Flags& f) {
  if (f.config_path.empty()) return json::object();
  json j = read_json_file(f.config_path);
  if (!j.is_object()) throw ConfigError(f.config_path + ": top level must be an object");
  return j;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

std::optional<std::uint64_t> parse_shots(const std::string& s) {
  if (s == "exact") return std::nullopt;
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v == 0)
    throw ConfigError("shots must be a positive count or \"exact\", got '" + s + "'");
  return v;
}

std::string shots_from_config(const json& cfg) {
  if (!cfg.contains("shots")) return "exact";
  const json& s = cfg["shots"];
  if (s.is_number_unsigned()) return std::to_string(s.get<std::uint64_t>());
  if (s.is_string()) return s.get<std::string>();
  throw ConfigError("config.shots must be a count or \"exact\"");
}

std::uint64_t seed_from(const Flags& f, const json& cfg) {
  if (f.seed) return *f.seed;
  if (!cfg.contains("seed")) return 0;
  if (!cfg["seed"].is_number_unsigned()) throw ConfigError("config.seed must be a non-negative integer");
  return cfg["seed"].get<std::uint64_t>();
}

dcqd::InputParams params_from(const json& cfg) {
  return cfg.contains("params") ? dcqd::io::params_from_json(cfg["params"]) : dcqd::InputParams{};
}

//============================================================================
// Commands
//============================================================================

int cmd_gen_data(const Flags& f) {
  const json cfg = load_config(f);
  if (!cfg.contains("channel")) throw ConfigError("gen-data: config needs a \"channel\" entry");
  dcqd::io::ProbsDocument doc;
  doc.params = params_from(cfg);
  doc.noise = dcqd::io::parse_noise(cfg.value("noise", json()));
  const dcqd::ChiMatrix1Q chi = dcqd::io::parse_channel(cfg["channel"]);
  doc.shots = parse_shots(f.shots.empty() ? shots_from_config(cfg) : f.shots);
  const std::uint64_t seed = seed_from(f, cfg);
  log(LogLevel::kInfo, "gen-data: theta=" + dcqd::io::format_double(doc.params.theta) +
                           " phi=" + dcqd::io::format_double(doc.params.phi) + " noise=" +
                           std::string(dcqd::io::noise_kind_name(doc.noise.kind)));

  doc.p = dcqd::io::forward_probabilities(chi, doc.noise, doc.params);
  if (doc.shots) {
    log(LogLevel::kDebug, "sampling " + std::to_string(*doc.shots) + " shots per setting, seed " + std::to_string(seed));
    doc.p = dcqd::sample_shots(doc.p, *doc.shots, seed);
  }
  write_output(f.output_path.empty() ? cfg.value("output", "") : f.output_path, dcqd::io::dump(dcqd::io::to_json(doc)));
  return kOk;
}

int cmd_reconstruct(const Flags& f) {
  const json cfg = load_config(f);
  const std::string input = f.input_path.empty() ? cfg.value("input", "") : f.input_path;
  if (input.empty()) throw ConfigError("reconstruct: no probability file given (--input)");
  const std::string output = f.output_path.empty() ? cfg.value("output", "") : f.output_path;
  const dcqd::io::ProbsDocument doc = dcqd::io::probs_from_json(read_json_file(input));
  const std::string method = !f.method.empty() ? f.method : cfg.value("method", "ideal");
  dcqd::ReconstructOptions ropts;
  ropts.symmetrize = f.symmetrize || cfg.value("symmetrize", false);
  log(LogLevel::kInfo, "reconstruct: method " + method);

  dcqd::io::ChiReport report;
  report.method = method;
  const auto partial = [&](const std::exception& e, int code) {
    report.error = e.what();
    try {
      const dcqd::LambdaSystem sys = dcqd::io::method_system(doc, method);
      report.cond = sys.cond;
      report.absdet = sys.absdet();
    } catch (const std::exception&) {
      // Diagnostics are best effort.
    }
    write_output(output, dcqd::io::dump(dcqd::io::to_json(report)));
    std::cerr << "error: " << e.what() << '\n';
    return code;
  };
  try {
    const dcqd::Reconstruction r = dcqd::io::reconstruct_document(doc, method, ropts);
    report.chi = r.chi;
    report.hermiticity_residual = r.hermiticity_residual;
    report.psd_min_eig = r.psd_min_eig;
    report.cond = r.cond;
    report.absdet = r.absdet;
  } catch (const dcqd::IllConditioned& e) {
    return partial(e, kIllConditioned);
  } catch (const dcqd::SingularMatrix& e) {
    return partial(e, kSingular);
  } catch (const dcqd::SingularNoise& e) {
    return partial(e, kSingular);
  } catch (const dcqd::ZeroContrast& e) {
    return partial(e, kSingular);
  }
  write_output(output, dcqd::io::dump(dcqd::io::to_json(report)));
  return kOk;
}

int cmd_optimize(const Flags& f) {
  const json cfg = load_config(f);
  std::optional<dcqd::FaultySetting> noise;
  if (cfg.contains("noise")) {
    const dcqd::io::NoiseSpec spec = dcqd::io::parse_noise(cfg["noise"]);
    if (spec.kind != dcqd::io::NoiseKind::kNone) noise = dcqd::io::to_faulty_setting(spec, {});
  }
  log(LogLevel::kInfo, std::string("optimize: ") + (noise ? "noisy" : "ideal") + " builder");
  const dcqd::OptimalDesign best = dcqd::optimize(noise);
  const double conc = dcqd::concurrence(dcqd::dcqd_input(1, {best.theta, best.phi}));

  json j;
  j["schema"] = dcqd::io::kDesignSchema;
  j["theta"] = best.theta;
  j["phi"] = best.phi;
  j["absdet"] = best.absdet;
  j["cond"] = best.cond;
  j["concurrence"] = conc;
  j["symmetries"] = best.symmetries;

  const std::string surface = f.surface_path.empty() ? cfg.value("surface", "") : f.surface_path;
  if (!surface.empty()) {
    const std::size_t grid = f.grid.value_or(cfg.value("grid", std::size_t{64}));
    log(LogLevel::kInfo, "surface: " + std::to_string(grid) + "x" + std::to_string(grid) + " -> " + surface);
    std::ostringstream csv;
    dcqd::io::write_surface_csv(csv, dcqd::det_surface(grid, grid, noise));
    write_output(surface, csv.str());
  }
  write_output(f.output_path, dcqd::io::dump(j));
  return kOk;
}

int cmd_verify(const Flags& f) {
  const json cfg = load_config(f);
  dcqd::VerifyOptions opts;
  if (cfg.contains("coefficients")) opts.coefficients = dcqd::io::matrix_from_json(cfg["coefficients"], 16, "coefficients");
  opts.grid = f.grid.value_or(cfg.value("grid", opts.grid));
  if (f.seed || cfg.contains("seed")) opts.seed = seed_from(f, cfg);
  if (opts.grid < 2) throw ConfigError("verify: grid must be >= 2");

  const dcqd::VerifyReport report = dcqd::run_verify(opts);
  json checks = json::array();
  for (const dcqd::CheckResult& c : report.checks) {
    log(LogLevel::kInfo, c.name + (c.passed ? " ok" : " FAILED"));
    json entry{{"name", c.name}, {"passed", c.passed}, {"tolerance", c.tolerance}};
    entry["max_deviation"] = std::isfinite(c.max_deviation) ? json(c.max_deviation) : json(nullptr);
    if (!c.detail.empty()) entry["detail"] = c.detail;
    checks.push_back(entry);
  }
  json j{{"schema", dcqd::io::kVerifySchema}, {"passed", report.passed()}, {"grid", opts.grid}, {"checks", checks}};
  if (const dcqd::CheckResult* bad = report.first_failure()) j["first_failure"] = bad->name;
  write_output(f.output_path, dcqd::io::dump(j));
  if (const dcqd::CheckResult* bad = report.first_failure()) {
    std::cerr << "verify: " << bad->name << " failed (max deviation " << dcqd::io::format_double(bad->max_deviation)
              << " > " << dcqd::io::format_double(bad->tolerance) << ")\n";
    return kVerifyFailed;
  }
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Direct characterization of single-qubit dynamics with Bell-state inputs and measurements"};
  app.require_subcommand(1);
  Flags f;

  const auto add_config = [&](CLI::App* c) { c->add_option("--config", f.config_path, "JSON run configuration"); };
  const auto add_output = [&](CLI::App* c) { c->add_option("--output,-o", f.output_path, "output file (default stdout)"); };

  CLI::App* gen = app.add_subcommand("gen-data", "simulate outcome probabilities for a channel");
  add_config(gen);
  add_output(gen);
  gen->add_option("--seed", f.seed, "sampling seed");
  gen->add_option("--shots", f.shots, "shots per setting, or 'exact'");

  CLI::App* rec = app.add_subcommand("reconstruct", "recover chi from a probability file");
  add_config(rec);
  add_output(rec);
  rec->add_option("--input,-i", f.input_path, "probability file (dcqd-probs/1)");
  rec->add_option("--method", f.method, "ideal|faulty|shortcut-correlated|shortcut-generalized-u|shortcut-belldiag")
      ->check(CLI::IsMember(std::vector<std::string>(dcqd::io::kMethods.begin(), dcqd::io::kMethods.end())));
  rec->add_flag("--symmetrize", f.symmetrize, "replace chi by its Hermitian part");

  CLI::App* opt = app.add_subcommand("optimize", "find input angles maximizing |det Lambda|");
  add_config(opt);
  add_output(opt);
  opt->add_option("--surface", f.surface_path, "write the |det Lambda| surface as CSV");
  opt->add_option("--grid", f.grid, "surface grid points per axis")->check(CLI::Range(2, 4096));

  CLI::App* ver = app.add_subcommand("verify", "check the identities the reconstruction relies on");
  add_config(ver);
  add_output(ver);
  ver->add_option("--grid", f.grid, "determinant check grid points per axis")->check(CLI::Range(2, 4096));
  ver->add_option("--seed", f.seed, "seed for the random channels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  try {
    if (gen->parsed()) return cmd_gen_data(f);
    if (rec->parsed()) return cmd_reconstruct(f);
    if (opt->parsed()) return cmd_optimize(f);
    return cmd_verify(f);
  } catch (const dcqd::DegenerateInput& e) {
    std::cerr << "error: DegenerateInput: " << e.what() << '\n';
    return kDegenerate;
  } catch (const dcqd::IllConditioned& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIllConditioned;
  } catch (const dcqd::SingularMatrix& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSingular;
  } catch (const dcqd::SingularNoise& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSingular;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON value: " << e.what() << '\n';
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadConfig;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
