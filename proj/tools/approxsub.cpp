// Copyright 2026 The ApproxSub Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// approxsub: verification and experiment command-line driver.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "approxsub/adversarial.hpp"
#include "approxsub/experiments.hpp"
#include "approxsub/functions.hpp"
#include "approxsub/noise.hpp"
#include "approxsub/serialization.hpp"
#include "approxsub/solvers.hpp"
#include "approxsub/verify.hpp"

namespace {

using approxsub::Json;

constexpr int kExitPass = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitPrecondition = 2;

struct GlobalOptions {
  std::string config;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw approxsub::FormatError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw approxsub::FormatError(path + ": " + e.what());
  }
}

std::string describe(const approxsub::CheckReport& r) {
  std::ostringstream out;
  out << r.property << " " << (r.instance.empty() ? "instance" : r.instance)
      << ": " << (r.pass ? "pass" : "COUNTEREXAMPLE") << " (examined "
      << r.examined << ")";
  for (const auto& s : r.counterexample) out << " " << s.to_string();
  if (!r.detail.empty()) out << " " << r.detail;
  return out.str();
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string property;
  std::string instance;
  std::string mode = "exhaustive";
  std::uint64_t trials = 10000;
  std::size_t n = 100, h = 50, s = 40;
  double epsilon = 0.5;
};

approxsub::SandwichMode sandwich_mode(const VerifyOptions& v,
                                      std::uint64_t seed) {
  if (v.mode == "exhaustive") return approxsub::SandwichMode::Exhaustive();
  if (v.mode == "sampled") return approxsub::SandwichMode::Sampled(v.trials, seed);
  throw approxsub::ParameterError("--mode must be exhaustive or sampled");
}

// Functions a document names for submodular / monotone checks.
std::vector<std::pair<std::string, approxsub::OraclePtr>> functions_of(
    const Json& doc) {
  std::vector<std::pair<std::string, approxsub::OraclePtr>> out;
  if (doc.contains("f_hidden") && doc.contains("g")) {
    out.emplace_back("f_hidden", approxsub::function_from_json(doc.at("f_hidden")));
    out.emplace_back("g", approxsub::function_from_json(doc.at("g")));
  } else if (doc.contains("function")) {
    out.emplace_back(doc.value("name", "function"),
                     approxsub::function_from_json(doc.at("function")));
  } else {
    out.emplace_back(doc.value("name", "function"),
                     approxsub::function_from_json(doc));
  }
  return out;
}

int run_verify(const GlobalOptions& g, const VerifyOptions& v) {
  using namespace approxsub;
  if (v.property == "concentration") {
    const auto method = v.mode == "exhaustive" || v.mode == "exact"
                            ? ConcentrationMethod::kExact
                            : ConcentrationMethod::kMonteCarlo;
    const ConcentrationReport r =
        check_concentration(v.n, v.h, v.s, v.epsilon, method, v.trials, g.seed);
    std::cout << "concentration n=" << v.n << " h=" << v.h << " s=" << v.s
              << " epsilon=" << internal::format_double(v.epsilon)
              << " mu=" << internal::format_double(r.mu)
              << " probability=" << internal::format_double(r.probability)
              << " reference=" << internal::format_double(r.reference)
              << (r.meets_reference() ? " pass" : " BELOW REFERENCE") << "\n";
    return r.meets_reference() ? kExitPass : kExitCounterexample;
  }
  const std::string path = !v.instance.empty() ? v.instance : g.config;
  if (path.empty()) {
    throw ParameterError("verify: an instance path is required");
  }
  const Json doc = read_json_file(path);
  bool pass = true;
  if (v.property == "submodular" || v.property == "monotone") {
    for (const auto& [name, f] : functions_of(doc)) {
      const CheckReport r = v.property == "submodular"
                                ? check_submodular(*f, name)
                                : check_monotone(*f, name);
      std::cout << describe(r) << "\n";
      pass = pass && r.pass;
    }
  } else if (v.property == "sandwich") {
    const SandwichMode mode = sandwich_mode(v, g.seed);
    if (doc.value("construction", "") == "trap") {
      auto trap = build_greedy_trap(doc.at("k").get<std::size_t>(),
                                    doc.at("beta").get<double>(),
                                    doc.at("n").get<std::size_t>());
      const TrapSandwichReport exact = check_trap_sandwich_exact(*trap);
      std::cout << "sandwich trap override sets (exact): "
                << (exact.pass ? "pass" : "COUNTEREXAMPLE") << " (examined "
                << exact.sets_checked << ")\n";
      pass = exact.pass;
      if (trap->ground_size() <= kMaxExhaustiveN || !mode.exhaustive) {
        const CheckReport r = check_sandwich(*trap, *trap->representative(),
                                             trap->epsilon(), mode, "trap");
        std::cout << describe(r) << "\n";
        pass = pass && r.pass;
      }
    } else if (doc.contains("f_hidden") && doc.contains("g")) {
      const HardPairParams p = params_from_json(doc.at("params"));
      auto fh = function_from_json(doc.at("f_hidden"));
      auto gf = function_from_json(doc.at("g"));
      auto sandwich = build_sandwich(fh, gf, p.epsilon);
      const CheckReport r =
          check_sandwich(*sandwich, *fh, p.epsilon, mode, "F^H");
      std::cout << describe(r) << "\n";
      pass = r.pass;
    } else {
      if (!doc.contains("noise")) {
        throw ParameterError(
            "verify sandwich: instance needs a \"noise\" section or a "
            "construction");
      }
      const NoiseConfig noise = noise_from_json(doc.at("noise"));
      auto f = function_from_json(doc.at("function"));
      auto noisy = apply_noise(noise, f);
      const CheckReport r = check_sandwich(*noisy, *f, noise.epsilon, mode,
                                           doc.value("name", "function"));
      std::cout << describe(r) << "\n";
      pass = r.pass;
    }
  } else {
    throw ParameterError(
        "--property must be submodular, monotone, sandwich or concentration");
  }
  return pass ? kExitPass : kExitCounterexample;
}

// ---------------------------------------------------------------------------
// Experiments

int finish(const GlobalOptions& g, const approxsub::Report& report) {
  using namespace approxsub;
  const ReportFormat format = report_format_from_string(g.format);
  if (g.out.empty()) {
    if (report.rows.empty()) throw ParameterError("no rows to write");
    std::cout << format_report(report, format);
  } else {
    emit_report(report, g.out, format);
  }
  for (const auto& note : report.notes) std::cerr << note << "\n";
  return report.pass ? kExitPass : kExitCounterexample;
}

approxsub::ExperimentConfig base_config(const GlobalOptions& g,
                                        const std::string& kind) {
  approxsub::ExperimentConfig c;
  if (!g.config.empty()) {
    c = approxsub::config_from_json(read_json_file(g.config));
    if (c.experiment != kind) {
      throw approxsub::ParameterError("config describes \"" + c.experiment +
                                      "\", not \"" + kind + "\"");
    }
  }
  c.experiment = kind;
  if (g.seed_given || c.seeds.empty()) c.seeds = {g.seed};
  return c;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  std::string construction = "monotone";
  std::size_t n = 4096;
  double beta = 0.25;
  std::size_t k = 16;
  bool include_functions = true;
};

int run_generate(const GlobalOptions& g, const GenerateOptions& o) {
  using namespace approxsub;
  Json doc;
  doc["construction"] = o.construction;
  if (o.construction == "trap") {
    auto trap = build_greedy_trap(o.k, o.beta, o.n);
    doc["n"] = o.n;
    doc["k"] = o.k;
    doc["beta"] = o.beta;
    doc["epsilon"] = trap->epsilon();
    doc["a_size"] = trap->a_size();
    doc["b_size"] = trap->b_size();
    doc["c_size"] = trap->c_size();
    doc["claimed_greedy_value"] = trap->claimed_greedy_value();
  } else if (o.construction == "monotone" || o.construction == "coverage") {
    const bool coverage = o.construction == "coverage";
    const HardPairParams p = coverage ? choose_coverage_params(o.n, o.beta)
                                      : choose_hard_params(o.n, o.beta);
    const HiddenSet hidden = draw_hidden_set(p.n, p.h, g.seed);
    doc["params"] = to_json(p);
    doc["seed"] = g.seed;
    doc["gap_bound"] = gap_bound(p);
    doc["hidden"] = internal::elements_of(hidden.members);
    if (o.include_functions) {
      if (coverage) {
        auto pair = build_coverage_pair(p, hidden, false);
        doc["f_hidden"] = to_json(*pair.f_hidden);
        doc["g"] = to_json(*pair.g);
      } else {
        auto pair = build_monotone_pair(p, hidden);
        doc["f_hidden"] = to_json(*pair.f_hidden);
        doc["g"] = to_json(*pair.g);
      }
    }
  } else {
    throw ParameterError("--construction must be monotone, coverage or trap");
  }
  const std::string text = doc.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g.out, std::ios::binary | std::ios::trunc);
    if (!out) throw ReportWriteError("cannot open " + g.out);
    out << text;
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::size_t n = 4096;
  double beta = 0.25;
  std::size_t trials = 3;
};

int run_bench(const GlobalOptions& g, const BenchOptions& o) {
  using namespace approxsub;
  const HardPairParams p = choose_hard_params(o.n, o.beta);
  Report report;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = derive_seed(g.seed, t);
    auto pair = build_monotone_pair(p, draw_hidden_set(p.n, p.h, seed));
    auto sandwich = build_sandwich(pair, p.epsilon);
    const auto start = std::chrono::steady_clock::now();
    const SolveResult res = greedy_cardinality(*sandwich, p.k);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    report.rows.push_back({"bench", p.n, p.k, p.h, p.alpha, p.beta, p.epsilon,
                           seed, "greedy", res.value, {}, {}, {},
                           sandwich->query_count(), sandwich->band_escapes()});
    std::ostringstream note;
    note << "bench seed " << seed << ": " << sandwich->query_count()
         << " queries in " << secs << " s ("
         << static_cast<double>(sandwich->query_count()) / secs
         << " queries/s)";
    report.notes.push_back(note.str());
  }
  return finish(g, report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approxsub: approximately submodular maximization toolkit"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config, "JSON config or instance file");
  app.add_option("--seed", g.seed, "Base random seed")
      ->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"csv", "structured"}));
  app.add_option("--threads", g.threads,
                 "Worker threads (default $APPROXSUB_THREADS or all cores)");

  VerifyOptions v;
  auto* verify = app.add_subcommand("verify", "Check a property of an instance");
  verify->add_option("--property", v.property)
      ->required()
      ->check(CLI::IsMember({"submodular", "monotone", "sandwich",
                             "concentration"}));
  verify->add_option("instance", v.instance, "Instance JSON path");
  verify->add_option("--mode", v.mode,
                     "exhaustive | sampled (sandwich); exact | montecarlo "
                     "(concentration)");
  verify->add_option("--trials", v.trials);
  verify->add_option("--n", v.n);
  verify->add_option("--hidden", v.h, "|H|");
  verify->add_option("--set-size", v.s, "|S|");
  verify->add_option("--epsilon", v.epsilon);

  approxsub::DistinguishConfig dist;
  auto* distinguish =
      app.add_subcommand("distinguish", "Greedy against the planted sandwich");
  distinguish->add_option("--construction", dist.construction)
      ->check(CLI::IsMember({"monotone", "coverage"}));
  distinguish->add_option("--n", dist.n);
  distinguish->add_option("--beta", dist.beta);
  distinguish->add_option("--trials", dist.trials);

  std::string sweep_solver = "greedy";
  std::vector<std::size_t> sweep_ks;
  std::vector<double> sweep_deltas, sweep_eps;
  std::vector<std::uint64_t> sweep_seeds;
  auto* sweep = app.add_subcommand("sweep", "Solvers under consistent noise");
  sweep->add_option("--solver", sweep_solver)
      ->check(CLI::IsMember({"greedy", "matroid", "curvature"}));
  sweep->add_option("--k", sweep_ks);
  sweep->add_option("--delta", sweep_deltas, "eps = delta / k");
  sweep->add_option("--epsilon", sweep_eps, "Curvature sweep eps grid");
  sweep->add_option("--seeds", sweep_seeds);

  std::vector<std::size_t> trap_ks;
  double trap_beta = 0.0;
  std::size_t trap_n = 0;
  auto* trap = app.add_subcommand("trap", "Greedy on the trap instance");
  trap->add_option("--k", trap_ks);
  trap->add_option("--beta", trap_beta);
  trap->add_option("--n", trap_n);

  std::vector<double> sample_c;
  double sample_eps = 0.0, sample_width = 0.0;
  std::size_t sample_trials = 0;
  std::string sample_family;
  auto* sample = app.add_subcommand("sample", "Validate the sampling rule");
  sample->add_option("--epsilon", sample_eps);
  sample->add_option("--confidence-constant", sample_c);
  sample->add_option("--trials", sample_trials);
  sample->add_option("--family", sample_family)
      ->check(CLI::IsMember({"uniform_relative", "additive_bounded"}));
  sample->add_option("--width", sample_width);

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Time greedy on the planted sandwich");
  bench->add_option("--n", bench_opts.n);
  bench->add_option("--beta", bench_opts.beta);
  bench->add_option("--trials", bench_opts.trials);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Emit a hard instance");
  generate->add_option("--construction", gen.construction)
      ->check(CLI::IsMember({"monotone", "coverage", "trap"}));
  generate->add_option("--n", gen.n);
  generate->add_option("--beta", gen.beta);
  generate->add_option("--k", gen.k, "Trap cardinality");
  generate->add_flag("!--no-functions", gen.include_functions,
                     "Omit serialized functions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitPrecondition;
  }

  try {
    if (*verify) return run_verify(g, v);
    if (*generate) return run_generate(g, gen);
    if (*bench) return run_bench(g, bench_opts);
    if (*distinguish) {
      auto c = base_config(g, "distinguish");
      if (distinguish->count("--construction")) c.construction = dist.construction;
      if (distinguish->count("--n") || c.n == 0) c.n = dist.n;
      if (distinguish->count("--beta") || c.beta <= 0) c.beta = dist.beta;
      if (distinguish->count("--trials") || c.trials == 0) c.trials = dist.trials;
      return finish(g, approxsub::run_experiment(c, g.threads));
    }
    if (*sweep) {
      auto c = base_config(g, "sweep");
      if (sweep->count("--solver")) c.solver = sweep_solver;
      if (!sweep_ks.empty()) c.ks = sweep_ks;
      if (!sweep_deltas.empty()) c.delta_grid = sweep_deltas;
      if (!sweep_eps.empty()) c.epsilon_grid = sweep_eps;
      if (!sweep_seeds.empty()) c.seeds = sweep_seeds;
      return finish(g, approxsub::run_experiment(c, g.threads));
    }
    if (*trap) {
      auto c = base_config(g, "trap");
      if (!trap_ks.empty()) c.ks = trap_ks;
      if (trap_beta > 0) c.beta = trap_beta;
      if (trap_n > 0) c.n = trap_n;
      return finish(g, approxsub::run_experiment(c, g.threads));
    }
    if (*sample) {
      auto c = base_config(g, "sample");
      if (sample_eps > 0) c.epsilon_grid = {sample_eps};
      if (!sample_c.empty()) c.confidence_constants = sample_c;
      if (sample_trials > 0) c.trials = sample_trials;
      if (!sample_family.empty()) c.noise_family = sample_family;
      if (sample_width > 0) c.width = sample_width;
      return finish(g, approxsub::run_experiment(c, g.threads));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitPrecondition;
}
