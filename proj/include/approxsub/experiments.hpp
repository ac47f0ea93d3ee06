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

// Seeded experiment runners and CSV / structured report output.

#ifndef APPROXSUB_EXPERIMENTS_HPP_
#define APPROXSUB_EXPERIMENTS_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"

#include "approxsub/adversarial.hpp"
#include "approxsub/functions.hpp"
#include "approxsub/matroid.hpp"
#include "approxsub/noise.hpp"
#include "approxsub/random.hpp"
#include "approxsub/serialization.hpp"
#include "approxsub/solvers.hpp"
#include "approxsub/verify.hpp"

namespace approxsub {

// ---------------------------------------------------------------------------
// Threading

/// Explicit request if > 0, else $APPROXSUB_THREADS, else the hardware count.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("APPROXSUB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Callers write
/// results into per-index slots, so output order never depends on
/// scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(
                             threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Reports

struct ReportRow {
  std::string experiment;
  std::size_t n = 0;
  std::size_t k = 0;
  std::optional<std::size_t> h;
  std::optional<std::size_t> alpha;
  std::optional<double> beta;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  std::string solver;
  double value = 0.0;
  std::optional<double> baseline;
  std::optional<double> ratio;
  std::optional<double> bound;
  std::uint64_t queries = 0;
  std::optional<std::uint64_t> band_escapes;

  bool operator==(const ReportRow&) const = default;
};

struct Report {
  std::vector<ReportRow> rows;
  /// Human-readable findings: summaries, flags, assertion failures.
  std::vector<std::string> notes;
  /// False if any asserted guarantee failed.
  bool pass = true;
};

inline const char* kCsvHeader =
    "experiment,n,k,h,alpha,beta,epsilon,seed,solver,value,baseline,ratio,"
    "bound,queries,band_escapes";

namespace internal {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T>
std::string format_optional(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

template <typename T>
void put_optional(Json& j, const char* name, const std::optional<T>& v) {
  j[name] = v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> get_optional(const Json& j, const char* name) {
  if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
  return j.at(name).get<T>();
}

}  // namespace internal

inline std::string format_csv(const Report& report) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.experiment << ',' << r.n << ',' << r.k << ','
        << internal::format_optional(r.h) << ','
        << internal::format_optional(r.alpha) << ','
        << internal::format_optional(r.beta) << ','
        << internal::format_optional(r.epsilon) << ',' << r.seed << ','
        << r.solver << ',' << internal::format_double(r.value) << ','
        << internal::format_optional(r.baseline) << ','
        << internal::format_optional(r.ratio) << ','
        << internal::format_optional(r.bound) << ',' << r.queries << ','
        << internal::format_optional(r.band_escapes) << '\n';
  }
  return out.str();
}

inline Json to_json(const ReportRow& r) {
  Json j{{"experiment", r.experiment}, {"n", r.n},
         {"k", r.k},                   {"seed", r.seed},
         {"solver", r.solver},         {"value", r.value},
         {"queries", r.queries}};
  internal::put_optional(j, "h", r.h);
  internal::put_optional(j, "alpha", r.alpha);
  internal::put_optional(j, "beta", r.beta);
  internal::put_optional(j, "epsilon", r.epsilon);
  internal::put_optional(j, "baseline", r.baseline);
  internal::put_optional(j, "ratio", r.ratio);
  internal::put_optional(j, "bound", r.bound);
  internal::put_optional(j, "band_escapes", r.band_escapes);
  return j;
}

inline ReportRow row_from_json(const Json& j) {
  ReportRow r;
  r.experiment = internal::get<std::string>(j, "experiment");
  r.n = internal::get<std::size_t>(j, "n");
  r.k = internal::get<std::size_t>(j, "k");
  r.seed = internal::get<std::uint64_t>(j, "seed");
  r.solver = internal::get<std::string>(j, "solver");
  r.value = internal::get<double>(j, "value");
  r.queries = internal::get<std::uint64_t>(j, "queries");
  r.h = internal::get_optional<std::size_t>(j, "h");
  r.alpha = internal::get_optional<std::size_t>(j, "alpha");
  r.beta = internal::get_optional<double>(j, "beta");
  r.epsilon = internal::get_optional<double>(j, "epsilon");
  r.baseline = internal::get_optional<double>(j, "baseline");
  r.ratio = internal::get_optional<double>(j, "ratio");
  r.bound = internal::get_optional<double>(j, "bound");
  r.band_escapes = internal::get_optional<std::uint64_t>(j, "band_escapes");
  return r;
}

inline std::string format_structured(const Report& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) rows.push_back(to_json(r));
  Json j{{"rows", rows}, {"notes", report.notes}, {"pass", report.pass}};
  return j.dump(2) + "\n";
}

inline Report parse_structured(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
  Report report;
  for (const auto& r : internal::field(j, "rows")) {
    report.rows.push_back(row_from_json(r));
  }
  report.notes = j.value("notes", std::vector<std::string>{});
  report.pass = j.value("pass", true);
  return report;
}

enum class ReportFormat { kCsv, kStructured };

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "structured" || s == "json") return ReportFormat::kStructured;
  throw FormatError("unknown report format \"" + s + "\"");
}

inline std::string format_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::kCsv ? format_csv(report)
                                      : format_structured(report);
}

class ReportWriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void emit_report(const Report& report, const std::string& path,
                        ReportFormat format) {
  if (report.rows.empty()) {
    throw ParameterError("emit_report: no rows to write");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportWriteError("cannot open " + path + " for writing");
  out << format_report(report, format);
  if (!out) throw ReportWriteError("failed writing " + path);
}

// ---------------------------------------------------------------------------
// Instance corpora

struct NamedFunction {
  std::string name;
  FunctionPtr f;
};

/// Random coverage function. When `private_items` is set each element also
/// covers one item no other element covers, which keeps curvature below 1.
inline FunctionPtr random_coverage(std::size_t n, std::size_t universe,
                                   std::size_t max_cover, bool private_items,
                                   SplitMix64& rng) {
  std::vector<std::vector<std::size_t>> covers(n);
  const std::size_t shared = universe;
  for (Element e = 0; e < n; ++e) {
    const std::size_t size = 1 + rng.below(max_cover);
    for (std::size_t i = 0; i < size; ++i) {
      covers[e].push_back(rng.below(shared));
    }
    if (private_items) covers[e].push_back(shared + e);
  }
  return make_coverage(private_items ? shared + n : shared, std::move(covers));
}

/// Mixed corpus of 32 monotone submodular functions with n in [6, 12]:
/// coverage, additive, budget-additive, concave-of-cardinality, sums, and
/// both halves of the monotone hard pair.
inline std::vector<NamedFunction> standard_corpus(std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<NamedFunction> out;
  auto size = [&] { return 6 + static_cast<std::size_t>(rng.below(7)); };
  auto weights = [&](std::size_t n, std::uint64_t hi) {
    std::vector<double> w(n);
    for (auto& x : w) x = static_cast<double>(1 + rng.below(hi));
    return w;
  };
  for (int i = 0; i < 8; ++i) {
    const std::size_t n = size();
    out.push_back({"coverage" + std::to_string(i),
                   random_coverage(n, 2 * n, 4, i % 2 == 1, rng)});
  }
  for (int i = 0; i < 6; ++i) {
    out.push_back({"additive" + std::to_string(i), make_additive(weights(size(), 9))});
  }
  for (int i = 0; i < 6; ++i) {
    const std::size_t n = size();
    auto w = weights(n, 9);
    double total = 0.0;
    for (double x : w) total += x;
    out.push_back({"budget_additive" + std::to_string(i),
                   make_budget_additive(
                       std::move(w), std::floor(total * (0.2 + 0.1 * i)))});
  }
  for (int i = 0; i < 4; ++i) {
    const std::size_t n = size();
    // Nonincreasing integer increments.
    std::vector<double> table(n + 1, 0.0);
    std::uint64_t step = 6 + rng.below(6);
    for (std::size_t x = 1; x <= n; ++x) {
      table[x] = table[x - 1] + static_cast<double>(step);
      step -= std::min<std::uint64_t>(step, rng.below(3));
    }
    out.push_back({"concave" + std::to_string(i),
                   make_concave_cardinality(std::move(table))});
  }
  for (int i = 0; i < 4; ++i) {
    const std::size_t n = size();
    auto w = weights(n, 5);
    out.push_back({"sum" + std::to_string(i),
                   make_sum({random_coverage(n, n, 3, false, rng),
                             make_budget_additive(std::move(w), 6.0)})});
  }
  for (int i = 0; i < 2; ++i) {
    HardPairParams p{12, 6, 3, 4, 0.5, 0.0};
    auto pair = build_monotone_pair(p, draw_hidden_set(12, 6, rng()));
    out.push_back({"pair_fH" + std::to_string(i), pair.f_hidden});
    out.push_back({"pair_g" + std::to_string(i), pair.g});
  }
  return out;
}

struct MatroidFixture {
  std::string name;
  FunctionPtr f;
  MatroidPtr matroid;
};

/// Partition-matroid fixtures with n in [6, 10].
inline std::vector<MatroidFixture> standard_matroid_fixtures(
    std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<MatroidFixture> out;
  for (int i = 0; i < 12; ++i) {
    const std::size_t n = 6 + static_cast<std::size_t>(rng.below(5));
    const std::size_t blocks = 2 + static_cast<std::size_t>(rng.below(3));
    std::vector<std::size_t> block_of(n), caps(blocks);
    for (Element e = 0; e < n; ++e) block_of[e] = e % blocks;
    for (auto& c : caps) c = 1 + static_cast<std::size_t>(rng.below(2));
    auto matroid =
        std::make_shared<PartitionMatroid>(std::move(block_of), std::move(caps));
    FunctionPtr f;
    switch (i % 3) {
      case 0:
        f = random_coverage(n, 2 * n, 4, false, rng);
        break;
      case 1: {
        std::vector<double> w(n);
        for (auto& x : w) x = static_cast<double>(1 + rng.below(9));
        f = make_budget_additive(std::move(w), 12.0);
        break;
      }
      default: {
        std::vector<double> w(n);
        for (auto& x : w) x = static_cast<double>(1 + rng.below(9));
        f = make_sum({random_coverage(n, n, 3, false, rng),
                      make_additive(std::move(w))});
      }
    }
    out.push_back({"partition" + std::to_string(i), std::move(f),
                   std::move(matroid)});
  }
  return out;
}

/// Coverage fixtures (n in [6, 12]) whose curvature is below 1.
inline std::vector<NamedFunction> curvature_fixtures(std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<NamedFunction> out;
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 6 + static_cast<std::size_t>(rng.below(7));
    out.push_back({"coverage_private" + std::to_string(i),
                   random_coverage(n, n, 3, true, rng)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distinguishability: greedy against the sandwich FH with planted H.

struct DistinguishConfig {
  std::string construction = "monotone";  // or "coverage"
  std::size_t n = 4096;
  double beta = 0.25;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct DistinguishSummary {
  HardPairParams params;
  double gap = 0.0;
  /// max fH over |S| <= k: k (monotone) or k + alpha (coverage).
  double planted_max = 0.0;
  std::size_t zero_escape_trials = 0;
  double zero_escape_fraction = 0.0;
  double mean_ratio = 0.0;
  /// Largest zero-escape value divided by planted_max.
  double worst_zero_escape_ratio = 0.0;
  bool bound_holds = true;
  bool report_only = false;
};

/// Below this n the run is flagged report-only.
inline constexpr std::size_t kDistinguishAssertMinN = 1024;
inline constexpr std::size_t kDistinguishMaxN = std::size_t{1} << 14;

inline Report run_distinguishability(const DistinguishConfig& cfg,
                                     DistinguishSummary* summary_out = nullptr) {
  const bool coverage = cfg.construction == "coverage";
  if (!coverage && cfg.construction != "monotone") {
    throw ParameterError("distinguish: construction must be monotone or "
                         "coverage");
  }
  if (cfg.n > kDistinguishMaxN) {
    throw ParameterError("distinguish: n exceeds guard " +
                         std::to_string(kDistinguishMaxN));
  }
  if (cfg.trials == 0) throw ParameterError("distinguish: trials must be > 0");
  const HardPairParams p = coverage ? choose_coverage_params(cfg.n, cfg.beta)
                                    : choose_hard_params(cfg.n, cfg.beta);
  DistinguishSummary sum;
  sum.params = p;
  sum.gap = gap_bound(p);
  sum.planted_max = static_cast<double>(p.k + (coverage ? p.alpha : 0));
  sum.report_only = cfg.n < kDistinguishAssertMinN;

  std::vector<ReportRow> rows(cfg.trials);
  parallel_for(cfg.trials, resolve_threads(cfg.threads), [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(cfg.seed, t);
    const HiddenSet hidden = draw_hidden_set(p.n, p.h, seed);
    OraclePtr fh, g;
    if (coverage) {
      auto pair = build_coverage_pair(p, hidden, false);
      fh = pair.f_hidden;
      g = pair.g;
    } else {
      auto pair = build_monotone_pair(p, hidden);
      fh = pair.f_hidden;
      g = pair.g;
    }
    auto sandwich = build_sandwich(fh, g, p.epsilon);
    const SolveResult res = greedy_cardinality(*sandwich, p.k);
    ReportRow& r = rows[t];
    r.experiment = "distinguish";
    r.n = p.n;
    r.k = p.k;
    r.h = p.h;
    r.alpha = p.alpha;
    r.beta = p.beta;
    r.epsilon = p.epsilon;
    r.seed = seed;
    r.solver = "greedy";
    r.value = res.value;
    r.queries = sandwich->query_count();
    r.band_escapes = sandwich->band_escapes();
    // Planted optimum: fH on any k-subset of H.
    r.baseline = sum.planted_max;
    r.ratio = res.value / *r.baseline;
    r.bound = sum.gap;
  });

  Report report;
  report.rows = std::move(rows);
  double ratio_sum = 0.0;
  for (const auto& r : report.rows) {
    ratio_sum += *r.ratio;
    if (*r.band_escapes == 0) {
      ++sum.zero_escape_trials;
      const double rel = r.value / sum.planted_max;
      sum.worst_zero_escape_ratio = std::max(sum.worst_zero_escape_ratio, rel);
      if (r.value > sum.gap * sum.planted_max * (1.0 + 1e-12)) {
        sum.bound_holds = false;
        report.notes.push_back("zero-escape trial seed " +
                               std::to_string(r.seed) + " exceeds gap bound");
      }
    }
  }
  sum.zero_escape_fraction = static_cast<double>(sum.zero_escape_trials) /
                             static_cast<double>(cfg.trials);
  sum.mean_ratio = ratio_sum / static_cast<double>(cfg.trials);

  std::ostringstream note;
  note << "distinguish " << cfg.construction << ": n=" << p.n
       << " k=h=" << p.k << " alpha=" << p.alpha
       << " epsilon=" << internal::format_double(p.epsilon)
       << " gap=" << internal::format_double(sum.gap)
       << " zero_escape_fraction="
       << internal::format_double(sum.zero_escape_fraction)
       << " mean_ratio=" << internal::format_double(sum.mean_ratio)
       << " worst_zero_escape_value/max_fH="
       << internal::format_double(sum.worst_zero_escape_ratio)
       << " bound " << (sum.bound_holds ? "holds" : "VIOLATED");
  report.notes.push_back(note.str());
  if (sum.report_only) {
    report.notes.push_back(
        "report-only regime: n < " + std::to_string(kDistinguishAssertMinN) +
        ", concentration too weak at this scale for the escape fraction to "
        "be meaningful");
  } else {
    report.pass = sum.bound_holds;
  }
  if (summary_out) *summary_out = sum;
  return report;
}

// ---------------------------------------------------------------------------
// Noise sweeps: greedy / matroid greedy / curvature top-k versus brute force.

struct SweepConfig {
  std::vector<NamedFunction> instances;
  std::vector<std::size_t> ks{2, 4, 6};
  /// eps = delta / k.
  std::vector<double> delta_grid{0.0, 0.5, 1.0};
  std::vector<std::uint64_t> seeds;
  unsigned threads = 0;
};

namespace internal {

inline bool meets(double value, double ratio, double baseline) {
  return value >= ratio * baseline - 1e-9 * std::max(1.0, std::abs(baseline));
}

// Runs jobs in parallel and concatenates rows in job order.
template <typename Job>
Report run_jobs(std::size_t count, unsigned threads, Job&& job) {
  std::vector<ReportRow> rows(count);
  std::vector<char> ok(count, 1);
  parallel_for(count, resolve_threads(threads), [&](std::size_t i) {
    ok[i] = job(i, rows[i]) ? 1 : 0;
  });
  Report report;
  for (std::size_t i = 0; i < count; ++i) {
    if (!ok[i]) {
      report.pass = false;
      report.notes.push_back(rows[i].experiment + " " + rows[i].solver +
                             " seed " + std::to_string(rows[i].seed) +
                             " k=" + std::to_string(rows[i].k) +
                             " ratio below bound");
    }
  }
  report.rows = std::move(rows);
  return report;
}

}  // namespace internal

/// Greedy under consistent noise eps = delta/k against brute force on F.
/// Rows are seed-major, then instance, k, delta.
inline Report run_noise_sweep(const SweepConfig& cfg) {
  struct Job {
    std::uint64_t seed;
    std::size_t instance;
    std::size_t k;
    double delta;
  };
  std::vector<Job> jobs;
  for (auto seed : cfg.seeds) {
    for (std::size_t i = 0; i < cfg.instances.size(); ++i) {
      for (auto k : cfg.ks) {
        if (k > cfg.instances[i].f->ground_size()) continue;
        for (double delta : cfg.delta_grid) jobs.push_back({seed, i, k, delta});
      }
    }
  }
  Report report = internal::run_jobs(
      jobs.size(), cfg.threads, [&](std::size_t j, ReportRow& r) {
        const Job& job = jobs[j];
        const auto& f = cfg.instances[job.instance].f;
        const double eps = job.delta / static_cast<double>(job.k);
        auto noisy = consistent_noise(f, eps, job.seed);
        const SolveResult res = greedy_cardinality(*noisy, job.k);
        const std::uint64_t queries = noisy->query_count();
        const SolveResult opt = brute_force(*noisy, job.k);
        const BoundReport bound = greedy_bound(job.k, eps);
        r = {"sweep:" + cfg.instances[job.instance].name,
             f->ground_size(), job.k, {}, {}, {}, eps, job.seed, "greedy",
             res.value, opt.value,
             opt.value > 0 ? res.value / opt.value : 1.0, bound.ratio,
             queries, {}};
        return internal::meets(res.value, bound.ratio, opt.value);
      });
  report.notes.insert(report.notes.begin(),
                      "sweep greedy: " + std::to_string(report.rows.size()) +
                          " runs, " + (report.pass ? "all" : "NOT all") +
                          " meet greedy_bound(k, eps)");
  return report;
}

struct MatroidSweepConfig {
  std::vector<MatroidFixture> fixtures;
  std::vector<double> delta_grid{0.0, 0.5, 1.0};
  std::vector<std::uint64_t> seeds;
  unsigned threads = 0;
};

/// Matroid greedy under consistent noise eps = delta/rank, compared with the
/// brute-force maximum of the exact f over independent sets.
inline Report run_matroid_sweep(const MatroidSweepConfig& cfg) {
  struct Job {
    std::uint64_t seed;
    std::size_t fixture;
    double delta;
  };
  std::vector<Job> jobs;
  for (auto seed : cfg.seeds) {
    for (std::size_t i = 0; i < cfg.fixtures.size(); ++i) {
      for (double delta : cfg.delta_grid) jobs.push_back({seed, i, delta});
    }
  }
  Report report = internal::run_jobs(
      jobs.size(), cfg.threads, [&](std::size_t j, ReportRow& r) {
        const Job& job = jobs[j];
        const auto& fx = cfg.fixtures[job.fixture];
        const std::size_t k = fx.matroid->rank();
        const double eps = job.delta / static_cast<double>(std::max<std::size_t>(k, 1));
        auto noisy = consistent_noise(fx.f, eps, job.seed);
        const SolveResult res = greedy_matroid(*noisy, *fx.matroid);
        const std::uint64_t queries = noisy->query_count();
        const SolveResult opt = brute_force(*fx.f, *fx.matroid);
        const BoundReport bound = matroid_bound(std::max<std::size_t>(k, 1), eps);
        r = {"matroid:" + fx.name, fx.f->ground_size(), k, {}, {}, {}, eps,
             job.seed, "matroid_greedy", res.value, opt.value,
             opt.value > 0 ? res.value / opt.value : 1.0, bound.ratio,
             queries, {}};
        return internal::meets(res.value, bound.ratio, opt.value);
      });
  report.notes.insert(report.notes.begin(),
                      "sweep matroid: " + std::to_string(report.rows.size()) +
                          " runs, " + (report.pass ? "all" : "NOT all") +
                          " meet matroid_bound(rank, eps) x max f");
  return report;
}

struct CurvatureSweepConfig {
  std::vector<NamedFunction> instances;
  std::vector<std::size_t> ks{2, 4};
  std::vector<double> epsilon_grid{0.1, 0.25};
  std::vector<std::uint64_t> seeds;
  unsigned threads = 0;
};

/// Top-k by singleton value under consistent noise, against brute force on
/// F with the exact curvature of f.
inline Report run_curvature_sweep(const CurvatureSweepConfig& cfg) {
  std::vector<double> curv(cfg.instances.size());
  for (std::size_t i = 0; i < cfg.instances.size(); ++i) {
    curv[i] = curvature(*cfg.instances[i].f);
  }
  struct Job {
    std::uint64_t seed;
    std::size_t instance;
    std::size_t k;
    double eps;
  };
  std::vector<Job> jobs;
  for (auto seed : cfg.seeds) {
    for (std::size_t i = 0; i < cfg.instances.size(); ++i) {
      for (auto k : cfg.ks) {
        if (k > cfg.instances[i].f->ground_size()) continue;
        for (double eps : cfg.epsilon_grid) jobs.push_back({seed, i, k, eps});
      }
    }
  }
  Report report = internal::run_jobs(
      jobs.size(), cfg.threads, [&](std::size_t j, ReportRow& r) {
        const Job& job = jobs[j];
        const auto& f = cfg.instances[job.instance].f;
        auto noisy = consistent_noise(f, job.eps, job.seed);
        const SolveResult res = curvature_topk(*noisy, job.k);
        const std::uint64_t queries = noisy->query_count();
        const SolveResult opt = brute_force(*noisy, job.k);
        const BoundReport bound = curvature_bound(curv[job.instance], job.eps);
        r = {"curvature:" + cfg.instances[job.instance].name,
             f->ground_size(), job.k, {}, {}, {}, job.eps, job.seed,
             "curvature_topk", res.value, opt.value,
             opt.value > 0 ? res.value / opt.value : 1.0, bound.ratio,
             queries, {}};
        return internal::meets(res.value, bound.ratio, opt.value);
      });
  report.notes.insert(report.notes.begin(),
                      "sweep curvature: " + std::to_string(report.rows.size()) +
                          " runs, " + (report.pass ? "all" : "NOT all") +
                          " meet curvature_bound(c, eps)");
  return report;
}

// ---------------------------------------------------------------------------
// Greedy trap.

struct TrapConfig {
  std::vector<std::size_t> ks{16};
  double beta = 0.5;
  /// 0 picks the smallest valid n, |A| + 2k.
  std::size_t n = 64;
};

struct TrapOutcome {
  std::size_t k = 0;
  std::size_t n = 0;
  double epsilon = 0.0;
  double measured = 0.0;
  double claimed = 0.0;
  double optimum = 0.0;
  bool sandwich_exact = false;
  std::size_t override_sets = 0;
  bool discrepancy = false;
};

/// Greedy on the trap F versus the claimed greedy value and the optimum.
/// F <= f everywhere, so max F = f(top-k of f) whenever that set is not an
/// override set, which holds for every valid (k, beta).
inline Report run_trap(const TrapConfig& cfg,
                       std::vector<TrapOutcome>* outcomes = nullptr) {
  Report report;
  for (std::size_t k : cfg.ks) {
    const double inv_eps = std::pow(static_cast<double>(k), 1.0 - cfg.beta);
    const auto a_size = static_cast<std::size_t>(std::llround(inv_eps / 2.0));
    const std::size_t n = cfg.n > 0 && cfg.ks.size() == 1 ? cfg.n
                                                          : a_size + 2 * k;
    auto trap = build_greedy_trap(k, cfg.beta, n);
    TrapOutcome o;
    o.k = k;
    o.n = n;
    o.epsilon = trap->epsilon();
    const SolveResult res = greedy_cardinality(*trap, k);
    const std::uint64_t greedy_queries = trap->query_count();
    o.measured = res.value;
    o.claimed = trap->claimed_greedy_value();
    // Top-k of the additive representative: A, then C, then B.
    Subset top(n);
    for (Element e = 0; e < n && top.size() < k; ++e) {
      if (!trap->in_b(e)) top.insert(e);
    }
    for (Element e = 0; e < n && top.size() < k; ++e) top.insert(e);
    if (trap->is_override(top)) {
      throw std::logic_error("trap: top-k set is an override set");
    }
    o.optimum = trap->evaluate(top);
    const auto exact = check_trap_sandwich_exact(*trap);
    o.sandwich_exact = exact.pass;
    o.override_sets = exact.sets_checked;
    o.discrepancy = std::abs(o.measured - o.claimed) > 1e-9;
    if (!exact.pass) report.pass = false;

    ReportRow base{"trap", n, k, {}, {}, cfg.beta, o.epsilon, 0, "greedy",
                   o.measured, o.optimum, o.measured / o.optimum, {},
                   greedy_queries, {}};
    report.rows.push_back(base);
    ReportRow claimed = base;
    claimed.solver = "claimed_greedy";
    claimed.value = o.claimed;
    claimed.ratio = o.claimed / o.optimum;
    claimed.queries = 0;
    report.rows.push_back(claimed);

    std::ostringstream note;
    note << "trap k=" << k << " n=" << n
         << " epsilon=" << internal::format_double(o.epsilon)
         << " |A|=" << trap->a_size() << " |B|=|C|=" << trap->c_size()
         << " sandwich(exact, " << o.override_sets << " override sets)="
         << (o.sandwich_exact ? "pass" : "FAIL")
         << " measured_greedy=" << internal::format_double(o.measured)
         << " claimed_greedy=" << internal::format_double(o.claimed)
         << " optimum=" << internal::format_double(o.optimum);
    report.notes.push_back(note.str());
    if (o.discrepancy) {
      report.notes.push_back(
          "DISCREPANCY k=" + std::to_string(k) +
          ": measured greedy value differs from the claimed value. Only sets "
          "exactly A+{c} are deflated, so once greedy holds A and one B "
          "element, A+{b,c} is scored by f and greedy moves on to C.");
    }
    if (outcomes) outcomes->push_back(o);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sampling-rule validation.

struct SampleFixture {
  std::string name;
  FunctionPtr f;
  std::size_t k = 4;
};

struct SampleConfig {
  std::vector<SampleFixture> fixtures;
  double epsilon = 0.1;
  std::vector<double> confidence_constants{3.0};
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  NoiseFamily family = NoiseFamily::kUniformRelative;
  double width = 0.5;
  unsigned threads = 0;
};

struct SampleOutcome {
  std::string fixture;
  double confidence_constant = 0.0;
  std::size_t samples = 0;
  std::size_t violating_trials = 0;
  double violation_fraction = 0.0;
  double predicted = 0.0;
};

/// Range [b, B] of f over nonempty sets, by enumeration (n <= 20).
inline std::pair<double, double> nonempty_range(const ValueOracle& f) {
  const std::size_t n = f.ground_size();
  if (n > kMaxExhaustiveN) throw ParameterError("range: n too large");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const double v = f.evaluate(Subset::FromMask(mask, n));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

/// Union-bounded Chernoff prediction of the chance that any of `sets`
/// estimates leaves the eps band, capped at 1.
inline double predicted_violation_rate(NoiseFamily family, double width,
                                       std::size_t samples, double epsilon,
                                       double lower, std::size_t sets) {
  const double m = static_cast<double>(samples);
  double per_set;
  if (family == NoiseFamily::kUniformRelative) {
    // Draws lie in [0, (1+w) f(S)]; normalized mean mu = m / (1+w).
    const double mu = m / (1.0 + width);
    per_set = chernoff_two_sided_tail(mu, epsilon);
  } else {
    // Hoeffding on draws in [f - w, f + w] with deviation eps * b.
    per_set = width > 0.0 ? 2.0 * std::exp(-m * epsilon * epsilon * lower *
                                           lower / (2.0 * width * width))
                          : 0.0;
  }
  return std::min(1.0, static_cast<double>(sets) * per_set);
}

inline Report run_sampling_validation(
    const SampleConfig& cfg, std::vector<SampleOutcome>* outcomes = nullptr) {
  Report report;
  for (const auto& fx : cfg.fixtures) {
    const std::size_t n = fx.f->ground_size();
    const auto [lower, upper] = nonempty_range(*fx.f);
    for (double c : cfg.confidence_constants) {
      const std::size_t m = required_samples(
          upper, lower, static_cast<double>(n), cfg.epsilon, c);
      std::vector<char> violated(cfg.trials, 0);
      std::vector<std::uint64_t> draws(cfg.trials, 0), sets(cfg.trials, 0);
      parallel_for(cfg.trials, resolve_threads(cfg.threads),
                   [&](std::size_t t) {
        const std::uint64_t seed = derive_seed(cfg.seed, t);
        auto source = std::make_shared<InconsistentNoiseOracle>(
            fx.f, cfg.family, cfg.width, seed);
        SamplingEstimator est(source, m, derive_seed(seed, 1));
        greedy_cardinality(est, fx.k);
        bool bad = false;
        est.for_each_cached([&](const Subset& s, double v) {
          const double fv = fx.f->evaluate(s);
          const double tol = 1e-12 * std::max(1.0, fv);
          if (v < (1.0 - cfg.epsilon) * fv - tol ||
              v > (1.0 + cfg.epsilon) * fv + tol) {
            bad = true;
          }
        });
        violated[t] = bad;
        draws[t] = source->query_count();
        sets[t] = est.cached_sets();
      });
      SampleOutcome o;
      o.fixture = fx.name;
      o.confidence_constant = c;
      o.samples = m;
      std::uint64_t total_draws = 0, max_sets = 0;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        o.violating_trials += violated[t];
        total_draws += draws[t];
        max_sets = std::max(max_sets, sets[t]);
      }
      o.violation_fraction = static_cast<double>(o.violating_trials) /
                             static_cast<double>(cfg.trials);
      o.predicted = predicted_violation_rate(cfg.family, cfg.width, m,
                                             cfg.epsilon, lower, max_sets);
      if (o.violation_fraction > o.predicted) report.pass = false;
      report.rows.push_back({"sample:" + fx.name, n, fx.k, {}, {}, c,
                             cfg.epsilon, cfg.seed, "greedy",
                             o.violation_fraction, static_cast<double>(m), {},
                             o.predicted, total_draws, {}});
      std::ostringstream note;
      note << "sample " << fx.name << " c=" << internal::format_double(c)
           << " m=" << m << " violating_trials=" << o.violating_trials << "/"
           << cfg.trials << " predicted_rate="
           << internal::format_double(o.predicted);
      report.notes.push_back(note.str());
      if (outcomes) outcomes->push_back(o);
    }
  }
  return report;
}

inline std::vector<SampleFixture> standard_sample_fixtures() {
  std::vector<SampleFixture> out;
  // Every element covers the same item: f = 1 on nonempty sets, B = b.
  out.push_back({"flat_coverage",
                 make_coverage(1, std::vector<std::vector<std::size_t>>(
                                      12, std::vector<std::size_t>{0})),
                 4});
  out.push_back({"unit_budget_additive",
                 make_budget_additive(std::vector<double>(12, 1.0), 2.0), 4});
  std::vector<double> table(11);
  for (std::size_t x = 1; x <= 10; ++x) {
    table[x] = std::min(static_cast<double>(x), 3.0);
  }
  out.push_back({"capped_cardinality", make_concave_cardinality(table), 3});
  return out;
}

// ---------------------------------------------------------------------------
// Config files.

struct ExperimentConfig {
  std::string experiment;  // distinguish | sweep | trap | sample
  std::string construction = "monotone";
  std::string solver = "greedy";  // sweep: greedy | matroid | curvature
  std::size_t n = 0;
  double beta = 0.0;
  std::size_t trials = 0;
  std::vector<std::size_t> ks;
  std::vector<double> delta_grid;
  std::vector<double> epsilon_grid;
  std::vector<double> confidence_constants;
  std::vector<std::uint64_t> seeds;
  std::string noise_family = "uniform_relative";
  double width = 0.5;
  /// Function instances; empty selects the built-in corpus.
  Json instances = Json::array();
  std::string output;
  std::string format = "csv";

  bool operator==(const ExperimentConfig&) const = default;
};

inline Json to_json(const ExperimentConfig& c) {
  return {{"experiment", c.experiment},
          {"construction", c.construction},
          {"solver", c.solver},
          {"n", c.n},
          {"beta", c.beta},
          {"trials", c.trials},
          {"ks", c.ks},
          {"delta_grid", c.delta_grid},
          {"epsilon_grid", c.epsilon_grid},
          {"confidence_constants", c.confidence_constants},
          {"seeds", c.seeds},
          {"noise_family", c.noise_family},
          {"width", c.width},
          {"instances", c.instances},
          {"output", c.output},
          {"format", c.format}};
}

inline ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  try {
    c.experiment = internal::get<std::string>(j, "experiment");
    c.construction = j.value("construction", c.construction);
    c.solver = j.value("solver", c.solver);
    c.n = j.value("n", c.n);
    c.beta = j.value("beta", c.beta);
    c.trials = j.value("trials", c.trials);
    c.ks = j.value("ks", c.ks);
    c.delta_grid = j.value("delta_grid", c.delta_grid);
    c.epsilon_grid = j.value("epsilon_grid", c.epsilon_grid);
    c.confidence_constants =
        j.value("confidence_constants", c.confidence_constants);
    c.seeds = j.value("seeds", c.seeds);
    c.noise_family = j.value("noise_family", c.noise_family);
    c.width = j.value("width", c.width);
    c.instances = j.value("instances", Json::array());
    c.output = j.value("output", c.output);
    c.format = j.value("format", c.format);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  return c;
}

inline std::vector<NamedFunction> instances_from_json(const Json& arr) {
  std::vector<NamedFunction> out;
  std::size_t i = 0;
  for (const auto& item : arr) {
    const Json& fj = item.contains("function") ? item.at("function") : item;
    out.push_back({item.value("name", "instance" + std::to_string(i)),
                   function_from_json(fj)});
    ++i;
  }
  return out;
}

/// Runs the experiment a config describes. Defaults reproduce the standard
/// desk-scale runs.
inline Report run_experiment(const ExperimentConfig& c, unsigned threads = 0) {
  const std::vector<std::uint64_t> seeds =
      c.seeds.empty() ? std::vector<std::uint64_t>{1} : c.seeds;
  if (c.experiment == "distinguish") {
    DistinguishConfig d;
    d.construction = c.construction;
    if (c.n) d.n = c.n;
    if (c.beta > 0) d.beta = c.beta;
    if (c.trials) d.trials = c.trials;
    d.seed = seeds.front();
    d.threads = threads;
    return run_distinguishability(d);
  }
  if (c.experiment == "sweep") {
    if (c.solver == "greedy") {
      SweepConfig s;
      s.instances = c.instances.empty() ? standard_corpus(seeds.front())
                                        : instances_from_json(c.instances);
      if (!c.ks.empty()) s.ks = c.ks;
      if (!c.delta_grid.empty()) s.delta_grid = c.delta_grid;
      s.seeds = seeds;
      s.threads = threads;
      return run_noise_sweep(s);
    }
    if (c.solver == "matroid") {
      MatroidSweepConfig s;
      s.fixtures = standard_matroid_fixtures(seeds.front());
      if (!c.delta_grid.empty()) s.delta_grid = c.delta_grid;
      s.seeds = seeds;
      s.threads = threads;
      return run_matroid_sweep(s);
    }
    if (c.solver == "curvature") {
      CurvatureSweepConfig s;
      s.instances = c.instances.empty() ? curvature_fixtures(seeds.front())
                                        : instances_from_json(c.instances);
      if (!c.ks.empty()) s.ks = c.ks;
      if (!c.epsilon_grid.empty()) s.epsilon_grid = c.epsilon_grid;
      s.seeds = seeds;
      s.threads = threads;
      return run_curvature_sweep(s);
    }
    throw ParameterError("sweep: solver must be greedy, matroid or curvature");
  }
  if (c.experiment == "trap") {
    TrapConfig t;
    if (!c.ks.empty()) t.ks = c.ks;
    if (c.beta > 0) t.beta = c.beta;
    t.n = c.n;
    if (c.ks.empty() && c.n == 0) t.n = 64;
    return run_trap(t);
  }
  if (c.experiment == "sample") {
    SampleConfig s;
    if (c.instances.empty()) {
      s.fixtures = standard_sample_fixtures();
    } else {
      for (auto& nf : instances_from_json(c.instances)) {
        s.fixtures.push_back({nf.name, nf.f, c.ks.empty() ? 4 : c.ks.front()});
      }
    }
    if (!c.epsilon_grid.empty()) s.epsilon = c.epsilon_grid.front();
    if (!c.confidence_constants.empty()) {
      s.confidence_constants = c.confidence_constants;
    }
    if (c.trials) s.trials = c.trials;
    s.seed = seeds.front();
    s.family = noise_family_from_string(c.noise_family);
    s.width = c.width;
    s.threads = threads;
    return run_sampling_validation(s);
  }
  throw ParameterError("unknown experiment \"" + c.experiment + "\"");
}

}  // namespace approxsub

#endif  // APPROXSUB_EXPERIMENTS_HPP_
