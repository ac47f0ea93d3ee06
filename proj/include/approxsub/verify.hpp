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

// Exhaustive and statistical property checkers.

#ifndef APPROXSUB_VERIFY_HPP_
#define APPROXSUB_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "approxsub/oracle.hpp"
#include "approxsub/random.hpp"
#include "approxsub/subset.hpp"

namespace approxsub {

struct CheckReport {
  std::string property;
  std::string instance;
  bool pass = true;
  /// One subset (monotone: the smaller set first) or a pair (S, T).
  std::vector<Subset> counterexample;
  std::uint64_t examined = 0;
  std::string detail;
};

inline constexpr std::size_t kMaxSubmodularCheckN = 14;
inline constexpr std::size_t kMaxExhaustiveN = 20;

namespace internal {

inline double slack(double tolerance, double a, double b, double c, double d) {
  return tolerance * std::max({1.0, std::abs(a), std::abs(b), std::abs(c),
                               std::abs(d)});
}

// Values of f on all 2^n subsets, indexed by bitmask.
inline std::vector<double> tabulate(const ValueOracle& f) {
  const std::size_t n = f.ground_size();
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = f.evaluate(Subset::FromMask(mask, n));
  }
  return table;
}

}  // namespace internal

/// Checks f(S ∪ T) + f(S ∩ T) <= f(S) + f(T) for all S, T.
///
/// Uses the equivalent local form f(X+a) + f(X+b) >= f(X+a+b) + f(X) over
/// all X and a < b outside X, on a table of all 2^n values. A local failure
/// is itself a violating pair (S, T) = (X+a, X+b). Relative tolerance 1e-9.
inline CheckReport check_submodular(const ValueOracle& f,
                                    std::string instance = {}) {
  const std::size_t n = f.ground_size();
  if (n > kMaxSubmodularCheckN) {
    throw ParameterError("check_submodular: n=" + std::to_string(n) +
                         " exceeds guard " +
                         std::to_string(kMaxSubmodularCheckN));
  }
  CheckReport report;
  report.property = "submodular";
  report.instance = std::move(instance);
  const auto table = internal::tabulate(f);
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    for (std::size_t a = 0; a < n; ++a) {
      const std::uint64_t abit = std::uint64_t{1} << a;
      if (x & abit) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        const std::uint64_t bbit = std::uint64_t{1} << b;
        if (x & bbit) continue;
        ++report.examined;
        const double fa = table[x | abit], fb = table[x | bbit];
        const double fab = table[x | abit | bbit], fx = table[x];
        if (fab + fx > fa + fb + internal::slack(1e-9, fa, fb, fab, fx)) {
          report.pass = false;
          report.counterexample = {Subset::FromMask(x | abit, n),
                                   Subset::FromMask(x | bbit, n)};
          report.detail = "f(S∪T)+f(S∩T)=" + std::to_string(fab + fx) +
                          " > f(S)+f(T)=" + std::to_string(fa + fb);
          return report;
        }
      }
    }
  }
  return report;
}

/// Checks f(S) <= f(S ∪ {a}) for all S and a ∉ S.
inline CheckReport check_monotone(const ValueOracle& f,
                                  std::string instance = {}) {
  const std::size_t n = f.ground_size();
  if (n > kMaxExhaustiveN) {
    throw ParameterError("check_monotone: n=" + std::to_string(n) +
                         " exceeds guard " + std::to_string(kMaxExhaustiveN));
  }
  CheckReport report;
  report.property = "monotone";
  report.instance = std::move(instance);
  const auto table = internal::tabulate(f);
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    for (std::size_t a = 0; a < n; ++a) {
      const std::uint64_t bit = std::uint64_t{1} << a;
      if (x & bit) continue;
      ++report.examined;
      const double lo = table[x], hi = table[x | bit];
      if (hi < lo - internal::slack(1e-9, lo, hi, 0.0, 0.0)) {
        report.pass = false;
        report.counterexample = {Subset::FromMask(x, n),
                                 Subset::FromMask(x | bit, n)};
        report.detail = "f decreases by " + std::to_string(lo - hi);
        return report;
      }
    }
  }
  return report;
}

struct SandwichMode {
  bool exhaustive = true;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  static SandwichMode Exhaustive() { return {}; }
  static SandwichMode Sampled(std::uint64_t trials, std::uint64_t seed) {
    return {false, trials, seed};
  }
};

/// Checks (1-eps) f(S) <= F(S) <= (1+eps) f(S) with relative slack 1e-12.
inline CheckReport check_sandwich(const ValueOracle& big_f,
                                  const ValueOracle& f, double epsilon,
                                  SandwichMode mode = SandwichMode::Exhaustive(),
                                  std::string instance = {}) {
  const std::size_t n = f.ground_size();
  if (big_f.ground_size() != n) {
    throw ParameterError("check_sandwich: ground sets differ");
  }
  if (mode.exhaustive && n > kMaxExhaustiveN) {
    throw ParameterError("check_sandwich: exhaustive mode requires n <= " +
                         std::to_string(kMaxExhaustiveN));
  }
  CheckReport report;
  report.property = "sandwich";
  report.instance = std::move(instance);
  auto check_one = [&](const Subset& s) {
    ++report.examined;
    const double fv = f.evaluate(s);
    const double bv = big_f.evaluate(s);
    const double tol = internal::slack(1e-12, fv, bv, 0.0, 0.0);
    if (bv < (1.0 - epsilon) * fv - tol || bv > (1.0 + epsilon) * fv + tol) {
      report.pass = false;
      report.counterexample = {s};
      report.detail = "F=" + std::to_string(bv) + " outside [" +
                      std::to_string((1.0 - epsilon) * fv) + ", " +
                      std::to_string((1.0 + epsilon) * fv) + "]";
      return false;
    }
    return true;
  };
  if (mode.exhaustive) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (!check_one(Subset::FromMask(mask, n))) return report;
    }
  } else {
    SplitMix64 rng(mode.seed);
    for (std::uint64_t t = 0; t < mode.trials; ++t) {
      Subset s(n);
      for (Element e = 0; e < n; ++e) {
        if (rng() >> 63) s.insert(e);
      }
      if (!check_one(s)) return report;
    }
  }
  return report;
}

/// Checks ((1-eps)/(1+eps)) F(S) <= F_a(S) <= ((1+eps)/(1-eps)) F(S)/(1-c)
/// for every S, where F_a(S) = sum of F({e}) over S and c < 1 is the
/// curvature of the representative f.
inline CheckReport check_additive_surrogate(const ValueOracle& big_f, double c,
                                            double epsilon,
                                            std::string instance = {}) {
  const std::size_t n = big_f.ground_size();
  if (n > kMaxExhaustiveN) {
    throw ParameterError("check_additive_surrogate: n=" + std::to_string(n) +
                         " exceeds guard " + std::to_string(kMaxExhaustiveN));
  }
  if (!(c >= 0.0 && c < 1.0)) {
    throw ParameterError("check_additive_surrogate: requires 0 <= c < 1");
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ParameterError("check_additive_surrogate: epsilon must lie in [0, 1)");
  }
  CheckReport report;
  report.property = "additive_surrogate";
  report.instance = std::move(instance);
  const auto table = internal::tabulate(big_f);
  const double shrink = (1.0 - epsilon) / (1.0 + epsilon);
  for (std::uint64_t mask = 1; mask < table.size(); ++mask) {
    ++report.examined;
    double surrogate = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      if (mask >> e & 1) surrogate += table[std::uint64_t{1} << e];
    }
    const double fv = table[mask];
    const double lo = shrink * fv;
    const double hi = fv / (shrink * (1.0 - c));
    const double tol = internal::slack(1e-9, surrogate, lo, hi, 0.0);
    if (surrogate < lo - tol || surrogate > hi + tol) {
      report.pass = false;
      report.counterexample = {Subset::FromMask(mask, n)};
      report.detail = "F_a=" + std::to_string(surrogate) + " outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]";
      return report;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Concentration of |S ∩ H| for uniformly random size-h sets H.

/// log P[|S ∩ H| = j] for |S| = s, |H| = h, ground size n.
inline double log_hypergeometric_pmf(std::size_t n, std::size_t h,
                                     std::size_t s, std::size_t j) {
  auto log_choose = [](double a, double b) {
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) -
           std::lgamma(a - b + 1.0);
  };
  if (j > s || j > h || s - j > n - h) {
    return -std::numeric_limits<double>::infinity();
  }
  const double dn = static_cast<double>(n), dh = static_cast<double>(h);
  const double ds = static_cast<double>(s), dj = static_cast<double>(j);
  return log_choose(dh, dj) + log_choose(dn - dh, ds - dj) -
         log_choose(dn, ds);
}

inline double hypergeometric_pmf(std::size_t n, std::size_t h, std::size_t s,
                                 std::size_t j) {
  return std::exp(log_hypergeometric_pmf(n, h, s, j));
}

/// Integer range [lo, hi] of j with (1-eps) mu <= j <= (1+eps) mu.
struct Band {
  std::int64_t lo;
  std::int64_t hi;
  bool contains(std::int64_t j) const { return lo <= j && j <= hi; }
};

inline Band concentration_band(double mu, double epsilon) {
  const double lo = (1.0 - epsilon) * mu;
  const double hi = (1.0 + epsilon) * mu;
  const double tol = 1e-9 * std::max(1.0, mu);
  return {static_cast<std::int64_t>(std::ceil(lo - tol)),
          static_cast<std::int64_t>(std::floor(hi + tol))};
}

/// P[(1-eps) mu <= |S ∩ H| <= (1+eps) mu] by exact summation.
inline double exact_band_probability(std::size_t n, std::size_t h,
                                     std::size_t s, double epsilon) {
  const double mu =
      static_cast<double>(s) * static_cast<double>(h) / static_cast<double>(n);
  const Band band = concentration_band(mu, epsilon);
  double p = 0.0;
  for (std::size_t j = 0; j <= std::min(s, h); ++j) {
    if (band.contains(static_cast<std::int64_t>(j))) {
      p += hypergeometric_pmf(n, h, s, j);
    }
  }
  return std::min(p, 1.0);
}

/// Draws |S ∩ H| by sequential sampling without replacement.
inline std::size_t sample_intersection(std::size_t n, std::size_t h,
                                       std::size_t s, SplitMix64& rng) {
  std::size_t hits = 0;
  std::size_t s_left = s, pool = n;
  for (std::size_t draw = 0; draw < h && s_left > 0; ++draw, --pool) {
    if (rng.below(pool) < s_left) {
      ++hits;
      --s_left;
    }
  }
  return hits;
}

/// e^{-eps^2 mu/3} + e^{-eps^2 mu/2}: the two Chernoff tails for negatively
/// associated indicators.
inline double chernoff_two_sided_tail(double mu, double epsilon) {
  const double x = epsilon * epsilon * mu;
  return std::exp(-x / 3.0) + std::exp(-x / 2.0);
}

/// Exact P_H[(1-eps) fH(S) <= g(S) <= (1+eps) fH(S)] for the monotone pair,
/// fixed |S| = s and H uniform of size h. Both functions depend on S only
/// through s and j = |S ∩ H|.
inline double monotone_pair_band_probability(std::size_t n, std::size_t h,
                                             std::size_t alpha, std::size_t s,
                                             double epsilon) {
  const double dn = static_cast<double>(n);
  const double cap = static_cast<double>(alpha) * static_cast<double>(n - h) / dn;
  const double ds = static_cast<double>(s);
  const double g = std::min(ds, ds * static_cast<double>(h) / dn + cap);
  double p = 0.0;
  for (std::size_t j = 0; j <= std::min(s, h); ++j) {
    const double fh =
        static_cast<double>(j) + std::min(static_cast<double>(s - j), cap);
    if ((1.0 - epsilon) * fh <= g && g <= (1.0 + epsilon) * fh) {
      p += hypergeometric_pmf(n, h, s, j);
    }
  }
  return std::min(p, 1.0);
}

/// Same for the coverage pair (s >= 1).
inline double coverage_pair_band_probability(std::size_t n, std::size_t h,
                                             std::size_t alpha, std::size_t s,
                                             double epsilon) {
  const double a = static_cast<double>(alpha);
  const double g = static_cast<double>(s) * static_cast<double>(h) /
                       static_cast<double>(n) + a;
  double p = 0.0;
  for (std::size_t j = 0; j <= std::min(s, h); ++j) {
    const double fh = static_cast<double>(j) + a;
    if ((1.0 - epsilon) * fh <= g && g <= (1.0 + epsilon) * fh) {
      p += hypergeometric_pmf(n, h, s, j);
    }
  }
  return std::min(p, 1.0);
}

enum class ConcentrationMethod { kExact, kMonteCarlo };

struct ConcentrationReport {
  std::size_t n = 0, h = 0, s = 0;
  double epsilon = 0.0;
  double mu = 0.0;
  ConcentrationMethod method = ConcentrationMethod::kExact;
  std::uint64_t trials = 0;
  double probability = 0.0;
  /// 1 - e^{-eps^2 mu/3} - e^{-eps^2 mu/2}.
  double reference = 0.0;
  /// Standard error of a Monte-Carlo estimate; 0 for exact.
  double standard_error = 0.0;
  bool meets_reference() const { return probability >= reference; }
};

inline ConcentrationReport check_concentration(
    std::size_t n, std::size_t h, std::size_t s, double epsilon,
    ConcentrationMethod method = ConcentrationMethod::kExact,
    std::uint64_t trials = 0, std::uint64_t seed = 0) {
  if (h > n || s > n || n == 0) {
    throw ParameterError("concentration: need h <= n and |S| <= n");
  }
  ConcentrationReport r;
  r.n = n;
  r.h = h;
  r.s = s;
  r.epsilon = epsilon;
  r.mu = static_cast<double>(s) * static_cast<double>(h) /
         static_cast<double>(n);
  r.method = method;
  if (!(epsilon * epsilon * r.mu > 1.0)) {
    throw ParameterError("concentration: requires eps^2 mu > 1 (got " +
                         std::to_string(epsilon * epsilon * r.mu) + ")");
  }
  r.reference = 1.0 - chernoff_two_sided_tail(r.mu, epsilon);
  if (method == ConcentrationMethod::kExact) {
    r.probability = exact_band_probability(n, h, s, epsilon);
    return r;
  }
  if (trials == 0) throw ParameterError("concentration: trials must be > 0");
  const Band band = concentration_band(r.mu, epsilon);
  SplitMix64 rng(seed);
  std::uint64_t inside = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    inside += band.contains(
        static_cast<std::int64_t>(sample_intersection(n, h, s, rng)));
  }
  r.trials = trials;
  r.probability = static_cast<double>(inside) / static_cast<double>(trials);
  r.standard_error = std::sqrt(r.probability * (1.0 - r.probability) /
                               static_cast<double>(trials));
  return r;
}

}  // namespace approxsub

#endif  // APPROXSUB_VERIFY_HPP_
