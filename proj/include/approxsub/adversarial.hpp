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

// Hard-instance generators for optimizing approximately submodular
// functions.
//
// The monotone pair:
//   fH(S) = |S ∩ H| + min(|S \ H|, alpha (1 - h/n))
//   g(S)  = min(|S|, |S| h/n + alpha (1 - h/n))
// The coverage pair (S nonempty; both are 0 on the empty set):
//   fH(S) = |S ∩ H| + alpha,   g(S) = |S| h/n + alpha
// The sandwich FH returns g(S) whenever g(S) lies within the (1 ± eps) band
// around fH(S) and fH(S) otherwise, so FH is eps-close to fH everywhere but
// agrees with g on every set where the two are close.

#ifndef APPROXSUB_ADVERSARIAL_HPP_
#define APPROXSUB_ADVERSARIAL_HPP_

#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "approxsub/functions.hpp"
#include "approxsub/oracle.hpp"
#include "approxsub/random.hpp"
#include "approxsub/subset.hpp"

namespace approxsub {

struct HardPairParams {
  std::size_t n = 0;
  std::size_t h = 0;
  std::size_t alpha = 0;
  std::size_t k = 0;
  double epsilon = 0.0;
  double beta = 0.0;

  /// alpha (1 - h/n): the cap on the budget-additive part.
  double cap() const {
    return static_cast<double>(alpha) * static_cast<double>(n - h) /
           static_cast<double>(n);
  }

  /// Throws ParameterError naming the first violated relation among
  /// alpha <= k <= h <= n/2 and 0 < eps < 1.
  void validate() const {
    if (n == 0) throw ParameterError("n must be >= 1");
    if (alpha > k) {
      throw ParameterError("alpha <= k violated (alpha=" +
                           std::to_string(alpha) + ", k=" + std::to_string(k) +
                           ")");
    }
    if (k > h) {
      throw ParameterError("k <= h violated (k=" + std::to_string(k) +
                           ", h=" + std::to_string(h) + ")");
    }
    if (2 * h > n) {
      throw ParameterError("h <= n/2 violated (h=" + std::to_string(h) +
                           ", n=" + std::to_string(n) + ")");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw ParameterError("0 < epsilon < 1 violated (epsilon=" +
                           std::to_string(epsilon) + ")");
    }
  }
};

namespace internal {

// Ceiling that ignores floating-point overshoot of exact powers, so that
// 4096^0.75 rounds to 512 rather than 513.
inline std::size_t power_ceil(double x) {
  return static_cast<std::size_t>(
      std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))));
}

inline HardPairParams power_law_params(std::size_t n, double beta,
                                       double eps_exponent,
                                       const char* beta_limit) {
  HardPairParams p;
  p.n = n;
  p.beta = beta;
  const double dn = static_cast<double>(n);
  p.h = p.k = power_ceil(std::pow(dn, 1.0 - beta / 2.0));
  p.alpha = power_ceil(std::pow(dn, 1.0 - beta));
  p.epsilon = std::pow(dn, -(eps_exponent - beta));
  if (!(beta > 0.0 && beta < eps_exponent)) {
    throw ParameterError(std::string("beta must lie in (0, ") + beta_limit +
                         "), giving epsilon = n^-(" + beta_limit +
                         " - beta) = " + std::to_string(p.epsilon) +
                         "; epsilon < 1 required");
  }
  if (dn < std::pow(2.0, 2.0 / beta)) {
    throw ParameterError("n >= 2^(2/beta) violated (n=" + std::to_string(n) +
                         ", 2^(2/beta)=" +
                         std::to_string(std::pow(2.0, 2.0 / beta)) + ")");
  }
  p.validate();
  return p;
}

}  // namespace internal

/// k = h = ceil(n^(1-beta/2)), alpha = ceil(n^(1-beta)), eps = n^-(1/2-beta).
inline HardPairParams choose_hard_params(std::size_t n, double beta) {
  return internal::power_law_params(n, beta, 0.5, "1/2");
}

/// Same sizes as the monotone construction; eps = n^-(1/3-beta).
inline HardPairParams choose_coverage_params(std::size_t n, double beta) {
  return internal::power_law_params(n, beta, 1.0 / 3.0, "1/3");
}

struct HiddenSet {
  Subset members;
  std::uint64_t seed = 0;
};

/// Uniform size-h subset of {0..n-1}: the first h entries of a seeded
/// Fisher-Yates shuffle.
inline HiddenSet draw_hidden_set(std::size_t n, std::size_t h,
                                 std::uint64_t seed) {
  if (h == 0 || h > n) {
    throw ParameterError("hidden set needs 0 < h <= n (h=" +
                         std::to_string(h) + ", n=" + std::to_string(n) + ")");
  }
  const auto prefix = shuffled_prefix(n, h, seed);
  return {Subset::FromElements(prefix, n), seed};
}

/// alpha/k + h/n.
inline double gap_bound(const HardPairParams& p) {
  if (p.alpha > p.k || p.k > p.h || p.k == 0) {
    throw ParameterError("gap bound requires alpha <= k <= h and k >= 1");
  }
  return static_cast<double>(p.alpha) / static_cast<double>(p.k) +
         static_cast<double>(p.h) / static_cast<double>(p.n);
}

struct MonotoneHardPair {
  FunctionPtr f_hidden;  // SumFunction: additive on H + budget-additive off H
  FunctionPtr g;         // ConcaveCardinalityFunction
  HardPairParams params;
  HiddenSet hidden;
};

inline void check_hidden(const HardPairParams& p, const HiddenSet& hidden) {
  if (hidden.members.universe() != p.n || hidden.members.size() != p.h) {
    throw ParameterError("hidden set must have size h over n elements");
  }
}

/// Tabulated G(x) = min(x, x h/n + cap) for x in 0..n.
inline std::vector<double> decoy_table(std::size_t n, std::size_t h,
                                       double cap) {
  std::vector<double> table(n + 1);
  const double ratio = static_cast<double>(h) / static_cast<double>(n);
  for (std::size_t x = 0; x <= n; ++x) {
    const double dx = static_cast<double>(x);
    table[x] = std::min(dx, dx * ratio + cap);
  }
  return table;
}

inline MonotoneHardPair build_monotone_pair(const HardPairParams& p,
                                            const HiddenSet& hidden) {
  check_hidden(p, hidden);
  std::vector<double> on_h(p.n, 0.0), off_h(p.n, 0.0);
  for (Element e = 0; e < p.n; ++e) {
    (hidden.members.contains(e) ? on_h : off_h)[e] = 1.0;
  }
  auto f = make_sum({make_additive(std::move(on_h)),
                     make_budget_additive(std::move(off_h), p.cap())});
  auto g = make_concave_cardinality(decoy_table(p.n, p.h, p.cap()));
  return {std::move(f), std::move(g), p, hidden};
}

/// S nonempty ? |S ∩ H| + alpha : 0.
class CoveragePlantedFunction final : public SetFunction {
 public:
  CoveragePlantedFunction(Subset hidden, std::size_t alpha)
      : SetFunction(hidden.universe()),
        hidden_(std::move(hidden)),
        alpha_(alpha) {}
  std::string_view kind() const override { return "coverage_planted"; }
  const Subset& hidden() const { return hidden_; }
  std::size_t alpha() const { return alpha_; }

 protected:
  double compute(const Subset& s) const override {
    if (s.empty()) return 0.0;
    return static_cast<double>(s.intersection_size(hidden_) + alpha_);
  }

 private:
  Subset hidden_;
  std::size_t alpha_;
};

/// S nonempty ? |S| h/n + alpha : 0.
class CoverageDecoyFunction final : public SetFunction {
 public:
  CoverageDecoyFunction(std::size_t n, std::size_t h, std::size_t alpha)
      : SetFunction(n), h_(h), alpha_(alpha) {}
  std::string_view kind() const override { return "coverage_decoy"; }
  std::size_t h() const { return h_; }
  std::size_t alpha() const { return alpha_; }

 protected:
  double compute(const Subset& s) const override {
    if (s.empty()) return 0.0;
    // One rounding: (|S| h + alpha n) / n.
    const auto n = static_cast<double>(ground_size());
    return (static_cast<double>(s.size()) * static_cast<double>(h_) +
            static_cast<double>(alpha_) * n) /
           n;
  }

 private:
  std::size_t h_;
  std::size_t alpha_;
};

/// A coverage function whose value is divided by a fixed positive integer.
/// Lets fractional per-element contributions be realized with integral
/// universes.
class ScaledCoverage final : public SetFunction {
 public:
  ScaledCoverage(std::shared_ptr<const CoverageFunction> coverage,
                 std::size_t scale)
      : SetFunction(coverage->ground_size()),
        coverage_(std::move(coverage)),
        scale_(scale) {
    if (scale_ == 0) throw ParameterError("coverage scale must be >= 1");
  }
  std::string_view kind() const override { return "scaled_coverage"; }
  const CoverageFunction& coverage() const { return *coverage_; }
  std::size_t scale() const { return scale_; }

 protected:
  double compute(const Subset& s) const override {
    return coverage_->evaluate(s) / static_cast<double>(scale_);
  }

 private:
  std::shared_ptr<const CoverageFunction> coverage_;
  std::size_t scale_;
};

struct CoverageHardPair {
  FunctionPtr f_hidden;
  FunctionPtr g;
  std::shared_ptr<const ScaledCoverage> f_hidden_explicit;  // if realized
  std::shared_ptr<const ScaledCoverage> g_explicit;         // if realized
  HardPairParams params;
  HiddenSet hidden;
};

/// Largest ground set for which explicit coverage realizations are built.
inline constexpr std::size_t kMaxExplicitCoverageN = 20;

/// Explicit realization: every element covers the same alpha*scale shared
/// universe items plus its own private items (scale-many for fH when e ∈ H,
/// h*scale/n for g). fH needs scale 1; g uses scale n/gcd(n,h).
inline CoverageHardPair build_coverage_pair(const HardPairParams& p,
                                            const HiddenSet& hidden,
                                            bool realize_explicitly) {
  check_hidden(p, hidden);
  CoverageHardPair pair;
  pair.params = p;
  pair.hidden = hidden;
  pair.f_hidden =
      std::make_shared<CoveragePlantedFunction>(hidden.members, p.alpha);
  pair.g = std::make_shared<CoverageDecoyFunction>(p.n, p.h, p.alpha);
  if (!realize_explicitly) return pair;
  if (p.n > kMaxExplicitCoverageN) {
    throw ParameterError("explicit coverage realization requires n <= " +
                         std::to_string(kMaxExplicitCoverageN));
  }

  auto realize = [&](std::size_t scale, auto private_items) {
    const std::size_t shared = p.alpha * scale;
    std::vector<std::vector<std::size_t>> covers(p.n);
    std::size_t next = shared;
    for (Element e = 0; e < p.n; ++e) {
      for (std::size_t u = 0; u < shared; ++u) covers[e].push_back(u);
      const std::size_t own = private_items(e);
      for (std::size_t u = 0; u < own; ++u) covers[e].push_back(next++);
    }
    auto cov = std::make_shared<CoverageFunction>(std::max<std::size_t>(next, 1),
                                                  std::move(covers));
    return std::make_shared<ScaledCoverage>(std::move(cov), scale);
  };

  pair.f_hidden_explicit = realize(1, [&](Element e) -> std::size_t {
    return hidden.members.contains(e) ? 1 : 0;
  });
  const std::size_t d = std::gcd(p.n, p.h);
  pair.g_explicit = realize(p.n / d, [&](Element) { return p.h / d; });
  return pair;
}

/// FH(S) = g(S) if (1-eps) fH(S) <= g(S) <= (1+eps) fH(S), else fH(S).
/// Counts band escapes: queries answered with fH because g left the band.
class SandwichFunction final : public ValueOracle {
 public:
  SandwichFunction(OraclePtr f_hidden, OraclePtr g, double epsilon)
      : ValueOracle(f_hidden ? f_hidden->ground_size() : 1),
        f_hidden_(std::move(f_hidden)),
        g_(std::move(g)),
        epsilon_(epsilon) {
    if (!f_hidden_ || !g_) throw ParameterError("sandwich: null function");
    if (g_->ground_size() != ground_size()) {
      throw ParameterError("sandwich: ground sets differ");
    }
    if (!(epsilon_ > 0.0 && epsilon_ < 1.0)) {
      throw ParameterError("sandwich: epsilon must lie in (0, 1)");
    }
  }

  double epsilon() const { return epsilon_; }
  const OraclePtr& f_hidden() const { return f_hidden_; }
  const OraclePtr& g() const { return g_; }

  bool in_band(double fv, double gv) const {
    return (1.0 - epsilon_) * fv <= gv && gv <= (1.0 + epsilon_) * fv;
  }

  std::uint64_t band_escapes() const {
    return escapes_.load(std::memory_order_relaxed);
  }

 protected:
  double compute(const Subset& s) const override {
    const double fv = f_hidden_->evaluate(s);
    const double gv = g_->evaluate(s);
    if (in_band(fv, gv)) return gv;
    escapes_.fetch_add(1, std::memory_order_relaxed);
    return fv;
  }

 private:
  OraclePtr f_hidden_;
  OraclePtr g_;
  double epsilon_;
  mutable std::atomic<std::uint64_t> escapes_{0};
};

inline std::shared_ptr<SandwichFunction> build_sandwich(OraclePtr f_hidden,
                                                        OraclePtr g,
                                                        double epsilon) {
  return std::make_shared<SandwichFunction>(std::move(f_hidden), std::move(g),
                                            epsilon);
}
inline std::shared_ptr<SandwichFunction> build_sandwich(
    const MonotoneHardPair& pair, double epsilon) {
  return build_sandwich(pair.f_hidden, pair.g, epsilon);
}
inline std::shared_ptr<SandwichFunction> build_sandwich(
    const CoverageHardPair& pair, double epsilon) {
  return build_sandwich(pair.f_hidden, pair.g, epsilon);
}

/// Additive instance that traps greedy under eps = k^-(1-beta) noise.
///
/// Ground set layout: A = [0, |A|) with value 2, B = [|A|, |A|+m) with value
/// 1/n, C = [|A|+m, n) with value 1, where |A| = 1/(2 eps) and
/// m = n/2 - 1/(4 eps). The noisy F equals f except F(A ∪ {c}) = 1/eps for
/// c ∈ C. All values are kept as integers scaled by n.
class GreedyTrapFunction final : public ValueOracle {
 public:
  GreedyTrapFunction(std::size_t n, std::size_t a_size, std::size_t k,
                     double beta)
      : ValueOracle(n),
        a_size_(a_size),
        block_size_((n - a_size) / 2),
        k_(k),
        beta_(beta),
        a_set_(n) {
    for (Element e = 0; e < a_size_; ++e) a_set_.insert(e);
  }

  std::size_t k() const { return k_; }
  double beta() const { return beta_; }
  /// eps = 1/(2|A|).
  double epsilon() const { return 1.0 / (2.0 * static_cast<double>(a_size_)); }
  std::size_t a_size() const { return a_size_; }
  std::size_t b_size() const { return block_size_; }
  std::size_t c_size() const { return block_size_; }
  const Subset& a_set() const { return a_set_; }
  bool in_c(Element e) const { return e >= a_size_ + block_size_; }
  bool in_b(Element e) const { return e >= a_size_ && !in_c(e); }

  /// n * f(S) for the additive representative.
  std::int64_t scaled_representative(const Subset& s) const {
    const auto n = static_cast<std::int64_t>(ground_size());
    std::int64_t total = 0;
    s.for_each([&](Element e) {
      total += e < a_size_ ? 2 * n : (in_c(e) ? n : 1);
    });
    return total;
  }

  bool is_override(const Subset& s) const {
    if (s.size() != a_size_ + 1 || !a_set_.is_subset_of(s)) return false;
    bool hit_c = false;
    s.for_each([&](Element e) {
      if (e >= a_size_) hit_c = in_c(e);
    });
    return hit_c;
  }

  /// n * F(S).
  std::int64_t scaled_value(const Subset& s) const {
    if (is_override(s)) {
      return 2 * static_cast<std::int64_t>(a_size_) *
             static_cast<std::int64_t>(ground_size());
    }
    return scaled_representative(s);
  }

  /// The additive representative f as an exact function.
  FunctionPtr representative() const {
    std::vector<double> w(ground_size());
    const double n = static_cast<double>(ground_size());
    for (Element e = 0; e < ground_size(); ++e) {
      w[e] = e < a_size_ ? 2.0 : (in_c(e) ? 1.0 : 1.0 / n);
    }
    return make_additive(std::move(w));
  }

  /// 1/eps + (k - k^(1-beta)/2)/n.
  double claimed_greedy_value() const {
    const double kk = static_cast<double>(k_);
    return 1.0 / epsilon() +
           (kk - std::pow(kk, 1.0 - beta_) / 2.0) /
               static_cast<double>(ground_size());
  }

 protected:
  double compute(const Subset& s) const override {
    return static_cast<double>(scaled_value(s)) /
           static_cast<double>(ground_size());
  }

 private:
  std::size_t a_size_;
  std::size_t block_size_;
  std::size_t k_;
  double beta_;
  Subset a_set_;
};

/// eps = k^-(1-beta); requires eps < 1/2, 1/(2 eps) integral, n - 1/(2 eps)
/// even, and n/2 - 1/(4 eps) >= k.
inline std::shared_ptr<GreedyTrapFunction> build_greedy_trap(std::size_t k,
                                                             double beta,
                                                             std::size_t n) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ParameterError("trap: beta must lie in (0, 1)");
  }
  const double inv_eps = std::pow(static_cast<double>(k), 1.0 - beta);
  if (!(inv_eps > 2.0)) {
    throw ParameterError("trap: epsilon = k^-(1-beta) must be < 1/2");
  }
  const double half = inv_eps / 2.0;
  const double a_round = std::round(half);
  if (std::abs(half - a_round) > 1e-9 * std::max(1.0, half)) {
    throw ParameterError("trap: 1/(2 epsilon) = " + std::to_string(half) +
                         " is not an integer");
  }
  const auto a_size = static_cast<std::size_t>(a_round);
  if (n <= a_size || (n - a_size) % 2 != 0) {
    throw ParameterError("trap: n/2 - 1/(4 epsilon) must be a positive "
                         "integer (n=" + std::to_string(n) + ", |A|=" +
                         std::to_string(a_size) + ")");
  }
  if ((n - a_size) / 2 < k) {
    throw ParameterError("trap: n/2 - 1/(4 epsilon) >= k violated");
  }
  return std::make_shared<GreedyTrapFunction>(n, a_size, k, beta);
}

struct TrapSandwichReport {
  bool pass = true;
  std::size_t sets_checked = 0;
  std::optional<Subset> counterexample;
};

/// Checks (1-eps) f <= F <= (1+eps) f on every override set A ∪ {c} in
/// integer arithmetic (eps = 1/(2|A|), values scaled by n).
inline TrapSandwichReport check_trap_sandwich_exact(
    const GreedyTrapFunction& trap) {
  TrapSandwichReport report;
  const auto two_a = 2 * static_cast<std::int64_t>(trap.a_size());
  for (Element c = trap.a_size() + trap.b_size(); c < trap.ground_size();
       ++c) {
    const Subset s = trap.a_set().with(c);
    const std::int64_t big_f = trap.scaled_value(s);
    const std::int64_t f = trap.scaled_representative(s);
    ++report.sets_checked;
    // eps = 1/(2|A|): multiply both sides by 2|A|.
    const bool upper = two_a * big_f <= (two_a + 1) * f;
    const bool lower = two_a * big_f >= (two_a - 1) * f;
    if (!(upper && lower) && report.pass) {
      report.pass = false;
      report.counterexample = s;
    }
  }
  return report;
}

}  // namespace approxsub

#endif  // APPROXSUB_ADVERSARIAL_HPP_
