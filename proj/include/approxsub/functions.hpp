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

// Exact monotone submodular functions: additive, budget-additive, coverage,
// concave-of-cardinality, and sums of these.

#ifndef APPROXSUB_FUNCTIONS_HPP_
#define APPROXSUB_FUNCTIONS_HPP_

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "approxsub/oracle.hpp"
#include "approxsub/subset.hpp"

namespace approxsub {

class UndefinedCurvatureError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exact, serializable set function.
class SetFunction : public ValueOracle {
 public:
  using ValueOracle::ValueOracle;
  virtual std::string_view kind() const = 0;
};

using FunctionPtr = std::shared_ptr<const SetFunction>;

namespace internal {

inline void require_nonnegative(const std::vector<double>& w,
                                std::string_view what) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0) || !std::isfinite(w[i])) {
      throw ParameterError(std::string(what) + ": weight " +
                           std::to_string(i) + " must be finite and >= 0");
    }
  }
}

// Support of a 0/1 weight vector, or an empty Subset if some weight is
// neither 0 nor 1.
inline Subset unit_support(const std::vector<double>& w) {
  Subset s(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 1.0) {
      s.insert(i);
    } else if (w[i] != 0.0) {
      return Subset();
    }
  }
  return s;
}

}  // namespace internal

/// value(S) = sum of weights over S.
class AdditiveFunction final : public SetFunction {
 public:
  explicit AdditiveFunction(std::vector<double> weights)
      : SetFunction(checked_size(weights)),
        weights_(std::move(weights)),
        unit_support_(internal::unit_support(weights_)) {
    internal::require_nonnegative(weights_, "additive");
  }

  std::string_view kind() const override { return "additive"; }
  const std::vector<double>& weights() const { return weights_; }

 protected:
  double compute(const Subset& s) const override {
    if (unit_support_.universe() == s.universe()) {
      return static_cast<double>(s.intersection_size(unit_support_));
    }
    double total = 0.0;
    s.for_each([&](Element e) { total += weights_[e]; });
    return total;
  }

 private:
  static std::size_t checked_size(const std::vector<double>& w) {
    if (w.empty()) throw ParameterError("additive: empty weight vector");
    return w.size();
  }

  std::vector<double> weights_;
  Subset unit_support_;
};

/// value(S) = min(sum of weights over S, budget).
class BudgetAdditiveFunction final : public SetFunction {
 public:
  BudgetAdditiveFunction(std::vector<double> weights, double budget)
      : SetFunction(weights.size()),
        weights_(std::move(weights)),
        budget_(budget),
        unit_support_(internal::unit_support(weights_)) {
    if (weights_.empty()) throw ParameterError("budget-additive: no weights");
    internal::require_nonnegative(weights_, "budget-additive");
    if (!(budget_ >= 0.0)) {
      throw ParameterError("budget-additive: budget must be >= 0");
    }
  }

  std::string_view kind() const override { return "budget_additive"; }
  const std::vector<double>& weights() const { return weights_; }
  double budget() const { return budget_; }

 protected:
  double compute(const Subset& s) const override {
    double total = 0.0;
    if (unit_support_.universe() == s.universe()) {
      total = static_cast<double>(s.intersection_size(unit_support_));
    } else {
      s.for_each([&](Element e) { total += weights_[e]; });
    }
    return std::min(total, budget_);
  }

 private:
  std::vector<double> weights_;
  double budget_;
  Subset unit_support_;
};

/// value(S) = |union of covers[e] for e in S| over a dense universe.
class CoverageFunction final : public SetFunction {
 public:
  CoverageFunction(std::size_t universe_size,
                   std::vector<std::vector<std::size_t>> covers)
      : SetFunction(covers.size()), universe_size_(universe_size) {
    if (covers.empty()) throw ParameterError("coverage: no elements");
    if (universe_size == 0) throw ParameterError("coverage: empty universe");
    covers_.reserve(covers.size());
    for (const auto& c : covers) {
      covers_.push_back(Subset::FromElements(c, universe_size));
    }
  }

  std::string_view kind() const override { return "coverage"; }
  std::size_t universe_size() const { return universe_size_; }
  const std::vector<Subset>& covers() const { return covers_; }

 protected:
  double compute(const Subset& s) const override {
    Subset covered(universe_size_);
    s.for_each([&](Element e) { covered |= covers_[e]; });
    return static_cast<double>(covered.size());
  }

 private:
  std::size_t universe_size_;
  std::vector<Subset> covers_;
};

/// value(S) = G(|S|) for a tabulated nondecreasing concave G on {0..n}.
class ConcaveCardinalityFunction final : public SetFunction {
 public:
  explicit ConcaveCardinalityFunction(std::vector<double> table)
      : SetFunction(table.size() < 2 ? 1 : table.size() - 1),
        table_(std::move(table)) {
    if (table_.size() < 2) {
      throw ParameterError("concave-cardinality: table needs n+1 >= 2 values");
    }
    if (table_[0] != 0.0) {
      throw ParameterError("concave-cardinality: G(0) must be 0");
    }
    // Slack for tables computed from closed forms in floating point.
    constexpr double kSlack = 1e-12;
    for (std::size_t i = 0; i + 1 < table_.size(); ++i) {
      const double step = table_[i + 1] - table_[i];
      const double scale = std::max(1.0, std::abs(table_[i + 1]));
      if (step < -kSlack * scale) {
        throw ParameterError("concave-cardinality: table decreases at " +
                             std::to_string(i));
      }
      if (i + 2 < table_.size()) {
        const double next = table_[i + 2] - table_[i + 1];
        if (next > step + kSlack * scale) {
          throw ParameterError("concave-cardinality: not concave at " +
                               std::to_string(i + 1));
        }
      }
    }
  }

  std::string_view kind() const override { return "concave_cardinality"; }
  const std::vector<double>& table() const { return table_; }

 protected:
  double compute(const Subset& s) const override { return table_[s.size()]; }

 private:
  std::vector<double> table_;
};

/// value(S) = sum of the terms' values. Terms' own query counters advance.
class SumFunction final : public SetFunction {
 public:
  explicit SumFunction(std::vector<FunctionPtr> terms)
      : SetFunction(checked_size(terms)), terms_(std::move(terms)) {}

  std::string_view kind() const override { return "sum"; }
  const std::vector<FunctionPtr>& terms() const { return terms_; }

 protected:
  double compute(const Subset& s) const override {
    double total = 0.0;
    for (const auto& t : terms_) total += t->evaluate(s);
    return total;
  }

 private:
  static std::size_t checked_size(const std::vector<FunctionPtr>& terms) {
    if (terms.empty()) throw ParameterError("sum: no terms");
    const std::size_t n = terms.front()->ground_size();
    for (const auto& t : terms) {
      if (!t) throw ParameterError("sum: null term");
      if (t->ground_size() != n) {
        throw ParameterError("sum: terms over different ground sets");
      }
    }
    return n;
  }

  std::vector<FunctionPtr> terms_;
};

inline double evaluate_instance(const ValueOracle& f, const Subset& s) {
  return f.evaluate(s);
}

/// f(S ∪ {a}) - f(S). Requires a ∉ S.
inline double marginal(const ValueOracle& f, const Subset& s, Element a) {
  if (s.contains(a)) {
    throw DomainError("marginal: element " + std::to_string(a) +
                      " already in S");
  }
  return f.evaluate(s.with(a)) - f.evaluate(s);
}

/// c = 1 - min_a (f(N) - f(N \ {a})) / f({a}), computed exactly with 2n+1
/// queries.
inline double curvature(const ValueOracle& f) {
  const std::size_t n = f.ground_size();
  const Subset full = Subset::Full(n);
  const double f_full = f.evaluate(full);
  double min_ratio = 1.0;
  for (Element a = 0; a < n; ++a) {
    Subset single(n);
    single.insert(a);
    const double fa = f.evaluate(single);
    if (!(fa > 0.0)) {
      throw UndefinedCurvatureError("curvature undefined: f({" +
                                    std::to_string(a) + "}) = 0");
    }
    const double last = f_full - f.evaluate(full.without(a));
    min_ratio = std::min(min_ratio, last / fa);
  }
  return std::clamp(1.0 - min_ratio, 0.0, 1.0);
}

inline FunctionPtr make_additive(std::vector<double> w) {
  return std::make_shared<AdditiveFunction>(std::move(w));
}
inline FunctionPtr make_budget_additive(std::vector<double> w, double budget) {
  return std::make_shared<BudgetAdditiveFunction>(std::move(w), budget);
}
inline FunctionPtr make_coverage(std::size_t universe,
                                 std::vector<std::vector<std::size_t>> covers) {
  return std::make_shared<CoverageFunction>(universe, std::move(covers));
}
inline FunctionPtr make_concave_cardinality(std::vector<double> table) {
  return std::make_shared<ConcaveCardinalityFunction>(std::move(table));
}
inline FunctionPtr make_sum(std::vector<FunctionPtr> terms) {
  return std::make_shared<SumFunction>(std::move(terms));
}

}  // namespace approxsub

#endif  // APPROXSUB_FUNCTIONS_HPP_
