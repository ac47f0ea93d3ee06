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

// Structured-text (JSON) encoding of function instances, matroids, and
// noise models. Every object carries a "kind" tag.

#ifndef APPROXSUB_SERIALIZATION_HPP_
#define APPROXSUB_SERIALIZATION_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "approxsub/adversarial.hpp"
#include "approxsub/functions.hpp"
#include "approxsub/matroid.hpp"
#include "approxsub/noise.hpp"

namespace approxsub {

using Json = nlohmann::json;

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace internal {

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw FormatError(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

template <typename T>
T get(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("field \"") + name + "\": " + e.what());
  }
}

inline std::vector<std::size_t> elements_of(const Subset& s) {
  return s.elements();
}

}  // namespace internal

inline Json to_json(const SetFunction& f) {
  const std::string kind(f.kind());
  if (const auto* a = dynamic_cast<const AdditiveFunction*>(&f)) {
    return {{"kind", kind}, {"weights", a->weights()}};
  }
  if (const auto* b = dynamic_cast<const BudgetAdditiveFunction*>(&f)) {
    return {{"kind", kind}, {"weights", b->weights()}, {"budget", b->budget()}};
  }
  if (const auto* c = dynamic_cast<const CoverageFunction*>(&f)) {
    Json covers = Json::array();
    for (const auto& s : c->covers()) covers.push_back(s.elements());
    return {{"kind", kind},
            {"universe_size", c->universe_size()},
            {"covers", covers}};
  }
  if (const auto* g = dynamic_cast<const ConcaveCardinalityFunction*>(&f)) {
    return {{"kind", kind}, {"table", g->table()}};
  }
  if (const auto* s = dynamic_cast<const SumFunction*>(&f)) {
    Json terms = Json::array();
    for (const auto& t : s->terms()) terms.push_back(to_json(*t));
    return {{"kind", kind}, {"terms", terms}};
  }
  if (const auto* p = dynamic_cast<const CoveragePlantedFunction*>(&f)) {
    return {{"kind", kind},
            {"n", p->ground_size()},
            {"hidden", p->hidden().elements()},
            {"alpha", p->alpha()}};
  }
  if (const auto* d = dynamic_cast<const CoverageDecoyFunction*>(&f)) {
    return {{"kind", kind},
            {"n", d->ground_size()},
            {"h", d->h()},
            {"alpha", d->alpha()}};
  }
  throw FormatError("no encoding for function kind " + kind);
}

inline FunctionPtr function_from_json(const Json& j) {
  const auto kind = internal::get<std::string>(j, "kind");
  try {
    if (kind == "additive") {
      return make_additive(internal::get<std::vector<double>>(j, "weights"));
    }
    if (kind == "budget_additive") {
      return make_budget_additive(
          internal::get<std::vector<double>>(j, "weights"),
          internal::get<double>(j, "budget"));
    }
    if (kind == "coverage") {
      return make_coverage(
          internal::get<std::size_t>(j, "universe_size"),
          internal::get<std::vector<std::vector<std::size_t>>>(j, "covers"));
    }
    if (kind == "concave_cardinality") {
      return make_concave_cardinality(
          internal::get<std::vector<double>>(j, "table"));
    }
    if (kind == "sum") {
      std::vector<FunctionPtr> terms;
      for (const auto& t : internal::field(j, "terms")) {
        terms.push_back(function_from_json(t));
      }
      return make_sum(std::move(terms));
    }
    if (kind == "coverage_planted") {
      const auto n = internal::get<std::size_t>(j, "n");
      return std::make_shared<CoveragePlantedFunction>(
          Subset::FromElements(
              internal::get<std::vector<std::size_t>>(j, "hidden"), n),
          internal::get<std::size_t>(j, "alpha"));
    }
    if (kind == "coverage_decoy") {
      return std::make_shared<CoverageDecoyFunction>(
          internal::get<std::size_t>(j, "n"),
          internal::get<std::size_t>(j, "h"),
          internal::get<std::size_t>(j, "alpha"));
    }
  } catch (const DomainError& e) {
    throw FormatError(kind + ": " + e.what());
  }
  throw FormatError("unknown function kind \"" + kind + "\"");
}

inline Json to_json(const Matroid& m) {
  if (const auto* u = dynamic_cast<const UniformMatroid*>(&m)) {
    return {{"kind", "uniform"}, {"n", u->ground_size()}, {"k", u->rank()}};
  }
  if (const auto* p = dynamic_cast<const PartitionMatroid*>(&m)) {
    std::vector<std::vector<std::size_t>> blocks(p->capacities().size());
    for (std::size_t e = 0; e < p->block_of().size(); ++e) {
      blocks[p->block_of()[e]].push_back(e);
    }
    return {{"kind", "partition"},
            {"blocks", blocks},
            {"capacities", p->capacities()}};
  }
  throw FormatError("no encoding for this matroid");
}

inline MatroidPtr matroid_from_json(const Json& j) {
  const auto kind = internal::get<std::string>(j, "kind");
  if (kind == "uniform") {
    return std::make_shared<UniformMatroid>(internal::get<std::size_t>(j, "n"),
                                            internal::get<std::size_t>(j, "k"));
  }
  if (kind == "partition") {
    const auto blocks =
        internal::get<std::vector<std::vector<std::size_t>>>(j, "blocks");
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.size();
    return std::make_shared<PartitionMatroid>(PartitionMatroid::FromBlocks(
        n, blocks, internal::get<std::vector<std::size_t>>(j, "capacities")));
  }
  throw FormatError("unknown matroid kind \"" + kind + "\"");
}

/// Noise block: {"kind": "consistent", "epsilon", "seed"} or
/// {"kind": "inconsistent", "family", "width", "seed", and either "m" or
/// "B", "b", "epsilon", "c"}.
struct NoiseConfig {
  std::string kind = "consistent";
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  NoiseFamily family = NoiseFamily::kUniformRelative;
  double width = 0.0;
  std::size_t m = 0;
  double upper = 0.0;
  double lower = 0.0;
  double confidence_constant = 3.0;

  /// m if given, else required_samples(B, b, n, eps, c).
  std::size_t samples(std::size_t n) const {
    if (m > 0) return m;
    return required_samples(upper, lower, static_cast<double>(n), epsilon,
                            confidence_constant);
  }
};

inline Json to_json(const NoiseConfig& c) {
  Json j{{"kind", c.kind}, {"seed", c.seed}};
  if (c.kind == "consistent") {
    j["epsilon"] = c.epsilon;
    return j;
  }
  j["family"] = to_string(c.family);
  j["width"] = c.width;
  if (c.m > 0) {
    j["m"] = c.m;
  } else {
    j["B"] = c.upper;
    j["b"] = c.lower;
    j["epsilon"] = c.epsilon;
    j["c"] = c.confidence_constant;
  }
  return j;
}

inline NoiseFamily noise_family_from_string(const std::string& s) {
  if (s == "uniform_relative") return NoiseFamily::kUniformRelative;
  if (s == "additive_bounded") return NoiseFamily::kAdditiveBounded;
  throw FormatError("unknown noise family \"" + s + "\"");
}

inline NoiseConfig noise_from_json(const Json& j) {
  NoiseConfig c;
  c.kind = internal::get<std::string>(j, "kind");
  c.seed = j.value("seed", std::uint64_t{0});
  if (c.kind == "consistent") {
    c.epsilon = internal::get<double>(j, "epsilon");
    return c;
  }
  if (c.kind != "inconsistent") {
    throw FormatError("unknown noise kind \"" + c.kind + "\"");
  }
  c.family = noise_family_from_string(j.value("family", "uniform_relative"));
  c.width = internal::get<double>(j, "width");
  if (j.contains("m")) {
    c.m = internal::get<std::size_t>(j, "m");
  } else {
    c.upper = internal::get<double>(j, "B");
    c.lower = internal::get<double>(j, "b");
    c.epsilon = internal::get<double>(j, "epsilon");
    c.confidence_constant = j.value("c", 3.0);
  }
  return c;
}

/// Wraps f in the configured noise model. Inconsistent noise is returned
/// behind a SamplingEstimator so that the result is a consistent oracle.
inline OraclePtr apply_noise(const NoiseConfig& c, OraclePtr f) {
  if (c.kind == "consistent") return consistent_noise(f, c.epsilon, c.seed);
  const std::size_t n = f->ground_size();
  auto source =
      std::make_shared<InconsistentNoiseOracle>(f, c.family, c.width, c.seed);
  return std::make_shared<SamplingEstimator>(source, c.samples(n),
                                             derive_seed(c.seed, 1));
}

inline Json to_json(const HardPairParams& p) {
  return {{"n", p.n},         {"h", p.h},       {"alpha", p.alpha},
          {"k", p.k},         {"epsilon", p.epsilon}, {"beta", p.beta}};
}

inline HardPairParams params_from_json(const Json& j) {
  HardPairParams p;
  p.n = internal::get<std::size_t>(j, "n");
  p.h = internal::get<std::size_t>(j, "h");
  p.alpha = internal::get<std::size_t>(j, "alpha");
  p.k = internal::get<std::size_t>(j, "k");
  p.epsilon = internal::get<double>(j, "epsilon");
  p.beta = j.value("beta", 0.0);
  return p;
}

}  // namespace approxsub

#endif  // APPROXSUB_SERIALIZATION_HPP_
