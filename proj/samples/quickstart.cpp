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

// Maximizes a small coverage function under consistent noise and compares
// greedy against the brute-force optimum and its guarantee.

#include <iostream>
#include <vector>

#include "approxsub/functions.hpp"
#include "approxsub/noise.hpp"
#include "approxsub/solvers.hpp"

int main() {
  using namespace approxsub;

  // Six elements covering items 0..7.
  auto f = make_coverage(8, {{0, 1, 2}, {2, 3}, {3, 4, 5}, {5, 6}, {6, 7}, {0, 7}});
  const std::size_t k = 3;
  const double eps = 0.5 / k;

  auto noisy = consistent_noise(f, eps, /*seed=*/7);
  const SolveResult greedy = greedy_cardinality(*noisy, k);
  const SolveResult opt = brute_force(*noisy, k);
  const BoundReport bound = greedy_bound(k, eps);

  std::cout << "greedy picked " << greedy.chosen.to_string() << " F="
            << greedy.value << " using " << greedy.queries_used
            << " queries\n";
  std::cout << "optimum " << opt.chosen.to_string() << " F=" << opt.value
            << "\n";
  std::cout << "ratio " << greedy.value / opt.value << " >= guarantee "
            << bound.ratio << "\n";
  return greedy.value >= bound.ratio * opt.value ? 0 : 1;
}
