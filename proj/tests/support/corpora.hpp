#pragma once

// Fixed-seed corpora behind the frozen regression values.

#include <vector>

#include "roundpack/roundpack.hpp"

namespace corpora {

using namespace roundpack;

// DSA corpus: 20 jobs of demand 1..5 and span <= 6 on 16 edges.
constexpr std::uint64_t kDsaCorpusSize = 200;
inline std::vector<Job> dsa_jobs(std::uint64_t seed) {
  return random_instance({.n = 20, .m = 16, .cmin = 100, .cmax = 100, .dmax = 5, .max_span = 6}, seed).jobs;
}
inline const Rational kDsaFirstFitWorst{23, 17};

// Small enough for the exact DSA search (n <= 7, L <= 12).
inline std::vector<Job> tiny_dsa_jobs(std::uint64_t seed) {
  Rng rng(seed);
  const int n = rng.range(1, 7);
  auto jobs = random_instance({.n = n, .m = 6, .cmin = 100, .cmax = 100, .dmax = 3}, seed).jobs;
  while (max_load(jobs) > 12) jobs.pop_back();
  return jobs;
}

// Uniform instances with at most `omega` jobs on any edge.
inline Instance omega_bounded(std::uint64_t seed, int max_n, int omega, Amount max_c) {
  Rng rng(seed);
  const Amount c = rng.range(Amount{2}, max_c);
  const int n = rng.range(1, max_n);
  const Instance pool = random_instance({.n = 4 * n, .m = rng.range(2, 10), .cmin = c, .cmax = c, .dmax = c, .max_span = 3, .uniform = true}, seed);
  Instance inst{pool.m, pool.capacities, {}};
  for (const Job& j : pool.jobs) {
    if (inst.n() == n) break;
    inst.jobs.push_back(j);
    if (max_jobs_per_edge(inst) > omega) inst.jobs.pop_back();
  }
  return inst;
}

}  // namespace corpora
