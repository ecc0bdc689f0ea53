#pragma once

// Seeded, platform-independent random instances. std::mt19937_64 output is
// fixed by the standard; distributions are not, so sampling is done here.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "roundpack/core.hpp"

namespace roundpack {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % n;
  }

  // Uniform in [lo, hi].
  Amount range(Amount lo, Amount hi) { return lo + static_cast<Amount>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

  bool coin() { return below(2) == 1; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

struct RandomSpec {
  int n = 10;
  int m = 8;
  Amount cmin = 1;
  Amount cmax = 8;
  Amount dmin = 1;
  Amount dmax = 4;
  int max_span = 0;  // 0 = unbounded
  bool uniform = false;
  bool nba = false;  // clamp demands to the smallest capacity
  bool fit = true;   // clamp demands to the job's bottleneck
};

inline Instance random_instance(const RandomSpec& spec, Rng& rng) {
  Instance inst;
  inst.m = spec.m;
  inst.capacities.resize(static_cast<std::size_t>(spec.m));
  const Amount shared = rng.range(spec.cmin, spec.cmax);
  for (auto& c : inst.capacities) c = spec.uniform ? shared : rng.range(spec.cmin, spec.cmax);
  const Amount cmin = inst.min_capacity();
  for (int k = 0; k < spec.n; ++k) {
    Job j;
    j.s = rng.range(0, spec.m - 1);
    int hi = spec.m;
    if (spec.max_span > 0) hi = std::min(hi, j.s + spec.max_span);
    j.t = rng.range(j.s + 1, hi);
    Amount dhi = spec.dmax;
    if (spec.nba) dhi = std::min(dhi, cmin);
    if (spec.fit) dhi = std::min(dhi, bottleneck_of(inst, j));
    j.d = rng.range(std::min(spec.dmin, dhi), dhi);
    inst.jobs.push_back(j);
  }
  return inst;
}

inline Instance random_instance(const RandomSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return random_instance(spec, rng);
}

}  // namespace roundpack
