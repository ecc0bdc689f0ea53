#pragma once

// Exhaustive solvers for tiny instances. Jobs are assigned in a fixed order;
// a job may only open the next unused round, which removes round-label
// symmetry.

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "roundpack/core.hpp"
#include "roundpack/guards.hpp"

namespace roundpack {

struct ExactUfp {
  int opt = 0;
  UfpPacking packing;
};

struct ExactSap {
  int opt = 0;
  SapPacking packing;
};

namespace detail {

inline std::vector<int> oracle_order(const Instance& inst) {
  std::vector<int> order(inst.jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.jobs[static_cast<std::size_t>(a)].d > inst.jobs[static_cast<std::size_t>(b)].d;
  });
  return order;
}

}  // namespace detail

inline ExactUfp exact_ufp(const Instance& inst, const Guards& guards = Guards::current()) {
  if (inst.n() > guards.exact_ufp_n) throw TooLarge("exact_ufp limited to n <= " + std::to_string(guards.exact_ufp_n));
  require_packable(inst);
  if (inst.n() == 0) return {0, {{}, 0}};
  const auto order = detail::oracle_order(inst);
  const int lb = static_cast<int>(std::max<Amount>(1, congestion(inst)));
  for (int k = lb; k <= guards.exact_ufp_rounds; ++k) {
    std::vector<std::vector<Amount>> residual(static_cast<std::size_t>(k), inst.capacities);
    std::vector<int> round_of(inst.jobs.size(), -1);
    std::function<bool(std::size_t, int)> go = [&](std::size_t idx, int used) -> bool {
      if (idx == order.size()) return true;
      const auto id = static_cast<std::size_t>(order[idx]);
      const Job& j = inst.jobs[id];
      for (int r = 0; r < std::min(used + 1, k); ++r) {
        auto& res = residual[static_cast<std::size_t>(r)];
        bool fits = true;
        for (int e = j.s; e < j.t && fits; ++e) fits = res[static_cast<std::size_t>(e)] >= j.d;
        if (!fits) continue;
        for (int e = j.s; e < j.t; ++e) res[static_cast<std::size_t>(e)] -= j.d;
        round_of[id] = r;
        if (go(idx + 1, std::max(used, r + 1))) return true;
        for (int e = j.s; e < j.t; ++e) res[static_cast<std::size_t>(e)] += j.d;
      }
      round_of[id] = -1;
      return false;
    };
    if (go(0, 0)) return {k, {round_of, k}};
  }
  throw TooLarge("exact_ufp: optimum exceeds " + std::to_string(guards.exact_ufp_rounds) + " rounds");
}

inline ExactSap exact_sap(const Instance& inst, const Guards& guards = Guards::current()) {
  if (inst.n() > guards.exact_sap_n) throw TooLarge("exact_sap limited to n <= " + std::to_string(guards.exact_sap_n));
  if (inst.n() > 0 && inst.max_capacity() > guards.exact_sap_cmax)
    throw TooLarge("exact_sap limited to c_max <= " + std::to_string(guards.exact_sap_cmax));
  require_packable(inst);
  if (inst.n() == 0) return {0, {{}, {}, 0}};
  const auto order = detail::oracle_order(inst);
  const auto prof = compute_profile(inst);
  const int lb = static_cast<int>(std::max<Amount>(1, prof.max_congestion));
  for (int k = lb; k <= guards.exact_sap_rounds; ++k) {
    std::vector<int> round_of(inst.jobs.size(), -1);
    std::vector<Amount> height_of(inst.jobs.size(), -1);
    std::function<bool(std::size_t, int)> go = [&](std::size_t idx, int used) -> bool {
      if (idx == order.size()) return true;
      const auto id = static_cast<std::size_t>(order[idx]);
      const Job& j = inst.jobs[id];
      for (int r = 0; r < std::min(used + 1, k); ++r) {
        for (Amount h = 0; h + j.d <= prof.bottleneck[id]; ++h) {
          bool free = true;
          for (std::size_t q = 0; q < idx && free; ++q) {
            const auto p = static_cast<std::size_t>(order[q]);
            free = round_of[p] != r || !rectangles_overlap(j, h, inst.jobs[p], height_of[p]);
          }
          if (!free) continue;
          round_of[id] = r;
          height_of[id] = h;
          if (go(idx + 1, std::max(used, r + 1))) return true;
        }
      }
      round_of[id] = -1;
      height_of[id] = -1;
      return false;
    };
    if (go(0, 0)) return {k, {round_of, height_of, k}};
  }
  throw TooLarge("exact_sap: optimum exceeds " + std::to_string(guards.exact_sap_rounds) + " rounds");
}

}  // namespace roundpack
