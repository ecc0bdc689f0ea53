#pragma once

// Reference implementations used only by tests. Each is written
// independently of the library code it checks and favours obviousness over
// speed.

#include <algorithm>
#include <numeric>
#include <vector>

#include "roundpack/roundpack.hpp"

namespace oracle {

using roundpack::Amount;
using roundpack::Instance;
using roundpack::Job;

inline Instance figure1() {
  Instance inst;
  inst.m = 12;
  inst.capacities = {5, 5, 1, 3, 5, 4, 5, 3, 4, 3, 5, 5};
  inst.jobs = {{0, 2, 4}, {1, 9, 1}, {3, 5, 2}, {4, 7, 2}, {6, 10, 2}, {8, 11, 1}, {10, 12, 4}};
  return inst;
}

// Load on edge e (0-based) from the given jobs.
inline Amount load_on(const std::vector<Job>& jobs, int e) {
  Amount sum = 0;
  for (const auto& j : jobs)
    if (j.s <= e && e < j.t) sum += j.d;
  return sum;
}

inline Amount max_load(const Instance& inst) {
  Amount best = 0;
  for (int e = 0; e < inst.m; ++e) best = std::max(best, load_on(inst.jobs, e));
  return best;
}

// max_e ceil(l_e / c_e)
inline Amount congestion(const Instance& inst) {
  Amount best = 0;
  for (int e = 0; e < inst.m; ++e) {
    const Amount l = load_on(inst.jobs, e), c = inst.capacities[static_cast<std::size_t>(e)];
    Amount k = 0;
    while (k * c < l) ++k;
    best = std::max(best, k);
  }
  return best;
}

inline Amount bottleneck(const Instance& inst, const Job& j) {
  Amount b = inst.capacities[static_cast<std::size_t>(j.s)];
  for (int e = j.s; e < j.t; ++e) b = std::min(b, inst.capacities[static_cast<std::size_t>(e)]);
  return b;
}

inline bool ufp_ok(const Instance& inst, const std::vector<int>& round_of, int rounds) {
  if (round_of.size() != inst.jobs.size()) return false;
  for (int r : round_of)
    if (r < 0 || r >= rounds) return false;
  for (int r = 0; r < rounds; ++r) {
    std::vector<Job> in;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j)
      if (round_of[j] == r) in.push_back(inst.jobs[j]);
    for (int e = 0; e < inst.m; ++e)
      if (load_on(in, e) > inst.capacities[static_cast<std::size_t>(e)]) return false;
  }
  return true;
}

inline bool ufp_ok(const Instance& inst, const roundpack::UfpPacking& p) { return ufp_ok(inst, p.round_of, p.rounds); }

// Every rectangle under the profile on each of its edges and no two
// rectangles of a round sharing an interior point.
inline bool sap_ok(const Instance& inst, const std::vector<Amount>& caps, const roundpack::SapPacking& p) {
  const std::size_t n = inst.jobs.size();
  if (p.round_of.size() != n || p.height_of.size() != n) return false;
  for (std::size_t a = 0; a < n; ++a) {
    const Job& x = inst.jobs[a];
    if (p.round_of[a] < 0 || p.round_of[a] >= p.rounds || p.height_of[a] < 0) return false;
    for (int e = x.s; e < x.t; ++e)
      if (p.height_of[a] + x.d > caps[static_cast<std::size_t>(e)]) return false;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (p.round_of[a] != p.round_of[b]) continue;
      const Job& y = inst.jobs[b];
      const bool xs = std::max(x.s, y.s) < std::min(x.t, y.t);
      const bool ys = std::max(p.height_of[a], p.height_of[b]) < std::min(p.height_of[a] + x.d, p.height_of[b] + y.d);
      if (xs && ys) return false;
    }
  }
  return true;
}

inline bool sap_ok(const Instance& inst, const roundpack::SapPacking& p) { return sap_ok(inst, inst.capacities, p); }

// Optimal DSA makespan: for every order, each job sits on top of the
// highest earlier job it overlaps. Some order (that of an optimal layout's
// bottoms) reproduces an optimum, so the minimum over orders is exact.
inline Amount dsa_opt_by_permutation(const std::vector<Job>& jobs) {
  if (jobs.empty()) return 0;
  std::vector<int> perm(jobs.size());
  std::iota(perm.begin(), perm.end(), 0);
  Amount best = std::numeric_limits<Amount>::max();
  std::vector<Amount> h(jobs.size());
  do {
    Amount top = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      const Job& j = jobs[static_cast<std::size_t>(perm[k])];
      Amount base = 0;
      for (std::size_t q = 0; q < k; ++q) {
        const Job& o = jobs[static_cast<std::size_t>(perm[q])];
        if (std::max(j.s, o.s) < std::min(j.t, o.t)) base = std::max(base, h[static_cast<std::size_t>(perm[q])] + o.d);
      }
      h[static_cast<std::size_t>(perm[k])] = base;
      top = std::max(top, base + j.d);
      if (top >= best) break;
    }
    best = std::min(best, top);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Max number of rectangles sharing a point. The common region of a clique
// is a rectangle whose lower-left corner is (max s, max bottom) over the
// clique, so probing (s_i + 1/2, bottom_j + 1/2) for all pairs suffices.
inline int clique_by_corners(const std::vector<roundpack::TopDrawnRect>& rects) {
  int best = 0;
  for (const auto& a : rects)
    for (const auto& b : rects) {
      const Amount x2 = 2 * Amount{a.s} + 1, y2 = 2 * b.bottom + 1;
      int cnt = 0;
      for (const auto& r : rects)
        if (2 * Amount{r.s} < x2 && x2 < 2 * Amount{r.t} && 2 * r.bottom < y2 && y2 < 2 * r.top) ++cnt;
      best = std::max(best, cnt);
    }
  return best;
}

// Smallest k such that some k-round UFP assignment exists, by plain
// enumeration of all assignments (n <= 7).
inline int ufp_opt_by_enumeration(const Instance& inst) {
  const int n = inst.n();
  if (n == 0) return 0;
  for (int k = 1; k <= n; ++k) {
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    while (true) {
      if (ufp_ok(inst, a, k)) return k;
      int i = 0;
      while (i < n && ++a[static_cast<std::size_t>(i)] == k) a[static_cast<std::size_t>(i++)] = 0;
      if (i == n) break;
    }
  }
  return n;
}

}  // namespace oracle
