#pragma once

// Dynamic storage allocation: assign each job a height in a single strip of
// unbounded capacity so that rectangles are disjoint, minimizing the makespan.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "roundpack/core.hpp"
#include "roundpack/guards.hpp"

namespace roundpack {

struct DsaLayout {
  std::vector<Amount> height_of;
};

inline Amount dsa_makespan(const DsaLayout& layout, std::span<const Job> jobs) {
  Amount top = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) top = std::max(top, layout.height_of[j] + jobs[j].d);
  return top;
}

inline bool dsa_valid(const DsaLayout& layout, std::span<const Job> jobs) {
  if (layout.height_of.size() != jobs.size()) return false;
  for (std::size_t a = 0; a < jobs.size(); ++a) {
    if (layout.height_of[a] < 0) return false;
    for (std::size_t b = a + 1; b < jobs.size(); ++b)
      if (rectangles_overlap(jobs[a], layout.height_of[a], jobs[b], layout.height_of[b])) return false;
  }
  return true;
}

inline Amount max_load(std::span<const Job> jobs) {
  int m = 0;
  for (const auto& j : jobs) m = std::max(m, j.t);
  if (m == 0) return 0;
  const auto loads = edge_loads(m, jobs);
  return *std::max_element(loads.begin(), loads.end());
}

namespace detail {

// Lowest h >= 0 such that [h, h+d) avoids every interval in `busy`.
inline Amount lowest_gap(std::vector<std::pair<Amount, Amount>> busy, Amount d) {
  std::sort(busy.begin(), busy.end());
  Amount h = 0;
  for (const auto& [lo, hi] : busy) {
    if (lo >= h + d) break;
    h = std::max(h, hi);
  }
  return h;
}

}  // namespace detail

// Jobs by start, longer span first, then id; each dropped into its lowest
// free gap.
inline DsaLayout dsa_first_fit(std::span<const Job> jobs) {
  std::vector<int> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Job& x = jobs[static_cast<std::size_t>(a)];
    const Job& y = jobs[static_cast<std::size_t>(b)];
    if (x.s != y.s) return x.s < y.s;
    if (x.span() != y.span()) return x.span() > y.span();
    return a < b;
  });
  DsaLayout out{std::vector<Amount>(jobs.size(), -1)};
  std::vector<int> placed;
  for (int id : order) {
    const Job& j = jobs[static_cast<std::size_t>(id)];
    std::vector<std::pair<Amount, Amount>> busy;
    for (int p : placed)
      if (spans_overlap(j, jobs[static_cast<std::size_t>(p)]))
        busy.emplace_back(out.height_of[static_cast<std::size_t>(p)], out.height_of[static_cast<std::size_t>(p)] + jobs[static_cast<std::size_t>(p)].d);
    out.height_of[static_cast<std::size_t>(id)] = detail::lowest_gap(std::move(busy), j.d);
    placed.push_back(id);
  }
  return out;
}

// Drops every job as far as it goes, processing bottoms in ascending order.
// No job moves up and the result stays valid.
inline DsaLayout apply_gravity(const DsaLayout& layout, std::span<const Job> jobs) {
  std::vector<int> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return layout.height_of[static_cast<std::size_t>(a)] < layout.height_of[static_cast<std::size_t>(b)];
  });
  DsaLayout out{std::vector<Amount>(jobs.size(), 0)};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto id = static_cast<std::size_t>(order[k]);
    Amount h = 0;
    for (std::size_t q = 0; q < k; ++q) {
      const auto p = static_cast<std::size_t>(order[q]);
      if (spans_overlap(jobs[id], jobs[p])) h = std::max(h, out.height_of[p] + jobs[p].d);
    }
    out.height_of[id] = h;
  }
  return out;
}

struct DsaEngine {
  std::string name;
  std::optional<Rational> claimed_factor;  // advisory only
  std::function<DsaLayout(std::span<const Job>)> run;
};

inline DsaEngine first_fit_engine() {
  return {"first-fit", std::nullopt, [](std::span<const Job> jobs) { return dsa_first_fit(jobs); }};
}

// Minimum-makespan layout by depth-first search over integer heights with
// increasing makespan bound. Guarded to n <= 8 and L <= 12 by default.
inline DsaLayout dsa_exact(std::span<const Job> jobs, Amount height_cap, const Guards& guards = Guards::current()) {
  const Amount load = max_load(jobs);
  if (static_cast<int>(jobs.size()) > guards.dsa_n || load > guards.dsa_load)
    throw TooLarge("dsa_exact limited to n <= " + std::to_string(guards.dsa_n) + " and L <= " + std::to_string(guards.dsa_load));
  if (jobs.empty()) return {};
  std::vector<int> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Job& x = jobs[static_cast<std::size_t>(a)];
    const Job& y = jobs[static_cast<std::size_t>(b)];
    return std::tuple(x.s, -x.d, a) < std::tuple(y.s, -y.d, b);
  });
  Amount dmax = 0;
  for (const auto& j : jobs) dmax = std::max(dmax, j.d);
  DsaLayout cur{std::vector<Amount>(jobs.size(), -1)};
  Amount bound = 0;
  std::function<bool(std::size_t)> place = [&](std::size_t k) -> bool {
    if (k == order.size()) return true;
    const auto id = static_cast<std::size_t>(order[k]);
    for (Amount h = 0; h + jobs[id].d <= bound && h <= height_cap; ++h) {
      bool ok = true;
      for (std::size_t q = 0; q < k && ok; ++q) {
        const auto p = static_cast<std::size_t>(order[q]);
        ok = !rectangles_overlap(jobs[id], h, jobs[p], cur.height_of[p]);
      }
      if (!ok) continue;
      cur.height_of[id] = h;
      if (place(k + 1)) return true;
    }
    cur.height_of[id] = -1;
    return false;
  };
  const Amount total = std::accumulate(jobs.begin(), jobs.end(), Amount{0}, [](Amount a, const Job& j) { return a + j.d; });
  for (bound = std::max(load, dmax); bound <= total; ++bound)
    if (place(0)) return cur;
  throw TooLarge("no layout within height cap " + std::to_string(height_cap));
}

}  // namespace roundpack
