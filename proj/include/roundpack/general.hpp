#pragma once

// Arbitrary capacities. Large jobs are drawn as rectangles hanging from their
// bottleneck ("top-drawn"); disjoint top-drawn rectangles form a valid round.
// They are split into random groups and first-fit coloured. Small jobs are
// packed greedily per bottleneck band. Also: bottleneck bands and their
// recombination under resource augmentation.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "roundpack/core.hpp"
#include "roundpack/nba.hpp"
#include "roundpack/random.hpp"

namespace roundpack {

struct TopDrawnRect {
  int job = -1;
  int s = 0;
  int t = 0;
  Amount bottom = 0;
  Amount top = 0;
};

inline bool rects_overlap(const TopDrawnRect& a, const TopDrawnRect& b) {
  return a.s < b.t && b.s < a.t && a.bottom < b.top && b.bottom < a.top;
}

inline std::vector<TopDrawnRect> top_drawn(const Instance& inst, std::span<const int> ids) {
  std::vector<TopDrawnRect> out;
  for (int id : ids) {
    const Job& j = inst.jobs[static_cast<std::size_t>(id)];
    const Amount b = bottleneck_of(inst, j);
    out.push_back({id, j.s, j.t, b - j.d, b});
  }
  return out;
}

inline std::vector<TopDrawnRect> top_drawn(const Instance& inst) {
  std::vector<int> ids(inst.jobs.size());
  std::iota(ids.begin(), ids.end(), 0);
  return top_drawn(inst, ids);
}

struct CliqueWitness {
  int omega = 0;
  int x = -1;  // open unit interval (x, x+1) of the path
  Amount y_low = 0;
  Amount y_high = 0;
};

// Maximum number of rectangles sharing a point. Coverage is constant on
// every cell of the grid spanned by the rectangles' own edges, so one sample
// per cell suffices.
inline CliqueWitness clique_number(std::span<const TopDrawnRect> rects) {
  CliqueWitness best;
  if (rects.empty()) return best;
  std::vector<int> xs;
  std::vector<Amount> ys;
  for (const auto& r : rects) {
    xs.push_back(r.s);
    xs.push_back(r.t);
    ys.push_back(r.bottom);
    ys.push_back(r.top);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  for (std::size_t a = 0; a + 1 < xs.size(); ++a)
    for (std::size_t b = 0; b + 1 < ys.size(); ++b) {
      int count = 0;
      for (const auto& r : rects) count += r.s <= xs[a] && xs[a + 1] <= r.t && r.bottom <= ys[b] && ys[b + 1] <= r.top;
      if (count > best.omega) best = {count, xs[a], ys[b], ys[b + 1]};
    }
  return best;
}

// Lowers each bottom to the highest profile line beneath it. The lines are 0
// and every capacity level c_e whose horizontal segment under the profile
// spans the whole job.
inline std::vector<TopDrawnRect> snap_demands(const Instance& inst, std::span<const TopDrawnRect> rects) {
  std::vector<TopDrawnRect> out(rects.begin(), rects.end());
  for (auto& r : out) {
    Amount line = 0;
    auto consider = [&](Amount c) {
      if (c <= r.bottom) line = std::max(line, c);
    };
    Amount run = r.top;
    for (int e = r.s - 1; e >= 0; --e) {
      const Amount c = inst.capacity(e);
      if (c <= run) consider(c);
      run = std::min(run, c);
    }
    run = r.top;
    for (int e = r.t; e < inst.m; ++e) {
      const Amount c = inst.capacity(e);
      if (c <= run) consider(c);
      run = std::min(run, c);
    }
    r.bottom = line;
  }
  return out;
}

struct Partition {
  int groups = 1;
  std::vector<int> group_of;
  std::vector<int> group_clique;
};

inline int partition_group_count(int omega, int m) {
  const double lg = std::max(1.0, std::log2(static_cast<double>(std::max(m, 1))));
  return std::max(1, static_cast<int>(std::ceil(static_cast<double>(omega) / lg - 1e-12)));
}

inline Partition partition_random(std::span<const TopDrawnRect> rects, int omega, int m, std::uint64_t seed) {
  if (omega < 1 && !rects.empty()) throw PreconditionError("partition needs omega >= 1");
  Partition p;
  p.groups = partition_group_count(omega, m);
  Rng rng(seed);
  for (std::size_t k = 0; k < rects.size(); ++k) p.group_of.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(p.groups))));
  for (int g = 0; g < p.groups; ++g) {
    std::vector<TopDrawnRect> mine;
    for (std::size_t k = 0; k < rects.size(); ++k)
      if (p.group_of[k] == g) mine.push_back(rects[k]);
    p.group_clique.push_back(clique_number(mine).omega);
  }
  return p;
}

// First-fit colouring in left-edge order (ties by input position).
inline std::vector<int> color_rects(std::span<const TopDrawnRect> rects, int* colors_used = nullptr) {
  std::vector<int> order(rects.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rects[static_cast<std::size_t>(a)].s < rects[static_cast<std::size_t>(b)].s; });
  std::vector<int> color(rects.size(), -1);
  int used = 0;
  for (int id : order) {
    std::vector<char> taken(static_cast<std::size_t>(used) + 1, 0);
    for (std::size_t k = 0; k < rects.size(); ++k)
      if (color[k] >= 0 && rects_overlap(rects[k], rects[static_cast<std::size_t>(id)])) taken[static_cast<std::size_t>(color[k])] = 1;
    int c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    color[static_cast<std::size_t>(id)] = c;
    used = std::max(used, c + 1);
  }
  if (colors_used) *colors_used = used;
  return color;
}

// Turns one valid UFP round into SAP rounds. Jobs by decreasing bottleneck
// try their top-drawn height, then the highest free height below it; a job
// that fits nowhere opens a new round.
inline std::vector<std::vector<std::pair<int, Amount>>> ufp_round_to_sap(const Instance& inst, std::span<const int> ids) {
  {
    Instance sub = restrict_jobs(inst, ids);
    if (auto bad = verify_ufp(sub, UfpPacking{std::vector<int>(ids.size(), 0), ids.empty() ? 0 : 1}))
      throw InvalidRound("input is not a valid UFP round: " + bad->describe());
  }
  std::vector<int> order(ids.begin(), ids.end());
  std::vector<Amount> b(inst.jobs.size(), 0);
  for (int id : order) b[static_cast<std::size_t>(id)] = bottleneck_of(inst, inst.jobs[static_cast<std::size_t>(id)]);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return b[static_cast<std::size_t>(x)] > b[static_cast<std::size_t>(y)]; });
  std::vector<std::vector<std::pair<int, Amount>>> rounds;
  for (int id : order) {
    const Job& j = inst.jobs[static_cast<std::size_t>(id)];
    const Amount hmax = b[static_cast<std::size_t>(id)] - j.d;
    bool done = false;
    for (auto& round : rounds) {
      std::vector<Amount> cand{hmax, 0};
      for (const auto& [q, hq] : round)
        if (spans_overlap(j, inst.jobs[static_cast<std::size_t>(q)]) && hq - j.d >= 0 && hq - j.d <= hmax) cand.push_back(hq - j.d);
      std::sort(cand.rbegin(), cand.rend());
      for (Amount h : cand) {
        bool free = true;
        for (const auto& [q, hq] : round) free = free && !rectangles_overlap(j, h, inst.jobs[static_cast<std::size_t>(q)], hq);
        if (!free) continue;
        round.emplace_back(id, h);
        done = true;
        break;
      }
      if (done) break;
    }
    if (!done) rounds.push_back({{id, hmax}});
  }
  return rounds;
}

// ---------------------------------------------------- bottleneck bands

struct Band {
  int index = 0;
  std::vector<int> jobs;
  std::vector<Amount> capacities;  // clamped to at most 2 k^(index+1)
};

inline Amount ipow(Amount base, int e) {
  Amount r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Band i holds jobs with k^i <= b < k^(i+1), where k = 1/delta.
inline int band_index(Amount b, Amount k) {
  int i = 0;
  Amount p = k;
  while (p <= b) {
    ++i;
    p *= k;
  }
  return i;
}

inline std::vector<Band> bottleneck_bands(const Instance& inst, Amount inv_delta) {
  if (inv_delta < 2) throw PreconditionError("delta must be at most 1/2");
  std::map<int, Band> bands;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const int i = band_index(bottleneck_of(inst, inst.jobs[j]), inv_delta);
    bands[i].index = i;
    bands[i].jobs.push_back(static_cast<int>(j));
  }
  std::vector<Band> out;
  for (auto& [i, band] : bands) {
    const Amount cap = 2 * ipow(inv_delta, i + 1);
    for (Amount c : inst.capacities) band.capacities.push_back(std::min(c, cap));
    out.push_back(std::move(band));
  }
  return out;
}

struct BandRound {
  int band = 0;
  std::vector<int> jobs;
  std::vector<Amount> heights;  // empty for UFP
};

// Upward shift for band i: ceil(gamma k^i) with gamma = 2k/(k^2-1).
inline Amount band_shift(int i, Amount k) { return ceil_div(2 * ipow(k, i + 1), k * k - 1); }

// c_e + ceil(gamma c_e).
inline Amount augmented_capacity(Amount c, Amount k) { return c + ceil_div(2 * k * c, k * k - 1); }

struct Combined {
  SapPacking sap;                // over the union of jobs, one round
  std::vector<int> jobs;
  std::vector<Amount> capacities;  // augmented
};

inline Combined augment_combine(const Instance& inst, const std::vector<BandRound>& rounds, Amount inv_delta, Problem problem) {
  Combined out;
  for (Amount c : inst.capacities) out.capacities.push_back(augmented_capacity(c, inv_delta));
  if (rounds.empty()) return out;
  const int parity = rounds.front().band & 1;
  for (const auto& br : rounds)
    if ((br.band & 1) != parity) throw BandParityMixed();
  const bool sap = problem == Problem::Sap;
  for (const auto& br : rounds)
    for (std::size_t k = 0; k < br.jobs.size(); ++k) {
      out.jobs.push_back(br.jobs[k]);
      out.sap.round_of.push_back(0);
      if (sap) out.sap.height_of.push_back(br.heights[k] + band_shift(br.band, inv_delta));
    }
  out.sap.rounds = 1;
  return out;
}

// Verifies a combined round under augmented capacities. For UFP the check
// is (k^2-1) load <= (k^2-1) c + 2k c, i.e. load <= (1+gamma) c exactly.
inline Verdict verify_combined(const Instance& inst, const Combined& comb, Amount inv_delta, Problem problem) {
  Instance sub = restrict_jobs(inst, comb.jobs);
  if (problem == Problem::Sap) {
    sub.capacities = comb.capacities;
    return verify_sap(sub, comb.sap);
  }
  const Amount k = inv_delta;
  const auto loads = edge_loads(sub.m, sub.jobs);
  for (int e = 0; e < sub.m; ++e) {
    const Amount c = inst.capacity(e);
    const Amount lhs = (k * k - 1) * loads[static_cast<std::size_t>(e)];
    const Amount rhs = (k * k - 1) * c + 2 * k * c;
    if (lhs > rhs) return Violation{Violation::Kind::Overload, 0, e + 1, ceil_div(lhs - rhs, k * k - 1)};
  }
  return std::nullopt;
}

// ------------------------------------------------------------ pipeline

struct GeneralDiagnostics {
  int omega = 0;
  int groups = 0;
  int colors = 0;
  int large_rounds = 0;
  int small_rounds = 0;
  int rounds = 0;
  Amount r = 0;
  bool small_nba = false;
};

struct GeneralResult {
  SapPacking packing;  // height_of empty for UFP
  GeneralDiagnostics diag;
};

inline GeneralResult solve_general(const Instance& inst, Problem problem, std::uint64_t seed = 1, const UniformOptions& uopt = {}) {
  require_packable(inst);
  const bool sap = problem == Problem::Sap;
  GeneralResult res;
  const std::size_t n = inst.jobs.size();
  res.packing = {std::vector<int>(n, -1), sap ? std::vector<Amount>(n, -1) : std::vector<Amount>{}, 0};
  res.diag.r = congestion(inst);
  if (n == 0) return res;

  std::vector<int> large, small;
  for (std::size_t j = 0; j < n; ++j) (4 * inst.jobs[j].d > bottleneck_of(inst, inst.jobs[j]) ? large : small).push_back(static_cast<int>(j));

  if (!large.empty()) {
    const auto rects = top_drawn(inst, large);
    const auto snapped = snap_demands(inst, rects);
    const int omega = clique_number(snapped).omega;
    const Partition part = partition_random(snapped, omega, inst.m, seed);
    res.diag.omega = omega;
    res.diag.groups = part.groups;
    for (int g = 0; g < part.groups; ++g) {
      std::vector<TopDrawnRect> mine;
      for (std::size_t k = 0; k < snapped.size(); ++k)
        if (part.group_of[k] == g) mine.push_back(snapped[k]);
      int used = 0;
      const auto color = color_rects(mine, &used);
      for (std::size_t k = 0; k < mine.size(); ++k) {
        const auto j = static_cast<std::size_t>(mine[k].job);
        res.packing.round_of[j] = res.packing.rounds + color[k];
        if (sap) res.packing.height_of[j] = bottleneck_of(inst, inst.jobs[j]) - inst.jobs[j].d;
      }
      res.packing.rounds += used;
      res.diag.colors += used;
    }
    res.diag.large_rounds = res.packing.rounds;
  }

  if (!small.empty()) {
    const Instance sub = restrict_jobs(inst, small);
    SapPacking part;
    if (sub.max_demand() <= sub.min_capacity()) {
      res.diag.small_nba = true;
      if (sap) part = nba_sap(sub, uopt).packing;
      else {
        const NbaUfpResult u = nba_ufp(sub);
        part = {u.packing.round_of, {}, u.packing.rounds};
      }
    } else {
      // Greedy UFP rounds by (band, start, id), then SAP conversion per round.
      std::vector<int> order(small.size());
      std::iota(order.begin(), order.end(), 0);
      std::vector<int> band(small.size());
      for (std::size_t k = 0; k < small.size(); ++k) band[k] = band_index(bottleneck_of(sub, sub.jobs[k]), 2);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(band[static_cast<std::size_t>(a)], sub.jobs[static_cast<std::size_t>(a)].s) <
               std::pair(band[static_cast<std::size_t>(b)], sub.jobs[static_cast<std::size_t>(b)].s);
      });
      std::vector<std::vector<Amount>> residual;
      std::vector<int> round_of(small.size(), -1);
      for (int k : order) {
        const Job& j = sub.jobs[static_cast<std::size_t>(k)];
        std::size_t r = 0;
        for (;; ++r) {
          if (r == residual.size()) residual.push_back(sub.capacities);
          bool fits = true;
          for (int e = j.s; e < j.t && fits; ++e) fits = residual[r][static_cast<std::size_t>(e)] >= j.d;
          if (fits) break;
        }
        for (int e = j.s; e < j.t; ++e) residual[r][static_cast<std::size_t>(e)] -= j.d;
        round_of[static_cast<std::size_t>(k)] = static_cast<int>(r);
      }
      part = {round_of, sap ? std::vector<Amount>(small.size(), -1) : std::vector<Amount>{}, static_cast<int>(residual.size())};
      if (sap) {
        SapPacking conv{std::vector<int>(small.size(), -1), std::vector<Amount>(small.size(), -1), 0};
        for (int r = 0; r < part.rounds; ++r) {
          std::vector<int> ids;
          for (std::size_t k = 0; k < small.size(); ++k)
            if (round_of[k] == r) ids.push_back(static_cast<int>(k));
          for (const auto& sr : ufp_round_to_sap(sub, ids)) {
            for (const auto& [k, h] : sr) {
              conv.round_of[static_cast<std::size_t>(k)] = conv.rounds;
              conv.height_of[static_cast<std::size_t>(k)] = h;
            }
            ++conv.rounds;
          }
        }
        part = conv;
      }
    }
    res.diag.small_rounds = part.rounds;
    detail::append_rounds(res.packing, part, small, sap);
  }
  res.diag.rounds = res.packing.rounds;
  return res;
}

}  // namespace roundpack
