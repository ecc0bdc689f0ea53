#pragma once

// Algorithms for instances where every demand fits under the smallest
// capacity U. All thresholds are integer multiples of U, so no scaling to
// fractional units is needed.
//
// SAP: capacities are rounded down to U 2^k. A level-i job (rounded
// bottleneck U 2^i) is packed inside band i, i.e. [U 2^(i-1), U 2^i) for
// i >= 1 and [0, U) for i = 0. Bands of different levels never meet, so the
// per-level uniform solutions stack into one packing.
//
// UFP: large jobs (2d > U) become unit jobs; small jobs are grouped by
// demand class and split by per-edge class counts.

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <vector>

#include "roundpack/core.hpp"
#include "roundpack/uniform.hpp"
#include "roundpack/unitpack.hpp"

namespace roundpack {

inline void require_nba(const Instance& inst) {
  if (!inst.nba()) throw NbaViolated();
}

// Largest k with U 2^k <= c.
inline int capacity_level(Amount c, Amount U) {
  int k = 0;
  while (c / U >= (Amount{2} << k)) ++k;
  return k;
}

inline Amount rounded_capacity(Amount c, Amount U) { return U << capacity_level(c, U); }

inline Amount band_offset(int level, Amount U) { return level == 0 ? 0 : U << (level - 1); }
inline Amount band_capacity(int level, Amount U) { return level == 0 ? U : U << (level - 1); }

// True when some line at height U 2^k strictly crosses [h, h + d).
inline bool crosses_power_line(Amount h, Amount d, Amount U) {
  for (Amount line = U; line < h + d; line *= 2)
    if (line > h) return true;
  return false;
}

struct LevelDecomposition {
  Amount unit = 1;                 // U = c_min
  std::vector<Amount> rounded;     // c'_e
  std::vector<int> level_of;       // per job
  std::map<int, std::vector<int>> jobs_by_level;
};

inline LevelDecomposition decompose_levels(const Instance& inst) {
  LevelDecomposition dec;
  dec.unit = inst.min_capacity();
  for (Amount c : inst.capacities) dec.rounded.push_back(rounded_capacity(c, dec.unit));
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const int lv = capacity_level(bottleneck_of(inst, inst.jobs[j]), dec.unit);
    dec.level_of.push_back(lv);
    dec.jobs_by_level[lv].push_back(static_cast<int>(j));
  }
  return dec;
}

// ------------------------------------------------------------ unslicing

struct UnsliceResult {
  SapPacking packing;         // 4 rounds, some possibly empty
  std::vector<int> rule;      // 1..4 per job
  std::vector<Amount> rounded;
};

// Rearranges one valid round into four rounds that are valid under the
// rounded capacities and in which no job crosses a line U 2^k.
inline UnsliceResult sap_unslice(const Instance& inst, const SapPacking& round) {
  require_nba(inst);
  if (round.rounds > 1) throw InvalidRound("sap_unslice expects a single round");
  if (auto bad = verify_sap(inst, round)) throw InvalidRound("input round invalid: " + bad->describe());
  const Amount U = inst.n() ? inst.min_capacity() : 1;
  UnsliceResult out;
  for (Amount c : inst.capacities) out.rounded.push_back(rounded_capacity(c, U));
  const std::size_t n = inst.jobs.size();
  out.packing = {std::vector<int>(n, -1), std::vector<Amount>(n, -1), 4};
  out.rule.assign(n, 0);
  auto place = [&](std::size_t j, int rule, Amount h) {
    out.rule[j] = rule;
    out.packing.round_of[j] = rule - 1;
    out.packing.height_of[j] = h;
  };
  for (std::size_t j = 0; j < n; ++j) {
    const Amount d = inst.jobs[j].d;
    const Amount h = round.height_of[j];
    const Amount top = h + d;
    const int i = capacity_level(bottleneck_of(inst, inst.jobs[j]), U);
    int sliced_k = -1;
    for (int k = 0; (U << k) < top; ++k)
      if ((U << k) > h) sliced_k = k;
    if (sliced_k >= 1) {
      place(j, 4, (U << sliced_k) - d);
    } else if (sliced_k == 0) {
      place(j, 3, U - d);
    } else if (i >= 1 && h < 3 * (U << (i - 1)) && 3 * (U << (i - 1)) < top) {
      // Crosses the midpoint of the level's upper range.
      place(j, 4, i >= 2 ? 3 * (U << (i - 2)) - d : U - d);
    } else if (top <= (U << i)) {
      place(j, 1, h);
    } else if (i == 0) {
      place(j, 2, h - U);
    } else if (top <= 3 * (U << (i - 1))) {
      place(j, 2, h - (U << (i - 1)));
    } else {
      place(j, 3, h - (U << i));
    }
  }
  return out;
}

// ----------------------------------------------------- level extraction

struct LevelSolution {
  int level = 0;
  std::vector<int> jobs;  // global job ids
  SapPacking packing;     // over `jobs`, uniform capacity band_capacity(level)
};

// Splits a no-slice round of level-i jobs (all tops <= U 2^i) into two
// rounds of capacity U 2^(i-1): jobs above the line U 2^(i-1) move down by
// that amount, the rest stay. Level 0 keeps a single round.
inline SapPacking split_level_round(int level, std::span<const Job> jobs, std::span<const Amount> heights, Amount U) {
  const std::size_t n = jobs.size();
  SapPacking p{std::vector<int>(n, 0), std::vector<Amount>(heights.begin(), heights.end()), n ? 1 : 0};
  if (level == 0) return p;
  const Amount half = U << (level - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (heights[j] + jobs[j].d > (U << level)) throw LevelInvalid("job above its level ceiling");
    if (heights[j] >= half) {
      p.round_of[j] = 1;
      p.height_of[j] -= half;
      p.rounds = 2;
    } else if (heights[j] + jobs[j].d > half) {
      throw LevelInvalid("job crosses the split line");
    }
  }
  compact(p);
  return p;
}

// Per-level uniform packings from a no-slice packing (e.g. sap_unslice).
inline std::vector<LevelSolution> extract_levels(const Instance& inst, const SapPacking& unsliced) {
  const LevelDecomposition dec = decompose_levels(inst);
  std::vector<LevelSolution> out;
  for (const auto& [level, ids] : dec.jobs_by_level) {
    LevelSolution ls;
    ls.level = level;
    ls.jobs = ids;
    ls.packing = {std::vector<int>(ids.size(), -1), std::vector<Amount>(ids.size(), -1), 0};
    for (int r = 0; r < unsliced.rounds; ++r) {
      std::vector<std::size_t> local;
      std::vector<Job> js;
      std::vector<Amount> hs;
      for (std::size_t k = 0; k < ids.size(); ++k) {
        const auto j = static_cast<std::size_t>(ids[k]);
        if (unsliced.round_of[j] != r) continue;
        local.push_back(k);
        js.push_back(inst.jobs[j]);
        hs.push_back(unsliced.height_of[j]);
      }
      if (local.empty()) continue;
      const SapPacking part = split_level_round(level, js, hs, dec.unit);
      for (std::size_t q = 0; q < local.size(); ++q) {
        ls.packing.round_of[local[q]] = ls.packing.rounds + part.round_of[q];
        ls.packing.height_of[local[q]] = part.height_of[q];
      }
      ls.packing.rounds += part.rounds;
    }
    out.push_back(std::move(ls));
  }
  return out;
}

// Places level i's rounds into band i of the shared rounds.
inline SapPacking stack_levels(const Instance& inst, const std::vector<LevelSolution>& levels) {
  const LevelDecomposition dec = decompose_levels(inst);
  const Amount U = dec.unit;
  const std::size_t n = inst.jobs.size();
  SapPacking out{std::vector<int>(n, -1), std::vector<Amount>(n, -1), 0};
  for (const auto& ls : levels) {
    const Amount cap = band_capacity(ls.level, U);
    Instance sub = restrict_jobs(inst, ls.jobs);
    sub.capacities.assign(sub.capacities.size(), cap);
    for (int j : ls.jobs)
      if (dec.level_of[static_cast<std::size_t>(j)] != ls.level)
        throw LevelInvalid("job " + std::to_string(j) + " is not of level " + std::to_string(ls.level));
    if (auto bad = verify_sap(sub, ls.packing))
      throw LevelInvalid("level " + std::to_string(ls.level) + " packing invalid: " + bad->describe());
    const Amount off = band_offset(ls.level, U);
    for (std::size_t k = 0; k < ls.jobs.size(); ++k) {
      const auto j = static_cast<std::size_t>(ls.jobs[k]);
      out.round_of[j] = ls.packing.round_of[k];
      out.height_of[j] = ls.packing.height_of[k] + off;
    }
    out.rounds = std::max(out.rounds, ls.packing.rounds);
  }
  return out;
}

struct NbaSapResult {
  SapPacking packing;
  std::map<int, int> level_rounds;
};

inline NbaSapResult nba_sap(const Instance& inst, const UniformOptions& opt = {}) {
  require_nba(inst);
  NbaSapResult res;
  const std::size_t n = inst.jobs.size();
  res.packing = {std::vector<int>(n, -1), std::vector<Amount>(n, -1), 0};
  if (n == 0) return res;
  const LevelDecomposition dec = decompose_levels(inst);
  std::vector<LevelSolution> levels;
  for (const auto& [level, ids] : dec.jobs_by_level) {
    Instance sub = restrict_jobs(inst, ids);
    sub.capacities.assign(sub.capacities.size(), band_capacity(level, dec.unit));
    const UniformResult ur = solve_uniform(sub, Problem::Sap, opt);
    levels.push_back({level, ids, ur.packing});
    res.level_rounds[level] = ur.packing.rounds;
  }
  res.packing = stack_levels(inst, levels);
  return res;
}

// ------------------------------------------------------------------ UFP

struct NbaUfpResult {
  UfpPacking packing;
  Amount r = 0;
  int small_sparse_rounds = 0;  // J'
  int small_dense_rounds = 0;   // J''
  int large_rounds = 0;
};

// Demand class of a small job: the largest i with d 2^i <= U (i >= 1).
inline int demand_class(Amount d, Amount U) {
  int i = 0;
  while ((d << (i + 1)) <= U) ++i;
  return i;
}

inline NbaUfpResult nba_ufp(const Instance& inst) {
  require_nba(inst);
  NbaUfpResult res;
  const std::size_t n = inst.jobs.size();
  res.packing = {std::vector<int>(n, -1), 0};
  if (n == 0) return res;
  const Amount U = inst.min_capacity();
  const Amount r = congestion(inst);
  res.r = r;
  const int budget = static_cast<int>(4 * r);
  const auto m = static_cast<std::size_t>(inst.m);

  std::vector<int> large;
  std::map<int, std::vector<int>> by_class;
  for (std::size_t j = 0; j < n; ++j) {
    const Amount d = inst.jobs[j].d;
    if (2 * d > U) large.push_back(static_cast<int>(j));
    else by_class[demand_class(d, U)].push_back(static_cast<int>(j));
  }

  // Split each class by whether some edge on the path has fewer than 2r
  // class jobs.
  std::map<int, std::vector<int>> sparse, dense;
  std::map<int, std::vector<Amount>> counts;
  for (const auto& [cls, ids] : by_class) {
    std::vector<Job> js;
    for (int j : ids) js.push_back({inst.jobs[static_cast<std::size_t>(j)].s, inst.jobs[static_cast<std::size_t>(j)].t, 1});
    auto cnt = edge_loads(inst.m, js);
    for (int j : ids) {
      const Job& job = inst.jobs[static_cast<std::size_t>(j)];
      bool thin = false;
      for (int e = job.s; e < job.t && !thin; ++e) thin = cnt[static_cast<std::size_t>(e)] < 2 * r;
      (thin ? sparse : dense)[cls].push_back(j);
    }
    counts[cls] = std::move(cnt);
  }

  // J': per class, interval first-fit in left-endpoint order; one class job
  // per edge per round.
  int sparse_used = 0;
  for (const auto& [cls, ids] : sparse) {
    std::vector<Job> js;
    for (int j : ids) js.push_back(inst.jobs[static_cast<std::size_t>(j)]);
    std::vector<int> order(ids.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return js[static_cast<std::size_t>(a)].s < js[static_cast<std::size_t>(b)].s; });
    int used = 0;
    const auto color = first_fit_interval_coloring(js, order, &used);
    if (used > budget) throw InternalBoundViolated("sparse class " + std::to_string(cls) + " needs " + std::to_string(used) + " > 4r rounds");
    for (std::size_t k = 0; k < ids.size(); ++k) res.packing.round_of[static_cast<std::size_t>(ids[k])] = color[k];
    sparse_used = std::max(sparse_used, used);
  }
  res.small_sparse_rounds = sparse_used;

  // J'': per class, unit packing under class budgets floor(n_{e,i} / 2r).
  int dense_used = 0;
  for (const auto& [cls, ids] : dense) {
    const auto& cnt = counts[cls];
    Instance unit{inst.m, std::vector<Amount>(m, 1), {}};
    for (std::size_t e = 0; e < m; ++e) unit.capacities[e] = std::max<Amount>(1, cnt[e] / (2 * r));
    for (int j : ids) unit.jobs.push_back({inst.jobs[static_cast<std::size_t>(j)].s, inst.jobs[static_cast<std::size_t>(j)].t, 1});
    const UfpPacking up = pack_unit(unit);
    if (up.rounds > budget) throw InternalBoundViolated("dense class " + std::to_string(cls) + " needs " + std::to_string(up.rounds) + " > 4r rounds");
    for (std::size_t k = 0; k < ids.size(); ++k) res.packing.round_of[static_cast<std::size_t>(ids[k])] = budget + up.round_of[k];
    dense_used = std::max(dense_used, up.rounds);
  }
  res.small_dense_rounds = dense_used;

  // Large jobs: demand 1 under capacity floor(c_e / U).
  if (!large.empty()) {
    Instance unit{inst.m, std::vector<Amount>(m, 1), {}};
    for (std::size_t e = 0; e < m; ++e) unit.capacities[e] = inst.capacities[e] / U;
    for (int j : large) unit.jobs.push_back({inst.jobs[static_cast<std::size_t>(j)].s, inst.jobs[static_cast<std::size_t>(j)].t, 1});
    const UfpPacking up = pack_unit(unit);
    if (up.rounds > budget) throw InternalBoundViolated("large jobs need " + std::to_string(up.rounds) + " > 4r rounds");
    for (std::size_t k = 0; k < large.size(); ++k) res.packing.round_of[static_cast<std::size_t>(large[k])] = 2 * budget + up.round_of[k];
    res.large_rounds = up.rounds;
  }
  res.packing.rounds = 3 * budget;
  compact(res.packing);
  return res;
}

}  // namespace roundpack
