#pragma once

// Uniform-capacity pipelines: DSA layouts cut into strata of height c*, the
// push-up normalization, candidate heights for large jobs and an exact
// left-to-right configuration DP over edges.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "roundpack/core.hpp"
#include "roundpack/dsa.hpp"
#include "roundpack/guards.hpp"

namespace roundpack {

inline Amount require_uniform(const Instance& inst) {
  if (!inst.uniform()) throw NonUniformCapacity();
  return inst.capacities.front();
}

// ---------------------------------------------------------------- slicing

struct SlicedStrata {
  std::vector<std::vector<int>> strata;  // stratum i: jobs inside [i c*, (i+1) c*]
  std::vector<std::vector<int>> sliced;  // sliced[i]: jobs crossing height i c*; sliced[0] is empty
  Amount xi = 0;
  Amount cstar = 1;
};

inline SlicedStrata slice_layout(const DsaLayout& layout, std::span<const Job> jobs, Amount cstar) {
  SlicedStrata out;
  out.cstar = cstar;
  out.xi = dsa_makespan(layout, jobs);
  const auto K = static_cast<std::size_t>(out.xi / cstar);
  out.strata.resize(K + 1);
  out.sliced.resize(K + 1);
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (jobs[j].d > cstar) throw PreconditionError("job " + std::to_string(j) + " taller than c*");
    const Amount h = layout.height_of[j];
    const Amount i = h / cstar;
    if (h + jobs[j].d <= (i + 1) * cstar) out.strata[static_cast<std::size_t>(i)].push_back(static_cast<int>(j));
    else out.sliced[static_cast<std::size_t>(i + 1)].push_back(static_cast<int>(j));
  }
  return out;
}

// ---------------------------------------------------------- Case 1 packing

enum class Subcase { None, B, A };

inline const char* to_string(Subcase s) { return s == Subcase::B ? "B" : s == Subcase::A ? "A" : "none"; }

struct UniformSmallResult {
  SapPacking packing;
  Amount xi = 0;
  Amount xi_sliced = 0;
  Subcase subcase = Subcase::None;
  int strata = 0;  // floor(xi / c*) + 1
};

inline UniformSmallResult uniform_small(const Instance& inst, const DsaEngine& engine = first_fit_engine()) {
  const Amount cstar = require_uniform(inst);
  require_packable(inst);
  UniformSmallResult res;
  const std::size_t n = inst.jobs.size();
  res.packing = {std::vector<int>(n, -1), std::vector<Amount>(n, -1), 0};
  if (n == 0) return res;
  const DsaLayout layout = engine.run(inst.jobs);
  if (!dsa_valid(layout, inst.jobs)) throw InternalBoundViolated("engine " + engine.name + " produced an invalid layout");
  const SlicedStrata ss = slice_layout(layout, inst.jobs, cstar);
  res.xi = ss.xi;
  res.strata = static_cast<int>(ss.strata.size());
  for (std::size_t i = 0; i < ss.strata.size(); ++i)
    for (int j : ss.strata[i]) {
      res.packing.round_of[static_cast<std::size_t>(j)] = static_cast<int>(i);
      res.packing.height_of[static_cast<std::size_t>(j)] = layout.height_of[static_cast<std::size_t>(j)] - static_cast<Amount>(i) * cstar;
    }
  int rounds = res.strata;
  std::vector<int> sliced_ids;
  for (const auto& line : ss.sliced) sliced_ids.insert(sliced_ids.end(), line.begin(), line.end());
  if (!sliced_ids.empty()) {
    std::vector<Job> sj;
    for (int j : sliced_ids) sj.push_back(inst.jobs[static_cast<std::size_t>(j)]);
    const DsaLayout second = engine.run(sj);
    res.xi_sliced = dsa_makespan(second, sj);
    const Amount K = ss.xi / cstar;
    const Amount base = ss.xi - K * cstar;
    if (res.xi_sliced <= cstar - base) {
      res.subcase = Subcase::B;
      for (std::size_t k = 0; k < sliced_ids.size(); ++k) {
        const auto j = static_cast<std::size_t>(sliced_ids[k]);
        res.packing.round_of[j] = static_cast<int>(K);
        res.packing.height_of[j] = base + second.height_of[k];
      }
    } else {
      // One round per slicing line; jobs crossing a common line have disjoint spans.
      res.subcase = Subcase::A;
      for (std::size_t i = 1; i < ss.sliced.size(); ++i) {
        if (ss.sliced[i].empty()) continue;
        for (int j : ss.sliced[i]) {
          res.packing.round_of[static_cast<std::size_t>(j)] = rounds;
          res.packing.height_of[static_cast<std::size_t>(j)] = 0;
        }
        ++rounds;
      }
    }
  }
  res.packing.rounds = rounds;
  compact(res.packing);
  return res;
}

// ----------------------------------------------------------- normalization

// Pushes jobs up in order of decreasing top. Each job ends touching c* or the
// bottom of an overlapping job.
inline std::vector<Amount> normalize_round(std::span<const Job> jobs, std::span<const Amount> heights, Amount cstar) {
  for (std::size_t a = 0; a < jobs.size(); ++a) {
    if (heights[a] < 0 || heights[a] + jobs[a].d > cstar) throw InvalidInput("job outside [0, c*]");
    for (std::size_t b = a + 1; b < jobs.size(); ++b)
      if (rectangles_overlap(jobs[a], heights[a], jobs[b], heights[b])) throw InvalidInput("round has overlapping jobs");
  }
  std::vector<int> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Amount ta = heights[static_cast<std::size_t>(a)] + jobs[static_cast<std::size_t>(a)].d;
    const Amount tb = heights[static_cast<std::size_t>(b)] + jobs[static_cast<std::size_t>(b)].d;
    return ta != tb ? ta > tb : a < b;
  });
  std::vector<Amount> out(jobs.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto j = static_cast<std::size_t>(order[k]);
    Amount top = cstar;
    for (std::size_t q = 0; q < k; ++q) {
      const auto p = static_cast<std::size_t>(order[q]);
      if (spans_overlap(jobs[j], jobs[p])) top = std::min(top, out[p]);
    }
    out[j] = top - jobs[j].d;
  }
  return out;
}

inline bool is_normalized(std::span<const Job> jobs, std::span<const Amount> heights, Amount cstar) {
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Amount top = heights[j] + jobs[j].d;
    bool ok = top == cstar;
    for (std::size_t p = 0; p < jobs.size() && !ok; ++p) ok = p != j && spans_overlap(jobs[j], jobs[p]) && heights[p] == top;
    if (!ok) return false;
  }
  return true;
}

// --------------------------------------------------------- candidate heights

// { c* - sum(S) : S a non-empty set of at most `omega` jobs } within [0, c*].
inline std::vector<Amount> candidate_heights(std::span<const Amount> demands, Amount cstar, int omega,
                                             std::int64_t cap = Guards::current().height_set) {
  std::vector<std::set<Amount>> reach(static_cast<std::size_t>(std::max(omega, 0)) + 1);
  reach[0].insert(0);
  for (Amount d : demands)
    for (int k = omega; k >= 1; --k)
      for (Amount s : reach[static_cast<std::size_t>(k - 1)])
        if (s + d <= cstar) {
          reach[static_cast<std::size_t>(k)].insert(s + d);
          if (static_cast<std::int64_t>(reach[static_cast<std::size_t>(k)].size()) > cap)
            throw BudgetExceeded("candidate height set exceeds " + std::to_string(cap));
        }
  std::set<Amount> sums;
  for (int k = 1; k <= omega; ++k) sums.insert(reach[static_cast<std::size_t>(k)].begin(), reach[static_cast<std::size_t>(k)].end());
  if (static_cast<std::int64_t>(sums.size()) > cap) throw BudgetExceeded("candidate height set exceeds " + std::to_string(cap));
  std::vector<Amount> out;
  for (auto it = sums.rbegin(); it != sums.rend(); ++it) out.push_back(cstar - *it);
  return out;
}

// ------------------------------------------------------------ edge DP

inline int max_jobs_per_edge(const Instance& inst) {
  Instance unit = inst;
  for (auto& j : unit.jobs) j.d = 1;
  const auto loads = edge_loads(unit.m, unit.jobs);
  return inst.jobs.empty() ? 0 : static_cast<int>(*std::max_element(loads.begin(), loads.end()));
}

struct DpResult {
  bool feasible = false;
  SapPacking packing;  // height_of empty for UFP
  std::int64_t peak_states = 0;
};

namespace detail {

struct StateHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace detail

// Decides whether the jobs fit into `kappa` rounds. A state at edge e fixes a
// (round, height) pair for every job crossing e; consecutive edges must
// agree on shared jobs. For SAP, heights come from `heights`.
inline DpResult dp_round(const Instance& input, Problem problem, int kappa, int omega, std::span<const Amount> heights = {},
                         const Guards& guards = Guards::current()) {
  DpResult res;
  const std::size_t n = input.jobs.size();
  if (n == 0) {
    res.feasible = true;
    res.packing = {{}, {}, 0};
    return res;
  }
  if (kappa < 1) return res;
  const bool sap = problem == Problem::Sap;
  const CanonicalInstance canon = canonicalize(input);
  const Instance& inst = canon.instance;
  const int m = inst.m;
  std::vector<std::vector<int>> active(static_cast<std::size_t>(m));
  for (std::size_t j = 0; j < n; ++j)
    for (int e = inst.jobs[j].s; e < inst.jobs[j].t; ++e) active[static_cast<std::size_t>(e)].push_back(static_cast<int>(j));
  for (int e = 0; e < m; ++e)
    if (static_cast<int>(active[static_cast<std::size_t>(e)].size()) > omega)
      throw OmegaExceeded("edge " + std::to_string(e + 1) + " carries more than " + std::to_string(omega) + " jobs");

  // State: for each active job (ascending id) its round label, then for SAP
  // its height index.
  struct Layer {
    std::vector<std::vector<int>> states;
    std::vector<int> parent;
  };
  std::vector<Layer> layers(static_cast<std::size_t>(m));
  std::vector<int> prev_active;
  std::int64_t work = 0;
  Layer prev;
  prev.states.push_back({});
  prev.parent.push_back(-1);

  for (int e = 0; e < m; ++e) {
    const auto& act = active[static_cast<std::size_t>(e)];
    const Amount cap = inst.capacity(e);
    const std::size_t k = act.size();
    Layer cur;
    std::unordered_map<std::vector<int>, int, detail::StateHash> seen;
    std::vector<int> entering;
    for (std::size_t x = 0; x < k; ++x)
      if (inst.jobs[static_cast<std::size_t>(act[x])].s == e) entering.push_back(static_cast<int>(x));
    // Position in prev_active for continuing jobs.
    std::vector<int> from_prev(k, -1);
    for (std::size_t x = 0; x < k; ++x) {
      auto it = std::lower_bound(prev_active.begin(), prev_active.end(), act[x]);
      if (it != prev_active.end() && *it == act[x]) from_prev[x] = static_cast<int>(it - prev_active.begin());
    }
    const std::size_t pk = prev_active.size();
    std::vector<int> round(k), hidx(k);
    std::vector<Amount> load(static_cast<std::size_t>(kappa));

    for (std::size_t ps = 0; ps < prev.states.size(); ++ps) {
      const auto& st = prev.states[ps];
      std::fill(load.begin(), load.end(), 0);
      std::vector<char> used(static_cast<std::size_t>(kappa), 0);
      bool ok = true;
      for (std::size_t x = 0; x < k && ok; ++x) {
        if (from_prev[x] < 0) continue;
        const auto p = static_cast<std::size_t>(from_prev[x]);
        round[x] = st[p];
        hidx[x] = sap ? st[pk + p] : 0;
        const Job& j = inst.jobs[static_cast<std::size_t>(act[x])];
        used[static_cast<std::size_t>(round[x])] = 1;
        load[static_cast<std::size_t>(round[x])] += j.d;
        if (sap) ok = heights[static_cast<std::size_t>(hidx[x])] + j.d <= cap;
      }
      if (!ok) continue;
      for (int r = 0; r < kappa && ok; ++r) ok = load[static_cast<std::size_t>(r)] <= cap;
      if (!ok) continue;

      std::function<void(std::size_t)> choose = [&](std::size_t q) {
        if (++work > guards.dp_work) throw BudgetExceeded("DP transitions exceed " + std::to_string(guards.dp_work));
        if (q == entering.size()) {
          // Round labels renumbered by first appearance.
          std::vector<int> key(sap ? 2 * k : k), relabel(static_cast<std::size_t>(kappa), -1);
          int next = 0;
          for (std::size_t x = 0; x < k; ++x) {
            int& lab = relabel[static_cast<std::size_t>(round[x])];
            if (lab < 0) lab = next++;
            key[x] = lab;
            if (sap) key[k + x] = hidx[x];
          }
          auto [it, fresh] = seen.emplace(std::move(key), static_cast<int>(cur.states.size()));
          if (fresh) {
            cur.states.push_back(it->first);
            cur.parent.push_back(static_cast<int>(ps));
            if (static_cast<std::int64_t>(cur.states.size()) > guards.dp_states)
              throw BudgetExceeded("DP states per edge exceed " + std::to_string(guards.dp_states));
          }
          return;
        }
        const auto x = static_cast<std::size_t>(entering[q]);
        const Job& j = inst.jobs[static_cast<std::size_t>(act[x])];
        int fresh_label = -1;
        for (int r = 0; r < kappa; ++r)
          if (!used[static_cast<std::size_t>(r)]) {
            fresh_label = r;
            break;
          }
        for (int r = 0; r < kappa; ++r) {
          if (!used[static_cast<std::size_t>(r)] && r != fresh_label) continue;
          if (load[static_cast<std::size_t>(r)] + j.d > cap) continue;
          const bool was_used = used[static_cast<std::size_t>(r)];
          used[static_cast<std::size_t>(r)] = 1;
          load[static_cast<std::size_t>(r)] += j.d;
          round[x] = r;
          if (!sap) {
            hidx[x] = 0;
            choose(q + 1);
          } else {
            for (std::size_t hi = 0; hi < heights.size(); ++hi) {
              const Amount h = heights[hi];
              if (h < 0 || h + j.d > cap) continue;
              bool free = true;
              // Conflicts with continuing jobs and earlier entering jobs.
              for (std::size_t y = 0; y < k && free; ++y) {
                if (y == x || round[y] != r) continue;
                const bool placed = from_prev[y] >= 0 || std::find(entering.begin(), entering.begin() + static_cast<long>(q), static_cast<int>(y)) != entering.begin() + static_cast<long>(q);
                if (!placed) continue;
                const Amount hy = heights[static_cast<std::size_t>(hidx[y])];
                const Amount dy = inst.jobs[static_cast<std::size_t>(act[y])].d;
                free = h + j.d <= hy || hy + dy <= h;
              }
              if (!free) continue;
              hidx[x] = static_cast<int>(hi);
              choose(q + 1);
            }
          }
          load[static_cast<std::size_t>(r)] -= j.d;
          used[static_cast<std::size_t>(r)] = was_used;
        }
      };
      choose(0);
    }
    res.peak_states = std::max<std::int64_t>(res.peak_states, static_cast<std::int64_t>(cur.states.size()));
    if (cur.states.empty()) return res;
    layers[static_cast<std::size_t>(e)] = cur;
    prev = std::move(cur);
    prev_active = act;
  }

  res.feasible = true;
  res.packing.round_of.assign(n, -1);
  if (sap) res.packing.height_of.assign(n, -1);
  std::vector<int> pick(static_cast<std::size_t>(m));
  for (int e = m - 1, idx = 0; e >= 0; --e) {
    pick[static_cast<std::size_t>(e)] = idx;
    idx = layers[static_cast<std::size_t>(e)].parent[static_cast<std::size_t>(idx)];
  }
  // Labels are edge-local; map them to global rounds left to right.
  for (int e = 0; e < m; ++e) {
    const auto& st = layers[static_cast<std::size_t>(e)].states[static_cast<std::size_t>(pick[static_cast<std::size_t>(e)])];
    const auto& act = active[static_cast<std::size_t>(e)];
    std::vector<int> global(static_cast<std::size_t>(kappa), -1);
    std::vector<char> taken(static_cast<std::size_t>(kappa), 0);
    for (std::size_t x = 0; x < act.size(); ++x) {
      const int g = res.packing.round_of[static_cast<std::size_t>(act[x])];
      if (g < 0) continue;
      global[static_cast<std::size_t>(st[x])] = g;
      taken[static_cast<std::size_t>(g)] = 1;
    }
    for (std::size_t x = 0; x < act.size(); ++x) {
      int& g = global[static_cast<std::size_t>(st[x])];
      if (g < 0) {
        g = static_cast<int>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
        taken[static_cast<std::size_t>(g)] = 1;
      }
      res.packing.round_of[static_cast<std::size_t>(act[x])] = g;
      if (sap) res.packing.height_of[static_cast<std::size_t>(act[x])] = heights[static_cast<std::size_t>(st[act.size() + x])];
    }
  }
  res.packing.rounds = kappa;
  compact(res.packing);
  return res;
}

inline DpResult dp_round_ufp(const Instance& inst, int kappa, int omega, const Guards& guards = Guards::current()) {
  return dp_round(inst, Problem::Ufp, kappa, omega, {}, guards);
}

inline DpResult dp_round_sap(const Instance& inst, std::span<const Amount> heights, int kappa, int omega,
                             const Guards& guards = Guards::current()) {
  return dp_round(inst, Problem::Sap, kappa, omega, heights, guards);
}

// Smallest kappa for which the DP succeeds, searched upward from the
// congestion bound.
inline DpResult dp_min_rounds(const Instance& inst, Problem problem, int omega, std::span<const Amount> heights = {},
                              const Guards& guards = Guards::current()) {
  if (inst.jobs.empty()) return dp_round(inst, problem, 0, omega, heights, guards);
  for (int kappa = static_cast<int>(std::max<Amount>(1, congestion(inst))); kappa <= inst.n(); ++kappa) {
    DpResult r = dp_round(inst, problem, kappa, omega, heights, guards);
    if (r.feasible) return r;
  }
  return {};
}

inline std::vector<Amount> all_heights(Amount cstar) {
  std::vector<Amount> h(static_cast<std::size_t>(cstar) + 1);
  std::iota(h.begin(), h.end(), Amount{0});
  return h;
}

// ----------------------------------------------------------- full pipeline

struct UniformOptions {
  double eps = 0.5;
  int small_exponent = 7;   // all jobs small when d_max <= eps^7 L
  int large_exponent = 56;  // large jobs: d > eps^56 L
  DsaEngine engine = first_fit_engine();
  Guards guards = Guards::current();
};

struct UniformResult {
  SapPacking packing;  // height_of empty for UFP
  Amount xi = 0;
  std::string case_taken = "empty";
  Subcase subcase = Subcase::None;
  bool fallback = false;  // DP guard tripped, large jobs packed greedily
  int large_rounds = 0;
  int small_rounds = 0;
};

namespace detail {

// Greedy rounds: each job goes to the first round where it fits (SAP: at
// the lowest free height).
inline SapPacking first_fit_rounds(const Instance& inst, Problem problem) {
  const std::size_t n = inst.jobs.size();
  SapPacking p{std::vector<int>(n, -1), std::vector<Amount>(n, -1), 0};
  std::vector<std::vector<int>> members;
  for (std::size_t j = 0; j < n; ++j) {
    const Job& job = inst.jobs[j];
    const Amount b = bottleneck_of(inst, job);
    for (int r = 0;; ++r) {
      if (r == static_cast<int>(members.size())) members.emplace_back();
      auto& mem = members[static_cast<std::size_t>(r)];
      Amount h = 0;
      bool fits = true;
      if (problem == Problem::Ufp) {
        for (int e = job.s; e < job.t && fits; ++e) {
          Amount l = job.d;
          for (int q : mem)
            if (inst.jobs[static_cast<std::size_t>(q)].crosses(e)) l += inst.jobs[static_cast<std::size_t>(q)].d;
          fits = l <= inst.capacity(e);
        }
      } else {
        std::vector<std::pair<Amount, Amount>> busy;
        for (int q : mem)
          if (spans_overlap(job, inst.jobs[static_cast<std::size_t>(q)]))
            busy.emplace_back(p.height_of[static_cast<std::size_t>(q)], p.height_of[static_cast<std::size_t>(q)] + inst.jobs[static_cast<std::size_t>(q)].d);
        h = lowest_gap(std::move(busy), job.d);
        fits = h + job.d <= b;
      }
      if (!fits) continue;
      mem.push_back(static_cast<int>(j));
      p.round_of[j] = r;
      p.height_of[j] = h;
      break;
    }
  }
  p.rounds = static_cast<int>(members.size());
  if (problem == Problem::Ufp) p.height_of.clear();
  return p;
}

// Appends `part` (over the job subset `ids`) to `into` as new rounds.
inline void append_rounds(SapPacking& into, const SapPacking& part, std::span<const int> ids, bool heights) {
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto j = static_cast<std::size_t>(ids[k]);
    into.round_of[j] = into.rounds + part.round_of[k];
    if (heights) into.height_of[j] = part.height_of[k];
  }
  into.rounds += part.rounds;
}

}  // namespace detail

inline UniformResult solve_uniform(const Instance& inst, Problem problem, const UniformOptions& opt = {}) {
  const Amount cstar = require_uniform(inst);
  require_packable(inst);
  const bool sap = problem == Problem::Sap;
  UniformResult res;
  const std::size_t n = inst.jobs.size();
  res.packing = {std::vector<int>(n, -1), sap ? std::vector<Amount>(n, -1) : std::vector<Amount>{}, 0};
  if (n == 0) return res;
  const auto prof = compute_profile(inst);
  const auto L = static_cast<double>(prof.max_load);
  const auto dmax = static_cast<double>(inst.max_demand());

  auto run_small = [&](std::span<const int> ids) {
    const Instance sub = restrict_jobs(inst, ids);
    const UniformSmallResult us = uniform_small(sub, opt.engine);
    res.xi = us.xi;
    res.subcase = us.subcase;
    res.small_rounds = us.packing.rounds;
    detail::append_rounds(res.packing, us.packing, ids, sap);
  };

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (dmax <= std::pow(opt.eps, opt.small_exponent) * L) {
    res.case_taken = "small";
    run_small(all);
    return res;
  }
  res.case_taken = "split";
  const double thr = std::pow(opt.eps, opt.large_exponent) * L;
  std::vector<int> large, small;
  for (std::size_t j = 0; j < n; ++j) (static_cast<double>(inst.jobs[j].d) > thr ? large : small).push_back(static_cast<int>(j));

  const Instance big = restrict_jobs(inst, large);
  SapPacking big_pack;
  try {
    const int omega = max_jobs_per_edge(big);
    if (omega > opt.guards.dp_omega) throw OmegaExceeded("large-job density " + std::to_string(omega) + " above DP limit");
    std::vector<Amount> H;
    if (sap) {
      std::vector<Amount> ds;
      Amount dmin = cstar;
      for (const auto& j : big.jobs) ds.push_back(j.d), dmin = std::min(dmin, j.d);
      const int chain = static_cast<int>(std::min<Amount>(big.n(), cstar / dmin));
      H = candidate_heights(ds, cstar, chain, opt.guards.height_set);
      if (std::find(H.begin(), H.end(), Amount{0}) == H.end()) H.push_back(0);
    }
    const DpResult dp = dp_min_rounds(big, problem, omega, H, opt.guards);
    if (!dp.feasible) throw InternalBoundViolated("DP found no packing with n rounds");
    big_pack = dp.packing;
  } catch (const TooLarge&) {
    res.fallback = true;
  } catch (const OmegaExceeded&) {
    res.fallback = true;
  }
  if (res.fallback) big_pack = detail::first_fit_rounds(big, problem);
  res.large_rounds = big_pack.rounds;
  detail::append_rounds(res.packing, big_pack, large, sap);
  if (!small.empty()) run_small(small);
  return res;
}

}  // namespace roundpack
