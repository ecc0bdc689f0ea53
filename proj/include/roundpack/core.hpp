#pragma once

// Instance model, load statistics and packing verifiers shared by every
// solver. Vertices are 0..m, edge e (1-based) joins vertices e-1 and e, and a
// job occupies the half-open vertex span [s, t), i.e. edges s+1..t.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roundpack/error.hpp"

namespace roundpack {

using Amount = std::int64_t;

enum class Problem { Ufp, Sap };

inline const char* to_string(Problem p) { return p == Problem::Ufp ? "ufp" : "sap"; }

struct Job {
  int s = 0;
  int t = 0;
  Amount d = 1;

  int span() const { return t - s; }
  bool crosses(int edge_index0) const { return s <= edge_index0 && edge_index0 < t; }
  friend bool operator==(const Job&, const Job&) = default;
};

inline bool spans_overlap(const Job& a, const Job& b) { return a.s < b.t && b.s < a.t; }

struct Instance {
  int m = 1;
  std::vector<Amount> capacities{1};
  std::vector<Job> jobs;

  int n() const { return static_cast<int>(jobs.size()); }

  // 0-based edge index.
  Amount capacity(int edge_index0) const { return capacities[static_cast<std::size_t>(edge_index0)]; }

  Amount min_capacity() const { return *std::min_element(capacities.begin(), capacities.end()); }
  Amount max_capacity() const { return *std::max_element(capacities.begin(), capacities.end()); }

  Amount max_demand() const {
    Amount best = 0;
    for (const auto& j : jobs) best = std::max(best, j.d);
    return best;
  }

  bool uniform() const {
    return std::all_of(capacities.begin(), capacities.end(), [&](Amount c) { return c == capacities.front(); });
  }

  // No-bottleneck assumption: every demand fits under the smallest capacity.
  bool nba() const { return max_demand() <= min_capacity(); }

  // Throws PreconditionError describing the first broken invariant.
  void validate() const {
    if (m < 1) throw PreconditionError("instance needs at least one edge");
    if (capacities.size() != static_cast<std::size_t>(m))
      throw PreconditionError("capacity count " + std::to_string(capacities.size()) + " != m " + std::to_string(m));
    for (int e = 0; e < m; ++e)
      if (capacities[static_cast<std::size_t>(e)] < 1)
        throw PreconditionError("edge " + std::to_string(e + 1) + " has non-positive capacity");
    for (int j = 0; j < n(); ++j) {
      const Job& job = jobs[static_cast<std::size_t>(j)];
      if (job.s < 0 || job.s >= job.t || job.t > m)
        throw PreconditionError("job " + std::to_string(j) + " has invalid span [" + std::to_string(job.s) + "," +
                                std::to_string(job.t) + ")");
      if (job.d < 1) throw PreconditionError("job " + std::to_string(j) + " has non-positive demand");
    }
  }
};

inline Instance make_uniform_instance(int m, Amount capacity, std::vector<Job> jobs) {
  Instance inst{m, std::vector<Amount>(static_cast<std::size_t>(m), capacity), std::move(jobs)};
  inst.validate();
  return inst;
}

// Minimal exact fraction for advisory constants and augmentation factors.
struct Rational {
  Amount num = 0;
  Amount den = 1;

  static Rational of(Amount n, Amount d) {
    if (d < 0) n = -n, d = -d;
    const Amount g = std::gcd(n < 0 ? -n : n, d);
    return g == 0 ? Rational{0, 1} : Rational{n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

inline Amount ceil_div(Amount a, Amount b) { return a <= 0 ? -((-a) / b) : (a + b - 1) / b; }

// Per-edge loads and congestion plus per-job bottlenecks.
struct LoadProfile {
  std::vector<Amount> loads;       // l_e
  Amount max_load = 0;             // L
  std::vector<Amount> congestion;  // r_e = ceil(l_e / c_e)
  Amount max_congestion = 0;       // r
  std::vector<Amount> bottleneck;  // b_j
};

inline std::vector<Amount> edge_loads(int m, std::span<const Job> jobs) {
  std::vector<Amount> diff(static_cast<std::size_t>(m) + 1, 0);
  for (const auto& j : jobs) {
    diff[static_cast<std::size_t>(j.s)] += j.d;
    diff[static_cast<std::size_t>(j.t)] -= j.d;
  }
  std::vector<Amount> loads(static_cast<std::size_t>(m), 0);
  Amount run = 0;
  for (int e = 0; e < m; ++e) loads[static_cast<std::size_t>(e)] = run += diff[static_cast<std::size_t>(e)];
  return loads;
}

inline Amount bottleneck_of(const Instance& inst, const Job& j) {
  Amount b = std::numeric_limits<Amount>::max();
  for (int e = j.s; e < j.t; ++e) b = std::min(b, inst.capacity(e));
  return b;
}

// Every job must fit under its own bottleneck, otherwise no packing exists.
inline void require_packable(const Instance& inst) {
  for (int j = 0; j < inst.n(); ++j)
    if (inst.jobs[static_cast<std::size_t>(j)].d > bottleneck_of(inst, inst.jobs[static_cast<std::size_t>(j)]))
      throw PreconditionError("job " + std::to_string(j) + " exceeds its bottleneck capacity");
}

inline LoadProfile compute_profile(const Instance& inst) {
  LoadProfile p;
  p.loads = edge_loads(inst.m, inst.jobs);
  p.congestion.resize(p.loads.size());
  for (int e = 0; e < inst.m; ++e) {
    const auto i = static_cast<std::size_t>(e);
    p.congestion[i] = ceil_div(p.loads[i], inst.capacity(e));
    p.max_load = std::max(p.max_load, p.loads[i]);
    p.max_congestion = std::max(p.max_congestion, p.congestion[i]);
  }
  p.bottleneck.reserve(inst.jobs.size());
  for (const auto& j : inst.jobs) p.bottleneck.push_back(bottleneck_of(inst, j));
  return p;
}

inline Amount congestion(const Instance& inst) { return compute_profile(inst).max_congestion; }

struct UfpPacking {
  std::vector<int> round_of;  // -1 marks an unassigned job
  int rounds = 0;
};

struct SapPacking {
  std::vector<int> round_of;
  std::vector<Amount> height_of;  // -1 marks an unassigned job
  int rounds = 0;

  UfpPacking as_ufp() const { return {round_of, rounds}; }
};

struct Violation {
  enum class Kind { Overload, ExceedsProfile, Overlap };
  Kind kind = Kind::Overload;
  int round = -1;
  int edge = -1;  // 1-based edge index, -1 when not applicable
  Amount overload = 0;
  int job = -1;
  int other_job = -1;

  std::string describe() const {
    switch (kind) {
      case Kind::Overload:
        return "round " + std::to_string(round) + " edge " + std::to_string(edge) + " overloaded by " +
               std::to_string(overload);
      case Kind::ExceedsProfile:
        return "job " + std::to_string(job) + " exceeds capacity profile at edge " + std::to_string(edge);
      case Kind::Overlap:
        return "round " + std::to_string(round) + " jobs " + std::to_string(job) + " and " +
               std::to_string(other_job) + " overlap";
    }
    return "violation";
  }
};

// std::nullopt means the packing is valid.
using Verdict = std::optional<Violation>;

namespace detail {

// Throws UnassignedJob for the first job without a valid round.
inline void check_assigned(std::span<const int> round_of, int n, int rounds) {
  for (int j = 0; j < n; ++j) {
    const int r = j < static_cast<int>(round_of.size()) ? round_of[static_cast<std::size_t>(j)] : -1;
    if (r < 0 || r >= rounds) throw UnassignedJob(j);
  }
}

}  // namespace detail

// Per-round per-edge loads against an arbitrary capacity vector. Reports the
// lexicographically first (round, edge) overload.
inline Verdict verify_ufp_against(const Instance& inst, std::span<const Amount> caps, const UfpPacking& p) {
  detail::check_assigned(p.round_of, inst.n(), p.rounds);
  std::vector<std::vector<Job>> by_round(static_cast<std::size_t>(p.rounds));
  for (int j = 0; j < inst.n(); ++j)
    by_round[static_cast<std::size_t>(p.round_of[static_cast<std::size_t>(j)])].push_back(inst.jobs[static_cast<std::size_t>(j)]);
  for (int r = 0; r < p.rounds; ++r) {
    const auto loads = edge_loads(inst.m, by_round[static_cast<std::size_t>(r)]);
    for (int e = 0; e < inst.m; ++e) {
      const Amount over = loads[static_cast<std::size_t>(e)] - caps[static_cast<std::size_t>(e)];
      if (over > 0) return Violation{Violation::Kind::Overload, r, e + 1, over};
    }
  }
  return std::nullopt;
}

inline Verdict verify_ufp(const Instance& inst, const UfpPacking& p) { return verify_ufp_against(inst, inst.capacities, p); }

inline bool rectangles_overlap(const Job& a, Amount ha, const Job& b, Amount hb) {
  return spans_overlap(a, b) && ha < hb + b.d && hb < ha + a.d;
}

inline Verdict verify_sap_against(const Instance& inst, std::span<const Amount> caps, const SapPacking& p) {
  detail::check_assigned(p.round_of, inst.n(), p.rounds);
  if (static_cast<int>(p.height_of.size()) < inst.n()) throw UnassignedJob(static_cast<int>(p.height_of.size()));
  for (int j = 0; j < inst.n(); ++j) {
    const Job& job = inst.jobs[static_cast<std::size_t>(j)];
    const Amount h = p.height_of[static_cast<std::size_t>(j)];
    if (h < 0) throw UnassignedJob(j);
    for (int e = job.s; e < job.t; ++e)
      if (h + job.d > caps[static_cast<std::size_t>(e)])
        return Violation{Violation::Kind::ExceedsProfile, p.round_of[static_cast<std::size_t>(j)], e + 1,
                         h + job.d - caps[static_cast<std::size_t>(e)], j};
  }
  std::vector<std::vector<int>> by_round(static_cast<std::size_t>(p.rounds));
  for (int j = 0; j < inst.n(); ++j) by_round[static_cast<std::size_t>(p.round_of[static_cast<std::size_t>(j)])].push_back(j);
  for (int r = 0; r < p.rounds; ++r) {
    auto ids = by_round[static_cast<std::size_t>(r)];
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      return std::pair(inst.jobs[static_cast<std::size_t>(a)].s, a) < std::pair(inst.jobs[static_cast<std::size_t>(b)].s, b);
    });
    for (std::size_t x = 0; x < ids.size(); ++x) {
      const Job& a = inst.jobs[static_cast<std::size_t>(ids[x])];
      for (std::size_t y = x + 1; y < ids.size(); ++y) {
        const Job& b = inst.jobs[static_cast<std::size_t>(ids[y])];
        if (b.s >= a.t) break;
        if (rectangles_overlap(a, p.height_of[static_cast<std::size_t>(ids[x])], b, p.height_of[static_cast<std::size_t>(ids[y])]))
          return Violation{Violation::Kind::Overlap, r, -1, 0, std::min(ids[x], ids[y]), std::max(ids[x], ids[y])};
      }
    }
  }
  return std::nullopt;
}

inline Verdict verify_sap(const Instance& inst, const SapPacking& p) { return verify_sap_against(inst, inst.capacities, p); }

// Result of contracting an instance to the vertices that are job endpoints.
struct CanonicalInstance {
  Instance instance;
  std::vector<int> original_vertex;  // canonical vertex -> original vertex
};

// Keeps one edge per gap between consecutive job endpoints, carrying the
// minimum capacity of the block it replaces. With no jobs the result is the
// one-edge path carrying min c_e. Job order and ids are preserved, so any
// packing of the result is a packing of the input and vice versa.
inline CanonicalInstance canonicalize(const Instance& inst) {
  CanonicalInstance out;
  if (inst.jobs.empty()) {
    out.instance = Instance{1, {inst.min_capacity()}, {}};
    out.original_vertex = {0, inst.m};
    return out;
  }
  std::vector<int> pts;
  pts.reserve(inst.jobs.size() * 2);
  for (const auto& j : inst.jobs) {
    pts.push_back(j.s);
    pts.push_back(j.t);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int m = static_cast<int>(pts.size()) - 1;
  out.instance.m = m;
  out.instance.capacities.assign(static_cast<std::size_t>(m), 0);
  for (int e = 0; e < m; ++e) {
    Amount c = std::numeric_limits<Amount>::max();
    for (int x = pts[static_cast<std::size_t>(e)]; x < pts[static_cast<std::size_t>(e) + 1]; ++x) c = std::min(c, inst.capacity(x));
    out.instance.capacities[static_cast<std::size_t>(e)] = c;
  }
  auto index_of = [&](int v) { return static_cast<int>(std::lower_bound(pts.begin(), pts.end(), v) - pts.begin()); };
  out.instance.jobs.reserve(inst.jobs.size());
  for (const auto& j : inst.jobs) out.instance.jobs.push_back({index_of(j.s), index_of(j.t), j.d});
  out.original_vertex = std::move(pts);
  return out;
}

// Subset of jobs on the same path; result job k is input job ids[k].
inline Instance restrict_jobs(const Instance& inst, std::span<const int> ids) {
  Instance sub{inst.m, inst.capacities, {}};
  sub.jobs.reserve(ids.size());
  for (int id : ids) sub.jobs.push_back(inst.jobs[static_cast<std::size_t>(id)]);
  return sub;
}

inline Instance with_capacities(const Instance& inst, std::vector<Amount> caps) {
  return Instance{inst.m, std::move(caps), inst.jobs};
}

// Renumbers rounds so that only non-empty rounds remain, keeping their order.
inline void compact_rounds(std::vector<int>& round_of, int& rounds) {
  std::vector<int> remap(static_cast<std::size_t>(std::max(rounds, 0)), -1);
  for (int r : round_of)
    if (r >= 0) remap[static_cast<std::size_t>(r)] = 0;
  int next = 0;
  for (auto& x : remap)
    if (x == 0) x = next++;
  for (auto& r : round_of)
    if (r >= 0) r = remap[static_cast<std::size_t>(r)];
  rounds = next;
}

inline void compact(UfpPacking& p) { compact_rounds(p.round_of, p.rounds); }
inline void compact(SapPacking& p) { compact_rounds(p.round_of, p.rounds); }

// Greedy interval colouring: assigns each job (in the given order) the lowest
// colour not used by an already-coloured job with an overlapping span.
inline std::vector<int> first_fit_interval_coloring(std::span<const Job> jobs, std::span<const int> order, int* colors_used = nullptr) {
  std::vector<int> color(jobs.size(), -1);
  int used = 0;
  for (int id : order) {
    std::vector<char> taken(static_cast<std::size_t>(used) + 1, 0);
    for (std::size_t k = 0; k < jobs.size(); ++k)
      if (color[k] >= 0 && spans_overlap(jobs[k], jobs[static_cast<std::size_t>(id)])) taken[static_cast<std::size_t>(color[k])] = 1;
    int c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    color[static_cast<std::size_t>(id)] = c;
    used = std::max(used, c + 1);
  }
  if (colors_used) *colors_used = used;
  return color;
}

}  // namespace roundpack
