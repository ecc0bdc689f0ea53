#pragma once

// Round-UFP on trees rooted at vertex 0. Edge (v, parent[v]) is identified
// with its child vertex v; cap[v] is its capacity.
//
// Text format: N / N-1 lines "parent cap" for vertices 1..N-1 / n / n lines
// "u v d". '#' comments allowed.

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

#include "roundpack/core.hpp"
#include "roundpack/io.hpp"
#include "roundpack/random.hpp"
#include "roundpack/unitpack.hpp"

namespace roundpack {

struct TreeJob {
  int u = 0;
  int v = 0;
  Amount d = 1;
};

struct TreeInstance {
  int N = 1;
  std::vector<int> parent{-1};
  std::vector<Amount> cap{0};  // cap[0] unused
  std::vector<TreeJob> jobs;

  int n() const { return static_cast<int>(jobs.size()); }

  void validate() const {
    if (N < 1 || parent.size() != static_cast<std::size_t>(N) || cap.size() != static_cast<std::size_t>(N))
      throw PreconditionError("tree arrays must have N entries");
    for (int v = 1; v < N; ++v) {
      if (parent[static_cast<std::size_t>(v)] < 0 || parent[static_cast<std::size_t>(v)] >= N || parent[static_cast<std::size_t>(v)] == v)
        throw PreconditionError("vertex " + std::to_string(v) + " has an invalid parent");
      if (cap[static_cast<std::size_t>(v)] < 1) throw PreconditionError("edge above vertex " + std::to_string(v) + " has non-positive capacity");
    }
    // Every vertex must reach the root.
    for (int v = 1; v < N; ++v) {
      int x = v, steps = 0;
      while (x != 0 && steps++ <= N) x = parent[static_cast<std::size_t>(x)];
      if (x != 0) throw PreconditionError("parent array contains a cycle");
    }
    for (int j = 0; j < n(); ++j) {
      const auto& job = jobs[static_cast<std::size_t>(j)];
      if (job.u < 0 || job.u >= N || job.v < 0 || job.v >= N || job.u == job.v)
        throw PreconditionError("tree job " + std::to_string(j) + " has invalid endpoints");
      if (job.d < 1) throw PreconditionError("tree job " + std::to_string(j) + " has non-positive demand");
    }
  }

  Amount min_capacity() const { return N > 1 ? *std::min_element(cap.begin() + 1, cap.end()) : 1; }
  bool uniform() const { return N <= 2 || std::all_of(cap.begin() + 1, cap.end(), [&](Amount c) { return c == cap[1]; }); }
};

// Depths and binary-lifting ancestor tables.
class RootedTree {
 public:
  explicit RootedTree(const TreeInstance& t) : parent_(t.parent), depth_(static_cast<std::size_t>(t.N), -1) {
    const int N = t.N;
    for (int v = 0; v < N; ++v) depth_of(v);
    int lg = 1;
    while ((1 << lg) < N) ++lg;
    up_.assign(static_cast<std::size_t>(lg), std::vector<int>(static_cast<std::size_t>(N), 0));
    for (int v = 0; v < N; ++v) up_[0][static_cast<std::size_t>(v)] = v == 0 ? 0 : parent_[static_cast<std::size_t>(v)];
    for (std::size_t k = 1; k < up_.size(); ++k)
      for (std::size_t v = 0; v < static_cast<std::size_t>(N); ++v) up_[k][v] = up_[k - 1][static_cast<std::size_t>(up_[k - 1][v])];
  }

  int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }

  int lca(int a, int b) const {
    if (depth(a) < depth(b)) std::swap(a, b);
    for (std::size_t k = up_.size(); k-- > 0;)
      if (depth(a) - (1 << k) >= depth(b)) a = up_[k][static_cast<std::size_t>(a)];
    if (a == b) return a;
    for (std::size_t k = up_.size(); k-- > 0;)
      if (up_[k][static_cast<std::size_t>(a)] != up_[k][static_cast<std::size_t>(b)]) {
        a = up_[k][static_cast<std::size_t>(a)];
        b = up_[k][static_cast<std::size_t>(b)];
      }
    return parent(a);
  }

  // Edges (child vertices) from v up to ancestor `top`, bottom first.
  std::vector<int> climb(int v, int top) const {
    std::vector<int> out;
    while (v != top) {
      out.push_back(v);
      v = parent(v);
    }
    return out;
  }

  std::vector<int> path_edges(int a, int b) const {
    const int w = lca(a, b);
    auto p = climb(a, w);
    auto q = climb(b, w);
    p.insert(p.end(), q.begin(), q.end());
    return p;
  }

 private:
  int depth_of(int v) {
    if (depth_[static_cast<std::size_t>(v)] >= 0) return depth_[static_cast<std::size_t>(v)];
    std::vector<int> chain;
    int x = v;
    while (x != 0 && depth_[static_cast<std::size_t>(x)] < 0) {
      chain.push_back(x);
      x = parent_[static_cast<std::size_t>(x)];
    }
    int d = x == 0 ? 0 : depth_[static_cast<std::size_t>(x)];
    depth_[0] = 0;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth_[static_cast<std::size_t>(*it)] = ++d;
    return depth_[static_cast<std::size_t>(v)];
  }

  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> up_;
};

inline TreeInstance read_tree(std::istream& in) {
  TokenReader tr(in);
  TreeInstance t;
  t.N = tr.number<int>("vertex count");
  if (t.N < 1) throw ParseError("vertex count must be positive");
  t.parent.assign(static_cast<std::size_t>(t.N), -1);
  t.cap.assign(static_cast<std::size_t>(t.N), 0);
  for (int v = 1; v < t.N; ++v) {
    t.parent[static_cast<std::size_t>(v)] = tr.number<int>("parent");
    t.cap[static_cast<std::size_t>(v)] = tr.number<Amount>("capacity");
  }
  const int n = tr.number<int>("job count");
  if (n < 0) throw ParseError("job count must be non-negative");
  for (int k = 0; k < n; ++k) {
    TreeJob j;
    j.u = tr.number<int>("u");
    j.v = tr.number<int>("v");
    j.d = tr.number<Amount>("d");
    t.jobs.push_back(j);
  }
  if (!tr.done()) throw ParseError("trailing tokens after tree instance");
  try {
    t.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  return t;
}

inline void write_tree(std::ostream& out, const TreeInstance& t) {
  out << t.N << '\n';
  for (int v = 1; v < t.N; ++v) out << t.parent[static_cast<std::size_t>(v)] << ' ' << t.cap[static_cast<std::size_t>(v)] << '\n';
  out << t.n() << '\n';
  for (const auto& j : t.jobs) out << j.u << ' ' << j.v << ' ' << j.d << '\n';
}

struct TreeSpec {
  int N = 12;
  int n = 20;
  Amount cmin = 4;
  Amount cmax = 20;
  bool uniform = false;
  Amount dmax = 4;
  bool small = false;  // enforce 5 d <= bottleneck
  bool nba = false;
};

inline TreeInstance random_tree(const TreeSpec& spec, Rng& rng) {
  TreeInstance t;
  t.N = spec.N;
  t.parent.assign(static_cast<std::size_t>(t.N), -1);
  t.cap.assign(static_cast<std::size_t>(t.N), 0);
  const Amount shared = rng.range(spec.cmin, spec.cmax);
  for (int v = 1; v < t.N; ++v) {
    t.parent[static_cast<std::size_t>(v)] = rng.range(0, v - 1);
    t.cap[static_cast<std::size_t>(v)] = spec.uniform ? shared : rng.range(spec.cmin, spec.cmax);
  }
  if (t.N < 2) return t;
  const RootedTree rt(t);
  const Amount cmin = t.min_capacity();
  for (int k = 0; k < spec.n; ++k) {
    TreeJob j;
    j.u = rng.range(0, t.N - 1);
    do j.v = rng.range(0, t.N - 1);
    while (j.v == j.u);
    Amount b = std::numeric_limits<Amount>::max();
    for (int e : rt.path_edges(j.u, j.v)) b = std::min(b, t.cap[static_cast<std::size_t>(e)]);
    Amount hi = std::min(spec.dmax, b);
    if (spec.small) hi = std::min(hi, b / 5);
    if (spec.nba) hi = std::min(hi, cmin);
    if (hi < 1) continue;
    j.d = rng.range(Amount{1}, hi);
    t.jobs.push_back(j);
  }
  return t;
}

struct TreeProfile {
  std::vector<Amount> loads;  // by child vertex
  Amount r = 0;
  std::vector<Amount> bottleneck;
};

inline TreeProfile tree_profile(const TreeInstance& t, const RootedTree& rt, std::span<const int> ids) {
  TreeProfile p;
  p.loads.assign(static_cast<std::size_t>(t.N), 0);
  p.bottleneck.assign(t.jobs.size(), 0);
  for (int id : ids) {
    const auto& j = t.jobs[static_cast<std::size_t>(id)];
    Amount b = std::numeric_limits<Amount>::max();
    for (int e : rt.path_edges(j.u, j.v)) {
      p.loads[static_cast<std::size_t>(e)] += j.d;
      b = std::min(b, t.cap[static_cast<std::size_t>(e)]);
    }
    p.bottleneck[static_cast<std::size_t>(id)] = b;
  }
  for (int v = 1; v < t.N; ++v) p.r = std::max(p.r, ceil_div(p.loads[static_cast<std::size_t>(v)], t.cap[static_cast<std::size_t>(v)]));
  return p;
}

inline std::vector<int> all_ids(int n) {
  std::vector<int> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

inline TreeProfile tree_profile(const TreeInstance& t) { return tree_profile(t, RootedTree(t), all_ids(t.n())); }

inline Verdict verify_tree_ufp(const TreeInstance& t, const UfpPacking& p) {
  detail::check_assigned(p.round_of, t.n(), p.rounds);
  const RootedTree rt(t);
  std::vector<std::vector<Amount>> load(static_cast<std::size_t>(p.rounds), std::vector<Amount>(static_cast<std::size_t>(t.N), 0));
  for (int j = 0; j < t.n(); ++j)
    for (int e : rt.path_edges(t.jobs[static_cast<std::size_t>(j)].u, t.jobs[static_cast<std::size_t>(j)].v))
      load[static_cast<std::size_t>(p.round_of[static_cast<std::size_t>(j)])][static_cast<std::size_t>(e)] += t.jobs[static_cast<std::size_t>(j)].d;
  for (int r = 0; r < p.rounds; ++r)
    for (int v = 1; v < t.N; ++v) {
      const Amount over = load[static_cast<std::size_t>(r)][static_cast<std::size_t>(v)] - t.cap[static_cast<std::size_t>(v)];
      if (over > 0) return Violation{Violation::Kind::Overload, r, v, over};
    }
  return std::nullopt;
}

namespace detail {

// Per-round per-edge loads with incremental placement.
class TreeRounds {
 public:
  TreeRounds(const TreeInstance& t, const RootedTree& rt) : t_(t), rt_(rt) {}

  int count() const { return static_cast<int>(load_.size()); }
  int open() {
    load_.emplace_back(static_cast<std::size_t>(t_.N), 0);
    return count() - 1;
  }
  Amount load(int r, int e) const { return load_[static_cast<std::size_t>(r)][static_cast<std::size_t>(e)]; }

  bool fits(int r, const std::vector<int>& path, Amount d) const {
    for (int e : path)
      if (load(r, e) + d > t_.cap[static_cast<std::size_t>(e)]) return false;
    return true;
  }
  void add(int r, const std::vector<int>& path, Amount d) {
    for (int e : path) load_[static_cast<std::size_t>(r)][static_cast<std::size_t>(e)] += d;
  }

 private:
  const TreeInstance& t_;
  const RootedTree& rt_;
  std::vector<std::vector<Amount>> load_;
};

inline std::vector<int> lca_order(const TreeInstance& t, const RootedTree& rt, std::vector<int> ids) {
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    const auto& x = t.jobs[static_cast<std::size_t>(a)];
    const auto& y = t.jobs[static_cast<std::size_t>(b)];
    const int da = rt.depth(rt.lca(x.u, x.v)), db = rt.depth(rt.lca(y.u, y.v));
    return da != db ? da < db : a < b;
  });
  return ids;
}

// Top edge on each side of the LCA (-1 when that side is empty).
inline std::pair<int, int> top_edges(const RootedTree& rt, const TreeJob& j) {
  const int w = rt.lca(j.u, j.v);
  const auto a = rt.climb(j.u, w);
  const auto b = rt.climb(j.v, w);
  return {a.empty() ? -1 : a.back(), b.empty() ? -1 : b.back()};
}

}  // namespace detail

struct TreeUniformResult {
  UfpPacking packing;
  Amount r = 0;
  int small_rounds = 0;
  int large_rounds = 0;
};

// Small jobs (2d <= c*) by first-fit in LCA-depth order; large jobs by
// greedy conflict colouring.
inline TreeUniformResult tree_uniform_ff(const TreeInstance& t) {
  t.validate();
  if (!t.uniform()) throw NonUniformTree();
  TreeUniformResult res;
  res.packing = {std::vector<int>(t.jobs.size(), -1), 0};
  if (t.jobs.empty()) return res;
  const Amount cstar = t.cap[1];
  const RootedTree rt(t);
  const TreeProfile prof = tree_profile(t, rt, all_ids(t.n()));
  res.r = prof.r;
  Amount L = 0;
  for (Amount l : prof.loads) L = std::max(L, l);
  std::vector<int> small, large;
  for (int j = 0; j < t.n(); ++j) {
    if (t.jobs[static_cast<std::size_t>(j)].d > prof.bottleneck[static_cast<std::size_t>(j)]) throw PreconditionError("tree job exceeds its bottleneck");
    (2 * t.jobs[static_cast<std::size_t>(j)].d > cstar ? large : small).push_back(j);
  }

  detail::TreeRounds rounds(t, rt);
  for (int id : detail::lca_order(t, rt, small)) {
    const auto& j = t.jobs[static_cast<std::size_t>(id)];
    const auto path = rt.path_edges(j.u, j.v);
    int where = -1;
    for (int r = 0; r < rounds.count() && where < 0; ++r)
      if (rounds.fits(r, path, j.d)) where = r;
    if (where < 0) {
      // Every existing round is more than half full on a top edge.
      const auto [e1, e2] = detail::top_edges(rt, j);
      for (int r = 0; r < rounds.count(); ++r) {
        const bool heavy = (e1 >= 0 && 2 * rounds.load(r, e1) > cstar) || (e2 >= 0 && 2 * rounds.load(r, e2) > cstar);
        if (!heavy) throw InternalBoundViolated("first-fit witness missing in round " + std::to_string(r));
      }
      where = rounds.open();
      if (cstar * (rounds.count() - 1) >= 4 * L) throw InternalBoundViolated("small-job rounds exceed first-fit bound");
    }
    rounds.add(where, path, j.d);
    res.packing.round_of[static_cast<std::size_t>(id)] = where;
  }
  res.small_rounds = rounds.count();
  if (res.small_rounds > 4 * res.r) throw InternalBoundViolated("small-job rounds exceed 4r");

  // Large jobs pairwise conflict when their paths share an edge.
  std::vector<std::vector<int>> color_edges;
  for (int id : detail::lca_order(t, rt, large)) {
    const auto& j = t.jobs[static_cast<std::size_t>(id)];
    const auto path = rt.path_edges(j.u, j.v);
    std::size_t c = 0;
    for (;; ++c) {
      if (c == color_edges.size()) color_edges.emplace_back(static_cast<std::size_t>(t.N), 0);
      bool free = true;
      for (int e : path) free = free && !color_edges[c][static_cast<std::size_t>(e)];
      if (free) break;
    }
    for (int e : path) color_edges[c][static_cast<std::size_t>(e)] = 1;
    res.packing.round_of[static_cast<std::size_t>(id)] = res.small_rounds + static_cast<int>(c);
  }
  res.large_rounds = static_cast<int>(color_edges.size());
  res.packing.rounds = res.small_rounds + res.large_rounds;
  return res;
}

// ------------------------------------------------- critical-edge greedy

// Class k with (5/2)^k <= c < (5/2)^(k+1), i.e. 2^k c >= 5^k.
inline int edge_class(Amount c) {
  int k = 0;
  // Compare 5^(k+1) <= 2^(k+1) c in long double to avoid overflow.
  long double p5 = 5.0L, p2 = 2.0L;
  while (p5 <= p2 * static_cast<long double>(c)) {
    ++k;
    p5 *= 5.0L;
    p2 *= 2.0L;
  }
  return k;
}

// First edge of minimum class along a bottom-up edge list.
inline int critical_edge(const TreeInstance& t, const std::vector<int>& edges) {
  int best = -1, best_cls = 0;
  for (int e : edges) {
    const int cls = edge_class(t.cap[static_cast<std::size_t>(e)]);
    if (best < 0 || cls < best_cls) best = e, best_cls = cls;
  }
  return best;
}

struct CritGreedyResult {
  UfpPacking packing;
  Amount r = 0;
  int budget = 0;
  int spilled = 0;  // rounds opened beyond the budget
};

// Jobs in LCA-depth order go to the first of 18r rounds where both critical
// edges carry at most c/9 and the whole path still has room. With
// `allow_spill` a job that fits nowhere opens an extra round instead of
// raising NoRoundFound.
inline CritGreedyResult tree_crit_greedy(const TreeInstance& t, std::span<const int> ids, bool allow_spill = false) {
  t.validate();
  const RootedTree rt(t);
  const TreeProfile prof = tree_profile(t, rt, ids);
  CritGreedyResult res;
  res.packing = {std::vector<int>(t.jobs.size(), -1), 0};
  res.r = prof.r;
  res.budget = static_cast<int>(18 * prof.r);
  for (int id : ids)
    if (5 * t.jobs[static_cast<std::size_t>(id)].d > prof.bottleneck[static_cast<std::size_t>(id)])
      throw PreconditionError("job " + std::to_string(id) + " is not small (5d > b)");
  detail::TreeRounds rounds(t, rt);
  for (int k = 0; k < res.budget; ++k) rounds.open();
  for (int id : detail::lca_order(t, rt, std::vector<int>(ids.begin(), ids.end()))) {
    const auto& j = t.jobs[static_cast<std::size_t>(id)];
    const int w = rt.lca(j.u, j.v);
    const int e1 = critical_edge(t, rt.climb(j.u, w));
    const int e2 = critical_edge(t, rt.climb(j.v, w));
    const auto path = rt.path_edges(j.u, j.v);
    auto light = [&](int r, int e) { return e < 0 || 9 * rounds.load(r, e) <= t.cap[static_cast<std::size_t>(e)]; };
    int where = -1;
    for (int r = 0; r < rounds.count() && where < 0; ++r)
      if (light(r, e1) && light(r, e2) && rounds.fits(r, path, j.d)) where = r;
    if (where < 0) {
      if (!allow_spill) throw NoRoundFound("no admissible round for job " + std::to_string(id));
      where = rounds.open();
      ++res.spilled;
    }
    rounds.add(where, path, j.d);
    res.packing.round_of[static_cast<std::size_t>(id)] = where;
  }
  res.packing.rounds = rounds.count();
  compact(res.packing);
  return res;
}

// --------------------------------------------------- scaling reduction

struct ScaledTree {
  TreeInstance unit;        // demands 1, capacities floor(eta2 c / c_min)
  std::vector<int> ids;     // unit job k is original job ids[k]
  Amount r_window = 0;      // congestion of the window jobs before scaling
  Amount r_scaled = 0;
};

// Jobs with c_min/eta1 < d <= c_min/eta2 become unit jobs of size c_min/eta2.
inline ScaledTree tree_scale_reduce(const TreeInstance& t, std::span<const int> ids, Amount eta1, Amount eta2) {
  if (!(eta1 > eta2 && eta2 >= 1)) throw PreconditionError("need eta1 > eta2 >= 1");
  const Amount cmin = t.min_capacity();
  for (int id : ids) {
    const Amount d = t.jobs[static_cast<std::size_t>(id)].d;
    if (!(eta1 * d > cmin && eta2 * d <= cmin)) throw WindowViolated("job " + std::to_string(id) + " outside the demand window");
  }
  ScaledTree out;
  out.ids.assign(ids.begin(), ids.end());
  out.unit.N = t.N;
  out.unit.parent = t.parent;
  out.unit.cap.assign(static_cast<std::size_t>(t.N), 0);
  for (int v = 1; v < t.N; ++v) out.unit.cap[static_cast<std::size_t>(v)] = eta2 * t.cap[static_cast<std::size_t>(v)] / cmin;
  for (int id : ids) out.unit.jobs.push_back({t.jobs[static_cast<std::size_t>(id)].u, t.jobs[static_cast<std::size_t>(id)].v, 1});
  const RootedTree rt(t);
  out.r_window = tree_profile(t, rt, ids).r;
  out.r_scaled = tree_profile(out.unit).r;
  // r' < eta1 (eta2 + 1) / eta2^2 * r + 1
  if (!(out.r_scaled * eta2 * eta2 < eta1 * (eta2 + 1) * out.r_window + eta2 * eta2))
    throw InternalBoundViolated("scaled congestion above its bound");
  return out;
}

// True when every vertex has degree at most 2.
inline bool path_shaped(const TreeInstance& t) {
  std::vector<int> deg(static_cast<std::size_t>(t.N), 0);
  for (int v = 1; v < t.N; ++v) {
    ++deg[static_cast<std::size_t>(v)];
    ++deg[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(v)])];
  }
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d <= 2; });
}

// Unit demands: exact r rounds on path-shaped trees, first-fit by LCA depth
// otherwise.
inline UfpPacking tree_unit_pack_greedy(const TreeInstance& t) {
  t.validate();
  for (const auto& j : t.jobs)
    if (j.d != 1) throw NonUnitDemand();
  UfpPacking out{std::vector<int>(t.jobs.size(), -1), 0};
  if (t.jobs.empty()) return out;
  if (t.N >= 2 && path_shaped(t)) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.N));
    for (int v = 1; v < t.N; ++v) {
      adj[static_cast<std::size_t>(v)].push_back(t.parent[static_cast<std::size_t>(v)]);
      adj[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(v)])].push_back(v);
    }
    int start = 0;
    while (adj[static_cast<std::size_t>(start)].size() > 1) ++start;
    std::vector<int> pos(static_cast<std::size_t>(t.N), -1);
    Instance path;
    path.m = t.N - 1;
    path.capacities.clear();
    for (int v = start, prev = -1, k = 0;; ++k) {
      pos[static_cast<std::size_t>(v)] = k;
      int next = -1;
      for (int w : adj[static_cast<std::size_t>(v)])
        if (w != prev) next = w;
      if (next < 0) break;
      const int child = t.parent[static_cast<std::size_t>(next)] == v ? next : v;
      path.capacities.push_back(t.cap[static_cast<std::size_t>(child)]);
      prev = v;
      v = next;
    }
    for (const auto& j : t.jobs) {
      const int a = pos[static_cast<std::size_t>(j.u)], b = pos[static_cast<std::size_t>(j.v)];
      path.jobs.push_back({std::min(a, b), std::max(a, b), 1});
    }
    return pack_unit(path);
  }
  const RootedTree rt(t);
  detail::TreeRounds rounds(t, rt);
  for (int id : detail::lca_order(t, rt, all_ids(t.n()))) {
    const auto& j = t.jobs[static_cast<std::size_t>(id)];
    const auto path = rt.path_edges(j.u, j.v);
    int where = -1;
    for (int r = 0; r < rounds.count() && where < 0; ++r)
      if (rounds.fits(r, path, 1)) where = r;
    if (where < 0) where = rounds.open();
    rounds.add(where, path, 1);
    out.round_of[static_cast<std::size_t>(id)] = where;
  }
  out.rounds = rounds.count();
  return out;
}

struct TreeSolveResult {
  UfpPacking packing;
  Amount r = 0;
  bool uniform = false;
  int medium_rounds = 0;  // c_min/5 < d <= c_min/2
  int big_rounds = 0;     // d > c_min/2
  int small_rounds = 0;
  int spilled = 0;
};

inline TreeSolveResult solve_tree(const TreeInstance& t) {
  t.validate();
  TreeSolveResult res;
  res.packing = {std::vector<int>(t.jobs.size(), -1), 0};
  res.r = tree_profile(t).r;
  if (t.jobs.empty()) return res;
  if (t.uniform()) {
    const TreeUniformResult u = tree_uniform_ff(t);
    res.uniform = true;
    res.packing = u.packing;
    res.small_rounds = u.small_rounds;
    res.big_rounds = u.large_rounds;
    return res;
  }
  const Amount cmin = t.min_capacity();
  for (const auto& j : t.jobs)
    if (j.d > cmin) throw NbaViolated();
  const RootedTree rt(t);
  const TreeProfile prof = tree_profile(t, rt, all_ids(t.n()));
  std::vector<int> medium, big, small;
  for (int j = 0; j < t.n(); ++j) {
    const Amount d = t.jobs[static_cast<std::size_t>(j)].d;
    if (5 * d <= prof.bottleneck[static_cast<std::size_t>(j)]) small.push_back(j);
    else if (2 * d <= cmin) medium.push_back(j);
    else big.push_back(j);
  }
  auto absorb = [&](const UfpPacking& p, std::span<const int> ids, bool local) {
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const auto j = static_cast<std::size_t>(ids[k]);
      res.packing.round_of[j] = res.packing.rounds + (local ? p.round_of[k] : p.round_of[j]);
    }
    res.packing.rounds += p.rounds;
  };
  if (!medium.empty()) {
    const ScaledTree st = tree_scale_reduce(t, medium, 5, 2);
    const UfpPacking p = tree_unit_pack_greedy(st.unit);
    res.medium_rounds = p.rounds;
    absorb(p, medium, true);
  }
  if (!big.empty()) {
    const ScaledTree st = tree_scale_reduce(t, big, 2, 1);
    const UfpPacking p = tree_unit_pack_greedy(st.unit);
    res.big_rounds = p.rounds;
    absorb(p, big, true);
  }
  if (!small.empty()) {
    const CritGreedyResult cg = tree_crit_greedy(t, small, true);
    res.small_rounds = cg.packing.rounds;
    res.spilled = cg.spilled;
    absorb(cg.packing, small, false);
  }
  return res;
}

}  // namespace roundpack
