#pragma once

// The 2-B-3-DM reduction gadget and checkers for its structural lemmas.
// Coordinates reach 40000 gamma, so the gadget is built directly in canonical
// form; original coordinates are kept alongside.

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "roundpack/core.hpp"
#include "roundpack/random.hpp"

namespace roundpack {

struct Triple {
  int i = 0, j = 0, k = 0;  // 0-based element indices in X, Y, Z
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct TripletSystem {
  int q = 0;
  std::vector<Triple> triples;

  // Every element of X, Y and Z occurs in exactly two triples.
  bool valid() const {
    if (q < 1 || triples.size() != static_cast<std::size_t>(2 * q)) return false;
    std::vector<int> cx(static_cast<std::size_t>(q)), cy(cx), cz(cx);
    for (const auto& t : triples) {
      if (t.i < 0 || t.i >= q || t.j < 0 || t.j >= q || t.k < 0 || t.k >= q) return false;
      ++cx[static_cast<std::size_t>(t.i)], ++cy[static_cast<std::size_t>(t.j)], ++cz[static_cast<std::size_t>(t.k)];
    }
    auto two = [](const std::vector<int>& c) { return std::all_of(c.begin(), c.end(), [](int x) { return x == 2; }); };
    return two(cx) && two(cy) && two(cz);
  }
};

// Two copies of each of X, Y, Z; the Y and Z copies are shuffled against X.
inline TripletSystem gen_2b3dm(int q, std::uint64_t seed) {
  if (q < 1) throw PreconditionError("q must be positive");
  Rng rng(seed);
  std::vector<int> xs, ys, zs;
  for (int copy = 0; copy < 2; ++copy)
    for (int e = 0; e < q; ++e) xs.push_back(e), ys.push_back(e), zs.push_back(e);
  rng.shuffle(ys);
  rng.shuffle(zs);
  TripletSystem out{q, {}};
  for (std::size_t l = 0; l < xs.size(); ++l) out.triples.push_back({xs[l], ys[l], zs[l]});
  return out;
}

inline Amount beta(int q) {
  // ceil(0.979338843 q) in exact integer arithmetic
  return ceil_div(Amount{979338843} * q, Amount{1000000000});
}

struct GadgetIntegers {
  int q = 0;
  Amount rho = 0;
  Amount gamma = 0;
  std::vector<Amount> x, y, z;  // indexed by 0-based element
  std::vector<Amount> tau;      // indexed by triple
  std::vector<Triple> triples;
};

inline GadgetIntegers gadget_integers(const TripletSystem& T) {
  if (!T.valid()) throw PreconditionError("not a 2-B-3-DM triplet system");
  if (T.q > 16) throw TooLarge("gadget integers limited to q <= 16");
  GadgetIntegers g;
  g.q = T.q;
  g.rho = 32 * Amount{T.q};
  const Amount r = g.rho, r2 = r * r, r3 = r2 * r, r4 = r3 * r;
  g.gamma = r4 + 15;
  for (Amount e = 1; e <= T.q; ++e) {
    g.x.push_back(e * r + 1);
    g.y.push_back(e * r2 + 2);
    g.z.push_back(e * r3 + 4);
  }
  for (const auto& t : T.triples) g.tau.push_back(r4 - (t.k + 1) * r3 - (t.j + 1) * r2 - (t.i + 1) * r + 8);
  g.triples = T.triples;
  return g;
}

enum class Role { AX, AXp, AY, AYp, AZ, AZp, B, Bp, Dummy };

inline const char* to_string(Role r) {
  static constexpr std::array<const char*, 9> names{"aX", "aX'", "aY", "aY'", "aZ", "aZ'", "b", "b'", "dummy"};
  return names[static_cast<std::size_t>(r)];
}

inline bool left_side(Role r) { return r == Role::AX || r == Role::AY || r == Role::AZ || r == Role::B; }

struct GadgetJob {
  Role role = Role::Dummy;
  int index = 0;  // element index for a-jobs, triple index for b-jobs
  Amount s = 0, t = 0, d = 0;  // original coordinates
};

struct Gadget {
  TripletSystem system;
  GadgetIntegers ints;
  Instance instance;  // canonical
  std::vector<GadgetJob> jobs;
  Amount capacity = 0;
  Amount dummies = 0;
  bool dummies_clamped = false;

  // Job id of a role/index pair, or -1.
  int find(Role role, int index) const {
    for (std::size_t j = 0; j < jobs.size(); ++j)
      if (jobs[j].role == role && jobs[j].index == index) return static_cast<int>(j);
    return -1;
  }
};

inline Gadget build_gadget(const TripletSystem& T) {
  Gadget G;
  G.system = T;
  G.ints = gadget_integers(T);
  const Amount g = G.ints.gamma;
  const Amount end = 40000 * g;
  G.capacity = 4000 * g;
  auto pair = [&](Role left, Role right, int idx, Amount mid_base, Amount v) {
    const Amount mid = mid_base - 4 * v;
    G.jobs.push_back({left, idx, 0, mid, 999 * g + 4 * v});
    G.jobs.push_back({right, idx, mid, end, 1001 * g - 4 * v});
  };
  for (int e = 0; e < T.q; ++e) pair(Role::AX, Role::AXp, e, 20000 * g, G.ints.x[static_cast<std::size_t>(e)]);
  for (int e = 0; e < T.q; ++e) pair(Role::AY, Role::AYp, e, 20000 * g, G.ints.y[static_cast<std::size_t>(e)]);
  for (int e = 0; e < T.q; ++e) pair(Role::AZ, Role::AZp, e, 20000 * g, G.ints.z[static_cast<std::size_t>(e)]);
  for (int l = 0; l < 2 * T.q; ++l) pair(Role::B, Role::Bp, l, 19001 * g, G.ints.tau[static_cast<std::size_t>(l)]);
  const Amount raw = 5 * Amount{T.q} - 4 * beta(T.q);
  G.dummies = std::max<Amount>(0, raw);
  G.dummies_clamped = raw < 0;
  for (Amount k = 0; k < G.dummies; ++k) G.jobs.push_back({Role::Dummy, static_cast<int>(k), 0, end, 2997 * g});

  std::vector<Amount> pts;
  for (const auto& j : G.jobs) pts.push_back(j.s), pts.push_back(j.t);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto at = [&](Amount v) { return static_cast<int>(std::lower_bound(pts.begin(), pts.end(), v) - pts.begin()); };
  G.instance.m = static_cast<int>(pts.size()) - 1;
  G.instance.capacities.assign(static_cast<std::size_t>(G.instance.m), G.capacity);
  for (const auto& j : G.jobs) G.instance.jobs.push_back({at(j.s), at(j.t), j.d});
  G.instance.validate();
  return G;
}

// One line per job: id role index s t d (original coordinates).
inline void write_gadget_sidecar(std::ostream& out, const Gadget& G) {
  out << "# id role index s t d\n";
  for (std::size_t j = 0; j < G.jobs.size(); ++j) {
    const auto& g = G.jobs[j];
    out << j << ' ' << to_string(g.role) << ' ' << g.index << ' ' << g.s << ' ' << g.t << ' ' << g.d << '\n';
  }
  out << "# triples (0-based i j k)\n";
  for (std::size_t l = 0; l < G.system.triples.size(); ++l) {
    const auto& t = G.system.triples[l];
    out << "# T" << l << ' ' << t.i << ' ' << t.j << ' ' << t.k << '\n';
  }
}

// Demand bounds that drive the counting lemmas.
inline bool check_demand_inequalities(const Gadget& G) {
  const Amount g = G.ints.gamma;
  for (const auto& j : G.jobs) {
    switch (j.role) {
      case Role::AX: case Role::AY: case Role::AZ:
        if (!(j.d > 999 * g)) return false;
        break;
      case Role::B:
        if (!(j.d > 1001 * g)) return false;
        break;
      case Role::AXp: case Role::AYp: case Role::AZp:
        if (!(j.d > 1000 * g)) return false;
        break;
      case Role::Bp:
        if (!(j.d > 997 * g)) return false;
        break;
      case Role::Dummy:
        if (j.d != 2997 * g) return false;
        break;
    }
  }
  return true;
}

struct WoegingerCounterexample {
  std::array<int, 4> positions;  // indices into the value list x.., y.., z.., tau..
  Amount sum = 0;
  bool should_sum_to_gamma = false;
};

// Exhaustively checks that four of the 5q values sum to gamma exactly when
// they are x_i, y_j, z_k and tau_l for a triple l = (i, j, k).
inline std::optional<WoegingerCounterexample> check_woeginger(const GadgetIntegers& G) {
  if (G.q > 4) throw TooLarge("check_woeginger limited to q <= 4");
  struct Value {
    Amount v;
    int kind;  // 0 x, 1 y, 2 z, 3 tau
    int index;
  };
  std::vector<Value> vals;
  for (int e = 0; e < G.q; ++e) vals.push_back({G.x[static_cast<std::size_t>(e)], 0, e});
  for (int e = 0; e < G.q; ++e) vals.push_back({G.y[static_cast<std::size_t>(e)], 1, e});
  for (int e = 0; e < G.q; ++e) vals.push_back({G.z[static_cast<std::size_t>(e)], 2, e});
  for (std::size_t l = 0; l < G.tau.size(); ++l) vals.push_back({G.tau[l], 3, static_cast<int>(l)});
  const int N = static_cast<int>(vals.size());
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b)
      for (int c = b + 1; c < N; ++c)
        for (int d = c + 1; d < N; ++d) {
          const std::array<int, 4> pos{a, b, c, d};
          Amount sum = 0;
          std::array<int, 4> by_kind{-1, -1, -1, -1};
          bool one_each = true;
          for (int p : pos) {
            const auto& v = vals[static_cast<std::size_t>(p)];
            sum += v.v;
            if (by_kind[static_cast<std::size_t>(v.kind)] >= 0) one_each = false;
            by_kind[static_cast<std::size_t>(v.kind)] = v.index;
          }
          bool expected = false;
          if (one_each) {
            const auto& t = G.triples[static_cast<std::size_t>(by_kind[3])];
            expected = t.i == by_kind[0] && t.j == by_kind[1] && t.k == by_kind[2];
          }
          if ((sum == G.gamma) != expected) return WoegingerCounterexample{pos, sum, expected};
        }
  return std::nullopt;
}

struct NiceCheck {
  bool nice = false;
  int triple = -1;  // a matching triple when nice
};

inline NiceCheck check_nice_round(const Gadget& G, std::span<const int> round_jobs) {
  if (round_jobs.size() != 8) throw WrongSize("nice-round check needs exactly 8 jobs, got " + std::to_string(round_jobs.size()));
  std::multiset<std::pair<int, int>> got;
  for (int id : round_jobs) {
    if (id < 0 || id >= static_cast<int>(G.jobs.size())) throw InvalidInput("job id out of range");
    got.insert({static_cast<int>(G.jobs[static_cast<std::size_t>(id)].role), G.jobs[static_cast<std::size_t>(id)].index});
  }
  for (std::size_t l = 0; l < G.system.triples.size(); ++l) {
    const auto& t = G.system.triples[l];
    const int L = static_cast<int>(l);
    const std::multiset<std::pair<int, int>> want{
        {static_cast<int>(Role::AX), t.i}, {static_cast<int>(Role::AXp), t.i}, {static_cast<int>(Role::AY), t.j},
        {static_cast<int>(Role::AYp), t.j}, {static_cast<int>(Role::AZ), t.k}, {static_cast<int>(Role::AZp), t.k},
        {static_cast<int>(Role::B), L},     {static_cast<int>(Role::Bp), L}};
    if (got == want) return {true, L};
  }
  return {};
}

// Heights of the eight jobs of triple l in the figure layout: each side
// stacked from the floor as b, aZ, aY, aX. Returns (job id, height) pairs.
inline std::vector<std::pair<int, Amount>> nice_layout(const Gadget& G, int l) {
  const auto& t = G.system.triples[static_cast<std::size_t>(l)];
  std::vector<std::pair<int, Amount>> out;
  auto stack = [&](std::array<std::pair<Role, int>, 4> order) {
    Amount h = 0;
    for (const auto& [role, idx] : order) {
      const int id = G.find(role, idx);
      out.emplace_back(id, h);
      h += G.jobs[static_cast<std::size_t>(id)].d;
    }
  };
  stack({{{Role::B, l}, {Role::AZ, t.k}, {Role::AY, t.j}, {Role::AX, t.i}}});
  stack({{{Role::Bp, l}, {Role::AZp, t.k}, {Role::AYp, t.j}, {Role::AXp, t.i}}});
  return out;
}

// Nice rounds for M, then one round per unmatched triple (b, b') and per
// uncovered element (a, a'), each with a dummy at the floor while dummies
// last. Leftover dummies get rounds of their own.
inline SapPacking pack_from_matching(const Gadget& G, std::span<const int> matching) {
  const int q = G.system.q;
  std::vector<char> used_l(G.system.triples.size(), 0), cx(static_cast<std::size_t>(q), 0), cy(cx), cz(cx);
  for (int l : matching) {
    if (l < 0 || l >= static_cast<int>(G.system.triples.size())) throw NotAMatching("triple index out of range");
    const auto& t = G.system.triples[static_cast<std::size_t>(l)];
    if (used_l[static_cast<std::size_t>(l)] || cx[static_cast<std::size_t>(t.i)] || cy[static_cast<std::size_t>(t.j)] ||
        cz[static_cast<std::size_t>(t.k)])
      throw NotAMatching("triple " + std::to_string(l) + " shares an element with another chosen triple");
    used_l[static_cast<std::size_t>(l)] = cx[static_cast<std::size_t>(t.i)] = cy[static_cast<std::size_t>(t.j)] =
        cz[static_cast<std::size_t>(t.k)] = 1;
  }
  SapPacking p;
  p.round_of.assign(G.jobs.size(), -1);
  p.height_of.assign(G.jobs.size(), -1);
  auto put = [&](int id, int r, Amount h) {
    p.round_of[static_cast<std::size_t>(id)] = r;
    p.height_of[static_cast<std::size_t>(id)] = h;
  };
  for (int l : matching) {
    for (const auto& [id, h] : nice_layout(G, l)) put(id, p.rounds, h);
    ++p.rounds;
  }
  int next_dummy = 0;
  const Amount dummy_h = 2997 * G.ints.gamma;
  auto pair_round = [&](Role left, Role right, int idx) {
    Amount h = 0;
    if (next_dummy < G.dummies) {
      put(G.find(Role::Dummy, next_dummy++), p.rounds, 0);
      h = dummy_h;
    }
    put(G.find(left, idx), p.rounds, h);
    put(G.find(right, idx), p.rounds, h);
    ++p.rounds;
  };
  for (int l = 0; l < 2 * q; ++l)
    if (!used_l[static_cast<std::size_t>(l)]) pair_round(Role::B, Role::Bp, l);
  for (int e = 0; e < q; ++e)
    if (!cx[static_cast<std::size_t>(e)]) pair_round(Role::AX, Role::AXp, e);
  for (int e = 0; e < q; ++e)
    if (!cy[static_cast<std::size_t>(e)]) pair_round(Role::AY, Role::AYp, e);
  for (int e = 0; e < q; ++e)
    if (!cz[static_cast<std::size_t>(e)]) pair_round(Role::AZ, Role::AZp, e);
  while (next_dummy < G.dummies) put(G.find(Role::Dummy, next_dummy++), p.rounds++, 0);
  return p;
}

struct RoundCensus {
  long long feasible_rounds = 0;  // non-empty job sets that fit one UFP round
  int max_jobs = 0;
  bool dummy_property = true;  // every dummy round has <= 1 left and <= 1 right job
  bool nice_property = true;   // every 8-job round corresponds to a triple
};

// Enumerates every feasible UFP round of the gadget. The family is closed
// under taking subsets, so depth-first extension in id order visits it once.
inline RoundCensus enumerate_rounds(const Gadget& G) {
  if (G.system.q > 2) throw TooLarge("round enumeration limited to q <= 2");
  const Instance& inst = G.instance;
  RoundCensus out;
  std::vector<Amount> load(static_cast<std::size_t>(inst.m), 0);
  std::vector<int> chosen;
  // b-jobs of identical triples are interchangeable.
  auto nice_up_to_duplicates = [&](const std::vector<int>& ids) {
    Gadget H = G;
    for (auto& j : H.jobs)
      if (j.role == Role::B || j.role == Role::Bp) {
        const auto& t = G.system.triples;
        j.index = static_cast<int>(std::find(t.begin(), t.end(), t[static_cast<std::size_t>(j.index)]) - t.begin());
      }
    return check_nice_round(H, ids).nice;
  };
  std::function<void(int)> extend = [&](int from) {
    for (int j = from; j < inst.n(); ++j) {
      const Job& job = inst.jobs[static_cast<std::size_t>(j)];
      bool ok = true;
      for (int e = job.s; e < job.t && ok; ++e) ok = load[static_cast<std::size_t>(e)] + job.d <= inst.capacity(e);
      if (!ok) continue;
      for (int e = job.s; e < job.t; ++e) load[static_cast<std::size_t>(e)] += job.d;
      chosen.push_back(j);
      ++out.feasible_rounds;
      out.max_jobs = std::max(out.max_jobs, static_cast<int>(chosen.size()));
      int dummies = 0, left = 0, right = 0;
      for (int c : chosen) {
        const Role r = G.jobs[static_cast<std::size_t>(c)].role;
        if (r == Role::Dummy) ++dummies;
        else if (left_side(r)) ++left;
        else ++right;
      }
      if (dummies > 0 && (dummies > 1 || left > 1 || right > 1)) out.dummy_property = false;
      if (chosen.size() == 8 && !check_nice_round(G, chosen).nice && !nice_up_to_duplicates(chosen)) out.nice_property = false;
      extend(j + 1);
      chosen.pop_back();
      for (int e = job.s; e < job.t; ++e) load[static_cast<std::size_t>(e)] -= job.d;
    }
  };
  extend(0);
  return out;
}

}  // namespace roundpack
