#pragma once

// Unit-demand jobs under integral capacities packed into exactly r rounds.
// Each round is peeled off by a feasible circulation over the interval
// constraint system lb_e <= |S cap crossing(e)| <= ub_e.

#include <algorithm>
#include <vector>

#include "roundpack/core.hpp"
#include "roundpack/flow.hpp"

namespace roundpack {

struct PeelBounds {
  std::vector<Amount> lb;
  std::vector<Amount> ub;
};

inline void require_unit(const Instance& inst) {
  for (const auto& j : inst.jobs)
    if (j.d != 1) throw NonUnitDemand();
}

inline PeelBounds peel_bounds(const Instance& inst, Amount r) {
  PeelBounds b;
  const auto loads = edge_loads(inst.m, inst.jobs);
  for (int e = 0; e < inst.m; ++e) {
    const Amount c = inst.capacity(e);
    b.lb.push_back(std::max<Amount>(0, loads[static_cast<std::size_t>(e)] - (r - 1) * c));
    b.ub.push_back(c);
  }
  return b;
}

struct PeelResult {
  std::vector<int> selected;  // indices into the input instance's jobs
  std::vector<int> residual;  // the rest, ascending
};

// Selects one round so that the remaining jobs have congestion <= r - 1.
inline PeelResult peel_round(const Instance& inst, Amount r) {
  require_unit(inst);
  if (r < 1) throw PreconditionError("peel_round needs r >= 1");
  const PeelBounds b = peel_bounds(inst, r);
  const Amount n = inst.n();
  Amount T = n;
  for (Amount u : b.ub) T = std::max(T, u + n);
  Circulation circ(inst.m + 1);
  std::vector<int> job_arc;
  job_arc.reserve(inst.jobs.size());
  for (const auto& j : inst.jobs) job_arc.push_back(circ.add_arc(j.s, j.t, 0, 1));
  for (int e = 0; e < inst.m; ++e)
    circ.add_arc(e, e + 1, T - b.ub[static_cast<std::size_t>(e)], T - b.lb[static_cast<std::size_t>(e)]);
  circ.add_arc(inst.m, 0, T, T);
  if (!circ.solve()) throw Infeasible("peel_round: interval system has no integral solution");
  PeelResult out;
  for (int k = 0; k < inst.n(); ++k) (circ.flow(job_arc[static_cast<std::size_t>(k)]) ? out.selected : out.residual).push_back(k);
  return out;
}

// Exactly r rounds, r the congestion of the input.
inline UfpPacking pack_unit(const Instance& inst) {
  require_unit(inst);
  UfpPacking out{std::vector<int>(inst.jobs.size(), -1), 0};
  std::vector<int> alive(inst.jobs.size());
  for (std::size_t k = 0; k < alive.size(); ++k) alive[k] = static_cast<int>(k);
  Amount r = congestion(inst);
  while (!alive.empty()) {
    const Instance cur = restrict_jobs(inst, alive);
    const PeelResult peel = peel_round(cur, r);
    for (int k : peel.selected) out.round_of[static_cast<std::size_t>(alive[static_cast<std::size_t>(k)])] = out.rounds;
    ++out.rounds;
    std::vector<int> next;
    for (int k : peel.residual) next.push_back(alive[static_cast<std::size_t>(k)]);
    alive = std::move(next);
    const Amount rr = congestion(restrict_jobs(inst, alive));
    if (rr > r - 1) throw Infeasible("peel did not lower congestion");
    r = rr;
  }
  return out;
}

}  // namespace roundpack
