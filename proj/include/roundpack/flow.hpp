#pragma once

// Dinic max-flow and feasible circulation with lower bounds. Arcs are scanned
// in insertion order, so results are deterministic.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace roundpack {

class MaxFlow {
 public:
  using Cap = std::int64_t;

  explicit MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  int add_arc(int u, int v, Cap cap) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({v, cap, 0});
    arcs_.push_back({u, 0, 0});
    adj_[static_cast<std::size_t>(u)].push_back(id);
    adj_[static_cast<std::size_t>(v)].push_back(id + 1);
    return id;
  }

  Cap flow(int arc) const { return arcs_[static_cast<std::size_t>(arc)].flow; }

  Cap run(int s, int t) {
    Cap total = 0;
    while (bfs(s, t)) {
      it_.assign(adj_.size(), 0);
      while (Cap f = dfs(s, t, std::numeric_limits<Cap>::max())) total += f;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    Cap cap;
    Cap flow;
  };

  bool bfs(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int id : adj_[static_cast<std::size_t>(u)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(id)];
        if (a.cap - a.flow > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
          level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  Cap dfs(int u, int t, Cap pushed) {
    if (u == t) return pushed;
    auto& i = it_[static_cast<std::size_t>(u)];
    const auto& out = adj_[static_cast<std::size_t>(u)];
    for (; i < out.size(); ++i) {
      const int id = out[i];
      Arc& a = arcs_[static_cast<std::size_t>(id)];
      if (a.cap - a.flow <= 0 || level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(u)] + 1) continue;
      if (Cap f = dfs(a.to, t, std::min(pushed, a.cap - a.flow))) {
        a.flow += f;
        arcs_[static_cast<std::size_t>(id ^ 1)].flow -= f;
        return f;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

// Circulation where every arc carries flow in [lo, hi].
class Circulation {
 public:
  using Cap = MaxFlow::Cap;

  explicit Circulation(int nodes) : nodes_(nodes), excess_(static_cast<std::size_t>(nodes), 0) {}

  int add_arc(int u, int v, Cap lo, Cap hi) {
    arcs_.push_back({u, v, lo, hi});
    excess_[static_cast<std::size_t>(v)] += lo;
    excess_[static_cast<std::size_t>(u)] -= lo;
    return static_cast<int>(arcs_.size()) - 1;
  }

  // Solves; returns false when no feasible circulation exists.
  bool solve() {
    MaxFlow mf(nodes_ + 2);
    const int src = nodes_, snk = nodes_ + 1;
    ids_.clear();
    for (const auto& a : arcs_) ids_.push_back(mf.add_arc(a.u, a.v, a.hi - a.lo));
    Cap need = 0;
    for (int v = 0; v < nodes_; ++v) {
      const Cap x = excess_[static_cast<std::size_t>(v)];
      if (x > 0) {
        mf.add_arc(src, v, x);
        need += x;
      } else if (x < 0) {
        mf.add_arc(v, snk, -x);
      }
    }
    const bool ok = mf.run(src, snk) == need;
    flows_.clear();
    for (std::size_t k = 0; k < arcs_.size(); ++k) flows_.push_back(arcs_[k].lo + mf.flow(ids_[k]));
    return ok;
  }

  Cap flow(int arc) const { return flows_[static_cast<std::size_t>(arc)]; }

 private:
  struct Arc {
    int u, v;
    Cap lo, hi;
  };
  int nodes_;
  std::vector<Cap> excess_;
  std::vector<Arc> arcs_;
  std::vector<int> ids_;
  std::vector<Cap> flows_;
};

}  // namespace roundpack
