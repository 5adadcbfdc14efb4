#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nc11/error.hpp"
#include "nc11/instance.hpp"
#include "nc11/path.hpp"
#include "nc11/topology.hpp"

namespace nc11 {

namespace detail {

inline std::string demand_label(NodeId s, NodeId t) {
  return std::to_string(s) + "->" + std::to_string(t);
}

inline void require_endpoints(const Topology& topo, NodeId s, NodeId t) {
  if (!topo.contains(s) || !topo.contains(t)) {
    throw ContractError("demand " + demand_label(s, t) + " references a node outside the topology");
  }
  if (s == t) throw ContractError("demand " + demand_label(s, t) + " has source == destination");
}

}  // namespace detail

// Minimum-hop path; among minimum-hop paths the lexicographically smallest
// node sequence is returned.
inline Path shortest_path(const Topology& topo, NodeId s, NodeId t) {
  detail::require_endpoints(topo, s, t);
  const auto dist = topo.hop_distances(t);
  if (dist[static_cast<std::size_t>(s)] < 0) {
    throw RoutingError("node " + std::to_string(t) + " is unreachable from node " +
                       std::to_string(s));
  }
  std::vector<NodeId> nodes{s};
  NodeId cur = s;
  while (cur != t) {
    for (NodeId nb : topo.neighbors(cur)) {
      if (dist[static_cast<std::size_t>(nb)] == dist[static_cast<std::size_t>(cur)] - 1) {
        cur = nb;
        break;
      }
    }
    nodes.push_back(cur);
  }
  return Path(std::move(nodes));
}

inline int min_hop_count(const Topology& topo, NodeId s, NodeId t) {
  return shortest_path(topo, s, t).hop_count();
}

// Suurballe's algorithm, phrased as two successive shortest augmentations
// with node potentials over the bidirected residual graph. Returns the two
// edge-disjoint paths of minimum total hop count, or nothing when the
// endpoints are separated by a bridge.
class Suurballe {
 public:
  explicit Suurballe(const Topology& topo) : topo_(topo) {
    const auto n = static_cast<std::size_t>(topo.node_count()) + 1;
    head_.assign(n, {});
    for (const Edge& e : topo.edges()) {
      add_arc(e.u, e.v);
      add_arc(e.v, e.u);
    }
  }

  // Total hop count of the optimal pair, or -1 if no disjoint pair exists.
  int solve(NodeId s, NodeId t) {
    reset();
    const auto n = static_cast<std::size_t>(topo_.node_count()) + 1;
    potential_.assign(n, 0);
    auto first = topo_.hop_distances(s);
    for (std::size_t v = 0; v < n; ++v) potential_[v] = first[v] < 0 ? 0 : first[v];
    int total = 0;
    for (int unit = 0; unit < 2; ++unit) {
      int cost = augment(s, t);
      if (cost < 0) return -1;
      total += cost;
    }
    return total;
  }

  // After a successful solve(): the two paths, with net (cancelled) flow.
  std::pair<Path, Path> paths(NodeId s, NodeId t) const {
    // Net arc usage: opposite unit flows on the same edge cancel.
    std::vector<std::vector<NodeId>> next(static_cast<std::size_t>(topo_.node_count()) + 1);
    for (std::size_t i = 0; i < arcs_.size(); i += 2) {
      const Arc& a = arcs_[i];
      if (a.cap != 0) continue;  // forward arc saturated => carries flow
      const Arc& twin = arcs_[twin_of(i)];
      if (twin.cap == 0) continue;  // both directions used: cancel
      next[static_cast<std::size_t>(a.from)].push_back(a.to);
    }
    auto walk = [&](std::vector<std::vector<NodeId>>& succ) {
      std::vector<NodeId> nodes{s};
      NodeId cur = s;
      while (cur != t) {
        auto& out = succ[static_cast<std::size_t>(cur)];
        NodeId nb = out.back();
        out.pop_back();
        nodes.push_back(nb);
        cur = nb;
      }
      return Path(std::move(nodes));
    };
    Path a = walk(next);
    Path b = walk(next);
    return {std::move(a), std::move(b)};
  }

 private:
  struct Arc {
    NodeId from;
    NodeId to;
    int cap;
    int cost;
  };

  // Arc 2i is a forward arc; 2i+1 its residual reverse.
  void add_arc(NodeId u, NodeId v) {
    head_[static_cast<std::size_t>(u)].push_back(arcs_.size());
    arcs_.push_back({u, v, 1, 1});
    head_[static_cast<std::size_t>(v)].push_back(arcs_.size());
    arcs_.push_back({v, u, 0, -1});
  }

  // Forward arc of the opposite direction of the same physical edge.
  std::size_t twin_of(std::size_t forward) const {
    // Edges were added as (u->v) then (v->u): four consecutive arcs.
    return (forward % 4 == 0) ? forward + 2 : forward - 2;
  }

  void reset() {
    for (std::size_t i = 0; i < arcs_.size(); ++i) arcs_[i].cap = (i % 2 == 0) ? 1 : 0;
  }

  int augment(NodeId s, NodeId t) {
    const auto n = static_cast<std::size_t>(topo_.node_count()) + 1;
    constexpr int inf = std::numeric_limits<int>::max() / 4;
    std::vector<int> dist(n, inf);
    std::vector<std::size_t> via(n, arcs_.size());
    using Item = std::pair<int, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(s)] = 0;
    heap.push({0, s});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      const auto ui = static_cast<std::size_t>(u);
      if (d != dist[ui]) continue;
      for (std::size_t ai : head_[ui]) {
        const Arc& a = arcs_[ai];
        if (a.cap <= 0) continue;
        const auto vi = static_cast<std::size_t>(a.to);
        int reduced = a.cost + potential_[ui] - potential_[vi];
        if (dist[ui] + reduced < dist[vi]) {
          dist[vi] = dist[ui] + reduced;
          via[vi] = ai;
          heap.push({dist[vi], a.to});
        }
      }
    }
    if (dist[static_cast<std::size_t>(t)] >= inf) return -1;
    int cost = 0;
    for (NodeId v = t; v != s;) {
      std::size_t ai = via[static_cast<std::size_t>(v)];
      arcs_[ai].cap -= 1;
      arcs_[ai ^ 1].cap += 1;
      cost += arcs_[ai].cost;
      v = arcs_[ai].from;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] < inf) potential_[v] += dist[v];
    }
    return cost;
  }

  const Topology& topo_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> head_;
  std::vector<int> potential_;
};

// First edge on the minimum-hop s-t path whose removal separates s from t.
inline Edge find_cut_edge(const Topology& topo, NodeId s, NodeId t) {
  Path p = shortest_path(topo, s, t);
  for (const Link& l : p.links()) {
    Edge e = Edge::of(l);
    std::vector<Edge> banned{e};
    if (topo.hop_distances(s, banned)[static_cast<std::size_t>(t)] < 0) return e;
  }
  throw ContractError("no cut edge separates " + detail::demand_label(s, t));
}

namespace detail {

[[noreturn]] inline void throw_unprotectable(const Topology& topo, NodeId s, NodeId t) {
  Edge cut = find_cut_edge(topo, s, t);
  throw SurvivabilityError("demand " + demand_label(s, t) +
                               " has no edge-disjoint path pair: edge {" +
                               std::to_string(cut.u) + "," + std::to_string(cut.v) +
                               "} is a cut edge",
                           cut.u, cut.v);
}

// Enumerates edge-disjoint pairs of total hop count `total` in lexicographic
// order of (working, protection), calling `emit` until it returns false.
template <typename Emit>
void enumerate_pairs_of_cost(const Topology& topo, NodeId s, NodeId t, int total, Emit&& emit) {
  const auto to_t = topo.hop_distances(t);
  const int max_working = total / 2;
  const auto n = static_cast<std::size_t>(topo.node_count()) + 1;

  std::vector<char> on_path(n, 0);
  std::vector<NodeId> working{s};
  bool stop = false;

  auto try_protection = [&](const std::vector<NodeId>& w_nodes) {
    const Path w(w_nodes);
    const int length = total - w.hop_count();
    const auto banned = w.edges();
    const auto to_t2 = topo.hop_distances(t, banned);
    const int ds = to_t2[static_cast<std::size_t>(s)];
    if (ds < 0 || ds > length) return;

    std::vector<char> used(n, 0);
    std::vector<NodeId> prot{s};
    used[static_cast<std::size_t>(s)] = 1;
    std::function<void(NodeId)> dfs = [&](NodeId v) {
      if (stop) return;
      const int depth = static_cast<int>(prot.size()) - 1;
      if (v == t) {
        if (depth != length) return;
        if (length == w.hop_count() && !(w_nodes < prot)) return;
        if (!emit(PathPair{{}, w, Path(prot)})) stop = true;
        return;
      }
      for (NodeId nb : topo.neighbors(v)) {
        const auto nbi = static_cast<std::size_t>(nb);
        if (used[nbi] || to_t2[nbi] < 0 || depth + 1 + to_t2[nbi] > length) continue;
        if (std::binary_search(banned.begin(), banned.end(), Edge::of(v, nb))) continue;
        used[nbi] = 1;
        prot.push_back(nb);
        dfs(nb);
        prot.pop_back();
        used[nbi] = 0;
        if (stop) return;
      }
    };
    dfs(s);
  };

  on_path[static_cast<std::size_t>(s)] = 1;
  std::function<void(NodeId)> dfs = [&](NodeId v) {
    if (stop) return;
    const int depth = static_cast<int>(working.size()) - 1;
    if (v == t) {
      try_protection(working);
      return;
    }
    for (NodeId nb : topo.neighbors(v)) {
      const auto nbi = static_cast<std::size_t>(nb);
      if (on_path[nbi] || to_t[nbi] < 0 || depth + 1 + to_t[nbi] > max_working) continue;
      on_path[nbi] = 1;
      working.push_back(nb);
      dfs(nb);
      working.pop_back();
      on_path[nbi] = 0;
      if (stop) return;
    }
  };
  dfs(s);
}

}  // namespace detail

// Minimum total hop count of an edge-disjoint pair (Suurballe).
// Throws SurvivabilityError naming a cut edge when no such pair exists.
inline int min_disjoint_total(const Topology& topo, NodeId s, NodeId t) {
  detail::require_endpoints(topo, s, t);
  if (topo.hop_distances(s)[static_cast<std::size_t>(t)] < 0) {
    throw RoutingError("node " + std::to_string(t) + " is unreachable from node " +
                       std::to_string(s));
  }
  Suurballe solver(topo);
  int total = solver.solve(s, t);
  if (total < 0) detail::throw_unprotectable(topo, s, t);
  return total;
}

// Up to `k` distinct minimum-total-cost disjoint pairs in lexicographic order
// of (working, protection). The first entry is what suurballe_pair returns.
inline std::vector<PathPair> disjoint_pair_candidates(const Topology& topo, const Demand& demand,
                                                      std::size_t k) {
  if (k == 0) throw ContractError("candidate budget must be at least 1");
  const int total = min_disjoint_total(topo, demand.source, demand.dest);
  std::vector<PathPair> out;
  detail::enumerate_pairs_of_cost(topo, demand.source, demand.dest, total,
                                  [&](PathPair pp) {
                                    pp.demand = demand;
                                    out.push_back(std::move(pp));
                                    return out.size() < k;
                                  });
  if (out.empty()) {
    throw ContractError("no pair of cost " + std::to_string(total) + " found for demand " +
                        detail::demand_label(demand.source, demand.dest));
  }
  return out;
}

inline PathPair suurballe_pair(const Topology& topo, const Demand& demand) {
  return disjoint_pair_candidates(topo, demand, 1).front();
}

// Suurballe routing for every demand, aligned with inst.demands.
inline std::vector<PathPair> route_all(const Instance& inst) {
  std::vector<PathPair> out;
  out.reserve(inst.demands.size());
  for (const Demand& d : inst.demands) out.push_back(suurballe_pair(inst.topology, d));
  return out;
}

}  // namespace nc11
