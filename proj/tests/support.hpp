#pragma once

#include <random>
#include <string>
#include <vector>

#include "nc11/nc11.hpp"

namespace nc11::fixtures {

inline std::string source_path(const std::string& rel) { return std::string(NC11_SOURCE_DIR) + "/" + rel; }

// True when removing any single edge leaves the graph connected.
inline bool two_edge_connected(const Topology& topo) {
  if (!topo.connected()) return false;
  for (const Edge& e : topo.edges()) {
    std::vector<Edge> rest;
    for (const Edge& f : topo.edges()) {
      if (!(f == e)) rest.push_back(f);
    }
    if (!Topology(topo.node_count(), rest).connected()) return false;
  }
  return true;
}

// G(n, p) conditioned on 2-edge-connectivity, so every demand is protectable.
inline Topology random_protectable_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  while (true) {
    Topology t(n, {});
    for (NodeId a = 1; a <= n; ++a) {
      for (NodeId b = a + 1; b <= n; ++b) {
        if (coin(rng)) t.add_edge(a, b);
      }
    }
    if (two_edge_connected(t)) return t;
  }
}

// All-pairs demands; volumes uniform in [lo, hi] or all equal to lo when lo == hi.
inline Instance random_instance(std::mt19937_64& rng, int n, double p, double lo, double hi) {
  Instance inst;
  inst.topology = random_protectable_graph(rng, n, p);
  inst.demands = all_pairs_demands(n, lo);
  std::uniform_real_distribution<double> vol(lo, hi);
  if (hi > lo) {
    for (auto& d : inst.demands) d.volume = vol(rng);
  }
  return inst;
}

// The 25 fixed-seed instances used by the agreement and bound checks.
inline std::vector<Instance> random_suite(bool uniform_volumes) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> size(3, 6);
  std::vector<Instance> out;
  for (int i = 0; i < 25; ++i) {
    const int n = size(rng);
    Instance inst = random_instance(rng, n, 0.5, 10.0, 100.0);
    if (uniform_volumes) {
      for (auto& d : inst.demands) d.volume = 40.0;
    }
    out.push_back(std::move(inst));
  }
  return out;
}

// Every simple s-t path, in no particular order.
inline std::vector<Path> all_simple_paths(const Topology& topo, NodeId s, NodeId t) {
  std::vector<Path> out;
  std::vector<NodeId> stack{s};
  std::vector<bool> on(static_cast<std::size_t>(topo.node_count()) + 1, false);
  on[static_cast<std::size_t>(s)] = true;
  auto dfs = [&](auto&& self, NodeId v) -> void {
    if (v == t) {
      out.emplace_back(stack);
      return;
    }
    for (NodeId w : topo.neighbors(v)) {
      if (on[static_cast<std::size_t>(w)]) continue;
      on[static_cast<std::size_t>(w)] = true;
      stack.push_back(w);
      self(self, w);
      stack.pop_back();
      on[static_cast<std::size_t>(w)] = false;
    }
  };
  dfs(dfs, s);
  return out;
}

}  // namespace nc11::fixtures
