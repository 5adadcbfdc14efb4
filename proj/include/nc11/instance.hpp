#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nc11/error.hpp"
#include "nc11/topology.hpp"

namespace nc11 {

using Watts = double;
using Gbps = double;

struct Demand {
  NodeId source = 0;
  NodeId dest = 0;
  Gbps volume = 0.0;

  friend bool operator==(const Demand&, const Demand&) = default;
};

// Linear device power model. slope() is Watts per Gbps per traversed hop.
struct PowerParams {
  Watts port = 1000.0;
  Watts transponder = 73.0;
  Gbps wavelength = 40.0;

  double slope() const { return (port + transponder) / wavelength; }
  friend bool operator==(const PowerParams&, const PowerParams&) = default;
};

struct Instance {
  Topology topology;
  std::vector<Demand> demands;
  PowerParams power;

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline void validate_power(const PowerParams& p) {
  if (!(p.port > 0.0) || !(p.transponder > 0.0) || !(p.wavelength > 0.0)) {
    throw InstanceError("power parameters must be strictly positive");
  }
}

// Checks a single demand against the topology.
inline void validate_demand(const Topology& topo, const Demand& d, std::size_t line = 0) {
  if (!topo.contains(d.source) || !topo.contains(d.dest)) {
    throw InstanceError("demand " + std::to_string(d.source) + "->" + std::to_string(d.dest) +
                            " references a node outside 1.." + std::to_string(topo.node_count()),
                        line);
  }
  if (d.source == d.dest) {
    throw InstanceError("demand source equals destination (" + std::to_string(d.source) + ")",
                        line);
  }
  if (!(d.volume >= 0.0)) throw InstanceError("demand volume must be non-negative", line);
}

inline void validate(const Instance& inst) {
  validate_power(inst.power);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Demand& d : inst.demands) {
    validate_demand(inst.topology, d);
    if (!seen.emplace(d.source, d.dest).second) {
      throw InstanceError("duplicate demand " + std::to_string(d.source) + "->" +
                          std::to_string(d.dest));
    }
  }
}

// Every ordered pair (s,t), s != t, in (s,t) lexicographic order.
inline std::vector<Demand> all_pairs_demands(int node_count, Gbps volume) {
  std::vector<Demand> out;
  out.reserve(static_cast<std::size_t>(node_count) * static_cast<std::size_t>(node_count - 1));
  for (NodeId s = 1; s <= node_count; ++s) {
    for (NodeId t = 1; t <= node_count; ++t) {
      if (s != t) out.push_back({s, t, volume});
    }
  }
  return out;
}

namespace detail {
inline void require_protectable_size(int n, const char* what) {
  if (n < 3) {
    throw InstanceError(std::string(what) + " with " + std::to_string(n) +
                        " nodes: 1+1 protection needs two disjoint paths, which requires at "
                        "least 3 nodes");
  }
}
}  // namespace detail

inline Instance generate_full_mesh(int n, Gbps volume, PowerParams params = {}) {
  detail::require_protectable_size(n, "full mesh");
  Instance inst;
  inst.topology = Topology(n, {});
  for (NodeId a = 1; a <= n; ++a) {
    for (NodeId b = a + 1; b <= n; ++b) inst.topology.add_edge(a, b);
  }
  inst.demands = all_pairs_demands(n, volume);
  inst.power = params;
  return inst;
}

inline Instance generate_ring(int n, Gbps volume, PowerParams params = {}) {
  detail::require_protectable_size(n, "ring");
  Instance inst;
  inst.topology = Topology(n, {});
  for (NodeId a = 1; a < n; ++a) inst.topology.add_edge(a, a + 1);
  inst.topology.add_edge(n, 1);
  inst.demands = all_pairs_demands(n, volume);
  inst.power = params;
  return inst;
}

// True when the demand set is all ordered pairs with one shared volume.
inline bool is_uniform_all_pairs(const Instance& inst) {
  const int n = inst.topology.node_count();
  if (inst.demands.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1)) {
    return false;
  }
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const Demand& d : inst.demands) {
    if (d.volume != inst.demands.front().volume) return false;
    pairs.emplace(d.source, d.dest);
  }
  return pairs.size() == inst.demands.size();
}

}  // namespace nc11
