#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nc11/error.hpp"
#include "nc11/instance.hpp"
#include "nc11/path.hpp"

namespace nc11 {


// P = P1 - P2 under the linear port+transponder model.
struct PowerReport {
  Watts p_total = 0.0;
  Watts p1_conventional = 0.0;
  Watts p2_reduction = 0.0;
  double savings_fraction = 0.0;
};

// Routing must list one pair per demand, in demand order.
inline void check_routing(const Instance& inst, std::span<const PathPair> routing) {
  if (routing.size() != inst.demands.size()) {
    throw ContractError("routing has " + std::to_string(routing.size()) + " pairs for " +
                        std::to_string(inst.demands.size()) + " demands");
  }
  for (std::size_t i = 0; i < routing.size(); ++i) {
    const Demand& d = inst.demands[i];
    const PathPair& pp = routing[i];
    if (pp.demand.source != d.source || pp.demand.dest != d.dest) {
      throw ContractError("routing entry " + std::to_string(i) + " is for demand " +
                          std::to_string(pp.demand.source) + "->" +
                          std::to_string(pp.demand.dest) + ", expected " +
                          std::to_string(d.source) + "->" + std::to_string(d.dest));
    }
    for (const Path* p : {&pp.working, &pp.protection}) {
      if (p->empty() || p->source() != d.source || p->dest() != d.dest) {
        throw ContractError("path of demand " + std::to_string(d.source) + "->" +
                            std::to_string(d.dest) + " does not join its endpoints");
      }
    }
  }
}

// (p_port + p_transponder) / B * sum_d V^d * (hops(working) + hops(protection))
inline Watts eval_conventional(const Instance& inst, std::span<const PathPair> routing) {
  check_routing(inst, routing);
  double volume_hops = 0.0;
  for (std::size_t i = 0; i < routing.size(); ++i) {
    volume_hops += inst.demands[i].volume * routing[i].total_hops();
  }
  return inst.power.slope() * volume_hops;
}

}  // namespace nc11
