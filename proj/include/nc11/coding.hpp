#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nc11/error.hpp"
#include "nc11/instance.hpp"
#include "nc11/matching.hpp"
#include "nc11/path.hpp"
#include "nc11/power.hpp"
#include "nc11/routing.hpp"

namespace nc11 {

// Which path of each demand may carry the XOR stream.
struct Combo {
  PathKind first = PathKind::protection;
  PathKind second = PathKind::protection;

  friend bool operator==(const Combo&, const Combo&) = default;
};

inline constexpr Combo kProtProt{PathKind::protection, PathKind::protection};
inline constexpr Combo kProtWork{PathKind::protection, PathKind::working};
inline constexpr Combo kWorkProt{PathKind::working, PathKind::protection};
inline constexpr Combo kWorkWork{PathKind::working, PathKind::working};
inline constexpr std::array<Combo, 4> kAllCombos{kProtProt, kProtWork, kWorkProt, kWorkWork};

inline std::string combo_name(Combo c) {
  return std::string{kind_letter(c.first), '-', kind_letter(c.second)};
}

// When two demands towards one destination may be coded together.
//  shared_link          the two coded paths share at least one directed link
//  disjoint_complements  additionally, the two uncoded paths are edge-disjoint,
//                        so any single edge failure stays decodable
enum class SharingRule { shared_link, disjoint_complements };

inline PathKind other(PathKind k) {
  return k == PathKind::working ? PathKind::protection : PathKind::working;
}

// Two demands coded on their common links. d1 < d2 index the demand list;
// kind1 selects d1's path and kind2 d2's.
struct CodedPair {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  PathKind kind1 = PathKind::protection;
  PathKind kind2 = PathKind::protection;
  std::vector<Link> shared_links;
  Watts benefit = 0.0;

  int shared_hops() const { return static_cast<int>(shared_links.size()); }
  Combo combo() const { return {kind1, kind2}; }
};

struct CodingAssignment {
  std::vector<CodedPair> pairs;
  // Per demand: shared hops with its partner (0 if uncoded).
  std::vector<int> shared_hops;

  Watts total_benefit() const {
    Watts sum = 0.0;
    for (const auto& p : pairs) sum += p.benefit;
    return sum;
  }
  long total_shared_hops() const {
    long sum = 0;
    for (const auto& p : pairs) sum += p.shared_hops();
    return sum;
  }
};

struct PairBenefit {
  std::vector<Link> shared_links;
  Watts benefit = 0.0;
};

// Shared directed links of the two paths and the power they save.
inline PairBenefit pair_benefit(const Demand& d1, const Demand& d2, const Path& path1,
                                const Path& path2, const PowerParams& params) {
  if (d1.dest != d2.dest) {
    throw FeasibilityError("demands " + std::to_string(d1.source) + "->" +
                           std::to_string(d1.dest) + " and " + std::to_string(d2.source) +
                           "->" + std::to_string(d2.dest) +
                           " have different destinations and cannot be coded together");
  }
  if (path1.dest() != d1.dest || path2.dest() != d2.dest) {
    throw ContractError("paths must be oriented towards the shared destination");
  }
  PairBenefit out;
  out.shared_links = common_links(path1, path2);
  out.benefit = params.slope() * std::min(d1.volume, d2.volume) *
                static_cast<double>(out.shared_links.size());
  return out;
}

// Candidate pair for (a, b) with the given path kinds, or nothing when the
// rule rejects it.
inline std::optional<CodedPair> try_code(const Instance& inst, std::size_t a, const PathPair& pa,
                                         std::size_t b, const PathPair& pb, Combo combo,
                                         SharingRule rule) {
  const Demand& da = inst.demands[a];
  const Demand& db = inst.demands[b];
  if (da.dest != db.dest) return std::nullopt;
  PairBenefit pb_ = pair_benefit(da, db, pa.path(combo.first), pb.path(combo.second), inst.power);
  if (pb_.shared_links.empty()) return std::nullopt;
  if (rule == SharingRule::disjoint_complements &&
      !edge_disjoint(pa.path(other(combo.first)), pb.path(other(combo.second)))) {
    return std::nullopt;
  }
  return CodedPair{a, b, combo.first, combo.second, std::move(pb_.shared_links), pb_.benefit};
}

// Demands as vertices, feasible coded pairs as (parallel) weighted edges.
struct EncodableGraph {
  std::size_t demand_count = 0;
  std::vector<CodedPair> edges;

  // Connected components with at least one edge, each sorted; ordered by
  // their smallest demand index.
  std::vector<std::vector<std::size_t>> clusters() const {
    std::vector<std::size_t> parent(demand_count);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<bool> touched(demand_count, false);
    for (const auto& e : edges) {
      touched[e.d1] = touched[e.d2] = true;
      std::size_t a = find(e.d1);
      std::size_t b = find(e.d2);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t v = 0; v < demand_count; ++v) {
      if (touched[v]) groups[find(v)].push_back(v);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
  }

  // Heaviest shared-hop weight between the two demands, 0 if none.
  int weight(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    int best = 0;
    for (const auto& e : edges) {
      if (e.d1 == a && e.d2 == b) best = std::max(best, e.shared_hops());
    }
    return best;
  }
};

namespace detail {

// Demand indices grouped by destination, groups ordered by destination.
inline std::vector<std::vector<std::size_t>> destination_groups(const Instance& inst) {
  std::map<NodeId, std::vector<std::size_t>> by_dest;
  for (std::size_t i = 0; i < inst.demands.size(); ++i) by_dest[inst.demands[i].dest].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [dest, members] : by_dest) out.push_back(std::move(members));
  return out;
}

// Candidate edges among `group`, pairs in index order, combos in the given order.
template <typename PairOf>
std::vector<CodedPair> group_edges(const Instance& inst, std::span<const std::size_t> group,
                                   PairOf&& pair_of, std::span<const Combo> combos,
                                   SharingRule rule) {
  std::vector<CodedPair> out;
  for (std::size_t x = 0; x < group.size(); ++x) {
    for (std::size_t y = x + 1; y < group.size(); ++y) {
      for (Combo c : combos) {
        if (auto cp = try_code(inst, group[x], pair_of(group[x]), group[y], pair_of(group[y]), c,
                               rule)) {
          out.push_back(std::move(*cp));
        }
      }
    }
  }
  return out;
}

// Maximum-benefit matching over candidate edges of one group.
inline std::vector<CodedPair> match_group(std::span<const std::size_t> group,
                                          std::vector<CodedPair> edges, double* value = nullptr) {
  std::map<std::size_t, int> local;
  for (std::size_t i = 0; i < group.size(); ++i) local[group[i]] = static_cast<int>(i);
  std::vector<MatchEdge> medges;
  medges.reserve(edges.size());
  for (const auto& e : edges) medges.push_back({local[e.d1], local[e.d2], e.benefit});
  auto chosen = max_weight_matching(static_cast<int>(group.size()), medges);
  std::vector<CodedPair> out;
  double sum = 0.0;
  for (std::size_t k : chosen) {
    sum += edges[k].benefit;
    out.push_back(std::move(edges[k]));
  }
  if (value) *value = sum;
  return out;
}

inline CodingAssignment finish_assignment(std::size_t demand_count, std::vector<CodedPair> pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const CodedPair& a, const CodedPair& b) {
    return std::pair{a.d1, a.d2} < std::pair{b.d1, b.d2};
  });
  CodingAssignment out;
  out.shared_hops.assign(demand_count, 0);
  for (const auto& p : pairs) {
    out.shared_hops[p.d1] = p.shared_hops();
    out.shared_hops[p.d2] = p.shared_hops();
  }
  out.pairs = std::move(pairs);
  return out;
}

}  // namespace detail

inline EncodableGraph build_encodable_graph(const Instance& inst,
                                            std::span<const PathPair> routing,
                                            std::span<const Combo> allowed,
                                            SharingRule rule = SharingRule::shared_link) {
  check_routing(inst, routing);
  EncodableGraph g;
  g.demand_count = inst.demands.size();
  for (const auto& group : detail::destination_groups(inst)) {
    auto edges = detail::group_edges(
        inst, group, [&](std::size_t i) -> const PathPair& { return routing[i]; }, allowed, rule);
    for (auto& e : edges) g.edges.push_back(std::move(e));
  }
  return g;
}

// Throws ContractError unless `a` is a valid assignment for this routing.
inline void validate_assignment(const Instance& inst, std::span<const PathPair> routing,
                                const CodingAssignment& a,
                                std::optional<SharingRule> rule = std::nullopt) {
  check_routing(inst, routing);
  std::vector<int> seen(inst.demands.size(), 0);
  std::vector<int> hops(inst.demands.size(), 0);
  for (const auto& p : a.pairs) {
    if (p.d1 >= inst.demands.size() || p.d2 >= inst.demands.size() || p.d1 == p.d2) {
      throw ContractError("coded pair references an invalid demand");
    }
    if (++seen[p.d1] > 1 || ++seen[p.d2] > 1) {
      throw ContractError("a demand is coded with more than one partner");
    }
    const Demand& d1 = inst.demands[p.d1];
    const Demand& d2 = inst.demands[p.d2];
    if (d1.dest != d2.dest) throw FeasibilityError("coded pair joins different destinations");
    if (p.shared_links.empty()) throw ContractError("coded pair shares no link");
    const Path& x = routing[p.d1].path(p.kind1);
    const Path& y = routing[p.d2].path(p.kind2);
    for (const Link& l : p.shared_links) {
      if (!x.uses(l) || !y.uses(l)) {
        throw ContractError("coded link " + std::to_string(l.from) + "->" + std::to_string(l.to) +
                            " is not on both coded paths");
      }
    }
    const double expected =
        inst.power.slope() * std::min(d1.volume, d2.volume) * p.shared_hops();
    if (std::abs(expected - p.benefit) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw ContractError("coded pair benefit is inconsistent with its shared links");
    }
    if (rule == SharingRule::disjoint_complements &&
        !edge_disjoint(routing[p.d1].path(other(p.kind1)), routing[p.d2].path(other(p.kind2)))) {
      throw FeasibilityError("uncoded paths of a coded pair overlap");
    }
    hops[p.d1] = hops[p.d2] = p.shared_hops();
  }
  if (!a.shared_hops.empty() && a.shared_hops != hops) {
    throw ContractError("per-demand shared hop counts are inconsistent with the pairs");
  }
}

// Maximum-benefit matching restricted to a single combination: `combo.first`
// applies to the lower-indexed demand of each pair.
inline CodingAssignment select_pairs_fixed(const Instance& inst, std::span<const PathPair> routing,
                                           Combo combo,
                                           SharingRule rule = SharingRule::shared_link) {
  check_routing(inst, routing);
  std::vector<CodedPair> pairs;
  const std::array<Combo, 1> allowed{combo};
  for (const auto& group : detail::destination_groups(inst)) {
    auto edges = detail::group_edges(
        inst, group, [&](std::size_t i) -> const PathPair& { return routing[i]; }, allowed, rule);
    for (auto& p : detail::match_group(group, std::move(edges))) pairs.push_back(std::move(p));
  }
  return detail::finish_assignment(inst.demands.size(), std::move(pairs));
}

struct OshOptions {
  // Alternative minimum-cost disjoint pairs considered per demand.
  std::size_t candidate_budget = 8;
  // Per-destination search is exhaustive up to this many routing choices,
  // hill-climbing above.
  std::size_t exhaustive_limit = 10000;
  SharingRule rule = SharingRule::shared_link;
};

// Routing after optional re-selection, plus the coding on top of it.
struct CodingPlan {
  std::vector<PathPair> routing;
  CodingAssignment assignment;
};

// Optimal search heuristic: per destination, a maximum-benefit matching over
// all four path combinations, jointly with a choice among each demand's
// equal-cost disjoint pairs.
inline CodingPlan select_pairs_osh(const Instance& inst, std::span<const PathPair> routing,
                                   const OshOptions& opt = {}) {
  check_routing(inst, routing);
  CodingPlan plan;
  plan.routing.assign(routing.begin(), routing.end());
  std::vector<CodedPair> pairs;

  for (const auto& group : detail::destination_groups(inst)) {
    if (group.size() < 2) continue;

    // Options per member: the given pair first, then equal-cost alternatives.
    std::vector<std::vector<PathPair>> options(group.size());
    for (std::size_t x = 0; x < group.size(); ++x) {
      const PathPair& base = routing[group[x]];
      options[x].push_back(base);
      if (opt.candidate_budget <= 1) continue;
      for (auto& cand : disjoint_pair_candidates(inst.topology, inst.demands[group[x]],
                                                 opt.candidate_budget)) {
        if (options[x].size() >= opt.candidate_budget) break;
        if (cand.total_hops() != base.total_hops()) continue;
        if (cand.working == base.working && cand.protection == base.protection) continue;
        options[x].push_back(std::move(cand));
      }
    }

    std::vector<std::size_t> choice(group.size(), 0);
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t x = 0; x < group.size(); ++x) pos[group[x]] = x;
    auto evaluate = [&](const std::vector<std::size_t>& ch, double* value) {
      auto edges = detail::group_edges(
          inst, group,
          [&](std::size_t i) -> const PathPair& { return options[pos[i]][ch[pos[i]]]; },
          kAllCombos, opt.rule);
      return detail::match_group(group, std::move(edges), value);
    };
    auto better = [](double a, double b) { return a > b + 1e-9 * std::max(1.0, std::abs(b)); };

    double best_value = 0.0;
    std::vector<CodedPair> best = evaluate(choice, &best_value);
    std::vector<std::size_t> best_choice = choice;

    double space = 1.0;
    for (const auto& o : options) space *= static_cast<double>(o.size());

    if (space <= static_cast<double>(opt.exhaustive_limit)) {
      // Odometer over all choices, first index fastest.
      while (true) {
        std::size_t x = 0;
        while (x < group.size() && ++choice[x] == options[x].size()) choice[x++] = 0;
        if (x == group.size()) break;
        double v = 0.0;
        auto m = evaluate(choice, &v);
        if (better(v, best_value)) {
          best_value = v;
          best = std::move(m);
          best_choice = choice;
        }
      }
    } else {
      choice = best_choice;
      bool improved = true;
      for (int round = 0; improved && round < 64; ++round) {
        improved = false;
        for (std::size_t x = 0; x < group.size(); ++x) {
          for (std::size_t c = 0; c < options[x].size(); ++c) {
            if (c == choice[x]) continue;
            std::size_t keep = choice[x];
            choice[x] = c;
            double v = 0.0;
            auto m = evaluate(choice, &v);
            if (better(v, best_value)) {
              best_value = v;
              best = std::move(m);
              best_choice = choice;
              improved = true;
            } else {
              choice[x] = keep;
            }
          }
        }
      }
    }

    for (std::size_t x = 0; x < group.size(); ++x) {
      plan.routing[group[x]] = options[x][best_choice[x]];
    }
    for (auto& p : best) pairs.push_back(std::move(p));
  }
  plan.assignment = detail::finish_assignment(inst.demands.size(), std::move(pairs));
  return plan;
}

// P1 from the routing, P2 as the summed benefit of the coded pairs.
inline PowerReport eval_with_coding(const Instance& inst, std::span<const PathPair> routing,
                                    const CodingAssignment& assignment) {
  validate_assignment(inst, routing, assignment);
  PowerReport r;
  r.p1_conventional = eval_conventional(inst, routing);
  r.p2_reduction = assignment.total_benefit();
  r.p_total = r.p1_conventional - r.p2_reduction;
  r.savings_fraction = r.p1_conventional > 0.0 ? r.p2_reduction / r.p1_conventional : 0.0;
  return r;
}

}  // namespace nc11
