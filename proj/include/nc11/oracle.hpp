#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nc11/coding.hpp"
#include "nc11/error.hpp"
#include "nc11/instance.hpp"
#include "nc11/power.hpp"
#include "nc11/routing.hpp"

namespace nc11 {

struct OracleResult {
  Watts best_power = 0.0;
  CodingAssignment best_assignment;
  std::vector<PathPair> best_routing;
  std::uint64_t explored = 0;
  bool exact = false;
};

inline constexpr std::uint64_t kOracleMatchingGuard = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kOracleRoutingGuard = std::uint64_t{1} << 20;
inline constexpr int kOracleMaxNodes = 7;

namespace detail {

// Exhaustive matching search over one destination group with fixed paths.
// Each unordered pair keeps its best combination (first listed wins ties);
// matchings are visited recursively from the lowest free demand, partners in
// increasing order before leaving it unmatched.
class MatchingEnumerator {
 public:
  MatchingEnumerator(const Instance& inst, std::span<const std::size_t> group,
                     std::span<const PathPair* const> paths, std::span<const Combo> combos,
                     SharingRule rule)
      : size_(group.size()), best_edge_(size_ * size_) {
    for (std::size_t x = 0; x < size_; ++x) {
      for (std::size_t y = x + 1; y < size_; ++y) {
        for (Combo c : combos) {
          auto cp = try_code(inst, group[x], *paths[x], group[y], *paths[y], c, rule);
          auto& slot = best_edge_[x * size_ + y];
          if (cp && (!slot || cp->benefit > slot->benefit)) slot = std::move(cp);
        }
      }
    }
  }

  // Best total benefit and the pairs achieving it. `visited` counts complete
  // matchings; GuardExceeded once it passes `guard`.
  double run(std::vector<CodedPair>& best, std::uint64_t& visited, std::uint64_t guard) {
    used_.assign(size_, false);
    current_.clear();
    best_value_ = -1.0;
    visited_ = 0;
    guard_ = guard;
    recurse(0, 0.0);
    visited += visited_;
    best.clear();
    for (auto [x, y] : best_pairs_) best.push_back(*best_edge_[x * size_ + y]);
    return best_value_;
  }

 private:
  void recurse(std::size_t from, double value) {
    while (from < size_ && used_[from]) ++from;
    if (from == size_) {
      if (++visited_ > guard_) {
        throw GuardExceeded("more than " + std::to_string(guard_) +
                            " matchings in a destination group of " + std::to_string(size_) +
                            " demands");
      }
      if (value > best_value_) {
        best_value_ = value;
        best_pairs_ = current_;
      }
      return;
    }
    used_[from] = true;
    for (std::size_t y = from + 1; y < size_; ++y) {
      const auto& e = best_edge_[from * size_ + y];
      if (used_[y] || !e) continue;
      used_[y] = true;
      current_.emplace_back(from, y);
      recurse(from + 1, value + e->benefit);
      current_.pop_back();
      used_[y] = false;
    }
    recurse(from + 1, value);
    used_[from] = false;
  }

  std::size_t size_;
  std::vector<std::optional<CodedPair>> best_edge_;
  std::vector<bool> used_;
  std::vector<std::pair<std::size_t, std::size_t>> current_;
  std::vector<std::pair<std::size_t, std::size_t>> best_pairs_;
  double best_value_ = -1.0;
  std::uint64_t visited_ = 0;
  std::uint64_t guard_ = 0;
};

}  // namespace detail

// Exhaustive maximum-benefit matching on a fixed routing.
inline OracleResult optimal_matching(const Instance& inst, std::span<const PathPair> routing,
                                     std::span<const Combo> combos = kAllCombos,
                                     SharingRule rule = SharingRule::shared_link) {
  check_routing(inst, routing);
  OracleResult out;
  out.best_routing.assign(routing.begin(), routing.end());
  std::vector<CodedPair> pairs;
  for (const auto& group : detail::destination_groups(inst)) {
    if (group.size() < 2) continue;
    std::vector<const PathPair*> paths;
    for (std::size_t i : group) paths.push_back(&routing[i]);
    detail::MatchingEnumerator e(inst, group, paths, combos, rule);
    std::vector<CodedPair> best;
    e.run(best, out.explored, kOracleMatchingGuard);
    for (auto& p : best) pairs.push_back(std::move(p));
  }
  out.best_assignment = detail::finish_assignment(inst.demands.size(), std::move(pairs));
  out.best_power = eval_conventional(inst, routing) - out.best_assignment.total_benefit();
  out.exact = true;
  return out;
}

// Minimum power over every combination of minimum-cost disjoint pairs (up to
// `candidate_budget` per demand) and every matching. Destination groups are
// independent, so each is searched on its own.
inline OracleResult optimal_joint(const Instance& inst, std::size_t candidate_budget = 8,
                                  SharingRule rule = SharingRule::shared_link) {
  if (inst.topology.node_count() > kOracleMaxNodes) {
    throw GuardExceeded("joint search is limited to " + std::to_string(kOracleMaxNodes) +
                        " nodes (instance has " + std::to_string(inst.topology.node_count()) +
                        ")");
  }
  if (candidate_budget == 0) throw ContractError("candidate budget must be positive");

  OracleResult out;
  out.exact = true;
  std::vector<std::vector<PathPair>> options(inst.demands.size());
  for (std::size_t i = 0; i < inst.demands.size(); ++i) {
    options[i] = disjoint_pair_candidates(inst.topology, inst.demands[i], candidate_budget + 1);
    if (options[i].size() > candidate_budget) {
      options[i].resize(candidate_budget);
      out.exact = false;
    }
  }

  out.best_routing.reserve(inst.demands.size());
  for (const auto& o : options) out.best_routing.push_back(o.front());
  std::vector<CodedPair> pairs;

  for (const auto& group : detail::destination_groups(inst)) {
    double space = 1.0;
    for (std::size_t i : group) space *= static_cast<double>(options[i].size());
    if (space > static_cast<double>(kOracleRoutingGuard)) {
      throw GuardExceeded("destination " + std::to_string(inst.demands[group.front()].dest) +
                          " has " + std::to_string(static_cast<std::uint64_t>(space)) +
                          " routing combinations (limit " +
                          std::to_string(kOracleRoutingGuard) + ")");
    }

    // Conventional cost per option, so each configuration is scored as a
    // total power contribution rather than a benefit alone.
    auto cost = [&](std::size_t i, std::size_t c) {
      return inst.power.slope() * inst.demands[i].volume * options[i][c].total_hops();
    };

    std::vector<std::size_t> choice(group.size(), 0);
    std::optional<double> best_power;
    std::vector<std::size_t> best_choice;
    std::vector<CodedPair> best_pairs;
    while (true) {
      std::vector<const PathPair*> paths;
      double p1 = 0.0;
      for (std::size_t x = 0; x < group.size(); ++x) {
        paths.push_back(&options[group[x]][choice[x]]);
        p1 += cost(group[x], choice[x]);
      }
      std::vector<CodedPair> m;
      double benefit = 0.0;
      if (group.size() >= 2) {
        detail::MatchingEnumerator e(inst, group, paths, kAllCombos, rule);
        benefit = e.run(m, out.explored, kOracleMatchingGuard);
      } else {
        ++out.explored;
      }
      const double p = p1 - benefit;
      if (!best_power || p < *best_power - 1e-9 * std::max(1.0, std::abs(*best_power))) {
        best_power = p;
        best_choice = choice;
        best_pairs = std::move(m);
      }
      // Odometer, last demand fastest so the order is lexicographic.
      std::size_t x = group.size();
      while (x > 0) {
        --x;
        if (++choice[x] < options[group[x]].size()) break;
        choice[x] = 0;
        if (x == 0) {
          x = group.size();
          break;
        }
      }
      if (x == group.size() || group.empty()) break;
    }
    for (std::size_t x = 0; x < group.size(); ++x) {
      out.best_routing[group[x]] = options[group[x]][best_choice[x]];
    }
    for (auto& p : best_pairs) pairs.push_back(std::move(p));
  }

  out.best_assignment = detail::finish_assignment(inst.demands.size(), std::move(pairs));
  out.best_power = eval_conventional(inst, out.best_routing) - out.best_assignment.total_benefit();
  return out;
}

}  // namespace nc11
