#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nc11/error.hpp"

namespace nc11 {

// 1-based node identifier.
using NodeId = int;

// Directed link (from -> to).
struct Link {
  NodeId from = 0;
  NodeId to = 0;

  Link reversed() const { return {to, from}; }
  friend auto operator<=>(const Link&, const Link&) = default;
};

// Undirected physical edge, stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  static Edge of(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  static Edge of(Link l) { return of(l.from, l.to); }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Physical topology. Every edge {u,v} contributes the directed links (u,v)
// and (v,u); adjacency lists are kept sorted so traversals are deterministic.
class Topology {
 public:
  Topology() = default;

  Topology(int node_count, std::span<const Edge> edges) : node_count_(node_count) {
    if (node_count < 1) throw InstanceError("node count must be positive");
    adjacency_.assign(static_cast<std::size_t>(node_count) + 1, {});
    for (const Edge& e : edges) add_edge(e.u, e.v);
  }

  // Throws InstanceError on self-loops, out-of-range endpoints and duplicates.
  void add_edge(NodeId a, NodeId b) {
    if (a == b) throw InstanceError("self-loop on node " + std::to_string(a));
    if (!contains(a) || !contains(b)) {
      throw InstanceError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                          ") references a node outside 1.." + std::to_string(node_count_));
    }
    if (has_edge(a, b)) {
      throw InstanceError("duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    edges_.push_back(Edge::of(a, b));
    insert_sorted(adjacency_[static_cast<std::size_t>(a)], b);
    insert_sorted(adjacency_[static_cast<std::size_t>(b)], a);
  }

  int node_count() const noexcept { return node_count_; }
  bool contains(NodeId n) const noexcept { return n >= 1 && n <= node_count_; }

  // Undirected edges in insertion order.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t link_count() const noexcept { return 2 * edges_.size(); }

  std::span<const NodeId> neighbors(NodeId n) const {
    return adjacency_[static_cast<std::size_t>(n)];
  }

  bool has_edge(NodeId a, NodeId b) const {
    if (!contains(a) || !contains(b)) return false;
    const auto& adj = adjacency_[static_cast<std::size_t>(a)];
    return std::binary_search(adj.begin(), adj.end(), b);
  }
  bool has_link(Link l) const { return has_edge(l.from, l.to); }

  // All directed links, sorted.
  std::vector<Link> links() const {
    std::vector<Link> out;
    out.reserve(link_count());
    for (NodeId n = 1; n <= node_count_; ++n) {
      for (NodeId m : neighbors(n)) out.push_back({n, m});
    }
    return out;
  }

  std::size_t degree(NodeId n) const { return neighbors(n).size(); }

  // Hop distances from `origin`; -1 for unreachable. Index 0 unused.
  // Edges in `banned` (undirected, sorted) are treated as absent.
  std::vector<int> hop_distances(NodeId origin, std::span<const Edge> banned = {}) const {
    std::vector<int> dist(static_cast<std::size_t>(node_count_) + 1, -1);
    std::queue<NodeId> frontier;
    dist[static_cast<std::size_t>(origin)] = 0;
    frontier.push(origin);
    while (!frontier.empty()) {
      NodeId n = frontier.front();
      frontier.pop();
      for (NodeId m : neighbors(n)) {
        if (dist[static_cast<std::size_t>(m)] >= 0) continue;
        if (!banned.empty() &&
            std::binary_search(banned.begin(), banned.end(), Edge::of(n, m))) {
          continue;
        }
        dist[static_cast<std::size_t>(m)] = dist[static_cast<std::size_t>(n)] + 1;
        frontier.push(m);
      }
    }
    return dist;
  }

  bool connected() const {
    if (node_count_ <= 1) return true;
    auto dist = hop_distances(1);
    return std::all_of(dist.begin() + 1, dist.end(), [](int d) { return d >= 0; });
  }

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.node_count_ == b.node_count_ && a.adjacency_ == b.adjacency_;
  }

 private:
  static void insert_sorted(std::vector<NodeId>& v, NodeId x) {
    v.insert(std::upper_bound(v.begin(), v.end(), x), x);
  }

  int node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

}  // namespace nc11
