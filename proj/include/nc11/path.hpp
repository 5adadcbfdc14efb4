#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nc11/error.hpp"
#include "nc11/instance.hpp"
#include "nc11/topology.hpp"

namespace nc11 {

// Simple path stored as its node sequence; links are derived on construction.
class Path {
 public:
  Path() = default;

  explicit Path(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw ContractError("a path needs at least two nodes");
    links_.reserve(nodes_.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) links_.push_back({nodes_[i], nodes_[i + 1]});
    std::vector<NodeId> sorted = nodes_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ContractError("path " + to_string() + " repeats a node");
    }
  }

  // Checks every hop against the topology as well.
  static Path on(const Topology& topo, std::vector<NodeId> nodes) {
    Path p(std::move(nodes));
    for (const Link& l : p.links()) {
      if (!topo.has_link(l)) {
        throw ContractError("path " + p.to_string() + " uses missing link " +
                            std::to_string(l.from) + "->" + std::to_string(l.to));
      }
    }
    return p;
  }

  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  const std::vector<Link>& links() const noexcept { return links_; }
  int hop_count() const noexcept { return static_cast<int>(links_.size()); }
  NodeId source() const { return nodes_.front(); }
  NodeId dest() const { return nodes_.back(); }
  bool empty() const noexcept { return nodes_.empty(); }

  bool uses(Link l) const { return std::find(links_.begin(), links_.end(), l) != links_.end(); }

  // Undirected edges, sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(links_.size());
    for (const Link& l : links_) out.push_back(Edge::of(l));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (i) s += '-';
      s += std::to_string(nodes_[i]);
    }
    return s;
  }

  friend bool operator==(const Path& a, const Path& b) { return a.nodes_ == b.nodes_; }
  friend auto operator<=>(const Path& a, const Path& b) { return a.nodes_ <=> b.nodes_; }

 private:
  std::vector<NodeId> nodes_;
  std::vector<Link> links_;
};

// Common directed links of two paths, in the order they appear on `a`.
inline std::vector<Link> common_links(const Path& a, const Path& b) {
  std::vector<Link> out;
  for (const Link& l : a.links()) {
    if (b.uses(l)) out.push_back(l);
  }
  return out;
}

inline bool edge_disjoint(const Path& a, const Path& b) {
  auto ea = a.edges();
  auto eb = b.edges();
  std::vector<Edge> both;
  std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(both));
  return both.empty();
}

enum class PathKind { working, protection };

inline char kind_letter(PathKind k) { return k == PathKind::working ? 'w' : 'p'; }

// Working and protection path of one demand. By convention the working path
// is the shorter one (ties: lexicographically smaller node sequence).
struct PathPair {
  Demand demand;
  Path working;
  Path protection;

  const Path& path(PathKind k) const { return k == PathKind::working ? working : protection; }
  int total_hops() const { return working.hop_count() + protection.hop_count(); }

  friend bool operator==(const PathPair&, const PathPair&) = default;
};

}  // namespace nc11
