#pragma once

// Line-oriented instance format:
//
//   # comment
//   nodes <N>                      exactly once, first directive
//   edge <u> <v>                   undirected physical edge
//   demand <s> <t> <gbps>          optional, order preserved
//   power <p_port> <p_transponder> <wavelength_gbps>   optional
//
// Tokens are whitespace separated; anything after '#' is ignored.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "nc11/error.hpp"
#include "nc11/instance.hpp"
#include "nc11/topology.hpp"

namespace nc11 {

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline int parse_int(std::string_view tok, std::size_t line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw InstanceError("expected an integer, got '" + std::string(tok) + "'", line);
  }
  return value;
}

inline double parse_real(std::string_view tok, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
    throw InstanceError("expected a number, got '" + std::string(tok) + "'", line);
  }
  return value;
}

// Shortest text that parses back to exactly the same double.
inline std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline void expect_arity(const std::vector<std::string_view>& toks, std::size_t n,
                         std::size_t line) {
  if (toks.size() != n) {
    throw InstanceError("'" + std::string(toks.front()) + "' takes " + std::to_string(n - 1) +
                            " argument(s), got " + std::to_string(toks.size() - 1),
                        line);
  }
}

}  // namespace detail

// Parses instance text. Demands keep file order; when the file has no
// `demand` lines the demand list is empty (callers may synthesise all-pairs).
inline Instance parse_instance(std::string_view text) {
  Instance inst;
  bool have_nodes = false;
  std::size_t nodes_line = 0;
  std::set<std::pair<NodeId, NodeId>> demand_keys;
  bool have_power = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = detail::split_tokens(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }

    const std::string_view directive = toks.front();
    if (directive == "nodes") {
      if (have_nodes) throw InstanceError("'nodes' given more than once", line_no);
      detail::expect_arity(toks, 2, line_no);
      int n = detail::parse_int(toks[1], line_no);
      if (n < 1) throw InstanceError("node count must be positive", line_no);
      inst.topology = Topology(n, {});
      have_nodes = true;
      nodes_line = line_no;
    } else if (!have_nodes) {
      throw InstanceError("'nodes' must be the first directive", line_no);
    } else if (directive == "edge") {
      detail::expect_arity(toks, 3, line_no);
      NodeId a = detail::parse_int(toks[1], line_no);
      NodeId b = detail::parse_int(toks[2], line_no);
      try {
        inst.topology.add_edge(a, b);
      } catch (const InstanceError& e) {
        throw InstanceError(e.what(), line_no);
      }
    } else if (directive == "demand") {
      detail::expect_arity(toks, 4, line_no);
      Demand d{detail::parse_int(toks[1], line_no), detail::parse_int(toks[2], line_no),
               detail::parse_real(toks[3], line_no)};
      validate_demand(inst.topology, d, line_no);
      if (!demand_keys.emplace(d.source, d.dest).second) {
        throw InstanceError("duplicate demand " + std::to_string(d.source) + "->" +
                                std::to_string(d.dest),
                            line_no);
      }
      inst.demands.push_back(d);
    } else if (directive == "power") {
      if (have_power) throw InstanceError("'power' given more than once", line_no);
      detail::expect_arity(toks, 4, line_no);
      inst.power = {detail::parse_real(toks[1], line_no), detail::parse_real(toks[2], line_no),
                    detail::parse_real(toks[3], line_no)};
      try {
        validate_power(inst.power);
      } catch (const InstanceError& e) {
        throw InstanceError(e.what(), line_no);
      }
      have_power = true;
    } else {
      throw InstanceError("unknown directive '" + std::string(directive) + "'", line_no);
    }
    if (end == text.size()) break;
  }

  if (!have_nodes) throw InstanceError("missing 'nodes' directive", line_no);
  if (!inst.topology.connected()) {
    throw InstanceError("topology is disconnected", nodes_line);
  }
  return inst;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

inline std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  out << "nodes " << inst.topology.node_count() << '\n';
  for (const Edge& e : inst.topology.edges()) out << "edge " << e.u << ' ' << e.v << '\n';
  for (const Demand& d : inst.demands) {
    out << "demand " << d.source << ' ' << d.dest << ' ' << detail::format_real(d.volume) << '\n';
  }
  const PowerParams& p = inst.power;
  out << "power " << detail::format_real(p.port) << ' ' << detail::format_real(p.transponder)
      << ' ' << detail::format_real(p.wavelength) << '\n';
  return out.str();
}

}  // namespace nc11
