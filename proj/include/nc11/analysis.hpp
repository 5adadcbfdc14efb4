#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nc11/coding.hpp"
#include "nc11/error.hpp"
#include "nc11/oracle.hpp"
#include "nc11/power.hpp"
#include "nc11/routing.hpp"

namespace nc11 {

enum class Heuristic { osh, ww, pp, wp, pw, oracle, conventional };

inline std::optional<Heuristic> parse_heuristic(std::string_view s) {
  if (s == "osh") return Heuristic::osh;
  if (s == "ww") return Heuristic::ww;
  if (s == "pp") return Heuristic::pp;
  if (s == "wp") return Heuristic::wp;
  if (s == "pw") return Heuristic::pw;
  if (s == "oracle") return Heuristic::oracle;
  if (s == "conventional") return Heuristic::conventional;
  return std::nullopt;
}

inline std::string to_string(Heuristic h) {
  switch (h) {
    case Heuristic::osh: return "osh";
    case Heuristic::ww: return "ww";
    case Heuristic::pp: return "pp";
    case Heuristic::wp: return "wp";
    case Heuristic::pw: return "pw";
    case Heuristic::oracle: return "oracle";
    case Heuristic::conventional: return "conventional";
  }
  return "?";
}

struct AnalysisOptions {
  std::size_t candidate_budget = 8;
  SharingRule rule = SharingRule::shared_link;
};

// A routed, coded instance and its power.
struct Evaluation {
  std::vector<PathPair> routing;
  CodingAssignment assignment;
  PowerReport report;
  bool exact = true;
};

inline Evaluation evaluate(const Instance& inst, Heuristic h, const AnalysisOptions& opt = {}) {
  Evaluation ev;
  auto fixed = [&](Combo c) {
    ev.routing = route_all(inst);
    ev.assignment = select_pairs_fixed(inst, ev.routing, c, opt.rule);
  };
  switch (h) {
    case Heuristic::conventional:
      ev.routing = route_all(inst);
      ev.assignment.shared_hops.assign(inst.demands.size(), 0);
      break;
    case Heuristic::ww: fixed(kWorkWork); break;
    case Heuristic::pp: fixed(kProtProt); break;
    case Heuristic::wp: fixed(kWorkProt); break;
    case Heuristic::pw: fixed(kProtWork); break;
    case Heuristic::osh: {
      auto base = route_all(inst);
      OshOptions o;
      o.candidate_budget = opt.candidate_budget;
      o.rule = opt.rule;
      auto plan = select_pairs_osh(inst, base, o);
      ev.routing = std::move(plan.routing);
      ev.assignment = std::move(plan.assignment);
      break;
    }
    case Heuristic::oracle: {
      auto r = optimal_joint(inst, opt.candidate_budget, opt.rule);
      ev.routing = std::move(r.best_routing);
      ev.assignment = std::move(r.best_assignment);
      ev.exact = r.exact;
      break;
    }
  }
  ev.report = eval_with_coding(inst, ev.routing, ev.assignment);
  return ev;
}

}  // namespace nc11
