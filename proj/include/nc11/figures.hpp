#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nc11/analysis.hpp"
#include "nc11/bounds.hpp"
#include "nc11/format.hpp"
#include "nc11/instance.hpp"

namespace nc11 {

struct FigureOptions {
  PowerParams power;
  AnalysisOptions analysis;
  Gbps size_sweep_volume = 20.0;
};

inline const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig3", "fig4", "fig5", "fig6"};
  return ids;
}

namespace detail {

// Power against volume on the 5-node mesh or ring, 20..200 Gbps.
inline CsvTable power_by_volume(bool ring, const FigureOptions& opt) {
  CsvTable t;
  t.header = {"volume", "conventional", "nc_analytical", "nc_oracle", "osh"};
  for (int step = 1; step <= 10; ++step) {
    const Gbps v = 20.0 * step;
    Instance inst = ring ? generate_ring(5, v, opt.power) : generate_full_mesh(5, v, opt.power);
    const ClosedForm cf = ring ? ring_power(inst) : mesh_power(inst);
    const Evaluation conv = evaluate(inst, Heuristic::conventional, opt.analysis);
    const Evaluation best = evaluate(inst, Heuristic::oracle, opt.analysis);
    const Evaluation osh = evaluate(inst, Heuristic::osh, opt.analysis);
    t.rows.push_back({format_sig(v), format_sig(conv.report.p_total), format_sig(cf.p_nc),
                      format_sig(best.report.p_total), format_sig(osh.report.p_total)});
  }
  return t;
}

inline std::string savings_cell(const Instance& inst, Heuristic h, const AnalysisOptions& opt) {
  return format_sig(percent(evaluate(inst, h, opt).report.savings_fraction));
}

}  // namespace detail

inline CsvTable repro_fig3(const FigureOptions& opt = {}) {
  return detail::power_by_volume(false, opt);
}

inline CsvTable repro_fig5(const FigureOptions& opt = {}) {
  return detail::power_by_volume(true, opt);
}

// Full-mesh savings (%) for N = 3..15.
inline CsvTable repro_fig4(const FigureOptions& opt = {}) {
  CsvTable t;
  t.header = {"n", "odd_analytical", "even_analytical", "heuristic", "ww", "pp"};
  for (int n = 3; n <= 15; ++n) {
    Instance inst = generate_full_mesh(n, opt.size_sweep_volume, opt.power);
    const std::string analytic = format_sig(percent(mesh_savings(n).value()));
    t.rows.push_back({std::to_string(n), n % 2 == 1 ? analytic : "", n % 2 == 0 ? analytic : "",
                      detail::savings_cell(inst, Heuristic::osh, opt.analysis),
                      detail::savings_cell(inst, Heuristic::ww, opt.analysis),
                      detail::savings_cell(inst, Heuristic::pp, opt.analysis)});
  }
  return t;
}

// Ring savings (%) for N = 3..15; each analytic column is filled only for
// sizes in its class.
inline CsvTable repro_fig6(const FigureOptions& opt = {}) {
  CsvTable t;
  t.header = {"n",         "even2_analytical", "even1_analytical", "odd2_analytical",
              "odd1_analytical", "heuristic", "ww", "wp", "pw", "pp"};
  for (int n = 3; n <= 15; ++n) {
    Instance inst = generate_ring(n, opt.size_sweep_volume, opt.power);
    const RingClass c = ring_classify(n);
    const std::string analytic = format_sig(percent(ring_power(inst).savings.value()));
    auto cell = [&](RingClass k) { return c == k ? analytic : std::string{}; };
    t.rows.push_back({std::to_string(n), cell(RingClass::even2), cell(RingClass::even1),
                      cell(RingClass::odd2), cell(RingClass::odd1),
                      detail::savings_cell(inst, Heuristic::osh, opt.analysis),
                      detail::savings_cell(inst, Heuristic::ww, opt.analysis),
                      detail::savings_cell(inst, Heuristic::wp, opt.analysis),
                      detail::savings_cell(inst, Heuristic::pw, opt.analysis),
                      detail::savings_cell(inst, Heuristic::pp, opt.analysis)});
  }
  return t;
}

// Throws ContractError for an unknown id.
inline CsvTable repro(std::string_view id, const FigureOptions& opt = {}) {
  if (id == "fig3") return repro_fig3(opt);
  if (id == "fig4") return repro_fig4(opt);
  if (id == "fig5") return repro_fig5(opt);
  if (id == "fig6") return repro_fig6(opt);
  throw ContractError("unknown figure '" + std::string(id) + "' (expected fig3, fig4, fig5 or fig6)");
}

}  // namespace nc11
