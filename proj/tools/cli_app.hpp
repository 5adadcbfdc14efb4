#pragma once

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nc11/nc11.hpp"

namespace nc11::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kBadInstance = 3,
  kUnprotectable = 4,
  kGuard = 5,
};

class UsageError : public Error {
 public:
  using Error::Error;
};

struct GenSpec {
  bool ring = false;
  int first = 0;
  int last = 0;

  std::string label(int n) const { return std::string(ring ? "ring:" : "mesh:") + std::to_string(n); }
};

inline int parse_count(std::string_view s, std::string_view what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

inline double parse_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// mesh:N, ring:N, or with `allow_range` also mesh:A..B / ring:A..B.
inline GenSpec parse_gen(std::string_view s, bool allow_range) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError("generator must look like mesh:N or ring:N, got '" + std::string(s) + "'");
  }
  const std::string_view kind = s.substr(0, colon);
  std::string_view sizes = s.substr(colon + 1);
  GenSpec g;
  if (kind == "ring") {
    g.ring = true;
  } else if (kind != "mesh") {
    throw UsageError("unknown generator '" + std::string(kind) + "' (expected mesh or ring)");
  }
  if (const auto dots = sizes.find(".."); dots != std::string_view::npos) {
    if (!allow_range) throw UsageError("a size range is only accepted by 'sweep'");
    g.first = parse_count(sizes.substr(0, dots), "size");
    g.last = parse_count(sizes.substr(dots + 2), "size");
    if (g.last < g.first) throw UsageError("empty size range '" + std::string(sizes) + "'");
  } else {
    g.first = g.last = parse_count(sizes, "size");
  }
  return g;
}

struct VolumeSweep {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> values() const {
    std::vector<double> out;
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
};

inline VolumeSweep parse_sweep(std::string_view s) {
  auto parts = split(s, ':');
  if (parts.size() != 3) throw UsageError("--sweep expects start:stop:step");
  VolumeSweep v{parse_number(parts[0], "sweep start"), parse_number(parts[1], "sweep stop"),
                parse_number(parts[2], "sweep step")};
  if (!(v.step > 0.0)) throw UsageError("sweep step must be positive");
  if (v.start < 0.0 || v.stop < v.start) throw UsageError("sweep range must satisfy 0 <= start <= stop");
  return v;
}

inline PowerParams parse_power(std::string_view s) {
  auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError("--power expects p_port,p_transponder,B");
  PowerParams p{parse_number(parts[0], "port power"), parse_number(parts[1], "transponder power"),
                parse_number(parts[2], "wavelength capacity")};
  if (!(p.port > 0.0) || !(p.transponder > 0.0) || !(p.wavelength > 0.0)) {
    throw UsageError("power parameters must be strictly positive");
  }
  return p;
}

inline Heuristic parse_heuristic_or_throw(std::string_view s) {
  if (auto h = parse_heuristic(s)) return *h;
  throw UsageError("unknown heuristic '" + std::string(s) +
                   "' (expected osh, ww, pp, wp, pw, oracle or conventional)");
}

// Raw option values shared by the subcommands.
struct RunConfig {
  std::string gen;
  std::string instance_path;
  std::optional<double> volume;
  std::string sweep;
  std::string heuristic = "osh";
  std::size_t budget = 8;
  std::string power;
  std::string out;
  bool strict = false;
  std::string figure;

  AnalysisOptions analysis() const {
    return {budget, strict ? SharingRule::disjoint_complements : SharingRule::shared_link};
  }
  std::optional<PowerParams> power_override() const {
    if (power.empty()) return std::nullopt;
    return parse_power(power);
  }
};

struct LoadedInstance {
  Instance instance;
  std::string label;
};

inline Instance with_volume(Instance inst, Gbps v) {
  for (auto& d : inst.demands) d.volume = v;
  return inst;
}

inline LoadedInstance load(const RunConfig& cfg) {
  if (cfg.gen.empty() == cfg.instance_path.empty()) {
    throw UsageError("give exactly one of --gen or --instance");
  }
  LoadedInstance out;
  if (!cfg.gen.empty()) {
    const GenSpec g = parse_gen(cfg.gen, false);
    const Gbps v = cfg.volume.value_or(20.0);
    if (v < 0.0) throw UsageError("volume must be non-negative");
    out.instance = g.ring ? generate_ring(g.first, v) : generate_full_mesh(g.first, v);
    out.label = g.label(g.first);
  } else {
    out.instance = load_instance(cfg.instance_path);
    out.label = cfg.instance_path;
    if (out.instance.demands.empty()) {
      // No demand lines: all ordered pairs at the requested volume.
      out.instance.demands = all_pairs_demands(out.instance.topology.node_count(), cfg.volume.value_or(20.0));
    }
    if (cfg.volume) {
      if (*cfg.volume < 0.0) throw UsageError("volume must be non-negative");
      out.instance = with_volume(std::move(out.instance), *cfg.volume);
    }
  }
  if (auto p = cfg.power_override()) out.instance.power = *p;
  if (out.instance.demands.empty()) throw InstanceError("instance has no demands");
  return out;
}

// Writes to --out when given, otherwise to `out`.
inline void emit_csv(const CsvTable& t, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    t.write(out);
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw UsageError("cannot write '" + cfg.out + "'");
  t.write(f);
}

inline std::string watts(double w) { return format_sig(w) + " W"; }

inline std::string describe(const Instance& inst, const CodedPair& p) {
  const Demand& a = inst.demands[p.d1];
  const Demand& b = inst.demands[p.d2];
  std::ostringstream os;
  os << a.source << "->" << a.dest << " " << kind_letter(p.kind1) << " + " << b.source << "->"
     << b.dest << " " << kind_letter(p.kind2) << "  shared " << p.shared_hops() << "  saves "
     << watts(p.benefit) << "  links";
  for (const Link& l : p.shared_links) os << ' ' << l.from << '>' << l.to;
  return os.str();
}

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const Heuristic h = parse_heuristic_or_throw(cfg.heuristic);
  LoadedInstance li = load(cfg);

  if (!cfg.sweep.empty()) {
    CsvTable t;
    t.header = {"volume", "conventional", "total", "reduction", "savings_percent"};
    for (double v : parse_sweep(cfg.sweep).values()) {
      const Evaluation ev = evaluate(with_volume(li.instance, v), h, cfg.analysis());
      t.rows.push_back({format_sig(v), format_sig(ev.report.p1_conventional),
                        format_sig(ev.report.p_total), format_sig(ev.report.p2_reduction),
                        format_sig(percent(ev.report.savings_fraction))});
    }
    emit_csv(t, cfg, out);
    return kOk;
  }

  const Instance& inst = li.instance;
  const Evaluation ev = evaluate(inst, h, cfg.analysis());
  const BoundReport b = bound_nc(inst, ev.assignment);
  out << "instance      " << li.label << ", " << inst.topology.node_count() << " nodes, "
      << inst.topology.edges().size() << " edges, " << inst.demands.size() << " demands\n"
      << "heuristic     " << to_string(h) << (ev.exact ? "" : " (candidate budget truncated)")
      << "\n"
      << "conventional  " << watts(ev.report.p1_conventional) << "\n"
      << "reduction     " << watts(ev.report.p2_reduction) << "\n"
      << "total power   " << watts(ev.report.p_total) << "\n"
      << "savings       " << format_sig(percent(ev.report.savings_fraction)) << " %\n"
      << "lower bounds  conventional " << watts(b.conventional_lower) << ", coded (pairs) "
      << watts(b.nc_lower_pairs) << ", coded (characteristic hops) " << watts(b.nc_lower_characteristic)
      << "\n"
      << "coded pairs   " << ev.assignment.pairs.size() << ", "
      << ev.assignment.total_shared_hops() << " shared hops\n";
  for (const auto& p : ev.assignment.pairs) out << "  " << describe(inst, p) << "\n";

  if (!cfg.out.empty()) {
    CsvTable t;
    t.header = {"d1_source", "d1_dest", "d1_path", "d2_source", "d2_dest", "d2_path",
                "shared_hops", "benefit"};
    for (const auto& p : ev.assignment.pairs) {
      const Demand& a = inst.demands[p.d1];
      const Demand& c = inst.demands[p.d2];
      t.rows.push_back({std::to_string(a.source), std::to_string(a.dest),
                        std::string(1, kind_letter(p.kind1)), std::to_string(c.source),
                        std::to_string(c.dest), std::string(1, kind_letter(p.kind2)),
                        std::to_string(p.shared_hops()), format_sig(p.benefit)});
    }
    emit_csv(t, cfg, out);
  }
  return kOk;
}

inline int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const Heuristic h = parse_heuristic_or_throw(cfg.heuristic);
  LoadedInstance li = load(cfg);
  const Instance& inst = li.instance;
  const Evaluation ev = evaluate(inst, h, cfg.analysis());
  const BoundReport b = bound_nc(inst, ev.assignment);
  out << "instance                 " << li.label << "\n"
      << "conventional lower bound " << watts(b.conventional_lower) << "\n"
      << "coded lower bound, pairs " << watts(b.nc_lower_pairs) << "  (assignment from "
      << to_string(h) << ")\n"
      << "coded lower bound, mean  " << watts(b.nc_lower_characteristic) << "  (mean volume "
      << format_sig(b.volume_avg) << " Gbps, mean characteristic hops "
      << format_sig(b.h_characteristic_avg) << ")\n"
      << "achieved                 " << watts(ev.report.p_total) << "\n";

  if (!cfg.gen.empty()) {
    const GenSpec g = parse_gen(cfg.gen, false);
    const ClosedForm cf = g.ring ? ring_power(inst) : mesh_power(inst);
    out << "closed form              conventional " << watts(cf.p_conventional) << ", coded "
        << watts(cf.p_nc) << ", savings " << format_sig(percent(cf.savings.value())) << " %";
    if (g.ring) out << ", class " << to_string(ring_classify(g.first));
    out << "\n";
  }
  return kOk;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out, bool heuristic_given) {
  if (cfg.gen.empty()) throw UsageError("sweep needs --gen mesh:A..B or ring:A..B");
  const GenSpec g = parse_gen(cfg.gen, true);
  std::vector<Heuristic> hs;
  if (heuristic_given) {
    for (auto part : split(cfg.heuristic, ',')) hs.push_back(parse_heuristic_or_throw(part));
  }
  const Gbps v = cfg.volume.value_or(20.0);
  if (v < 0.0) throw UsageError("volume must be non-negative");
  const PowerParams params = cfg.power_override().value_or(PowerParams{});

  CsvTable t;
  t.header = {"n", "class", "analytic"};
  for (Heuristic h : hs) t.header.push_back(to_string(h));
  for (int n = g.first; n <= g.last; ++n) {
    Instance inst = g.ring ? generate_ring(n, v, params) : generate_full_mesh(n, v, params);
    const ClosedForm cf = g.ring ? ring_power(inst) : mesh_power(inst);
    std::vector<std::string> row{std::to_string(n),
                                 g.ring ? to_string(ring_classify(n)) : (n % 2 ? "odd" : "even"),
                                 format_sig(percent(cf.savings.value()))};
    for (Heuristic h : hs) {
      row.push_back(format_sig(percent(evaluate(inst, h, cfg.analysis()).report.savings_fraction)));
    }
    t.rows.push_back(std::move(row));
  }
  emit_csv(t, cfg, out);
  return kOk;
}

inline int cmd_repro(const RunConfig& cfg, std::ostream& out) {
  FigureOptions opt;
  opt.analysis = cfg.analysis();
  if (auto p = cfg.power_override()) opt.power = *p;
  if (cfg.volume) opt.size_sweep_volume = *cfg.volume;
  emit_csv(repro(cfg.figure, opt), cfg, out);
  return kOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Design and evaluate 1+1 protected optical networks with XOR coding"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--gen", cfg.gen, "Generated topology: mesh:N or ring:N");
    sub->add_option("--instance", cfg.instance_path, "Instance file")->check(CLI::ExistingFile);
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--volume", cfg.volume, "Uniform demand volume in Gbps (default 20)");
    sub->add_option("--budget", cfg.budget, "Alternative disjoint pairs per demand")
        ->check(CLI::PositiveNumber);
    sub->add_option("--power", cfg.power, "p_port,p_transponder,B (default 1000,73,40)");
    sub->add_option("--out", cfg.out, "Write CSV to this path");
    sub->add_flag("--strict", cfg.strict,
                  "Also require the two uncoded paths of a coded pair to be edge-disjoint");
  };

  auto* analyze = app.add_subcommand("analyze", "Route, code and price one instance");
  add_source(analyze);
  add_common(analyze);
  analyze->add_option("--sweep", cfg.sweep, "Volume sweep start:stop:step in Gbps");
  analyze->add_option("--heuristic", cfg.heuristic,
                      "osh, ww, pp, wp, pw, oracle or conventional (default osh)");

  auto* bounds = app.add_subcommand("bounds", "Lower bounds and closed forms");
  add_source(bounds);
  add_common(bounds);
  bounds->add_option("--heuristic", cfg.heuristic, "Heuristic whose coding feeds the bound");

  auto* sweep = app.add_subcommand("sweep", "Savings across network sizes");
  sweep->add_option("--gen", cfg.gen, "mesh:A..B or ring:A..B")->required();
  add_common(sweep);
  auto* sweep_h = sweep->add_option("--heuristic", cfg.heuristic,
                                    "Comma-separated heuristics to evaluate per size");

  auto* repro_cmd = app.add_subcommand("repro", "Regenerate a figure's data as CSV");
  repro_cmd->add_option("figure", cfg.figure, "fig3, fig4, fig5 or fig6")
      ->required()
      ->check(CLI::IsMember(figure_ids()));
  add_common(repro_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(cfg, out);
    if (*bounds) return cmd_bounds(cfg, out);
    if (*sweep) return cmd_sweep(cfg, out, sweep_h->count() > 0);
    return cmd_repro(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InstanceError& e) {
    err << "instance error: " << e.what() << "\n";
    return kBadInstance;
  } catch (const SurvivabilityError& e) {
    err << "not survivable: " << e.what() << "\n";
    return kUnprotectable;
  } catch (const RoutingError& e) {
    err << "not survivable: " << e.what() << "\n";
    return kUnprotectable;
  } catch (const GuardExceeded& e) {
    err << "search too large: " << e.what() << "\n";
    return kGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace nc11::cli
