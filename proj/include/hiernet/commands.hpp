#pragma once
// Command implementations behind the hiernet CLI. Each returns a process exit
// code and writes human-readable output to the given streams.

#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hiernet/analysis.hpp"
#include "hiernet/io.hpp"
#include "hiernet/scenario.hpp"

namespace hiernet {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitInputError = 2, kExitIntegrationFailed = 3 };

/// Command-line replacements applied on top of the scenario file.
struct ScenarioOverrides {
  std::optional<Orientation> orientation;
  std::optional<Variant> variant;
  std::optional<double> t_end;
  std::optional<double> sample_dt;
};

[[nodiscard]] inline Scenario apply_overrides(Scenario s, const ScenarioOverrides& o) {
  if (o.orientation) s.coefficients.orientation = *o.orientation;
  if (o.variant) s.variant = *o.variant;
  if (o.t_end) s.integrator.t_end = *o.t_end;
  if (o.sample_dt) s.integrator.sample_dt = *o.sample_dt;
  validate_scenario(s);
  return s;
}

namespace detail {

/// Loads, applies overrides and maps failures to exit codes.
inline std::optional<Scenario> load_for_command(const std::string& path, const ScenarioOverrides& o, std::ostream& err,
                                                int& code) {
  try {
    auto s = apply_overrides(load_scenario(path), o);
    for (const auto& w : s.field_params().warnings()) err << "warning: " << w << "\n";
    return s;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    code = e.kind() == ErrorKind::ValidationError ? kExitVerifyFailed : kExitInputError;
  }
  return std::nullopt;
}

inline bool prepare_dir(const std::string& dir, std::ostream& err) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create " << dir << ": " << ec.message() << "\n";
    return false;
  }
  return true;
}

}  // namespace detail

/// Loads and validates only. 0 valid; 1 the document is well-formed but
/// violates an invariant; 2 the file is missing, unparsable or malformed.
inline int cmd_validate(const std::string& path, const ScenarioOverrides& o = {}, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  int code = kExitOk;
  const auto s = detail::load_for_command(path, o, err, code);
  if (!s) return code;
  const auto h = s->make_hierarchy();
  out << "ok: " << path << "\n";
  out << "  superstructure: " << h.superstructure().size() << " vertices, " << h.superstructure().edges().size()
      << " edges\n";
  for (std::size_t j = 0; j < h.size(); ++j)
    out << "  substructure " << j + 1 << ": " << h.substructure(j).size() << " vertices, "
        << h.substructure(j).edges().size() << " edges\n";
  out << "  dimension " << BlockLayout(h).dim() << ", epsilon " << detail::fmt(s->epsilon) << ", orientation "
      << to_string(s->coefficients.orientation) << ", variant " << to_string(s->variant) << "\n";
  return kExitOk;
}

/// Integrates the scenario; writes timeseries.csv, itinerary.txt and SVG panels.
inline int cmd_simulate(const std::string& path, const std::string& out_dir, const ScenarioOverrides& o = {},
                        bool plots = true, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  int code = kExitOk;
  const auto s = detail::load_for_command(path, o, err, code);
  if (!s) return code;
  if (!detail::prepare_dir(out_dir, err)) return kExitInputError;
  const auto p = s->field_params();
  const auto tr = integrate(s->initial_state, p, s->integrator);
  const std::filesystem::path dir(out_dir);
  try {
    write_timeseries(tr, (dir / "timeseries.csv").string());
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  out << "timeseries.csv: " << tr.size() << " rows, termination " << to_string(tr.termination) << " at t="
      << format_number(tr.end_time) << "\n";
  if (tr.termination != Termination::Completed) {
    err << "error: integration stopped early (" << to_string(tr.termination) << ")";
    if (tr.diverged_coordinate) err << " in " << p.layout().name(*tr.diverged_coordinate);
    err << "\n";
    return kExitIntegrationFailed;
  }

  // Itineraries come from the finer analysis grid.
  IntegratorConfig fine = s->integrator;
  fine.sample_dt = std::min(s->analysis.sample_dt, s->integrator.sample_dt);
  const auto ft = fine.sample_dt == s->integrator.sample_dt ? tr : integrate(s->initial_state, p, fine);
  std::string itin;
  itin += render_itinerary(extract_itinerary(ft, Level::super(), p.epsilon(), {s->analysis.near_tol, s->analysis.min_dwell}));
  for (std::size_t j = 0; j < p.hierarchy().size(); ++j) {
    itin += "\n" + render_itinerary(extract_itinerary(ft, Level::sub(j), p.epsilon(),
                                                      {s->analysis.near_tol, s->analysis.sub_min_dwell}));
  }
  write_text((dir / "itinerary.txt").string(), itin);
  out << "itinerary.txt written\n";

  if (plots) {
    try {
      write_text((dir / "panel_X.svg").string(), render_svg_panel(tr, -1, p.epsilon(), false));
      for (std::size_t j = 0; j < p.hierarchy().size(); ++j) {
        write_text((dir / ("panel_x" + std::to_string(j + 1) + ".svg")).string(),
                   render_svg_panel(tr, static_cast<int>(j), p.epsilon(), true));
      }
    } catch (const std::exception& e) {
      err << "warning: plots skipped: " << e.what() << "\n";
    }
  }
  return kExitOk;
}

/// Runs the full realization check and writes report.txt.
inline int cmd_verify(const std::string& path, const std::string& out_dir, const ScenarioOverrides& o = {},
                      std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  int code = kExitOk;
  const auto s = detail::load_for_command(path, o, err, code);
  if (!s) return code;
  if (!detail::prepare_dir(out_dir, err)) return kExitInputError;
  const auto p = s->field_params();
  IntegratorConfig cfg = s->integrator;
  cfg.sample_dt = std::min(s->analysis.sample_dt, s->integrator.sample_dt);
  const auto rep = verify_realization(p, {{s->initial_state, cfg}}, s->realization_options());
  const auto text = render_report(rep, p.layout());
  write_text((std::filesystem::path(out_dir) / "report.txt").string(), text);
  out << text;
  if (!rep.verdicts.at("integration")) return kExitIntegrationFailed;
  return rep.pass() ? kExitOk : kExitVerifyFailed;
}

/// Witness runs for the given edges (all of Gamma when empty) and deltas.
inline int cmd_witness(const std::string& path, const std::vector<Edge>& edges, const std::vector<double>& deltas,
                       const ScenarioOverrides& o = {}, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  int code = kExitOk;
  const auto s = detail::load_for_command(path, o, err, code);
  if (!s) return code;
  const auto p = s->field_params().with_timescales(s->analysis.witness_timescales);
  const auto& G = p.hierarchy().superstructure();
  const auto use_edges = edges.empty() ? G.edges() : edges;
  const auto use_deltas = deltas.empty() ? s->analysis.witness_deltas : deltas;
  bool all = true;
  for (const auto& e : use_edges) {
    for (double d : use_deltas) {
      try {
        const auto w = run_witness({e.from, e.to, d}, p);
        out << "edge " << format_edge(e) << " delta " << detail::fmt(d) << ": distance " << detail::fmt(w.final_distance)
            << " at t=" << detail::fmt(w.forward_t_end) << (w.converged ? " converged" : " NOT converged")
            << "; backward " << to_string(w.backward_termination);
        if (w.diverged_coordinate) out << " in " << p.layout().name(*w.diverged_coordinate);
        out << (w.backward_pass ? "" : " (backward check failed)") << "\n";
        all = all && w.pass();
      } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitInputError;
      }
    }
  }
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace hiernet
