// hiernet: validate, simulate and verify hierarchical heteroclinic networks.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "hiernet/commands.hpp"

namespace {

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success / verification passed\n"
    "  1  verification failed, or the scenario violates an invariant\n"
    "  2  input error (missing file, malformed document, bad flag value)\n"
    "  3  integration failure (divergence or step-size underflow)\n";

struct Flags {
  std::string orientation, variant;
  double t_end = -1.0, sample_dt = -1.0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--orientation", f.orientation, "Coefficient orientation: eigenvalue | literal");
  cmd->add_option("--variant", f.variant, "Field variant: standard | bounded");
  cmd->add_option("--t-end", f.t_end, "Integration horizon");
  cmd->add_option("--sample-dt", f.sample_dt, "Output sampling interval");
}

hiernet::ScenarioOverrides to_overrides(const Flags& f) {
  hiernet::ScenarioOverrides o;
  if (!f.orientation.empty()) o.orientation = hiernet::parse_orientation(f.orientation);
  if (!f.variant.empty()) o.variant = hiernet::parse_variant(f.variant);
  if (f.t_end >= 0.0) o.t_end = f.t_end;
  if (f.sample_dt >= 0.0) o.sample_dt = f.sample_dt;
  return o;
}

hiernet::Edge parse_edge(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw hiernet::Error(hiernet::ErrorKind::ParseError, "edge must be 'j,k': " + s);
  const auto j = std::stoul(s.substr(0, comma));
  const auto k = std::stoul(s.substr(comma + 1));
  if (j == 0 || k == 0) throw hiernet::Error(hiernet::ErrorKind::ParseError, "vertices are numbered from 1: " + s);
  return {j - 1, k - 1};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize and verify hierarchical heteroclinic networks"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  Flags f;
  std::string path, out_dir = "out";
  bool no_plots = false;
  std::vector<std::string> edges;
  std::vector<double> deltas;

  auto* validate = app.add_subcommand("validate", "Load and validate a scenario");
  validate->add_option("scenario", path, "Scenario file (JSON)")->required();
  add_common(validate, f);

  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario; write timeseries.csv, itinerary.txt, SVG panels");
  simulate->add_option("scenario", path, "Scenario file (JSON)")->required();
  simulate->add_option("--out", out_dir, "Output directory")->capture_default_str();
  simulate->add_flag("--no-plots", no_plots, "Skip SVG panels");
  add_common(simulate, f);

  auto* verify = app.add_subcommand("verify", "Check that the field realizes the hierarchy; write report.txt");
  verify->add_option("scenario", path, "Scenario file (JSON)")->required();
  verify->add_option("--out", out_dir, "Output directory")->capture_default_str();
  add_common(verify, f);

  auto* witness = app.add_subcommand("witness", "Run excitable-connection witnesses");
  witness->add_option("scenario", path, "Scenario file (JSON)")->required();
  witness->add_option("--edge", edges, "Superstructure edge 'j,k' (repeatable; default: all edges)");
  witness->add_option("--delta", deltas, "Amplitude (repeatable; default: scenario witness_deltas)");
  add_common(witness, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hiernet::kExitInputError;
  }

  try {
    const auto o = to_overrides(f);
    if (*validate) return hiernet::cmd_validate(path, o);
    if (*simulate) return hiernet::cmd_simulate(path, out_dir, o, !no_plots);
    if (*verify) return hiernet::cmd_verify(path, out_dir, o);
    if (*witness) {
      std::vector<hiernet::Edge> es;
      for (const auto& e : edges) es.push_back(parse_edge(e));
      return hiernet::cmd_witness(path, es, deltas, o);
    }
  } catch (const hiernet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == hiernet::ErrorKind::NumericalFailure ? hiernet::kExitIntegrationFailed : hiernet::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hiernet::kExitInputError;
  }
  return hiernet::kExitInputError;
}
