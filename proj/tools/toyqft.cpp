#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "toyqft/cli/runner.hpp"

namespace {

std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("TOYQFT_SEED");
  if (raw == nullptr || *raw == '\0') return toyqft::cli::kDefaultSeed;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used != std::string(raw).size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace toyqft::cli;

  CLI::App app{"Truncated Fock-space toy fields: dimensions, algebra checks, spectra, lattice scattering"};
  app.require_subcommand(1);

  std::string scenario;
  std::string format;
  double tol = 0.0;
  double coupling = 1.0;
  bool enforce = false;

  struct Sub {
    const char* name;
    const char* help;
    ScenarioKind kind;
  };
  const Sub subs[] = {
      {"dims", "Dimension and basis of a truncated Fock space", ScenarioKind::Dims},
      {"verify", "Check the ladder-operator algebra (exit 1 on any failure)", ScenarioKind::VerifyAlgebra},
      {"spectrum", "Eigenvalues and multiplicities of a field or interaction", ScenarioKind::Spectrum},
      {"scatter", "Scattering probabilities from S = exp(iH)", ScenarioKind::Scatter},
      {"lattice", "Mass-hyperboloid points and space volume", ScenarioKind::Lattice},
  };
  std::vector<std::pair<CLI::App*, ScenarioKind>> commands;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    cmd->add_option("--scenario", scenario, "Scenario JSON file")->required();
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--tol", tol, "Tolerance (verify: identity check, spectrum: eigenvalue grouping)")
        ->check(CLI::PositiveNumber);
    if (s.kind == ScenarioKind::Scatter) {
      cmd->add_flag("--enforce-conservation", enforce, "Drop rows whose total 4-momentum differs from the in-state");
      cmd->add_option("--coupling", coupling, "Extension: S = exp(i g H) with coupling g");
    }
    commands.emplace_back(cmd, s.kind);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  RunOptions opts;
  for (const auto& [cmd, kind] : commands) {
    if (!cmd->parsed()) continue;
    opts.kind = kind;
    if (cmd->count("--tol") > 0) opts.tolerance = tol;
    if (kind == ScenarioKind::Scatter && cmd->count("--coupling") > 0) opts.coupling = coupling;
  }
  if (!format.empty()) opts.format = parse_format(format);
  opts.enforce_conservation = enforce;
  const auto seed = seed_from_env();
  if (!seed) {
    std::cerr << "error: TOYQFT_SEED must be a nonnegative integer\n";
    return kExitInputError;
  }
  opts.seed = *seed;
  return run_scenario(scenario, opts);
}
