#ifndef TOYQFT_CLI_RUNNER_HPP
#define TOYQFT_CLI_RUNNER_HPP

#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "toyqft/cli/report.hpp"
#include "toyqft/cli/scenario.hpp"
#include "toyqft/error.hpp"
#include "toyqft/fields.hpp"
#include "toyqft/scatter.hpp"
#include "toyqft/spacetime.hpp"
#include "toyqft/spectral.hpp"
#include "toyqft/verify.hpp"

namespace toyqft::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

inline constexpr std::uint64_t kDefaultSeed = 20170101;

/// Command-line overrides; unset fields fall back to the scenario file.
struct RunOptions {
  std::optional<ScenarioKind> kind;
  std::optional<OutputFormat> format;
  std::optional<double> tolerance;
  std::optional<double> coupling;
  bool enforce_conservation = false;
  std::uint64_t seed = kDefaultSeed;
};

struct RunResult {
  int exit_code = kExitOk;
  std::optional<Report> report;
};

namespace detail {

inline FockSpace scenario_space(const Scenario& sc) {
  if (!sc.cutoff) throw ScenarioError("field 'cutoff': required");
  if (!sc.roster.empty()) return FockSpace(sc.roster, *sc.cutoff);
  if (!sc.has_lattice) throw ScenarioError("field 'roster': required (or give 'lattice')");
  const auto& l = sc.lattice;
  return FockSpace(build_roster(l.mass1, l.mass2, l.r, l.statistics1, l.statistics2), *sc.cutoff);
}

inline Report run_dims(const Scenario& sc) {
  const FockSpace space = scenario_space(sc);
  DimsReport r{space.mode_count(), space.cutoff(), space.dimension(), {}};
  for (const auto& st : space.basis()) r.basis.push_back(basis_entry(space, st));
  return r;
}

inline Report run_verify(const Scenario& sc, double tol, std::uint64_t seed) {
  const FockSpace space = scenario_space(sc);
  return VerifyReport{verify_algebra(space, tol, seed), seed};
}

inline Report run_spectrum(const Scenario& sc, double group_tol) {
  const FockSpace space = scenario_space(sc);
  const auto roster = space.modes();
  if (sc.phi.empty()) throw ScenarioError("field 'phi': required for a spectrum scenario");
  const OperatorMatrix phi = free_field(space, resolve_field(roster, sc.phi, "phi"));
  OperatorMatrix op = phi;
  std::string name = "field";
  if (sc.op == SpectrumOperator::Interaction) {
    if (sc.psi.empty()) throw ScenarioError("field 'psi': required for operator 'interaction'");
    op = interaction_field(phi, free_field(space, resolve_field(roster, sc.psi, "psi")));
    name = "interaction";
  } else if (sc.op == SpectrumOperator::SelfInteraction) {
    op = self_interaction(phi);
    name = "self_interaction";
  }
  const SpectralDecomposition d = eigh(op, group_tol);
  SpectrumReport r;
  r.op = name;
  r.dimension = space.dimension();
  r.with_vectors = sc.eigenvectors;
  for (const auto& st : space.basis()) r.basis.push_back(ket_label(roster, st));
  for (const auto& g : d.groups()) {
    SpectrumLine line{g.lambda, g.multiplicity, {}};
    if (sc.eigenvectors) {
      for (Eigen::Index c = 0; c < g.basis.cols(); ++c) {
        line.vectors.emplace_back(g.basis.col(c).data(), g.basis.col(c).data() + g.basis.rows());
      }
    }
    r.lines.push_back(std::move(line));
  }
  return r;
}

inline Report run_scatter(const Scenario& sc, double coupling, bool enforce_conservation) {
  if (!sc.has_lattice) throw ScenarioError("field 'lattice': required for a scatter scenario");
  if (!sc.cutoff) throw ScenarioError("field 'cutoff': required");
  if (sc.in_state.empty()) throw ScenarioError("field 'in': required for a scatter scenario");
  const auto& l = sc.lattice;
  const auto roster = build_roster(l.mass1, l.mass2, l.r, l.statistics1, l.statistics2);

  ScatterScenario run;
  run.mass1 = l.mass1;
  run.mass2 = l.mass2;
  run.r = l.r;
  run.cutoff = *sc.cutoff;
  run.x0 = l.x0;
  run.statistics1 = l.statistics1;
  run.statistics2 = l.statistics2;
  run.in_state = resolve_state(roster, sc.in_state, "in");
  for (std::size_t i = 0; i < sc.out_states.size(); ++i) {
    run.out_states.push_back(resolve_state(roster, sc.out_states[i], "out[" + std::to_string(i) + "]"));
  }
  run.coupling = coupling;
  const ScatterResult res = simulate(run);

  std::vector<ProbabilityRow> rows;
  if (run.out_states.empty()) {
    rows = probability_table(res.scattering, run.in_state, sc.threshold);
  } else {
    const FourVector in_p = total_momentum(res.space, run.in_state);
    for (const auto& out : run.out_states) {
      rows.push_back({out, probability(res.scattering, run.in_state, out), total_momentum(res.space, out) == in_p});
    }
  }

  ScatterReport r;
  r.in_state = ket_label(roster, run.in_state);
  r.dimension = res.space.dimension();
  r.coupling = coupling;
  for (const auto& row : rows) {
    if (enforce_conservation && !row.conserves_momentum) continue;
    r.rows.push_back({ket_label(roster, row.out), row.probability, row.conserves_momentum});
  }
  return r;
}

inline Report run_lattice(const Scenario& sc) {
  if (!sc.has_lattice) throw ScenarioError("field 'lattice': required for a lattice scenario");
  const auto& l = sc.lattice;
  return LatticeReport{l.mass1, l.r, l.x0, space_volume(l.x0), hyperboloid(l.mass1, l.r)};
}

}  // namespace detail

/// Runs a parsed scenario. Throws ScenarioError or toyqft::Error on bad input.
inline RunResult execute(const Scenario& sc, const RunOptions& opts) {
  if (opts.kind && sc.kind && *opts.kind != *sc.kind) {
    throw ScenarioError(std::string("field 'kind': scenario is '") + to_string(*sc.kind) +
                        "' but the subcommand is '" + to_string(*opts.kind) + "'");
  }
  const auto kind = opts.kind ? opts.kind : sc.kind;
  if (!kind) throw ScenarioError("field 'kind': required when no subcommand is given");
  const auto tolerance = opts.tolerance ? opts.tolerance : sc.tolerance;
  if (tolerance && !(*tolerance > 0.0)) throw ScenarioError("tolerance must be positive");

  RunResult result;
  switch (*kind) {
    case ScenarioKind::Dims:
      result.report = detail::run_dims(sc);
      break;
    case ScenarioKind::VerifyAlgebra: {
      result.report = detail::run_verify(sc, tolerance.value_or(1e-12), opts.seed);
      if (!std::get<VerifyReport>(*result.report).all_pass()) result.exit_code = kExitVerificationFailed;
      break;
    }
    case ScenarioKind::Spectrum:
      result.report = detail::run_spectrum(sc, tolerance.value_or(1e-8));
      break;
    case ScenarioKind::Scatter:
      result.report = detail::run_scatter(sc, opts.coupling.value_or(sc.coupling),
                                          opts.enforce_conservation || sc.enforce_conservation);
      break;
    case ScenarioKind::Lattice:
      result.report = detail::run_lattice(sc);
      break;
  }
  return result;
}

/// Loads, runs and prints one scenario. Returns 0 on success, 1 when a
/// verification fails, 2 on any input error (diagnostic on `err`).
inline int run_scenario(const std::string& path, const RunOptions& opts, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  try {
    const Scenario sc = load_scenario(path);
    const RunResult result = execute(sc, opts);
    const OutputFormat format = opts.format.value_or(sc.format.value_or(OutputFormat::Table));
    out << emit_report(*result.report, format);
    return result.exit_code;
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace toyqft::cli

#endif  // TOYQFT_CLI_RUNNER_HPP
