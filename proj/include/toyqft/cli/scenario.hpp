#ifndef TOYQFT_CLI_SCENARIO_HPP
#define TOYQFT_CLI_SCENARIO_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "toyqft/fields.hpp"
#include "toyqft/fock.hpp"

namespace toyqft::cli {

/// Malformed scenario input; the CLI maps it to exit code 2.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Dims, VerifyAlgebra, Spectrum, Scatter, Lattice };
enum class OutputFormat { Json, Csv, Table };
enum class SpectrumOperator { Field, Interaction, SelfInteraction };

inline const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Dims: return "dims";
    case ScenarioKind::VerifyAlgebra: return "verify";
    case ScenarioKind::Spectrum: return "spectrum";
    case ScenarioKind::Scatter: return "scatter";
    case ScenarioKind::Lattice: return "lattice";
  }
  return "?";
}

inline std::optional<ScenarioKind> parse_kind(const std::string& s) {
  if (s == "dims") return ScenarioKind::Dims;
  if (s == "verify") return ScenarioKind::VerifyAlgebra;
  if (s == "spectrum") return ScenarioKind::Spectrum;
  if (s == "scatter") return ScenarioKind::Scatter;
  if (s == "lattice") return ScenarioKind::Lattice;
  return std::nullopt;
}

inline std::optional<OutputFormat> parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "table") return OutputFormat::Table;
  return std::nullopt;
}

/// A mode named either by roster id or by label.
using ModeRef = std::variant<ModeId, std::string>;

struct RawTerm {
  ModeRef mode;
  Complex alpha;
};

/// Lattice collision parameters (scatter) or hyperboloid dump parameters (lattice).
struct LatticeParams {
  std::int64_t mass1 = 1;
  std::int64_t mass2 = 1;
  std::int64_t r = 1;
  std::int64_t x0 = 0;
  Statistics statistics1 = Statistics::Boson;
  Statistics statistics2 = Statistics::Boson;
};

struct Scenario {
  std::optional<ScenarioKind> kind;
  std::optional<OutputFormat> format;
  std::optional<double> tolerance;

  std::vector<ParticleMode> roster;
  std::optional<unsigned> cutoff;

  SpectrumOperator op = SpectrumOperator::Field;
  std::vector<RawTerm> phi;
  std::vector<RawTerm> psi;
  bool eigenvectors = false;

  LatticeParams lattice;
  std::vector<ModeRef> in_state;
  std::vector<std::vector<ModeRef>> out_states;
  double threshold = 1e-12;
  double coupling = 1.0;
  bool enforce_conservation = false;
  bool has_lattice = false;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw ScenarioError("field '" + where + "': " + what);
}

inline std::int64_t get_int(const json& j, const std::string& where, std::int64_t min_value) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < min_value) fail(where, "must be >= " + std::to_string(min_value));
  return v;
}

inline double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

inline Statistics get_statistics(const json& j, const std::string& where) {
  if (j == "fermion") return Statistics::Fermion;
  if (j == "boson") return Statistics::Boson;
  fail(where, "expected \"fermion\" or \"boson\"");
}

inline ModeRef get_mode_ref(const json& j, const std::string& where) {
  if (j.is_number_integer()) return static_cast<ModeId>(get_int(j, where, 0));
  if (j.is_string()) return j.get<std::string>();
  fail(where, "expected a mode id or label");
}

inline std::vector<ModeRef> get_state(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of mode ids or labels");
  std::vector<ModeRef> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_mode_ref(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<RawTerm> get_terms(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of {mode, re, im}");
  std::vector<RawTerm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& t = j[i];
    if (!t.is_object() || !t.contains("mode")) fail(at, "expected an object with 'mode'");
    const double re = t.contains("re") ? get_number(t["re"], at + ".re") : 0.0;
    const double im = t.contains("im") ? get_number(t["im"], at + ".im") : 0.0;
    out.push_back({get_mode_ref(t["mode"], at + ".mode"), Complex(re, im)});
  }
  return out;
}

inline std::vector<ParticleMode> get_roster(const json& j) {
  if (!j.is_array()) fail("roster", "expected an array of modes");
  std::vector<ParticleMode> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = "roster[" + std::to_string(i) + "]";
    const json& m = j[i];
    if (!m.is_object()) fail(at, "expected an object");
    ParticleMode mode;
    mode.id = m.contains("id") ? static_cast<ModeId>(get_int(m["id"], at + ".id", 0)) : i;
    mode.label = m.contains("label") ? m["label"].get<std::string>() : "m" + std::to_string(i + 1);
    if (!m.contains("statistics")) fail(at + ".statistics", "required");
    mode.statistics = get_statistics(m["statistics"], at + ".statistics");
    if (m.contains("mass")) mode.mass = get_int(m["mass"], at + ".mass", 0);
    if (m.contains("species")) mode.species = static_cast<std::size_t>(get_int(m["species"], at + ".species", 0));
    if (m.contains("momentum")) {
      const json& p = m["momentum"];
      if (!p.is_array() || p.size() != 4) fail(at + ".momentum", "expected 4 integers");
      FourVector v{};
      for (std::size_t k = 0; k < 4; ++k) {
        v[k] = get_int(p[k], at + ".momentum[" + std::to_string(k) + "]", INT64_MIN);
      }
      mode.momentum = v;
    }
    out.push_back(std::move(mode));
  }
  return out;
}

}  // namespace detail

/// Parses scenario JSON text. `source` names the input in diagnostics.
inline Scenario parse_scenario(const std::string& text, const std::string& source = "scenario") {
  using detail::fail;
  using detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(source + ": " + e.what());
  }
  if (!j.is_object()) throw ScenarioError(source + ": top level must be a JSON object");

  Scenario sc;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) fail("kind", "expected a string");
    sc.kind = parse_kind(j["kind"].get<std::string>());
    if (!sc.kind) fail("kind", "expected one of dims, verify, spectrum, scatter, lattice");
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) fail("format", "expected a string");
    sc.format = parse_format(j["format"].get<std::string>());
    if (!sc.format) fail("format", "expected json, csv or table");
  }
  if (j.contains("tolerance")) {
    sc.tolerance = detail::get_number(j["tolerance"], "tolerance");
    if (!(*sc.tolerance > 0.0)) fail("tolerance", "must be positive");
  }
  if (j.contains("cutoff")) sc.cutoff = static_cast<unsigned>(detail::get_int(j["cutoff"], "cutoff", 0));
  if (j.contains("roster")) sc.roster = detail::get_roster(j["roster"]);

  if (j.contains("operator")) {
    const json& op = j["operator"];
    if (op == "field") {
      sc.op = SpectrumOperator::Field;
    } else if (op == "interaction") {
      sc.op = SpectrumOperator::Interaction;
    } else if (op == "self_interaction") {
      sc.op = SpectrumOperator::SelfInteraction;
    } else {
      fail("operator", "expected field, interaction or self_interaction");
    }
  }
  if (j.contains("phi")) sc.phi = detail::get_terms(j["phi"], "phi");
  if (j.contains("psi")) sc.psi = detail::get_terms(j["psi"], "psi");
  if (j.contains("eigenvectors")) {
    if (!j["eigenvectors"].is_boolean()) fail("eigenvectors", "expected true or false");
    sc.eigenvectors = j["eigenvectors"].get<bool>();
  }

  if (j.contains("lattice")) {
    const json& l = j["lattice"];
    if (!l.is_object()) fail("lattice", "expected an object");
    sc.has_lattice = true;
    auto& p = sc.lattice;
    if (l.contains("mass")) p.mass1 = p.mass2 = detail::get_int(l["mass"], "lattice.mass", 0);
    if (l.contains("mass1")) p.mass1 = detail::get_int(l["mass1"], "lattice.mass1", 1);
    if (l.contains("mass2")) p.mass2 = detail::get_int(l["mass2"], "lattice.mass2", 1);
    if (l.contains("r")) p.r = detail::get_int(l["r"], "lattice.r", 0);
    if (l.contains("x0")) p.x0 = detail::get_int(l["x0"], "lattice.x0", 0);
    if (l.contains("statistics")) {
      p.statistics1 = p.statistics2 = detail::get_statistics(l["statistics"], "lattice.statistics");
    }
    if (l.contains("statistics1")) p.statistics1 = detail::get_statistics(l["statistics1"], "lattice.statistics1");
    if (l.contains("statistics2")) p.statistics2 = detail::get_statistics(l["statistics2"], "lattice.statistics2");
  }
  if (j.contains("in")) sc.in_state = detail::get_state(j["in"], "in");
  if (j.contains("out")) {
    const json& outs = j["out"];
    if (!outs.is_array()) fail("out", "expected an array of states");
    for (std::size_t i = 0; i < outs.size(); ++i) {
      sc.out_states.push_back(detail::get_state(outs[i], "out[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("threshold")) {
    sc.threshold = detail::get_number(j["threshold"], "threshold");
    if (sc.threshold < 0.0) fail("threshold", "must be nonnegative");
  }
  if (j.contains("coupling")) sc.coupling = detail::get_number(j["coupling"], "coupling");
  if (j.contains("enforce_conservation")) {
    if (!j["enforce_conservation"].is_boolean()) fail("enforce_conservation", "expected true or false");
    sc.enforce_conservation = j["enforce_conservation"].get<bool>();
  }
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path);
}

/// Resolves a mode reference against a roster (id or label).
inline ModeId resolve(std::span<const ParticleMode> roster, const ModeRef& ref, const std::string& where) {
  if (const auto* id = std::get_if<ModeId>(&ref)) {
    if (*id >= roster.size()) throw ScenarioError("field '" + where + "': unknown mode id " + std::to_string(*id));
    return *id;
  }
  const auto& label = std::get<std::string>(ref);
  for (const auto& m : roster) {
    if (m.label == label) return m.id;
  }
  throw ScenarioError("field '" + where + "': unknown mode label '" + label + "'");
}

inline FieldSpec resolve_field(std::span<const ParticleMode> roster, const std::vector<RawTerm>& terms,
                               const std::string& where) {
  FieldSpec spec;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    spec.terms.push_back({resolve(roster, terms[i].mode, where + "[" + std::to_string(i) + "].mode"), terms[i].alpha});
  }
  return spec;
}

/// Canonical ket for a list of mode references; the sign is dropped since
/// states name basis kets.
inline OccupationState resolve_state(std::span<const ParticleMode> roster, const std::vector<ModeRef>& refs,
                                     const std::string& where) {
  std::vector<ModeId> ids;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    ids.push_back(resolve(roster, refs[i], where + "[" + std::to_string(i) + "]"));
  }
  auto ket = canonicalize(roster, ids);
  if (!ket) throw ScenarioError("field '" + where + "': repeated fermion gives the zero vector");
  return ket->state;
}

}  // namespace toyqft::cli

#endif  // TOYQFT_CLI_SCENARIO_HPP
