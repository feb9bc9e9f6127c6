#ifndef TOYQFT_CLI_REPORT_HPP
#define TOYQFT_CLI_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "toyqft/cli/scenario.hpp"
#include "toyqft/fock.hpp"
#include "toyqft/ladder.hpp"
#include "toyqft/spacetime.hpp"
#include "toyqft/verify.hpp"

namespace toyqft::cli {

using ojson = nlohmann::ordered_json;

struct BasisEntry {
  std::string label;
  std::vector<ModeId> fermions;
  std::vector<std::pair<ModeId, unsigned>> bosons;
};

struct DimsReport {
  std::size_t modes = 0;
  unsigned cutoff = 0;
  std::size_t dimension = 0;
  std::vector<BasisEntry> basis;
};

struct VerifyReport {
  std::vector<IdentityCheck> checks;
  std::uint64_t seed = 0;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass(); });
  }
};

struct SpectrumLine {
  double lambda = 0.0;
  std::size_t multiplicity = 0;
  std::vector<std::vector<Complex>> vectors;  // filled only when eigenvectors were requested
};

struct SpectrumReport {
  std::string op;
  std::size_t dimension = 0;
  std::vector<std::string> basis;
  std::vector<SpectrumLine> lines;
  bool with_vectors = false;
};

struct ScatterLine {
  std::string out_state;
  double probability = 0.0;
  bool conserves_p = false;
};

struct ScatterReport {
  std::string in_state;
  std::size_t dimension = 0;
  double coupling = 1.0;
  std::vector<ScatterLine> rows;
};

struct LatticeReport {
  std::int64_t mass = 0;
  std::int64_t r = 0;
  std::int64_t x0 = 0;
  std::int64_t volume = 0;
  std::vector<EnergyMomentum> points;
};

using Report = std::variant<DimsReport, VerifyReport, SpectrumReport, ScatterReport, LatticeReport>;

/// `%.12g`, with values below 1e-12 in magnitude shown as 0.
inline std::string format_real(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline ojson complex_json(Complex z) { return ojson::array({z.real(), z.imag()}); }

/// Dense operator as {dimension, entries}, entries row-major [re, im] pairs.
inline ojson operator_json(const OperatorMatrix& op) {
  ojson rows = ojson::array();
  for (std::size_t r = 0; r < op.dimension(); ++r) {
    ojson row = ojson::array();
    for (std::size_t c = 0; c < op.dimension(); ++c) row.push_back(complex_json(op(r, c)));
    rows.push_back(std::move(row));
  }
  return ojson{{"dimension", op.dimension()}, {"entries", std::move(rows)}};
}

inline BasisEntry basis_entry(const FockSpace& space, const OccupationState& st) {
  return {ket_label(space.modes(), st), st.fermions(), st.bosons()};
}

inline ojson basis_json(const std::vector<BasisEntry>& basis) {
  ojson out = ojson::array();
  for (const auto& b : basis) {
    ojson bosons = ojson::array();
    for (const auto& [id, c] : b.bosons) bosons.push_back(ojson::array({id, c}));
    out.push_back(ojson{{"label", b.label}, {"fermions", b.fermions}, {"bosons", std::move(bosons)}});
  }
  return out;
}

namespace detail {

// Column-aligned text table; the first row is the header.
inline std::string aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream os;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      if (i > 0) os << "  ";
      os << rows[r][i];
      if (i + 1 < rows[r].size()) os << std::string(width[i] - rows[r][i].size(), ' ');
    }
    os << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i > 0 ? 2 : 0);
      os << std::string(total, '-') << '\n';
    }
  }
  return os.str();
}

inline std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i > 0 ? "," : "") << csv_field(row[i]);
    os << "\r\n";
  }
  return os.str();
}

inline std::string fermion_list(const std::vector<ModeId>& ids) {
  std::string s;
  for (ModeId id : ids) s += (s.empty() ? "" : " ") + std::to_string(id);
  return s;
}

inline std::string boson_list(const std::vector<std::pair<ModeId, unsigned>>& bosons) {
  std::string s;
  for (const auto& [id, c] : bosons) s += (s.empty() ? "" : " ") + std::to_string(id) + ":" + std::to_string(c);
  return s;
}

inline std::string complex_text(Complex z) {
  return format_real(z.real()) + (z.imag() < 0 && std::abs(z.imag()) >= 1e-12 ? "" : "+") + format_real(z.imag()) + "i";
}

struct Emitter {
  OutputFormat format;

  std::string operator()(const DimsReport& r) const {
    if (format == OutputFormat::Json) {
      ojson j{{"kind", "dims"}, {"modes", r.modes}, {"cutoff", r.cutoff}, {"dimension", r.dimension},
              {"basis", basis_json(r.basis)}};
      return j.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> rows{{"index", "state", "fermions", "bosons"}};
    for (std::size_t i = 0; i < r.basis.size(); ++i) {
      rows.push_back({std::to_string(i), r.basis[i].label, fermion_list(r.basis[i].fermions),
                      boson_list(r.basis[i].bosons)});
    }
    if (format == OutputFormat::Csv) return csv(rows);
    return "dim = " + std::to_string(r.dimension) + "\n\n" + aligned(rows);
  }

  std::string operator()(const VerifyReport& r) const {
    if (format == OutputFormat::Json) {
      ojson checks = ojson::array();
      for (const auto& c : r.checks) {
        checks.push_back(ojson{{"identity", c.identity},
                               {"pass", c.pass()},
                               {"max_violation", c.max_violation},
                               {"tolerance", c.tolerance},
                               {"instances", c.instances}});
      }
      ojson j{{"kind", "verify"}, {"seed", r.seed}, {"all_pass", r.all_pass()}, {"checks", std::move(checks)}};
      return j.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> rows{{"identity", "result", "max_violation", "tolerance", "instances"}};
    for (const auto& c : r.checks) {
      char viol[32];
      char tol[32];
      std::snprintf(viol, sizeof viol, "%.3e", c.max_violation);
      std::snprintf(tol, sizeof tol, "%.1e", c.tolerance);
      rows.push_back({c.identity, c.pass() ? "PASS" : "FAIL", viol, tol, std::to_string(c.instances)});
    }
    if (format == OutputFormat::Csv) return csv(rows);
    return aligned(rows) + (r.all_pass() ? "all identities hold\n" : "some identities FAILED\n");
  }

  std::string operator()(const SpectrumReport& r) const {
    if (format == OutputFormat::Json) {
      ojson lines = ojson::array();
      for (const auto& l : r.lines) {
        ojson line{{"lambda", std::abs(l.lambda) < 1e-12 ? 0.0 : l.lambda}, {"multiplicity", l.multiplicity}};
        if (r.with_vectors) {
          ojson vecs = ojson::array();
          for (const auto& v : l.vectors) {
            ojson vj = ojson::array();
            for (Complex z : v) vj.push_back(complex_json(z));
            vecs.push_back(std::move(vj));
          }
          line["eigenvectors"] = std::move(vecs);
        }
        lines.push_back(std::move(line));
      }
      ojson j{{"kind", "spectrum"}, {"operator", r.op}, {"dimension", r.dimension}, {"spectrum", std::move(lines)}};
      if (r.with_vectors) j["basis"] = r.basis;
      return j.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> rows{{"lambda", "multiplicity"}};
    for (const auto& l : r.lines) rows.push_back({format_real(l.lambda), std::to_string(l.multiplicity)});
    if (format == OutputFormat::Csv && !r.with_vectors) return csv(rows);
    if (format == OutputFormat::Csv) {
      std::vector<std::vector<std::string>> vrows{{"lambda", "vector", "state", "re", "im"}};
      for (const auto& l : r.lines) {
        for (std::size_t k = 0; k < l.vectors.size(); ++k) {
          for (std::size_t i = 0; i < l.vectors[k].size(); ++i) {
            const Complex z = l.vectors[k][i];
            vrows.push_back({format_real(l.lambda), std::to_string(k), r.basis[i], format_real(z.real()),
                             format_real(z.imag())});
          }
        }
      }
      return csv(vrows);
    }
    std::string out = aligned(rows);
    if (r.with_vectors) {
      out += "\nbasis:";
      for (const auto& b : r.basis) out += " " + b;
      out += "\n";
      for (const auto& l : r.lines) {
        for (const auto& v : l.vectors) {
          out += format_real(l.lambda) + ":";
          for (Complex z : v) out += " " + complex_text(z);
          out += "\n";
        }
      }
    }
    return out;
  }

  std::string operator()(const ScatterReport& r) const {
    if (format == OutputFormat::Json) {
      ojson rows = ojson::array();
      for (const auto& row : r.rows) {
        rows.push_back(ojson{{"out_state", row.out_state}, {"probability", row.probability},
                             {"conserves_p", row.conserves_p}});
      }
      ojson j{{"kind", "scatter"}, {"in_state", r.in_state}, {"dimension", r.dimension},
              {"coupling", r.coupling}, {"rows", std::move(rows)}};
      return j.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> rows{{"out_state", "probability", "conserves_p"}};
    for (const auto& row : r.rows) {
      rows.push_back({row.out_state, format_real(row.probability), row.conserves_p ? "true" : "false"});
    }
    if (format == OutputFormat::Csv) return csv(rows);
    return "in = " + r.in_state + "\n\n" + aligned(rows);
  }

  std::string operator()(const LatticeReport& r) const {
    if (format == OutputFormat::Json) {
      ojson pts = ojson::array();
      for (const auto& p : r.points) pts.push_back(p.as_four_vector());
      ojson j{{"kind", "lattice"}, {"mass", r.mass}, {"r", r.r}, {"x0", r.x0}, {"volume", r.volume},
              {"points", std::move(pts)}};
      return j.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> rows{{"p0", "p1", "p2", "p3"}};
    for (const auto& p : r.points) {
      rows.push_back({std::to_string(p.p0), std::to_string(p.p[0]), std::to_string(p.p[1]), std::to_string(p.p[2])});
    }
    if (format == OutputFormat::Csv) return csv(rows);
    return "V(" + std::to_string(r.x0) + ") = " + std::to_string(r.volume) + "\n" + std::to_string(r.points.size()) +
           " points with mass " + std::to_string(r.mass) + ", p0 <= " + std::to_string(r.r) + "\n\n" + aligned(rows);
  }
};

}  // namespace detail

inline std::string emit_report(const Report& report, OutputFormat format) {
  return std::visit(detail::Emitter{format}, report);
}

}  // namespace toyqft::cli

#endif  // TOYQFT_CLI_REPORT_HPP
