// Shared helpers for the unit and acceptance suites: roster builders,
// generic coefficient draws, hand-derived eigenvector listings and
// spectrum comparison.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "toyqft/toyqft.hpp"

namespace fixtures {

using toyqft::Complex;
using toyqft::FockSpace;
using toyqft::Matrix;
using toyqft::ModeId;
using toyqft::ParticleMode;
using toyqft::Statistics;
using toyqft::Vector;

struct ModeSpec {
  std::string label;
  Statistics statistics;
  std::size_t species = 0;
};

inline std::vector<ParticleMode> roster(std::initializer_list<ModeSpec> specs) {
  std::vector<ParticleMode> out;
  for (const auto& s : specs) {
    ParticleMode m;
    m.id = out.size();
    m.label = s.label;
    m.statistics = s.statistics;
    m.species = s.species;
    out.push_back(std::move(m));
  }
  return out;
}

/// n modes of one statistics and species, labelled prefix1..prefixn,
/// appended after `base`.
inline std::vector<ParticleMode> append(std::vector<ParticleMode> base, std::size_t n, Statistics st,
                                        std::size_t species, const std::string& prefix) {
  for (std::size_t i = 0; i < n; ++i) {
    ParticleMode m;
    m.id = base.size();
    m.label = prefix + std::to_string(i + 1);
    m.statistics = st;
    m.species = species;
    base.push_back(std::move(m));
  }
  return base;
}

inline std::vector<ParticleMode> fermions(std::size_t n, std::size_t species = 0, const std::string& prefix = "p") {
  return append({}, n, Statistics::Fermion, species, prefix);
}

inline std::vector<ParticleMode> bosons(std::size_t n, std::size_t species = 0, const std::string& prefix = "q") {
  return append({}, n, Statistics::Boson, species, prefix);
}

/// K^s: s fermions, cutoff s.
inline FockSpace k_space(unsigned s) { return FockSpace(fermions(s), s); }

/// J^(n,s): n bosons of one species.
inline FockSpace j_space(std::size_t n, unsigned s) { return FockSpace(bosons(n), s); }

/// J^(n,m,s): n bosons p (species 0) and m bosons q (species 1).
inline FockSpace j_mixed(std::size_t n, std::size_t m, unsigned s) {
  return FockSpace(append(bosons(n, 0, "p"), m, Statistics::Boson, 1, "q"), s);
}

/// L^(m,n,s): m fermions p (species 0) and n bosons q (species 1).
inline FockSpace l_space(std::size_t m, std::size_t n, unsigned s) {
  return FockSpace(append(fermions(m, 0, "p"), n, Statistics::Boson, 1, "q"), s);
}

/// K^(n,n,s): n fermions p (species 0) and n fermions q (species 1).
inline FockSpace k_mixed(std::size_t n, unsigned s) {
  return FockSpace(append(fermions(n, 0, "p"), n, Statistics::Fermion, 1, "q"), s);
}

/// Complex coefficients with distinct moduli in [0.5, 2] and random phases,
/// so no accidental degeneracy merges the expected eigenvalue groups.
inline std::vector<Complex> generic_coefficients(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> modulus(0.5, 2.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (;;) {
    std::vector<Complex> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::polar(modulus(rng), angle(rng)));
    bool spread = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (std::abs(std::abs(out[i]) - std::abs(out[j])) < 0.1) spread = false;
      }
    }
    if (spread) return out;
  }
}

inline toyqft::FieldSpec field_spec(std::initializer_list<std::pair<ModeId, Complex>> terms) {
  toyqft::FieldSpec spec;
  for (const auto& [m, a] : terms) spec.terms.push_back({m, a});
  return spec;
}

/// Vector from (ket, amplitude) pairs, each ket written as a list of mode ids.
inline Vector ket_vector(const FockSpace& space, const std::vector<std::pair<std::vector<ModeId>, Complex>>& parts) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dimension()));
  for (const auto& [ids, amp] : parts) {
    const auto ket = toyqft::canonicalize(space.modes(), ids);
    v(static_cast<Eigen::Index>(space.index_of(ket->state))) += static_cast<double>(ket->sign) * amp;
  }
  return v;
}

/// Vector given in an explicit listing order of kets.
inline Vector listed_vector(const FockSpace& space, const std::vector<std::vector<ModeId>>& order,
                            const std::vector<Complex>& values) {
  std::vector<std::pair<std::vector<ModeId>, Complex>> parts;
  for (std::size_t i = 0; i < order.size(); ++i) parts.emplace_back(order[i], values[i]);
  return ket_vector(space, parts);
}

/// ||M v - lambda v|| / (||M||_2 ||v||)
inline double relative_residual(const Matrix& m, const Vector& v, double lambda) {
  const double mnorm = std::max(1e-300, m.jacobiSvd().singularValues()(0));
  return (m * v - lambda * v).norm() / (mnorm * v.norm());
}

struct EigenClaim {
  Vector vector;
  double lambda;
  std::string what;
};

/// Eigenvectors of eta(p1) = alpha a(p1) + conj(alpha) a(p1)* on K^s:
/// |alpha| |rest> +- conj(alpha) |p1 rest> for each rest without p1.
inline std::vector<EigenClaim> eta_eigenvectors(const FockSpace& k, Complex alpha) {
  std::vector<EigenClaim> out;
  for (const auto& st : k.basis()) {
    if (st.count(0) > 0 || st.total() + 1 > k.cutoff()) continue;
    std::vector<ModeId> rest = st.mode_sequence();
    std::vector<ModeId> with = rest;
    with.insert(with.begin(), 0);
    for (int sign : {1, -1}) {
      Vector v = ket_vector(k, {{rest, std::abs(alpha)}, {with, static_cast<double>(sign) * std::conj(alpha)}});
      out.push_back({v, sign * std::abs(alpha), "eta(p1) " + toyqft::ket_label(k.modes(), st)});
    }
  }
  return out;
}

/// K^2 field eta(p1)+eta(p2) with coefficients a, b.
inline std::vector<EigenClaim> k2_eigenvectors(const FockSpace& k2, Complex a, Complex b) {
  const double w = std::sqrt(std::norm(a) + std::norm(b));
  const std::vector<std::vector<ModeId>> order{{}, {0}, {1}, {0, 1}};
  auto vec = [&](std::vector<Complex> vals) { return listed_vector(k2, order, vals); };
  return {{vec({-a, -w, 0.0, std::conj(b)}), w, "K2 1"},
          {vec({w, std::conj(a), std::conj(b), 0.0}), w, "K2 2"},
          {vec({-a, w, 0.0, std::conj(b)}), -w, "K2 3"},
          {vec({-w, std::conj(a), std::conj(b), 0.0}), -w, "K2 4"}};
}

/// K^3 two-term field: the eigenvectors supported on |0>, |p1>, |p2>, |p1 p2>.
inline std::vector<EigenClaim> k3_low_eigenvectors(const FockSpace& k3, Complex a, Complex b) {
  const double w = std::sqrt(std::norm(a) + std::norm(b));
  const std::vector<std::vector<ModeId>> order{{}, {0}, {1}, {0, 1}};
  auto vec = [&](std::vector<Complex> vals) { return listed_vector(k3, order, vals); };
  return {{vec({-w, std::conj(a), std::conj(b), 0.0}), -w, "K3 5"},
          {vec({-a, w, 0.0, std::conj(b)}), -w, "K3 6"},
          {vec({w, std::conj(a), std::conj(b), 0.0}), w, "K3 7"},
          {vec({-a, -w, 0.0, std::conj(b)}), w, "K3 8"}};
}

/// J^(2,2) field with coefficients a, b.
inline std::vector<EigenClaim> j22_eigenvectors(const FockSpace& j22, Complex a, Complex b) {
  const double w = std::sqrt(std::norm(a) + std::norm(b));
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  const Complex ac = std::conj(a);
  const Complex bc = std::conj(b);
  const double d = std::norm(a) - std::norm(b);
  const std::vector<std::vector<ModeId>> order{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 1}};
  auto vec = [&](std::vector<Complex> vals) { return listed_vector(j22, order, vals); };
  return {{vec({-r2 * a * b, 0.0, 0.0, ac * b, 0.0, a * bc}), 0.0, "J22 1"},
          {vec({-r2 * a * a, 0.0, 0.0, d, r2 * a * bc, 0.0}), 0.0, "J22 2"},
          {vec({0.0, -b * w, a * w, -r2 * ac * b, d, r2 * a * bc}), w, "J22 3"},
          {vec({0.0, b * w, -a * w, -r2 * ac * b, d, r2 * a * bc}), -w, "J22 4"},
          {vec({w * w, r3 * ac * w, r3 * bc * w, r2 * ac * ac, 2.0 * ac * bc, r2 * bc * bc}), r3 * w, "J22 5"},
          {vec({w * w, -r3 * ac * w, -r3 * bc * w, r2 * ac * ac, 2.0 * ac * bc, r2 * bc * bc}), -r3 * w, "J22 6"}};
}

/// J^(1,1,2) interaction tau = {eta(p1), eta(q1)}/2, coefficients a (p1), b (q1).
inline std::vector<EigenClaim> j112_eigenvectors(const FockSpace& j112, Complex a, Complex b) {
  const double aa = std::abs(a);
  const double bb = std::abs(b);
  const double r2 = std::sqrt(2.0);
  const Complex ac = std::conj(a);
  const Complex bc = std::conj(b);
  // p1 = id 0, q1 = id 1
  const std::vector<std::vector<ModeId>> order{{}, {0}, {1}, {0, 1}, {0, 0}, {1, 1}};
  auto vec = [&](std::vector<Complex> vals) { return listed_vector(j112, order, vals); };
  const Complex z = 0.0;
  return {{vec({-b, z, z, z, z, r2 * bc}), 0.0, "J112 1"},
          {vec({-a, z, z, z, r2 * ac, z}), 0.0, "J112 2"},
          {vec({z, aa * b, a * bb, z, z, z}), aa * bb, "J112 3"},
          {vec({z, -aa * b, a * bb, z, z, z}), -aa * bb, "J112 4"},
          {vec({r2 * b / bc, z, z, 2.0 * b * aa / (a * bb), ac * b / (a * bc), 1.0}), r2 * aa * bb, "J112 5"},
          {vec({r2 * b / bc, z, z, -2.0 * b * aa / (a * bb), ac * b / (a * bc), 1.0}), -r2 * aa * bb, "J112 6"}};
}

/// J^(2,1,2) interaction tau = {eta(p1), eta(q1)}/2 with p1, p2 (species 0)
/// and q1 (species 1); coefficients a (p1), b (q1).
inline std::vector<EigenClaim> j212_eigenvectors(const FockSpace& j212, Complex a, Complex b) {
  const double ab = std::abs(a) * std::abs(b);
  const double r2 = std::sqrt(2.0);
  const Complex ac = std::conj(a);
  const Complex bc = std::conj(b);
  // p1 = 0, p2 = 1, q1 = 2
  const std::vector<std::vector<ModeId>> order{{}, {0}, {1}, {2}, {0, 0}, {1, 1}, {0, 1}, {0, 2}, {1, 2}, {2, 2}};
  auto vec = [&](std::vector<Complex> vals) { return listed_vector(j212, order, vals); };
  const Complex z = 0.0;
  return {{vec({-b, z, z, z, z, z, z, z, z, r2 * bc}), 0.0, "J212 1"},
          {vec({-a, z, z, z, r2 * ac, z, z, z, z, z}), 0.0, "J212 2"},
          {vec({z, z, z, z, z, 1.0, z, z, z, z}), 0.0, "J212 3"},
          {vec({z, z, 1.0, z, z, z, z, z, z, z}), 0.0, "J212 4"},
          {vec({z, ac * b, z, ab, z, z, z, z, z, z}), ab, "J212 5"},
          {vec({z, -ac * b, z, ab, z, z, z, z, z, z}), -ab, "J212 6"},
          {vec({z, z, z, z, z, z, ac * b, z, ab, z}), 0.5 * ab, "J212 7"},
          {vec({z, z, z, z, z, z, -ac * b, z, ab, z}), -0.5 * ab, "J212 8"},
          {vec({r2 * b / bc, z, z, z, ac * b / (a * bc), z, z, 2.0 * ac * b / ab, z, 1.0}), r2 * ab, "J212 9"},
          {vec({r2 * b / bc, z, z, z, ac * b / (a * bc), z, z, -2.0 * ac * b / ab, z, 1.0}), -r2 * ab, "J212 10"}};
}

/// One K^(2,2,4) interaction eigenvector; p1, p2 species 0 with coefficients
/// a, b and q1, q2 species 1 with c, d.
inline EigenClaim k224_eigenvector(const FockSpace& k224, Complex a, Complex b, Complex c, Complex d) {
  const double w1 = std::sqrt(std::norm(a) + std::norm(b));
  const double w2 = std::sqrt(std::norm(c) + std::norm(d));
  Vector v = ket_vector(k224, {{{0, 1}, -c * w1}, {{0, 2}, -b * w2}, {{1, 2}, a * w2}, {{0, 1, 2, 3}, std::conj(d) * w1}});
  return {v, -w1 * w2, "K224"};
}

/// Expected spectrum entry.
struct Level {
  double lambda;
  std::size_t multiplicity;
};

/// Sorted expected levels with equal values merged.
inline std::vector<Level> normalize_levels(std::vector<Level> levels, double tol) {
  std::sort(levels.begin(), levels.end(), [](const Level& x, const Level& y) { return x.lambda < y.lambda; });
  std::vector<Level> out;
  for (const auto& l : levels) {
    if (!out.empty() && std::abs(out.back().lambda - l.lambda) <= tol) {
      out.back().multiplicity += l.multiplicity;
    } else {
      out.push_back(l);
    }
  }
  return out;
}

/// Empty string when the grouped spectrum matches, else a description.
inline std::string compare_spectrum(const toyqft::SpectralDecomposition& d, std::vector<Level> expected,
                                    double rel_tol = 1e-8) {
  double radius = 0.0;
  for (const auto& g : d.groups()) radius = std::max(radius, std::abs(g.lambda));
  const double tol = rel_tol * std::max(1.0, radius);
  expected = normalize_levels(std::move(expected), tol);
  std::ostringstream os;
  os.precision(12);
  bool ok = expected.size() == d.groups().size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) {
    ok = std::abs(expected[i].lambda - d.groups()[i].lambda) <= tol &&
         expected[i].multiplicity == d.groups()[i].multiplicity;
  }
  if (ok) return {};
  os << "expected {";
  for (const auto& l : expected) os << " " << l.lambda << "x" << l.multiplicity;
  os << " } observed {";
  for (const auto& g : d.groups()) os << " " << g.lambda << "x" << g.multiplicity;
  os << " }";
  return os.str();
}

inline std::string describe(const toyqft::SpectralDecomposition& d) {
  std::ostringstream os;
  os.precision(10);
  os << "{";
  for (const auto& g : d.groups()) os << " " << g.lambda << "x" << g.multiplicity;
  os << " }";
  return os.str();
}

}  // namespace fixtures
