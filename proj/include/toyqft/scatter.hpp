#ifndef TOYQFT_SCATTER_HPP
#define TOYQFT_SCATTER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "toyqft/error.hpp"
#include "toyqft/fields.hpp"
#include "toyqft/fock.hpp"
#include "toyqft/ladder.hpp"
#include "toyqft/spacetime.hpp"
#include "toyqft/spectral.hpp"

namespace toyqft {

/// Species tags used by build_roster: the mass-m1 field and the mass-m2 field.
inline constexpr std::size_t kFirstSpecies = 0;
inline constexpr std::size_t kSecondSpecies = 1;

/// One mode per hyperboloid point of mass m1 (labels p1, p2, ...) followed
/// by one per point of mass m2 (q1, q2, ...), each carrying its 4-momentum.
inline std::vector<ParticleMode> build_roster(std::int64_t mass1, std::int64_t mass2, std::int64_t r,
                                              Statistics statistics1 = Statistics::Boson,
                                              Statistics statistics2 = Statistics::Boson) {
  if (mass1 < 1 || mass2 < 1) throw Error(Errc::InvalidArgument, "masses must be at least 1");
  const auto first = hyperboloid(mass1, r);
  const auto second = hyperboloid(mass2, r);
  if (first.empty() || second.empty()) {
    throw Error(Errc::EmptyRoster, "no hyperboloid point with p0 <= " + std::to_string(r));
  }
  std::vector<ParticleMode> roster;
  roster.reserve(first.size() + second.size());
  auto append = [&](const std::vector<EnergyMomentum>& points, const char* prefix,
                    Statistics statistics, std::int64_t mass, std::size_t species) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      ParticleMode m;
      m.id = roster.size();
      m.label = prefix + std::to_string(i + 1);
      m.statistics = statistics;
      m.mass = mass;
      m.momentum = points[i].as_four_vector();
      m.species = species;
      roster.push_back(std::move(m));
    }
  };
  append(first, "p", statistics1, mass1, kFirstSpecies);
  append(second, "q", statistics2, mass2, kSecondSpecies);
  return roster;
}

namespace detail {

inline SparseMatrix density_sparse(const FockSpace& space, const LatticePoint& x, std::int64_t r,
                                   std::int64_t mass1, std::int64_t mass2) {
  const SparseMatrix phi = free_field_sparse(space, field_terms_at(space, x, r, mass1, kFirstSpecies));
  const SparseMatrix psi = free_field_sparse(space, field_terms_at(space, x, r, mass2, kSecondSpecies));
  SparseMatrix tau = SparseMatrix(phi * psi) + SparseMatrix(psi * phi);
  return 0.5 * tau;
}

}  // namespace detail

/// tau(x, r) = {phi(x, r), psi(x, r)} / 2, phi from the first species and
/// psi from the second (see build_roster).
inline OperatorMatrix hamiltonian_density(const FockSpace& space, const LatticePoint& x, std::int64_t r,
                                          std::int64_t mass1, std::int64_t mass2) {
  return {space, Matrix(detail::density_sparse(space, x, r, mass1, mass2))};
}

/// H(x0, r) = (1 / V(x0)) sum over |x|_3 <= x0 of tau((x0, x), r).
/// Summation follows space_slice order, so the result is deterministic.
inline OperatorMatrix hamiltonian(const FockSpace& space, std::int64_t x0, std::int64_t r,
                                  std::int64_t mass1, std::int64_t mass2) {
  const auto points = space_slice(x0);
  const auto n = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix sum(n, n);
  for (const auto& x : points) sum += detail::density_sparse(space, x, r, mass1, mass2);
  Matrix h(sum);
  h /= static_cast<double>(points.size());
  return {space, std::move(h)};
}

/// S = exp(i g H) via the spectral representation of H. The coupling g is
/// an extension knob; g = 1 is the plain exp(iH).
inline OperatorMatrix scattering_operator(const OperatorMatrix& h, double coupling = 1.0) {
  const SpectralDecomposition d = eigh(coupling == 1.0 ? h : Complex(coupling, 0.0) * h);
  return {h.space(), unitary_exp(d)};
}

/// <out| S |in>
inline Complex amplitude(const OperatorMatrix& s, const OccupationState& in, const OccupationState& out) {
  const FockSpace& space = s.space();
  return s(space.index_of(out), space.index_of(in));
}

inline double probability(const OperatorMatrix& s, const OccupationState& in, const OccupationState& out) {
  return std::norm(amplitude(s, in, out));
}

/// Summed 4-momentum of a state; modes without momentum count as zero.
inline FourVector total_momentum(const FockSpace& space, const OccupationState& state) {
  FourVector total{0, 0, 0, 0};
  auto add = [&](ModeId id, unsigned count) {
    const auto& m = space.mode(id);
    if (!m.momentum) return;
    for (std::size_t k = 0; k < 4; ++k) total[k] += static_cast<std::int64_t>(count) * (*m.momentum)[k];
  };
  for (ModeId id : state.fermions()) add(id, 1);
  for (const auto& [id, c] : state.bosons()) add(id, c);
  return total;
}

struct ProbabilityRow {
  OccupationState out;
  double probability = 0.0;
  bool conserves_momentum = false;
};

/// Every out basis ket with |<out|S|in>|^2 > threshold, most probable first.
/// Ties keep basis order.
inline std::vector<ProbabilityRow> probability_table(const OperatorMatrix& s, const OccupationState& in,
                                                     double threshold = 0.0) {
  if (threshold < 0.0) throw Error(Errc::InvalidArgument, "threshold must be nonnegative");
  const FockSpace& space = s.space();
  const std::size_t col = space.index_of(in);
  const FourVector in_momentum = total_momentum(space, in);
  std::vector<ProbabilityRow> rows;
  for (std::size_t row = 0; row < space.dimension(); ++row) {
    const double p = std::norm(s(row, col));
    if (p <= threshold) continue;
    const OccupationState& out = space.state_at(row);
    rows.push_back({out, p, total_momentum(space, out) == in_momentum});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ProbabilityRow& a, const ProbabilityRow& b) { return a.probability > b.probability; });
  return rows;
}

/// Everything needed to run one lattice collision.
struct ScatterScenario {
  std::int64_t mass1 = 1;
  std::int64_t mass2 = 1;
  std::int64_t r = 1;
  unsigned cutoff = 2;
  std::int64_t x0 = 0;
  Statistics statistics1 = Statistics::Boson;
  Statistics statistics2 = Statistics::Boson;
  OccupationState in_state;
  std::vector<OccupationState> out_states;
  double coupling = 1.0;
};

struct ScatterResult {
  FockSpace space;
  OperatorMatrix hamiltonian;
  OperatorMatrix scattering;
};

inline ScatterResult simulate(const ScatterScenario& sc) {
  FockSpace space(build_roster(sc.mass1, sc.mass2, sc.r, sc.statistics1, sc.statistics2), sc.cutoff);
  if (!space.find(sc.in_state)) throw Error(Errc::NotInBasis, "in-state outside the truncated space");
  for (const auto& out : sc.out_states) {
    if (!space.find(out)) throw Error(Errc::NotInBasis, "out-state outside the truncated space");
  }
  OperatorMatrix h = hamiltonian(space, sc.x0, sc.r, sc.mass1, sc.mass2);
  OperatorMatrix s = scattering_operator(h, sc.coupling);
  return {std::move(space), std::move(h), std::move(s)};
}

}  // namespace toyqft

#endif  // TOYQFT_SCATTER_HPP
