#ifndef TOYQFT_VERIFY_HPP
#define TOYQFT_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "toyqft/fock.hpp"
#include "toyqft/ladder.hpp"

namespace toyqft {

struct IdentityCheck {
  std::string identity;
  double max_violation = 0.0;
  double tolerance = 0.0;
  std::size_t instances = 0;  // operator pairs / modes checked; 0 means not applicable

  bool pass() const noexcept { return max_violation <= tolerance; }
};

namespace detail {

// Max |M_ij| over the columns whose basis ket satisfies `keep`.
template <typename Pred>
double max_abs_columns(const FockSpace& space, const Matrix& m, Pred keep) {
  double worst = 0.0;
  for (std::size_t c = 0; c < space.dimension(); ++c) {
    if (!keep(space.state_at(c))) continue;
    worst = std::max(worst, m.col(static_cast<Eigen::Index>(c)).cwiseAbs().maxCoeff());
  }
  return worst;
}

struct CheckAccumulator {
  IdentityCheck check;
  void add(double violation) {
    check.max_violation = std::max(check.max_violation, violation);
    ++check.instances;
  }
};

}  // namespace detail

/// True when no fermion creation is ever blocked by the cutoff: a pure
/// fermion roster with at most `cutoff` modes.
inline bool untruncated_fermion_space(const FockSpace& space) {
  return space.mode_count() <= space.cutoff() &&
         std::all_of(space.modes().begin(), space.modes().end(),
                     [](const ParticleMode& m) { return m.statistics == Statistics::Fermion; });
}

/// Full-space CAR defect for same-species fermion pairs:
/// max over pairs of |{a_i,a_j}|, |{a_i*,a_j*}|, |{a_i,a_j*} - delta_ij I|.
inline double car_violation(const FockSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  const Matrix id = Matrix::Identity(n, n);
  double worst = 0.0;
  for (const auto& mi : space.modes()) {
    if (mi.statistics != Statistics::Fermion) continue;
    const Matrix ai = annihilator(space, mi.id).entries();
    for (const auto& mj : space.modes()) {
      if (mj.statistics != Statistics::Fermion || mj.species != mi.species) continue;
      const Matrix aj = annihilator(space, mj.id).entries();
      const Matrix ajd = aj.adjoint();
      worst = std::max(worst, max_abs(ai * aj + aj * ai));
      worst = std::max(worst, max_abs(ai.adjoint() * ajd + ajd * ai.adjoint()));
      const Matrix expected = mi.id == mj.id ? id : Matrix::Zero(n, n);
      worst = std::max(worst, max_abs(ai * ajd + ajd * ai - expected));
    }
  }
  return worst;
}

/// Runs every ladder-algebra identity that applies to the roster.
///
/// Identities that hold only below the cutoff are checked on kets with
/// total < s; boundary kets (total = s) get their own rules. Random AC-operator
/// coefficients come from `seed`.
inline std::vector<IdentityCheck> verify_algebra(const FockSpace& space, double tol = 1e-12,
                                                 std::uint64_t seed = 20170101) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  const unsigned s = space.cutoff();
  const Matrix id = Matrix::Identity(n, n);
  auto below = [s](const OccupationState& st) { return st.total() < s; };
  auto boundary = [s](const OccupationState& st) { return st.total() == s; };

  std::vector<Matrix> a;
  for (const auto& m : space.modes()) a.push_back(annihilator(space, m.id).entries());

  detail::CheckAccumulator adjoint{{"creator = adjoint(annihilator)", 0.0, 0.0, 0}};
  for (const auto& m : space.modes()) {
    adjoint.add(max_abs(creator(space, m.id).entries() - a[m.id].adjoint()));
  }

  detail::CheckAccumulator car_aa{{"{a_i, a_j} = 0 (same-species fermions)", 0.0, tol, 0}};
  detail::CheckAccumulator car_cc{{"{a_i*, a_j*} = 0 (same-species fermions)", 0.0, tol, 0}};
  detail::CheckAccumulator car_full{{"{a_i, a_j*} = delta_ij I (untruncated fermion space)", 0.0, tol, 0}};
  detail::CheckAccumulator car_below{{"{a_i, a_j*} = delta_ij I below cutoff", 0.0, tol, 0}};
  detail::CheckAccumulator car_edge{{"{a_i, a_i*} psi = N_i psi on boundary", 0.0, tol, 0}};
  detail::CheckAccumulator mix_aa{{"[a_i, a_j] = 0 (commuting species)", 0.0, tol, 0}};
  detail::CheckAccumulator mix_ac{{"[a_i, a_j*] = 0 below cutoff (commuting species)", 0.0, tol, 0}};
  detail::CheckAccumulator ccr_aa{{"[a_j, a_k] = 0 (bosons)", 0.0, tol, 0}};
  detail::CheckAccumulator ccr_cc{{"[a_j*, a_k*] = 0 (bosons)", 0.0, tol, 0}};
  detail::CheckAccumulator ccr_below{{"[a_j, a_k*] = delta_jk I below cutoff (bosons)", 0.0, tol, 0}};
  detail::CheckAccumulator ccr_edge{{"[a_j, a_j*] psi = -N_j psi on boundary (bosons)", 0.0, tol, 0}};
  detail::CheckAccumulator ccr_edge_off{
      {"[a_j, a_k*] psi = -sqrt(N_j (N_k + 1)) |psi - q_j + q_k> on boundary (bosons, j != k)", 0.0, tol, 0}};

  const bool untruncated = untruncated_fermion_space(space);
  for (const auto& mi : space.modes()) {
    for (const auto& mj : space.modes()) {
      const Matrix& ai = a[mi.id];
      const Matrix& aj = a[mj.id];
      const Matrix ajd = aj.adjoint();
      const bool fermi_i = mi.statistics == Statistics::Fermion;
      const bool fermi_j = mj.statistics == Statistics::Fermion;
      const Matrix expected = mi.id == mj.id ? id : Matrix::Zero(n, n);
      if (fermi_i && fermi_j && mi.species == mj.species) {
        car_aa.add(max_abs(ai * aj + aj * ai));
        car_cc.add(max_abs(ai.adjoint() * ajd + ajd * ai.adjoint()));
        const Matrix anti = ai * ajd + ajd * ai;
        if (untruncated) car_full.add(max_abs(anti - expected));
        car_below.add(detail::max_abs_columns(space, anti - expected, below));
        if (mi.id == mj.id) {
          double worst = 0.0;
          for (std::size_t c = 0; c < space.dimension(); ++c) {
            const auto& st = space.state_at(c);
            if (!boundary(st)) continue;
            Vector v = anti.col(static_cast<Eigen::Index>(c));
            v(static_cast<Eigen::Index>(c)) -= static_cast<double>(st.count(mi.id));
            worst = std::max(worst, v.cwiseAbs().maxCoeff());
          }
          car_edge.add(worst);
        }
      } else if (!fermi_i && !fermi_j) {
        ccr_aa.add(max_abs(ai * aj - aj * ai));
        ccr_cc.add(max_abs(ai.adjoint() * ajd - ajd * ai.adjoint()));
        const Matrix comm = ai * ajd - ajd * ai;
        ccr_below.add(detail::max_abs_columns(space, comm - expected, below));
        double worst = 0.0;
        for (std::size_t c = 0; c < space.dimension(); ++c) {
          const auto& st = space.state_at(c);
          if (!boundary(st)) continue;
          Vector want = Vector::Zero(n);
          if (mi.id == mj.id) {
            want(static_cast<Eigen::Index>(c)) = -static_cast<double>(st.count(mi.id));
          } else if (st.count(mi.id) > 0) {
            const auto moved = st.without_one(mi.id)->with_one(mj.id, Statistics::Boson);
            want(static_cast<Eigen::Index>(space.index_of(*moved))) =
                -std::sqrt(static_cast<double>(st.count(mi.id)) * (st.count(mj.id) + 1.0));
          }
          worst = std::max(worst, (comm.col(static_cast<Eigen::Index>(c)) - want).cwiseAbs().maxCoeff());
        }
        (mi.id == mj.id ? ccr_edge : ccr_edge_off).add(worst);
      } else if (mi.id != mj.id) {
        mix_aa.add(max_abs(ai * aj - aj * ai));
        mix_ac.add(detail::max_abs_columns(space, ai * ajd - ajd * ai, below));
      }
    }
  }

  // AC-operators with seeded random coefficients.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> alpha;
  for (std::size_t k = 0; k < space.mode_count(); ++k) alpha.emplace_back(normal(rng), normal(rng));
  detail::CheckAccumulator eta_herm{{"eta = alpha a + conj(alpha) a* is Hermitian", 0.0, 0.0, 0}};
  detail::CheckAccumulator eta_car{
      {"{eta_i, eta_j} = 2 |alpha_i|^2 delta_ij I (untruncated fermion space)", 0.0, tol, 0}};
  std::vector<Matrix> eta;
  for (const auto& m : space.modes()) {
    eta.push_back(ac_operator(space, m.id, alpha[m.id]).entries());
    eta_herm.add(max_abs(eta.back() - eta.back().adjoint()));
  }
  if (untruncated) {
    for (const auto& mi : space.modes()) {
      for (const auto& mj : space.modes()) {
        if (mi.species != mj.species) continue;
        const Matrix expected =
            mi.id == mj.id ? Matrix(2.0 * std::norm(alpha[mi.id]) * id) : Matrix(Matrix::Zero(n, n));
        eta_car.add(max_abs(eta[mi.id] * eta[mj.id] + eta[mj.id] * eta[mi.id] - expected));
      }
    }
  }

  std::vector<IdentityCheck> out;
  for (auto* acc : {&adjoint, &car_aa, &car_cc, &car_full, &car_below, &car_edge, &mix_aa, &mix_ac, &ccr_aa,
                    &ccr_cc, &ccr_below, &ccr_edge, &ccr_edge_off, &eta_herm, &eta_car}) {
    if (acc->check.instances > 0) out.push_back(acc->check);
  }
  return out;
}

}  // namespace toyqft

#endif  // TOYQFT_VERIFY_HPP
