#ifndef TOYQFT_LADDER_HPP
#define TOYQFT_LADDER_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "toyqft/error.hpp"
#include "toyqft/fock.hpp"

namespace toyqft {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Largest entry modulus; the norm every algebraic identity is checked in.
inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Dense complex operator on one FockSpace. Arithmetic is only defined
/// between operators on the same space.
class OperatorMatrix {
 public:
  OperatorMatrix(FockSpace space, Matrix entries)
      : space_(std::move(space)), entries_(std::move(entries)) {
    const auto n = static_cast<Eigen::Index>(space_.dimension());
    if (entries_.rows() != n || entries_.cols() != n) {
      throw Error(Errc::SpaceMismatch, "matrix shape does not match space dimension");
    }
  }

  static OperatorMatrix zero(const FockSpace& space) {
    const auto n = static_cast<Eigen::Index>(space.dimension());
    return {space, Matrix::Zero(n, n)};
  }

  static OperatorMatrix identity(const FockSpace& space) {
    const auto n = static_cast<Eigen::Index>(space.dimension());
    return {space, Matrix::Identity(n, n)};
  }

  const FockSpace& space() const noexcept { return space_; }
  const Matrix& entries() const noexcept { return entries_; }
  std::size_t dimension() const noexcept { return space_.dimension(); }

  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  OperatorMatrix adjoint() const { return {space_, entries_.adjoint()}; }

  /// max |A - A^†|
  double hermiticity_defect() const { return max_abs(entries_ - entries_.adjoint()); }

  bool is_hermitian(double tol = 0.0) const { return hermiticity_defect() <= tol; }

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_space(a, b);
    return {a.space_, a.entries_ + b.entries_};
  }
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_space(a, b);
    return {a.space_, a.entries_ - b.entries_};
  }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_space(a, b);
    return {a.space_, a.entries_ * b.entries_};
  }
  friend OperatorMatrix operator*(Complex c, const OperatorMatrix& a) {
    return {a.space_, c * a.entries_};
  }

  static void require_same_space(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!(a.space_ == b.space_)) {
      throw Error(Errc::SpaceMismatch, "operators act on different Fock spaces");
    }
  }

 private:
  FockSpace space_;
  Matrix entries_;
};

/// Sign picked up by a ladder operator on `mode` acting on `state`.
///
/// Fermion kets are stored with ids ascending. Bringing p_j to the front of
/// the ket (the form the defining relation a(p_j)|p_j ...> = |...> is written
/// in) passes every same-species fermion stored before it, so the sign is
/// (-1)^(number of same-species fermions preceding p_j). Bosons, and fermions
/// of other species, commute with p_j and contribute nothing.
inline int fermion_sign(const FockSpace& space, ModeId mode, const OccupationState& state) {
  const ParticleMode& target = space.mode(mode);
  if (target.statistics == Statistics::Boson) return 1;
  int sign = 1;
  for (ModeId id : state.fermions()) {
    if (id >= mode) break;
    if (space.mode(id).species == target.species) sign = -sign;
  }
  return sign;
}

/// a(mode) in sparse form. One nonzero per occupied column at most.
inline SparseMatrix annihilator_sparse(const FockSpace& space, ModeId mode) {
  const ParticleMode& m = space.mode(mode);
  const auto n = static_cast<Eigen::Index>(space.dimension());
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::size_t col = 0; col < space.dimension(); ++col) {
    const OccupationState& state = space.state_at(col);
    const unsigned k = state.count(mode);
    if (k == 0) continue;
    auto lowered = state.without_one(mode);
    const double value = m.statistics == Statistics::Fermion
                             ? static_cast<double>(fermion_sign(space, mode, state))
                             : std::sqrt(static_cast<double>(k));
    triplets.emplace_back(static_cast<Eigen::Index>(space.index_of(*lowered)),
                          static_cast<Eigen::Index>(col), Complex(value, 0.0));
  }
  SparseMatrix out(n, n);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

/// a(mode)^* built from the creation rule itself: add one particle, with
/// factor sqrt(k+1) for bosons and the fermion sign of the resulting ket.
/// A ket already at the cutoff, or already holding the fermion, maps to 0.
inline SparseMatrix creator_sparse(const FockSpace& space, ModeId mode) {
  const ParticleMode& m = space.mode(mode);
  const auto n = static_cast<Eigen::Index>(space.dimension());
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::size_t col = 0; col < space.dimension(); ++col) {
    const OccupationState& state = space.state_at(col);
    if (state.total() >= space.cutoff()) continue;
    auto raised = state.with_one(mode, m.statistics);
    if (!raised) continue;
    const double value = m.statistics == Statistics::Fermion
                             ? static_cast<double>(fermion_sign(space, mode, *raised))
                             : std::sqrt(static_cast<double>(state.count(mode) + 1));
    triplets.emplace_back(static_cast<Eigen::Index>(space.index_of(*raised)),
                          static_cast<Eigen::Index>(col), Complex(value, 0.0));
  }
  SparseMatrix out(n, n);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

inline OperatorMatrix annihilator(const FockSpace& space, ModeId mode) {
  return {space, Matrix(annihilator_sparse(space, mode))};
}

inline OperatorMatrix creator(const FockSpace& space, ModeId mode) {
  return {space, Matrix(creator_sparse(space, mode))};
}

/// [A, B] = AB - BA
inline OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix::require_same_space(a, b);
  return {a.space(), a.entries() * b.entries() - b.entries() * a.entries()};
}

/// {A, B} = AB + BA
inline OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix::require_same_space(a, b);
  return {a.space(), a.entries() * b.entries() + b.entries() * a.entries()};
}

/// eta = alpha a + conj(alpha) a^*, sparse.
inline SparseMatrix ac_operator_sparse(const FockSpace& space, ModeId mode, Complex alpha) {
  SparseMatrix a = annihilator_sparse(space, mode);
  SparseMatrix adj = SparseMatrix(a.adjoint());
  return alpha * a + std::conj(alpha) * adj;
}

/// AC-operator eta(mode) = alpha a(mode) + conj(alpha) a(mode)^*. The creation
/// half is the exact conjugate transpose of the annihilation half, so the
/// result is Hermitian entry for entry.
inline OperatorMatrix ac_operator(const FockSpace& space, ModeId mode, Complex alpha) {
  return {space, Matrix(ac_operator_sparse(space, mode, alpha))};
}

}  // namespace toyqft

#endif  // TOYQFT_LADDER_HPP
