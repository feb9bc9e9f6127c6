#ifndef TOYQFT_SPECTRAL_HPP
#define TOYQFT_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

#include "toyqft/error.hpp"
#include "toyqft/ladder.hpp"

namespace toyqft {

/// One distinct eigenvalue with an orthonormal basis (columns) of its eigenspace.
struct EigenGroup {
  double lambda = 0.0;
  std::size_t multiplicity = 0;
  Matrix basis;
};

/// Grouped spectrum of a Hermitian matrix. Groups are sorted by strictly
/// increasing lambda and their multiplicities sum to the dimension.
class SpectralDecomposition {
 public:
  SpectralDecomposition(std::vector<EigenGroup> groups, Eigen::VectorXd raw_eigenvalues,
                        Matrix eigenvectors, std::optional<FockSpace> space)
      : groups_(std::move(groups)),
        raw_eigenvalues_(std::move(raw_eigenvalues)),
        eigenvectors_(std::move(eigenvectors)),
        space_(std::move(space)) {}

  const std::vector<EigenGroup>& groups() const noexcept { return groups_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(raw_eigenvalues_.size()); }

  /// Solver eigenvalues before grouping, ascending.
  const Eigen::VectorXd& raw_eigenvalues() const noexcept { return raw_eigenvalues_; }

  /// All eigenvectors as columns, in the same order as raw_eigenvalues().
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }

  /// Group eigenvalue repeated by multiplicity, ascending.
  Eigen::VectorXd grouped_eigenvalues() const {
    Eigen::VectorXd out(raw_eigenvalues_.size());
    Eigen::Index k = 0;
    for (const auto& g : groups_) {
      for (std::size_t i = 0; i < g.multiplicity; ++i) out(k++) = g.lambda;
    }
    return out;
  }

  const std::optional<FockSpace>& space() const noexcept { return space_; }

 private:
  std::vector<EigenGroup> groups_;
  Eigen::VectorXd raw_eigenvalues_;
  Matrix eigenvectors_;
  std::optional<FockSpace> space_;
};

namespace detail {

// Unit norm, first component above noise level made real positive.
inline void normalize_phase(Eigen::Ref<Vector> v) {
  v.normalize();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-10) {
      v *= std::conj(v(i)) / mag;
      v(i) = Complex(mag, 0.0);
      return;
    }
  }
}

inline SpectralDecomposition eigh_impl(const Matrix& h, double group_tol,
                                       std::optional<FockSpace> space) {
  if (h.rows() != h.cols()) throw Error(Errc::InvalidArgument, "matrix is not square");
  if (!(group_tol > 0.0)) throw Error(Errc::InvalidArgument, "group tolerance must be positive");
  const double scale = std::max(1.0, max_abs(h));
  if (max_abs(h - h.adjoint()) > 1e-10 * scale) {
    throw Error(Errc::NotHermitian, "matrix differs from its adjoint");
  }

  const auto n = h.rows();
  Matrix vectors = h;
  Eigen::VectorXd values(n);
  if (n > 0) {
    const lapack_int info =
        LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n), vectors.data(),
                       static_cast<lapack_int>(n), values.data());
    if (info != 0) {
      throw Error(Errc::InvalidArgument, "zheevd failed with info " + std::to_string(info));
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) normalize_phase(vectors.col(j));

  const double radius = n > 0 ? std::max(std::abs(values(0)), std::abs(values(n - 1))) : 0.0;
  const double gap = group_tol * std::max(1.0, radius);
  std::vector<EigenGroup> groups;
  Eigen::Index start = 0;
  for (Eigen::Index j = 1; j <= n; ++j) {
    if (j < n && values(j) - values(j - 1) <= gap) continue;
    EigenGroup g;
    g.multiplicity = static_cast<std::size_t>(j - start);
    g.lambda = values.segment(start, j - start).mean();
    g.basis = vectors.middleCols(start, j - start);
    groups.push_back(std::move(g));
    start = j;
  }
  return {std::move(groups), std::move(values), std::move(vectors), std::move(space)};
}

// V f(Lambda) V^† with f applied to each group eigenvalue.
template <typename F>
Matrix spectral_function(const SpectralDecomposition& d, F f) {
  const auto n = static_cast<Eigen::Index>(d.dimension());
  Vector weights(n);
  Eigen::Index k = 0;
  for (const auto& g : d.groups()) {
    const Complex w = f(g.lambda);
    for (std::size_t i = 0; i < g.multiplicity; ++i) weights(k++) = w;
  }
  const Matrix& v = d.eigenvectors();
  const Matrix scaled = v * weights.asDiagonal();
  return scaled * v.adjoint();
}

}  // namespace detail

/// Hermitian eigendecomposition with eigenvalue grouping.
///
/// Sorted eigenvalues join one group while consecutive gaps stay within
/// group_tol * max(1, spectral radius). Each group reports the mean of its
/// members. Input must be Hermitian to 1e-10 * max(1, max|H_ij|).
inline SpectralDecomposition eigh(const Matrix& h, double group_tol = 1e-8) {
  return detail::eigh_impl(h, group_tol, std::nullopt);
}

inline SpectralDecomposition eigh(const OperatorMatrix& h, double group_tol = 1e-8) {
  return detail::eigh_impl(h.entries(), group_tol, h.space());
}

/// P_j = sum of v v^† over the basis of group j.
inline std::vector<Matrix> projectors(const SpectralDecomposition& d) {
  std::vector<Matrix> out;
  out.reserve(d.groups().size());
  for (const auto& g : d.groups()) out.push_back(g.basis * g.basis.adjoint());
  return out;
}

/// sum_j lambda_j P_j
inline Matrix reconstruct(const SpectralDecomposition& d) {
  return detail::spectral_function(d, [](double l) { return Complex(l, 0.0); });
}

/// sum_j exp(i lambda_j) P_j
inline Matrix unitary_exp(const SpectralDecomposition& d) {
  return detail::spectral_function(d, [](double l) { return std::polar(1.0, l); });
}

}  // namespace toyqft

#endif  // TOYQFT_SPECTRAL_HPP
