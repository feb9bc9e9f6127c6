#ifndef TOYQFT_FIELDS_HPP
#define TOYQFT_FIELDS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "toyqft/error.hpp"
#include "toyqft/fock.hpp"
#include "toyqft/ladder.hpp"

namespace toyqft {

struct FieldTerm {
  ModeId mode = 0;
  Complex alpha{0.0, 0.0};
};

/// A free field as a list of (mode, alpha) terms; mode ids must be distinct.
/// The same spec can be instantiated on any space whose roster has the modes.
struct FieldSpec {
  std::vector<FieldTerm> terms;
};

inline void validate(const FieldSpec& spec) {
  std::set<ModeId> seen;
  for (const auto& t : spec.terms) {
    if (!seen.insert(t.mode).second) {
      throw Error(Errc::DuplicateTerm, "mode " + std::to_string(t.mode) + " appears twice in field");
    }
  }
}

inline SparseMatrix free_field_sparse(const FockSpace& space, const FieldSpec& spec) {
  validate(spec);
  const auto n = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix out(n, n);
  for (const auto& t : spec.terms) out += ac_operator_sparse(space, t.mode, t.alpha);
  return out;
}

/// phi = sum_j [alpha_j a(m_j) + conj(alpha_j) a(m_j)^*]
inline OperatorMatrix free_field(const FockSpace& space, const FieldSpec& spec) {
  return {space, Matrix(free_field_sparse(space, spec))};
}

/// tau = (phi psi + psi phi) / 2
inline OperatorMatrix interaction_field(const OperatorMatrix& phi, const OperatorMatrix& psi) {
  OperatorMatrix::require_same_space(phi, psi);
  Matrix sum = phi.entries() * psi.entries() + psi.entries() * phi.entries();
  return {phi.space(), 0.5 * sum};
}

inline OperatorMatrix self_interaction(const OperatorMatrix& phi) { return phi * phi; }

enum class FormParity { Even, Odd, Mixed };

constexpr const char* to_string(FormParity p) noexcept {
  switch (p) {
    case FormParity::Even: return "even";
    case FormParity::Odd: return "odd";
    case FormParity::Mixed: return "mixed";
  }
  return "?";
}

struct FormClassification {
  std::size_t type = 0;
  /// (N_p, N_q) of each contributing ket, in basis order.
  std::vector<std::pair<unsigned, unsigned>> form;
  FormParity parity = FormParity::Mixed;
};

/// Type and form of a vector in the (p_mode, q_mode) occupation plane.
///
/// Contributing kets are the components with |amplitude| > tol. They must agree
/// on every occupation other than p_mode and q_mode; otherwise the vector has
/// no form and NotAForm is raised.
inline FormClassification classify_form(const FockSpace& space, const Vector& vector, ModeId p_mode,
                                        ModeId q_mode, double tol = 1e-9) {
  if (static_cast<std::size_t>(vector.size()) != space.dimension()) {
    throw Error(Errc::SpaceMismatch, "vector length does not match space dimension");
  }
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  space.mode(p_mode);
  space.mode(q_mode);

  FormClassification out;
  std::optional<OccupationState> spectator;
  bool all_even = true;
  bool all_odd = true;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    if (std::abs(vector(static_cast<Eigen::Index>(i))) <= tol) continue;
    OccupationState rest = space.state_at(i);
    const unsigned np = rest.count(p_mode);
    const unsigned nq = rest.count(q_mode);
    for (unsigned k = 0; k < np; ++k) rest = *rest.without_one(p_mode);
    for (unsigned k = 0; k < nq; ++k) rest = *rest.without_one(q_mode);
    if (!spectator) {
      spectator = rest;
    } else if (*spectator != rest) {
      throw Error(Errc::NotAForm, "contributing kets differ outside the two classified modes");
    }
    out.form.emplace_back(np, nq);
    ((np + nq) % 2 == 0 ? all_odd : all_even) = false;
  }
  if (out.form.empty()) throw Error(Errc::NotAForm, "no component exceeds the tolerance");
  out.type = out.form.size();
  out.parity = all_even ? FormParity::Even : (all_odd ? FormParity::Odd : FormParity::Mixed);
  return out;
}

}  // namespace toyqft

#endif  // TOYQFT_FIELDS_HPP
