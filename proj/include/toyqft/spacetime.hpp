#ifndef TOYQFT_SPACETIME_HPP
#define TOYQFT_SPACETIME_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toyqft/error.hpp"
#include "toyqft/fields.hpp"
#include "toyqft/fock.hpp"
#include "toyqft/ladder.hpp"

namespace toyqft {

/// Point (x0, x) of the lattice Z+ x Z^3; x0 is time.
struct LatticePoint {
  std::int64_t x0 = 0;
  std::array<std::int64_t, 3> x{0, 0, 0};

  bool operator==(const LatticePoint&) const = default;
};

/// Energy-momentum p = (p0, p) in the forward cone.
struct EnergyMomentum {
  std::int64_t p0 = 0;
  std::array<std::int64_t, 3> p{0, 0, 0};

  FourVector as_four_vector() const { return {p0, p[0], p[1], p[2]}; }

  auto operator<=>(const EnergyMomentum&) const = default;
};

/// x0^2 - x1^2 - x2^2 - x3^2
constexpr std::int64_t minkowski_sq(const FourVector& v) noexcept {
  return v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3];
}

/// px = p0 x0 - p1 x1 - p2 x2 - p3 x3
constexpr std::int64_t lorentz_product(const EnergyMomentum& p, const LatticePoint& x) noexcept {
  return p.p0 * x.x0 - p.p[0] * x.x[0] - p.p[1] * x.x[1] - p.p[2] * x.x[2];
}

/// Integer points of the mass hyperboloid with 0 <= p0 <= r, ordered by p0
/// and then lexicographically by the spatial momentum.
inline std::vector<EnergyMomentum> hyperboloid(std::int64_t mass, std::int64_t r) {
  if (mass < 0) throw Error(Errc::InvalidArgument, "mass must be nonnegative");
  std::vector<EnergyMomentum> out;
  for (std::int64_t p0 = mass; p0 <= r; ++p0) {
    const std::int64_t kinetic_sq = p0 * p0 - mass * mass;
    for (std::int64_t a = -p0; a <= p0; ++a) {
      const std::int64_t ra = kinetic_sq - a * a;
      if (ra < 0) continue;
      for (std::int64_t b = -p0; b <= p0; ++b) {
        const std::int64_t rb = ra - b * b;
        if (rb < 0) continue;
        for (std::int64_t c = -p0; c <= p0; ++c) {
          if (c * c == rb) out.push_back({p0, {a, b, c}});
        }
      }
    }
  }
  return out;
}

/// Exact quarter-turn i^k, k in {0,1,2,3}.
class QuarterTurn {
 public:
  constexpr explicit QuarterTurn(std::int64_t k = 0) noexcept : k_(static_cast<int>(((k % 4) + 4) % 4)) {}

  constexpr int exponent() const noexcept { return k_; }
  constexpr QuarterTurn conj() const noexcept { return QuarterTurn(4 - k_); }
  constexpr QuarterTurn operator*(QuarterTurn other) const noexcept { return QuarterTurn(k_ + other.k_); }

  std::complex<double> value() const noexcept {
    constexpr std::array<std::complex<double>, 4> table{
        std::complex<double>{1.0, 0.0}, std::complex<double>{0.0, 1.0},
        std::complex<double>{-1.0, 0.0}, std::complex<double>{0.0, -1.0}};
    return table[static_cast<std::size_t>(k_)];
  }

  constexpr bool operator==(const QuarterTurn&) const = default;

 private:
  int k_;
};

/// exp(i pi px / 2) = i^(px mod 4), with no trigonometry involved.
constexpr QuarterTurn phase(const EnergyMomentum& p, const LatticePoint& x) noexcept {
  return QuarterTurn(lorentz_product(p, x));
}

/// V(x0): number of integer spatial points with |x|_3 <= x0.
inline std::int64_t space_volume(std::int64_t x0) {
  if (x0 < 0) throw Error(Errc::InvalidArgument, "time must be nonnegative");
  std::int64_t count = 0;
  const std::int64_t r2 = x0 * x0;
  for (std::int64_t a = -x0; a <= x0; ++a) {
    for (std::int64_t b = -x0; b <= x0; ++b) {
      for (std::int64_t c = -x0; c <= x0; ++c) {
        if (a * a + b * b + c * c <= r2) ++count;
      }
    }
  }
  return count;
}

/// Spatial points of the ball |x|_3 <= x0 at time x0, lexicographic in x.
inline std::vector<LatticePoint> space_slice(std::int64_t x0) {
  if (x0 < 0) throw Error(Errc::InvalidArgument, "time must be nonnegative");
  std::vector<LatticePoint> out;
  const std::int64_t r2 = x0 * x0;
  for (std::int64_t a = -x0; a <= x0; ++a) {
    for (std::int64_t b = -x0; b <= x0; ++b) {
      for (std::int64_t c = -x0; c <= x0; ++c) {
        if (a * a + b * b + c * c <= r2) out.push_back({x0, {a, b, c}});
      }
    }
  }
  return out;
}

/// Field terms at x: alpha_p = phase(p, x) / p0 for each p on the mass-m
/// hyperboloid with p0 <= r, attached to the roster mode carrying p.
///
/// `species` picks among modes when several rosters share a mass; without it
/// exactly one mode per point must match.
inline FieldSpec field_terms_at(const FockSpace& space, const LatticePoint& x, std::int64_t r,
                                std::int64_t mass, std::optional<std::size_t> species = std::nullopt) {
  const auto points = hyperboloid(mass, r);
  FieldSpec spec;
  spec.terms.reserve(points.size());
  for (const auto& p : points) {
    if (p.p0 == 0) {
      throw Error(Errc::DivisionByZeroEnergy, "massless point p0 = 0 has undefined weight 1/p0");
    }
    std::optional<ModeId> match;
    for (const auto& m : space.modes()) {
      if (m.mass != mass || !m.momentum || *m.momentum != p.as_four_vector()) continue;
      if (species && m.species != *species) continue;
      if (match) {
        throw Error(Errc::InvalidRoster, "several roster modes carry the same momentum; pass a species");
      }
      match = m.id;
    }
    if (!match) {
      throw Error(Errc::UnknownMode, "no roster mode for a hyperboloid point of mass " + std::to_string(mass));
    }
    spec.terms.push_back({*match, phase(p, x).value() / static_cast<double>(p.p0)});
  }
  return spec;
}

/// phi(x, r) = sum_p (1/p0) [a(p) e^{i pi px/2} + a(p)^* e^{-i pi px/2}]
inline OperatorMatrix field_at(const FockSpace& space, const LatticePoint& x, std::int64_t r,
                               std::int64_t mass, std::optional<std::size_t> species = std::nullopt) {
  return free_field(space, field_terms_at(space, x, r, mass, species));
}

}  // namespace toyqft

#endif  // TOYQFT_SPACETIME_HPP
