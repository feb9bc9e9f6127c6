#ifndef TOYQFT_FOCK_HPP
#define TOYQFT_FOCK_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "toyqft/error.hpp"

namespace toyqft {

using ModeId = std::size_t;
using FourVector = std::array<std::int64_t, 4>;

enum class Statistics { Fermion, Boson };

constexpr const char* to_string(Statistics s) noexcept {
  return s == Statistics::Fermion ? "fermion" : "boson";
}

/// One particle mode of a roster.
///
/// `species` groups fermion modes that anticommute with each other. Fermions
/// of different species commute, as do fermions and bosons. Modes built from
/// one mass hyperboloid share a species.
struct ParticleMode {
  ModeId id = 0;
  std::string label;
  Statistics statistics = Statistics::Fermion;
  std::int64_t mass = 0;
  std::optional<FourVector> momentum;
  std::size_t species = 0;

  bool operator==(const ParticleMode&) const = default;
};

/// Occupation of a Fock basis ket: a strictly increasing fermion id list and
/// a sorted list of (boson id, count >= 1) pairs. The vacuum is the empty state.
class OccupationState {
 public:
  using BosonCount = std::pair<ModeId, unsigned>;

  OccupationState() = default;

  OccupationState(std::vector<ModeId> fermions, std::vector<BosonCount> bosons)
      : fermions_(std::move(fermions)), bosons_(std::move(bosons)) {
    for (std::size_t i = 1; i < fermions_.size(); ++i) {
      if (fermions_[i - 1] >= fermions_[i]) {
        throw Error(Errc::InvalidArgument, "fermion ids must be strictly increasing");
      }
    }
    for (std::size_t i = 0; i < bosons_.size(); ++i) {
      if (bosons_[i].second == 0) {
        throw Error(Errc::InvalidArgument, "boson counts must be positive");
      }
      if (i > 0 && bosons_[i - 1].first >= bosons_[i].first) {
        throw Error(Errc::InvalidArgument, "boson ids must be strictly increasing");
      }
      if (std::binary_search(fermions_.begin(), fermions_.end(), bosons_[i].first)) {
        throw Error(Errc::InvalidArgument, "mode listed as both fermion and boson");
      }
    }
  }

  const std::vector<ModeId>& fermions() const noexcept { return fermions_; }
  const std::vector<BosonCount>& bosons() const noexcept { return bosons_; }

  /// N_mode(state): how many particles occupy `mode`.
  unsigned count(ModeId mode) const noexcept {
    if (std::binary_search(fermions_.begin(), fermions_.end(), mode)) return 1;
    auto it = std::lower_bound(bosons_.begin(), bosons_.end(), mode,
                               [](const BosonCount& b, ModeId m) { return b.first < m; });
    return (it != bosons_.end() && it->first == mode) ? it->second : 0;
  }

  unsigned total() const noexcept {
    unsigned n = static_cast<unsigned>(fermions_.size());
    for (const auto& [id, c] : bosons_) n += c;
    return n;
  }

  bool is_vacuum() const noexcept { return fermions_.empty() && bosons_.empty(); }

  /// Occupied modes as a nondecreasing multiset of ids (|q1^2 q2> -> 0,0,1).
  std::vector<ModeId> mode_sequence() const {
    std::vector<ModeId> seq(fermions_);
    for (const auto& [id, c] : bosons_) seq.insert(seq.end(), c, id);
    std::sort(seq.begin(), seq.end());
    return seq;
  }

  /// The state with one particle of `mode` removed, or nullopt when absent.
  std::optional<OccupationState> without_one(ModeId mode) const {
    OccupationState out(*this);
    if (auto it = std::lower_bound(out.fermions_.begin(), out.fermions_.end(), mode);
        it != out.fermions_.end() && *it == mode) {
      out.fermions_.erase(it);
      return out;
    }
    auto it = std::lower_bound(out.bosons_.begin(), out.bosons_.end(), mode,
                               [](const BosonCount& b, ModeId m) { return b.first < m; });
    if (it == out.bosons_.end() || it->first != mode) return std::nullopt;
    if (--it->second == 0) out.bosons_.erase(it);
    return out;
  }

  /// The state with one particle of `mode` added; nullopt for a repeated fermion.
  std::optional<OccupationState> with_one(ModeId mode, Statistics statistics) const {
    OccupationState out(*this);
    if (statistics == Statistics::Fermion) {
      auto it = std::lower_bound(out.fermions_.begin(), out.fermions_.end(), mode);
      if (it != out.fermions_.end() && *it == mode) return std::nullopt;
      out.fermions_.insert(it, mode);
      return out;
    }
    auto it = std::lower_bound(out.bosons_.begin(), out.bosons_.end(), mode,
                               [](const BosonCount& b, ModeId m) { return b.first < m; });
    if (it != out.bosons_.end() && it->first == mode) {
      ++it->second;
    } else {
      out.bosons_.insert(it, {mode, 1u});
    }
    return out;
  }

  auto operator<=>(const OccupationState&) const = default;
  bool operator==(const OccupationState&) const = default;

 private:
  std::vector<ModeId> fermions_;
  std::vector<BosonCount> bosons_;
};

/// Basis order: total particle count ascending, then lexicographic on the
/// sorted id multiset. Reproduces |0>,|q1>,|q2>,|q1^2>,|q1q2>,|q2^2>,...
struct BasisOrder {
  bool operator()(const OccupationState& a, const OccupationState& b) const {
    if (a.total() != b.total()) return a.total() < b.total();
    return a.mode_sequence() < b.mode_sequence();
  }
};

/// Truncated Fock space over a roster: every occupation state with at most
/// `cutoff` particles in total, in BasisOrder, vacuum first.
///
/// A FockSpace is an immutable handle; copies share the enumerated basis and
/// operators compare spaces by that shared identity first.
class FockSpace {
 public:
  FockSpace(std::vector<ParticleMode> modes, unsigned cutoff) {
    std::sort(modes.begin(), modes.end(),
              [](const ParticleMode& a, const ParticleMode& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < modes.size(); ++i) {
      if (i > 0 && modes[i].id == modes[i - 1].id) {
        throw Error(Errc::InvalidRoster, "duplicate mode id " + std::to_string(modes[i].id));
      }
      if (modes[i].id != i) {
        throw Error(Errc::InvalidRoster, "mode ids must be dense 0..k-1");
      }
      validate_mode(modes[i]);
    }
    auto data = std::make_shared<Data>();
    data->modes = std::move(modes);
    data->cutoff = cutoff;
    enumerate(*data);
    data_ = std::move(data);
  }

  std::span<const ParticleMode> modes() const noexcept { return data_->modes; }
  std::size_t mode_count() const noexcept { return data_->modes.size(); }
  unsigned cutoff() const noexcept { return data_->cutoff; }
  std::size_t dimension() const noexcept { return data_->basis.size(); }
  const std::vector<OccupationState>& basis() const noexcept { return data_->basis; }

  const ParticleMode& mode(ModeId id) const {
    if (id >= data_->modes.size()) {
      throw Error(Errc::UnknownMode, "mode id " + std::to_string(id) + " not in roster");
    }
    return data_->modes[id];
  }

  std::optional<std::size_t> find(const OccupationState& state) const {
    auto it = data_->index.find(state);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const OccupationState& state) const {
    if (auto i = find(state)) return *i;
    throw Error(Errc::NotInBasis, "state is not a basis ket of this space");
  }

  const OccupationState& state_at(std::size_t index) const {
    if (index >= data_->basis.size()) {
      throw Error(Errc::NotInBasis, "ordinal " + std::to_string(index) + " >= dimension");
    }
    return data_->basis[index];
  }

  /// Same shared basis object; cheaper than equality.
  bool same_instance(const FockSpace& other) const noexcept { return data_ == other.data_; }

  bool operator==(const FockSpace& other) const noexcept {
    return same_instance(other) ||
           (data_->cutoff == other.data_->cutoff && data_->modes == other.data_->modes);
  }

 private:
  struct Data {
    std::vector<ParticleMode> modes;
    unsigned cutoff = 0;
    std::vector<OccupationState> basis;
    std::map<OccupationState, std::size_t> index;
  };

  static void validate_mode(const ParticleMode& m) {
    if (m.mass < 0) throw Error(Errc::InvalidRoster, "negative mass for mode " + m.label);
    if (m.momentum) {
      const auto& p = *m.momentum;
      if (p[0] < 0) throw Error(Errc::InvalidRoster, "negative energy for mode " + m.label);
      if (p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - p[3] * p[3] != m.mass * m.mass) {
        throw Error(Errc::InvalidRoster, "momentum of mode " + m.label + " is off its mass shell");
      }
    }
  }

  static OccupationState from_sequence(const std::vector<ParticleMode>& modes,
                                       const std::vector<ModeId>& seq) {
    std::vector<ModeId> fermions;
    std::vector<OccupationState::BosonCount> bosons;
    for (ModeId id : seq) {
      if (modes[id].statistics == Statistics::Fermion) {
        fermions.push_back(id);
      } else if (!bosons.empty() && bosons.back().first == id) {
        ++bosons.back().second;
      } else {
        bosons.emplace_back(id, 1u);
      }
    }
    return OccupationState(std::move(fermions), std::move(bosons));
  }

  // Nondecreasing id sequences of each length, generated in lexicographic
  // order; a fermion id may not repeat.
  static void enumerate(Data& data) {
    const std::size_t k = data.modes.size();
    std::vector<ModeId> seq;
    auto emit = [&](auto&& self, std::size_t remaining, ModeId start) -> void {
      if (remaining == 0) {
        OccupationState state = from_sequence(data.modes, seq);
        data.index.emplace(state, data.basis.size());
        data.basis.push_back(std::move(state));
        return;
      }
      for (ModeId id = start; id < k; ++id) {
        if (!seq.empty() && seq.back() == id && data.modes[id].statistics == Statistics::Fermion) {
          continue;
        }
        seq.push_back(id);
        self(self, remaining - 1, id);
        seq.pop_back();
      }
    };
    for (unsigned n = 0; n <= data.cutoff; ++n) {
      const std::size_t before = data.basis.size();
      emit(emit, n, 0);
      if (n > 0 && data.basis.size() == before) break;  // roster exhausted (pure fermions)
    }
  }

  std::shared_ptr<const Data> data_;
};

inline FockSpace build_space(std::vector<ParticleMode> modes, unsigned cutoff) {
  return FockSpace(std::move(modes), cutoff);
}

inline std::size_t dimension(const FockSpace& space) noexcept { return space.dimension(); }

inline std::size_t index_of(const FockSpace& space, const OccupationState& state) {
  return space.index_of(state);
}

inline const OccupationState& state_at(const FockSpace& space, std::size_t index) {
  return space.state_at(index);
}

/// N_mode(state), the occupation number operator's eigenvalue on a basis ket.
inline unsigned number_of(ModeId mode, const OccupationState& state) noexcept {
  return state.count(mode);
}

struct CanonicalKet {
  OccupationState state;
  int sign = 1;
};

/// Brings a raw ket |m_1 m_2 ... m_n> into canonical storage order.
///
/// Fermions are sorted ascending; the sign is the parity of the permutation
/// restricted to each species' fermion entries. Moving bosons, or fermions past
/// fermions of another species, costs no sign. A repeated fermion gives the
/// zero vector (nullopt).
inline std::optional<CanonicalKet> canonicalize(std::span<const ParticleMode> roster,
                                                std::span<const ModeId> raw) {
  std::vector<ModeId> fermions;
  std::map<ModeId, unsigned> bosons;
  int sign = 1;
  for (ModeId id : raw) {
    if (id >= roster.size()) {
      throw Error(Errc::UnknownMode, "mode id " + std::to_string(id) + " not in roster");
    }
    const ParticleMode& m = roster[id];
    if (m.statistics == Statistics::Boson) {
      ++bosons[id];
      continue;
    }
    // Inversions against earlier same-species fermions with a larger id.
    for (ModeId earlier : fermions) {
      if (earlier == id) return std::nullopt;
      if (earlier > id && roster[earlier].species == m.species) sign = -sign;
    }
    fermions.push_back(id);
  }
  std::sort(fermions.begin(), fermions.end());
  return CanonicalKet{OccupationState(std::move(fermions), {bosons.begin(), bosons.end()}), sign};
}

/// Human-readable ket built from roster labels, e.g. "|p1 q1^2>" or "|0>".
inline std::string ket_label(std::span<const ParticleMode> roster, const OccupationState& state) {
  if (state.is_vacuum()) return "|0>";
  std::string out = "|";
  bool first = true;
  auto name = [&](ModeId id) {
    return id < roster.size() && !roster[id].label.empty() ? roster[id].label
                                                           : "m" + std::to_string(id);
  };
  for (ModeId id : state.fermions()) {
    if (!first) out += ' ';
    out += name(id);
    first = false;
  }
  for (const auto& [id, c] : state.bosons()) {
    if (!first) out += ' ';
    out += name(id);
    if (c > 1) out += '^' + std::to_string(c);
    first = false;
  }
  return out + '>';
}

}  // namespace toyqft

#endif  // TOYQFT_FOCK_HPP
