#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "toyqft/fock.hpp"

using namespace toyqft;

namespace {

std::vector<std::string> labels(const FockSpace& space) {
  std::vector<std::string> out;
  for (const auto& st : space.basis()) out.push_back(ket_label(space.modes(), st));
  return out;
}

// Counts occupation vectors (n_1..n_k) with n_i <= 1 for fermions and sum <= s.
std::size_t brute_force_count(const std::vector<ParticleMode>& modes, unsigned s) {
  std::size_t count = 0;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned used) {
    if (i == modes.size()) {
      ++count;
      return;
    }
    const unsigned cap = modes[i].statistics == Statistics::Fermion ? 1u : s;
    for (unsigned n = 0; n <= cap && used + n <= s; ++n) rec(i + 1, used + n);
  };
  rec(0, 0);
  return count;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int permutation_parity(const std::vector<ModeId>& seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) inversions += seq[i] > seq[j];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST(FockSpace, K2BasisOrder) {
  const auto k2 = fixtures::k_space(2);
  EXPECT_EQ(k2.dimension(), 4u);
  EXPECT_EQ(labels(k2), (std::vector<std::string>{"|0>", "|p1>", "|p2>", "|p1 p2>"}));
  EXPECT_EQ(k2.index_of(OccupationState({0, 1}, {})), 3u);
}

TEST(FockSpace, K3BasisOrder) {
  EXPECT_EQ(labels(fixtures::k_space(3)),
            (std::vector<std::string>{"|0>", "|p1>", "|p2>", "|p3>", "|p1 p2>", "|p1 p3>", "|p2 p3>", "|p1 p2 p3>"}));
}

TEST(FockSpace, J22AndJ23BasisOrder) {
  EXPECT_EQ(labels(fixtures::j_space(2, 2)),
            (std::vector<std::string>{"|0>", "|q1>", "|q2>", "|q1^2>", "|q1 q2>", "|q2^2>"}));
  const auto j23 = fixtures::j_space(2, 3);
  EXPECT_EQ(j23.dimension(), 10u);
  EXPECT_EQ(labels(j23), (std::vector<std::string>{"|0>", "|q1>", "|q2>", "|q1^2>", "|q1 q2>", "|q2^2>", "|q1^3>",
                                                    "|q1^2 q2>", "|q1 q2^2>", "|q2^3>"}));
}

TEST(FockSpace, L222BasisOrder) {
  const auto l = fixtures::l_space(2, 2, 2);
  EXPECT_EQ(l.dimension(), 13u);
  EXPECT_EQ(labels(l), (std::vector<std::string>{"|0>", "|p1>", "|p2>", "|q1>", "|q2>", "|p1 p2>", "|p1 q1>",
                                                  "|p1 q2>", "|p2 q1>", "|p2 q2>", "|q1^2>", "|q1 q2>", "|q2^2>"}));
}

TEST(FockSpace, K224BasisOrder) {
  const auto k = fixtures::k_mixed(2, 4);
  EXPECT_EQ(k.dimension(), 16u);
  EXPECT_EQ(labels(k), (std::vector<std::string>{"|0>", "|p1>", "|p2>", "|q1>", "|q2>", "|p1 p2>", "|p1 q1>",
                                                  "|p1 q2>", "|p2 q1>", "|p2 q2>", "|q1 q2>", "|p1 p2 q1>",
                                                  "|p1 p2 q2>", "|p1 q1 q2>", "|p2 q1 q2>", "|p1 p2 q1 q2>"}));
}

TEST(FockSpace, EmptyRosterAndZeroCutoff) {
  const FockSpace empty({}, 1);
  EXPECT_EQ(empty.dimension(), 1u);
  EXPECT_TRUE(empty.state_at(0).is_vacuum());
  EXPECT_EQ(FockSpace(fixtures::bosons(1), 0).dimension(), 1u);
}

TEST(FockSpace, DimensionMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = rng() % 5;
    std::vector<ParticleMode> modes;
    for (std::size_t i = 0; i < k; ++i) {
      ParticleMode m;
      m.id = i;
      m.statistics = rng() % 2 ? Statistics::Fermion : Statistics::Boson;
      m.species = rng() % 2;
      modes.push_back(m);
    }
    const unsigned s = static_cast<unsigned>(rng() % 7);
    const FockSpace space(modes, s);
    EXPECT_EQ(space.dimension(), brute_force_count(modes, s)) << "k=" << k << " s=" << s;
  }
}

TEST(FockSpace, PureFermionDimensionIsPowerOfTwo) {
  for (unsigned s = 0; s <= 6; ++s) EXPECT_EQ(fixtures::k_space(s).dimension(), std::size_t{1} << s);
}

TEST(FockSpace, PureBosonDimensionIsMultisetSum) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (unsigned s = 0; s <= 5; ++s) {
      std::size_t expected = 0;
      for (std::size_t k = 0; k <= s; ++k) expected += binomial(n + k - 1, k);
      EXPECT_EQ(fixtures::j_space(n, s).dimension(), expected) << "n=" << n << " s=" << s;
    }
  }
}

TEST(FockSpace, BasisIsVacuumFirstAndStrictlyOrdered) {
  const auto space = fixtures::l_space(3, 2, 4);
  ASSERT_TRUE(space.state_at(0).is_vacuum());
  for (std::size_t i = 1; i < space.dimension(); ++i) {
    EXPECT_LE(space.state_at(i - 1).total(), space.state_at(i).total());
    EXPECT_TRUE(BasisOrder{}(space.state_at(i - 1), space.state_at(i)));
  }
}

TEST(FockSpace, IndexAndStateAreInverse) {
  const auto space = fixtures::l_space(2, 3, 3);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    EXPECT_EQ(space.index_of(space.state_at(i)), i);
    EXPECT_EQ(index_of(space, state_at(space, i)), i);
  }
  EXPECT_EQ(index_of(space, OccupationState{}), 0u);
}

TEST(FockSpace, OutOfSpaceLookupsThrow) {
  const auto k2 = fixtures::k_space(2);
  try {
    (void)k2.state_at(4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotInBasis);
  }
  const auto j = fixtures::j_space(1, 2);
  try {
    (void)j.index_of(OccupationState({}, {{0, 3}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotInBasis);
  }
  EXPECT_FALSE(j.find(OccupationState({}, {{0, 3}})).has_value());
}

TEST(FockSpace, DeterministicAcrossConstructions) {
  const auto a = fixtures::l_space(2, 2, 3);
  const auto b = fixtures::l_space(2, 2, 3);
  EXPECT_EQ(a.basis(), b.basis());
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a.same_instance(b));
}

TEST(FockSpace, RosterValidation) {
  auto code_of = [](std::vector<ParticleMode> modes) {
    try {
      FockSpace(std::move(modes), 2);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  auto dup = fixtures::fermions(2);
  dup[1].id = 0;
  EXPECT_EQ(code_of(dup), Errc::InvalidRoster);
  auto sparse = fixtures::fermions(2);
  sparse[1].id = 5;
  EXPECT_EQ(code_of(sparse), Errc::InvalidRoster);
  auto off_shell = fixtures::bosons(1);
  off_shell[0].mass = 1;
  off_shell[0].momentum = FourVector{2, 1, 0, 0};
  EXPECT_EQ(code_of(off_shell), Errc::InvalidRoster);
  auto negative = fixtures::bosons(1);
  negative[0].mass = -1;
  EXPECT_EQ(code_of(negative), Errc::InvalidRoster);

  auto shuffled = fixtures::fermions(3);
  std::swap(shuffled[0], shuffled[2]);
  EXPECT_EQ(FockSpace(shuffled, 3).mode(0).label, "p1");
}

TEST(OccupationState, ConstructorValidates) {
  EXPECT_THROW(OccupationState({1, 0}, {}), Error);
  EXPECT_THROW(OccupationState({}, {{0, 0}}), Error);
  EXPECT_THROW(OccupationState({}, {{1, 1}, {0, 1}}), Error);
  EXPECT_THROW(OccupationState({0}, {{0, 1}}), Error);
  const OccupationState st({0, 2}, {{1, 2}, {3, 1}});
  EXPECT_EQ(st.total(), 5u);
  EXPECT_EQ(number_of(1, st), 2u);
  EXPECT_EQ(number_of(2, st), 1u);
  EXPECT_EQ(number_of(4, st), 0u);
  EXPECT_EQ(number_of(0, OccupationState{}), 0u);
}

TEST(Canonicalize, FermionSwapGivesMinusSign) {
  const auto k = fixtures::k_space(2);
  const auto ket = canonicalize(k.modes(), std::vector<ModeId>{1, 0});
  ASSERT_TRUE(ket);
  EXPECT_EQ(ket->state, OccupationState({0, 1}, {}));
  EXPECT_EQ(ket->sign, -1);
}

TEST(Canonicalize, BosonsAreSymmetric) {
  const auto j = fixtures::j_space(3, 3);
  const auto ket = canonicalize(j.modes(), std::vector<ModeId>{1, 0, 2});
  ASSERT_TRUE(ket);
  EXPECT_EQ(ket->state, OccupationState({}, {{0, 1}, {1, 1}, {2, 1}}));
  EXPECT_EQ(ket->sign, 1);
  EXPECT_EQ(canonicalize(j.modes(), std::vector<ModeId>{2, 0, 2})->state, OccupationState({}, {{0, 1}, {2, 2}}));
}

TEST(Canonicalize, RepeatedFermionVanishes) {
  const auto k = fixtures::k_space(2);
  EXPECT_FALSE(canonicalize(k.modes(), std::vector<ModeId>{0, 0}).has_value());
}

TEST(Canonicalize, UnknownModeThrows) {
  const auto k = fixtures::k_space(2);
  try {
    (void)canonicalize(k.modes(), std::vector<ModeId>{0, 7});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownMode);
  }
}

TEST(Canonicalize, FermionBosonInterchangeHasNoSign) {
  const auto l = fixtures::l_space(2, 2, 4);
  // q1 = 2, q2 = 3
  const auto ket = canonicalize(l.modes(), std::vector<ModeId>{2, 1, 3, 0});
  ASSERT_TRUE(ket);
  EXPECT_EQ(ket->state, OccupationState({0, 1}, {{2, 1}, {3, 1}}));
  EXPECT_EQ(ket->sign, -1);
  EXPECT_EQ(canonicalize(l.modes(), std::vector<ModeId>{2, 0, 3, 1})->sign, 1);
}

TEST(Canonicalize, DifferentFermionSpeciesCommute) {
  const auto k = fixtures::k_mixed(2, 4);
  // p1 = 0, p2 = 1, q1 = 2, q2 = 3
  EXPECT_EQ(canonicalize(k.modes(), std::vector<ModeId>{2, 0})->sign, 1);
  EXPECT_EQ(canonicalize(k.modes(), std::vector<ModeId>{3, 2, 0})->sign, -1);
  EXPECT_EQ(canonicalize(k.modes(), std::vector<ModeId>{2, 1, 3, 0})->sign, -1);
}

TEST(Canonicalize, SignIsPermutationParity) {
  const auto k = fixtures::k_space(6);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ModeId> seq(6);
    std::iota(seq.begin(), seq.end(), 0);
    std::shuffle(seq.begin(), seq.end(), rng);
    seq.resize(rng() % 7);
    const auto ket = canonicalize(k.modes(), seq);
    ASSERT_TRUE(ket);
    EXPECT_EQ(ket->sign, permutation_parity(seq));
  }
}

TEST(Canonicalize, IdempotentOnCanonicalKets) {
  const auto space = fixtures::l_space(3, 2, 4);
  for (const auto& st : space.basis()) {
    const auto ket = canonicalize(space.modes(), st.mode_sequence());
    ASSERT_TRUE(ket);
    EXPECT_EQ(ket->state, st);
    EXPECT_EQ(ket->sign, 1);
  }
}

TEST(KetLabel, Formats) {
  const auto l = fixtures::l_space(1, 2, 4);
  EXPECT_EQ(ket_label(l.modes(), OccupationState{}), "|0>");
  EXPECT_EQ(ket_label(l.modes(), OccupationState({0}, {{1, 2}, {2, 1}})), "|p1 q1^2 q2>");
}
