//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "safekit/error.hpp"
#include "safekit/patterns.hpp"
#include "safekit/random.hpp"
#include "safekit/rings.hpp"
#include "safekit/smiles.hpp"
#include "test_support.hpp"

namespace safekit {
namespace {

ErrorKind parse_error(std::string_view text) {
  auto r = try_parse_smiles(text);
  EXPECT_TRUE(std::holds_alternative<Error>(r)) << text;
  return std::holds_alternative<Error>(r) ? std::get<Error>(r).kind() : ErrorKind::kSyntax;
}

// Element/aromaticity/charge/hydrogen multiset plus bond-order multiset;
// a cheap necessary condition for isomorphism that does not share code with
// the matcher.
std::pair<std::multiset<std::string>, std::multiset<std::string>> invariants(const MolGraph &g) {
  std::multiset<std::string> atoms;
  std::multiset<std::string> bonds;
  auto key = [&](std::uint32_t i) {
    const Atom &a = g.atom(i);
    return std::string(element_symbol(a.element)) + (a.aromatic ? "a" : "")
           + std::to_string(a.charge) + "h" + std::to_string(a.total_h()) + "d"
           + std::to_string(g.degree(i));
  };
  for (std::uint32_t i = 0; i < g.num_atoms(); ++i)
    atoms.insert(key(i));
  for (const Bond &b: g.bonds()) {
    auto x = key(b.begin), y = key(b.end);
    if (y < x)
      std::swap(x, y);
    bonds.insert(x + std::to_string(static_cast<int>(b.order)) + y);
  }
  return { atoms, bonds };
}

TEST(ParseSmiles, Methane) {
  const MolGraph g = parse_smiles("C");
  ASSERT_EQ(g.num_atoms(), 1U);
  EXPECT_EQ(g.num_bonds(), 0U);
  EXPECT_EQ(g.atom(0).implicit_h, 4);
  EXPECT_EQ(g.component_count(), 1U);
}

TEST(ParseSmiles, DotMakesTwoComponents) {
  EXPECT_EQ(parse_smiles("C.C").component_count(), 2U);
}

TEST(ParseSmiles, BaricitinibScaffoldHasTwoWildcards) {
  const MolGraph g = parse_smiles(testing::kBaricitinibScaffold);
  const auto n = std::count_if(g.atoms().begin(), g.atoms().end(),
                               [](const Atom &a) { return a.is_wildcard(); });
  EXPECT_EQ(n, 2);
  EXPECT_EQ(g.wildcard_count(), 2U);
}

TEST(ParseSmiles, Errors) {
  EXPECT_EQ(parse_error("C1CC"), ErrorKind::kUnclosedRing);
  EXPECT_EQ(parse_error("C(C"), ErrorKind::kSyntax);
  EXPECT_EQ(parse_error("CC)"), ErrorKind::kSyntax);
  EXPECT_EQ(parse_error("CC="), ErrorKind::kSyntax);
  EXPECT_EQ(parse_error("C[C"), ErrorKind::kSyntax);
  EXPECT_EQ(parse_error(""), ErrorKind::kSyntax);
  EXPECT_EQ(parse_error("C(=C)(=C)=C"), ErrorKind::kValence);
  EXPECT_EQ(parse_error("FF(F)"), ErrorKind::kValence);
  EXPECT_EQ(parse_error("[Si]"), ErrorKind::kUnknownElement);
  EXPECT_EQ(parse_error("P"), ErrorKind::kUnknownElement);
  EXPECT_EQ(parse_error("C/C=C/C"), ErrorKind::kSyntax);
  EXPECT_EQ(parse_error("N[C@H](C)O"), ErrorKind::kSyntax);
}

TEST(ParseSmiles, PercentDigitsAndBrackets) {
  const MolGraph g = parse_smiles("C%12CC%12");
  EXPECT_EQ(g.num_bonds(), 3U);
  EXPECT_TRUE(g.bond(0).in_ring);
  const MolGraph ammonium = parse_smiles("[NH4+]");
  EXPECT_EQ(ammonium.atom(0).charge, 1);
  EXPECT_EQ(ammonium.atom(0).total_h(), 4);
  const MolGraph pyrrole = parse_smiles("c1cc[nH]c1");
  EXPECT_EQ(pyrrole.num_atoms(), 5U);
}

TEST(ParseSmiles, ImplicitHydrogensUseLowestSufficientValence) {
  EXPECT_EQ(parse_smiles("CS(C)(=O)=O").atom(1).implicit_h, 0);
  EXPECT_EQ(parse_smiles("CS").atom(1).implicit_h, 1);
  EXPECT_EQ(parse_smiles("CS(=O)C").atom(1).implicit_h, 0);
  EXPECT_EQ(parse_smiles("c1ccccc1").atom(0).implicit_h, 1);
}

TEST(ParseSmiles, ChainBondBetweenAromaticAtomsIsSingle) {
  const MolGraph implicit = parse_smiles("c1ccccc1c1ccccc1");
  EXPECT_EQ(implicit.bond(*implicit.bond_between(5, 6)).order, BondOrder::kSingle);
  EXPECT_EQ(canonical_smiles(implicit), canonical_smiles(parse_smiles("c1ccccc1-c1ccccc1")));
  // Same through a closure digit joining two rings.
  EXPECT_EQ(canonical_smiles(parse_smiles("c1ccccc19.c19ccccc1")), canonical_smiles(implicit));
}

TEST(ParseSmiles, DigitsMaySpanDots) {
  const MolGraph g = parse_smiles("CC1.O1");
  EXPECT_EQ(g.component_count(), 1U);
  EXPECT_EQ(g.num_bonds(), 2U);
}

TEST(WriteSmiles, SingleCarbon) {
  EXPECT_EQ(write_smiles(parse_smiles("C")), "C");
}

TEST(WriteSmiles, BenzeneRoundTrips) {
  const MolGraph g = parse_smiles(write_smiles(parse_smiles("c1ccccc1")));
  EXPECT_EQ(g.num_atoms(), 6U);
  EXPECT_TRUE(std::all_of(g.atoms().begin(), g.atoms().end(),
                          [](const Atom &a) { return a.aromatic && a.in_ring; }));
  EXPECT_EQ(g.num_bonds(), 6U);
}

TEST(WriteSmiles, TwoComponentsGiveOneDot) {
  const std::string s = write_smiles(parse_smiles("CC.O"));
  EXPECT_EQ(std::count(s.begin(), s.end(), '.'), 1);
}

TEST(CanonicalSmiles, TraversalIndependent) {
  EXPECT_EQ(canonical_smiles(parse_smiles("OCC")), canonical_smiles(parse_smiles("CCO")));
  EXPECT_EQ(canonical_smiles(parse_smiles("C1=CC=CN1")), canonical_smiles(parse_smiles("N1C=CC=C1")));
}

TEST(CanonicalSmiles, RepeatedCallsIdentical) {
  const MolGraph g = parse_smiles("c1ccccc1");
  const std::string first = canonical_smiles(g);
  for (int i = 0; i < 100; ++i)
    EXPECT_EQ(canonical_smiles(parse_smiles("c1ccccc1")), first);
}

TEST(CanonicalSmiles, InvariantUnderAtomPermutation) {
  Rng rng(11);
  for (const std::string &smi: testing::moses_train(20)) {
    const MolGraph g = parse_smiles(smi);
    const std::string expect = canonical_smiles(g);
    for (int k = 0; k < 50; ++k) {
      const auto perm = random_permutation(g.num_atoms(), rng);
      const MolGraph p = testing::permute(g, perm);
      ASSERT_EQ(canonical_smiles(p), expect) << smi;
      // Also through a serialization with a random start order.
      const std::string written = write_smiles(g, random_permutation(g.num_atoms(), rng));
      ASSERT_EQ(canonical_smiles(parse_smiles(written)), expect) << written;
    }
  }
}

TEST(CanonicalSmiles, ThousandPermutationsOfOneMolecule) {
  const MolGraph g = parse_smiles(testing::moses_train(1).front());
  const std::string expect = canonical_smiles(g);
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const std::string written = write_smiles(g, random_permutation(g.num_atoms(), rng));
    ASSERT_EQ(canonical_smiles(parse_smiles(written)), expect);
  }
}

TEST(CanonicalSmiles, DistinguishesIsomers) {
  EXPECT_NE(canonical_smiles(parse_smiles("CCO")), canonical_smiles(parse_smiles("COC")));
  EXPECT_NE(canonical_smiles(parse_smiles("Cc1ccccc1C")), canonical_smiles(parse_smiles("Cc1cccc(C)c1")));
}

TEST(CanonicalSmiles, CorpusRoundTrip) {
  for (const std::string &smi: testing::moses_train(2000)) {
    const MolGraph g = parse_smiles(smi);
    const MolGraph back = parse_smiles(canonical_smiles(g));
    ASSERT_EQ(invariants(back), invariants(g)) << smi;
    ASSERT_TRUE(is_isomorphic(back, g)) << smi;
    ASSERT_EQ(canonical_smiles(back), canonical_smiles(g)) << smi;
  }
}

TEST(RandomizeSmiles, SemanticInvarianceAndDeterminism) {
  const MolGraph ethanol = parse_smiles("CCO");
  EXPECT_EQ(canonical_smiles(parse_smiles(randomize_smiles(ethanol, 7))), canonical_smiles(ethanol));
  const MolGraph g = parse_smiles("CC(=O)Nc1ccc(O)cc1");
  EXPECT_EQ(randomize_smiles(g, 42), randomize_smiles(g, 42));
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::string s = randomize_smiles(g, seed);
    seen.insert(s);
    EXPECT_EQ(canonical_smiles(parse_smiles(s)), canonical_smiles(g));
  }
  EXPECT_GE(seen.size(), 2U);
}

TEST(RingMembership, BenzeneAndEthane) {
  const RingFlags benzene = ring_membership(parse_smiles("c1ccccc1"));
  EXPECT_EQ(std::count(benzene.bond_in_ring.begin(), benzene.bond_in_ring.end(), true), 6);
  const RingFlags ethane = ring_membership(parse_smiles("CC"));
  EXPECT_EQ(std::count(ethane.bond_in_ring.begin(), ethane.bond_in_ring.end(), true), 0);
}

// Hand enumeration: the azetidine (4 bonds), pyrazole (5) and the fused
// pyrrolopyrimidine (10 bonds) are cyclic; the two wildcard bonds and the
// two ring-to-ring links are not.
TEST(RingMembership, BaricitinibScaffold) {
  const MolGraph g = parse_smiles(testing::kBaricitinibScaffold);
  const RingFlags flags = ring_membership(g);
  std::size_t ring_bonds = 0;
  for (const Bond &b: g.bonds()) {
    const bool touches_wildcard = g.atom(b.begin).is_wildcard() || g.atom(b.end).is_wildcard();
    if (touches_wildcard) {
      EXPECT_FALSE(flags.bond_in_ring[b.index]);
    }
    ring_bonds += flags.bond_in_ring[b.index];
    EXPECT_EQ(flags.bond_in_ring[b.index], b.in_ring);
  }
  EXPECT_EQ(ring_bonds, 4U + 5U + 10U);
  EXPECT_EQ(g.num_bonds(), ring_bonds + 4U);
}

TEST(RingMembership, SmallestRingSizes) {
  const MolGraph g = parse_smiles("C1CCCCCCCCCCC1");
  EXPECT_EQ(largest_smallest_ring(g), 12U);
  EXPECT_EQ(largest_smallest_ring(parse_smiles("c1ccc2ccccc2c1")), 6U);
  EXPECT_EQ(largest_smallest_ring(parse_smiles("CCO")), 0U);
}

TEST(MolBuilder, RejectsDuplicateBondsAndSelfLoops) {
  MolBuilder b;
  const auto x = b.add_atom({});
  const auto y = b.add_atom({});
  b.add_bond(x, y, BondOrder::kSingle);
  EXPECT_THROW(b.add_bond(y, x, BondOrder::kSingle), Error);
  EXPECT_THROW(b.add_bond(x, x, BondOrder::kSingle), Error);
}

TEST(Validity, EveryInputYieldsGraphOrOneTypedError) {
  for (const char *s: { "C", "C(", "c1cc", "[NH4+]", "Cl", "C%1", "C==C", "*", "[*]C" }) {
    auto r = try_parse_smiles(s);
    EXPECT_TRUE(std::holds_alternative<MolGraph>(r) || std::holds_alternative<Error>(r));
  }
}

}  // namespace
}  // namespace safekit
