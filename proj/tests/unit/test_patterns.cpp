//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "safekit/error.hpp"
#include "safekit/patterns.hpp"
#include "safekit/random.hpp"
#include "safekit/smiles.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace safekit {
namespace {

using testing::brute_force;
using testing::random_small_molecule;

ErrorKind pattern_error(std::string_view text) {
  try {
    parse_pattern(text);
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorKind::kSyntax;
}

std::set<MatchMapping> as_set(const std::vector<MatchMapping> &v) {
  return { v.begin(), v.end() };
}

TEST(ParsePattern, Basics) {
  const QueryGraph c = parse_pattern("C");
  ASSERT_EQ(c.num_atoms(), 1U);
  EXPECT_TRUE(c.atom(0).matches(parse_smiles("C"), 0));
  EXPECT_FALSE(c.atom(0).matches(parse_smiles("c1ccccc1"), 0));

  const QueryGraph any = parse_pattern("[*]");
  ASSERT_EQ(any.num_atoms(), 1U);
  EXPECT_TRUE(any.atom(0).is_wildcard());

  const QueryGraph cc = parse_pattern("C!@C");
  ASSERT_EQ(cc.num_atoms(), 2U);
  ASSERT_EQ(cc.num_bonds(), 1U);
  const MolGraph ethane = parse_smiles("CC");
  const MolGraph propene = parse_smiles("C=CC");
  const MolGraph cyclopropane = parse_smiles("C1CC1");
  EXPECT_TRUE(cc.bond(0).pattern.matches(ethane.bond(0)));
  EXPECT_FALSE(cc.bond(0).pattern.matches(propene.bond(0)));
  EXPECT_FALSE(cc.bond(0).pattern.matches(cyclopropane.bond(0)));
}

TEST(ParsePattern, Primitives) {
  const MolGraph g = parse_smiles("CC(=O)Nc1ccccc1");
  auto hits = [&](std::string_view p) {
    std::vector<std::uint32_t> out;
    const QueryGraph q = parse_pattern(p);
    for (std::uint32_t i = 0; i < g.num_atoms(); ++i) {
      if (q.atom(0).matches(g, i))
        out.push_back(i);
    }
    return out;
  };
  EXPECT_EQ(hits("a").size(), 6U);
  EXPECT_EQ(hits("A").size(), 4U);
  EXPECT_EQ(hits("[R]").size(), 6U);
  EXPECT_EQ(hits("[!R]").size(), 4U);
  EXPECT_EQ(hits("[R0]").size(), 4U);
  EXPECT_EQ(hits("[D3]").size(), 2U);
  EXPECT_EQ(hits("[#7]"), std::vector<std::uint32_t> { 3 });
  EXPECT_EQ(hits("[C;D1]").size(), 1U);
  EXPECT_EQ(hits("[c;H1]").size(), 5U);
  EXPECT_EQ(hits("[!#6]").size(), 2U);
  EXPECT_EQ(hits("[N+0]").size(), 1U);
}

TEST(ParsePattern, ChargedAtoms) {
  const MolGraph g = parse_smiles("C[N+](C)(C)C");
  EXPECT_TRUE(parse_pattern("[N+]").atom(0).matches(g, 1));
  EXPECT_FALSE(parse_pattern("[N+0]").atom(0).matches(g, 1));
  EXPECT_FALSE(parse_pattern("[N-]").atom(0).matches(g, 1));
}

TEST(ParsePattern, Errors) {
  EXPECT_EQ(pattern_error("[$(C=O)]C"), ErrorKind::kUnsupportedPrimitive);
  EXPECT_EQ(pattern_error("[C,N]"), ErrorKind::kUnsupportedPrimitive);
  EXPECT_EQ(pattern_error("C.C"), ErrorKind::kUnsupportedPrimitive);
  EXPECT_EQ(pattern_error("[C@H]"), ErrorKind::kUnsupportedPrimitive);
  EXPECT_EQ(pattern_error("C(C"), ErrorKind::kSyntax);
  EXPECT_EQ(pattern_error("C1CC"), ErrorKind::kUnclosedRing);
  EXPECT_EQ(pattern_error(""), ErrorKind::kSyntax);
  EXPECT_EQ(pattern_error("[{unknown}]"), ErrorKind::kUnsupportedPrimitive);
}

TEST(ParsePattern, NamedPredicate) {
  PredicateRegistry registry;
  registry.add("carbonyl_c", [](const MolGraph &g, std::uint32_t a) {
    for (Neighbor nb: g.neighbors(a)) {
      if (g.atom(nb.atom).element == Element::kO && g.bond(nb.bond).order == BondOrder::kDouble)
        return true;
    }
    return false;
  });
  const QueryGraph q = parse_pattern("[C;{carbonyl_c}]-N", &registry);
  const MolGraph amide = parse_smiles("CC(=O)NC");
  const MolGraph amine = parse_smiles("CCNC");
  EXPECT_TRUE(has_substructure(q, amide));
  EXPECT_FALSE(has_substructure(q, amine));
}

TEST(MatchAll, SpecExamples) {
  EXPECT_EQ(match_all(parse_pattern("C"), parse_smiles("CC")).size(), 2U);
  const MolGraph g = parse_smiles("CC(=O)Nc1ccccc1");
  EXPECT_EQ(match_all(parse_pattern("[*]"), g).size(), g.num_atoms());
  EXPECT_EQ(match_all(parse_pattern("c1ccccc1"), parse_smiles("c1ccccc1")).size(), 12U);
}

TEST(MatchAll, BenzeneAgainstBruteForce) {
  const QueryGraph q = parse_pattern("c1ccccc1");
  const MolGraph g = parse_smiles("c1ccccc1");
  const auto oracle = brute_force(q, g);
  EXPECT_EQ(oracle.size(), 12U);
  EXPECT_EQ(as_set(match_all(q, g)), oracle);
}

TEST(MatchAll, MappingsAreSoundAndDistinct) {
  const QueryGraph q = parse_pattern("[#6]~[!#6]");
  for (const std::string &smi: testing::moses_train(50)) {
    const MolGraph g = parse_smiles(smi);
    const auto maps = match_all(q, g);
    EXPECT_EQ(as_set(maps).size(), maps.size());
    for (const MatchMapping &m: maps) {
      for (std::uint32_t i = 0; i < q.num_atoms(); ++i)
        ASSERT_TRUE(q.atom(i).matches(g, m[i]));
      for (std::uint32_t b = 0; b < q.num_bonds(); ++b) {
        auto tb = g.bond_between(m[q.bond(b).begin], m[q.bond(b).end]);
        ASSERT_TRUE(tb && q.bond(b).pattern.matches(g.bond(*tb)));
      }
    }
  }
}

TEST(MatchAll, Deterministic) {
  const QueryGraph q = parse_pattern("C~*");
  const MolGraph g = parse_smiles("CC(C)C(=O)OCC");
  EXPECT_EQ(match_all(q, g), match_all(q, g));
}

TEST(MatchAll, MaxMatchesStopsEarly) {
  MatchOptions options;
  options.max_matches = 3;
  EXPECT_EQ(match_all(parse_pattern("*"), parse_smiles("CCCCCC"), options).size(), 3U);
}

TEST(HasSubstructure, ScaffoldWithMethylCaps) {
  const MolGraph scaffold = parse_smiles(testing::kBaricitinibScaffold);
  const MolGraph capped = parse_smiles("CN1CC(C)(n2cc(-c3ncnc4[nH]ccc34)cn2)C1");
  EXPECT_TRUE(has_substructure(scaffold_query(scaffold), capped));
}

TEST(HasSubstructure, SizeAndMonotonicity) {
  EXPECT_FALSE(has_substructure(parse_pattern("CCC"), parse_smiles("CC")));
  const QueryGraph q = parse_pattern("c1ccccc1O");
  EXPECT_TRUE(has_substructure(q, parse_smiles("Oc1ccccc1")));
  EXPECT_TRUE(has_substructure(q, parse_smiles("Oc1ccccc1.CC.N")));
  EXPECT_FALSE(has_substructure(q, parse_smiles("c1ccccc1.O")));
}

// Baricitinib assembled from its two linker fragments joined through the
// pyrazole linker.
TEST(HasSubstructure, BaricitinibContainsItsScaffold) {
  const MolGraph drug = parse_smiles("CCS(=O)(=O)N1CC(CC#N)(n2cc(-c3ncnc4[nH]ccc34)cn2)C1");
  EXPECT_TRUE(has_substructure(scaffold_query(parse_smiles(testing::kBaricitinibScaffold)), drug));
  EXPECT_TRUE(has_substructure(scaffold_query(parse_smiles(testing::kBaricitinibLeft)), drug));
  EXPECT_TRUE(has_substructure(scaffold_query(parse_smiles(testing::kBaricitinibRight)), drug));
}

TEST(HasSubstructure, AttachmentsNeedANeighbor) {
  const QueryGraph q = scaffold_query(parse_smiles("[*]c1ccccc1[*]"));
  EXPECT_TRUE(has_substructure(q, parse_smiles("Cc1ccccc1C")));
  EXPECT_FALSE(has_substructure(q, parse_smiles("Cc1ccccc1")));
  // A scaffold attachment cannot land on a hydrogen-free benzene position.
  EXPECT_FALSE(has_substructure(q, parse_smiles("c1ccccc1")));
}

TEST(IsIsomorphic, Basics) {
  EXPECT_TRUE(is_isomorphic(parse_smiles("OCC"), parse_smiles("CCO")));
  EXPECT_FALSE(is_isomorphic(parse_smiles("CCO"), parse_smiles("COC")));
  EXPECT_FALSE(is_isomorphic(parse_smiles("CC=O"), parse_smiles("CCO")));
  EXPECT_FALSE(is_isomorphic(parse_smiles("C1CCCCC1"), parse_smiles("C1CC1.C1CC1")));
  Rng rng(3);
  const MolGraph g = parse_smiles("CC(=O)Nc1ccc(O)cc1");
  for (int k = 0; k < 20; ++k)
    EXPECT_TRUE(is_isomorphic(g, testing::permute(g, random_permutation(g.num_atoms(), rng))));
}

TEST(MatchAll, EqualsBruteForceOnSmallGraphs) {
  const char *patterns[] = {
    "C", "*", "CC", "C~*", "C=O", "[#6]-[#8]", "C!@C", "C@C", "[R]", "[!R]~[R]", "CO", "[D1]",
    "[D2;!R]", "C(C)C", "C1CC1", "[#7]~*~[#8]", "*~*~*", "C-N", "[C;H2]", "N=C",
    "[!#6]",
  };
  Rng rng(2026);
  std::size_t compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const MolGraph g = random_small_molecule(rng, 8);
    for (const char *p: patterns) {
      const QueryGraph q = parse_pattern(p);
      ASSERT_EQ(as_set(match_all(q, g)), brute_force(q, g)) << p << " vs " << write_smiles(g);
      ++compared;
    }
    // Scaffold-style query with attachment atoms cut from the molecule itself.
    const QueryGraph sq = scaffold_query(parse_smiles("[*]C[*]"));
    ASSERT_EQ(as_set(match_all(sq, g)), brute_force(sq, g)) << write_smiles(g);
  }
  EXPECT_GT(compared, 1000U);
}

}  // namespace
}  // namespace safekit
