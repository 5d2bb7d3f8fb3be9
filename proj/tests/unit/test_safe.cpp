//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "safekit/error.hpp"
#include "safekit/patterns.hpp"
#include "safekit/random.hpp"
#include "safekit/safe.hpp"
#include "safekit/smiles.hpp"
#include "test_support.hpp"

namespace safekit {
namespace {

std::string canon(std::string_view smiles) {
  return canonical_smiles(parse_smiles(smiles));
}

// Digit labels as written, scanning outside brackets.
std::vector<int> digits_in(const std::string &text) {
  std::vector<int> out;
  bool bracket = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '[')
      bracket = true;
    else if (c == ']')
      bracket = false;
    else if (!bracket && c >= '0' && c <= '9')
      out.push_back(c - '0');
    else if (!bracket && c == '%') {
      out.push_back((text[i + 1] - '0') * 10 + (text[i + 2] - '0'));
      i += 2;
    }
  }
  return out;
}

TEST(SafeString, SplitsBlocksAndPairsDigits) {
  const SafeString s("CC1.O1");
  ASSERT_EQ(s.blocks(), (std::vector<std::string> { "CC1", "O1" }));
  ASSERT_EQ(s.links().size(), 1U);
  EXPECT_TRUE(s.links()[0].spans_blocks());
  EXPECT_TRUE(s.closed());
  EXPECT_TRUE(s.open_digits().empty());

  const SafeString open("c1ccccc1C2.");
  EXPECT_FALSE(open.closed());
  EXPECT_EQ(open.open_digits(), std::vector<int> { 2 });
  EXPECT_EQ(open.blocks().size(), 2U);

  const SafeString pct("C%12.[NH3+]%12");
  ASSERT_EQ(pct.links().size(), 1U);
  EXPECT_EQ(pct.links()[0].digit, 12);
  EXPECT_EQ(pct.links()[0].first.offset, 1U);
  EXPECT_EQ(pct.links()[0].second->offset, 6U);
}

TEST(Encode, EthanolSingleCut) {
  const MolGraph g = parse_smiles("CCO");
  const FragmentSet set = fragment(g, std::vector<std::uint32_t> { *g.bond_between(1, 2) });
  const SafeString s = encode_fragments(set, { 0, 1 });
  // "CC1.O1" up to where the digit sits in the first block.
  ASSERT_EQ(s.blocks().size(), 2U);
  EXPECT_EQ(s.blocks()[1], "O1");
  EXPECT_TRUE(s.blocks()[0] == "CC1" || s.blocks()[0] == "C1C") << s.text();
  EXPECT_EQ(canonical_smiles(decode(s)), canon("CCO"));
}

TEST(Encode, BenzeneIsItsCanonicalSmiles) {
  const MolGraph g = parse_smiles("c1ccccc1");
  for (auto scheme: kAllSchemes)
    EXPECT_EQ(encode(g, scheme).text(), canonical_smiles(g));
}

TEST(Encode, CanonicalOrderSortsBySizeThenString) {
  const MolGraph g = parse_smiles("c1ccccc1OCC(=O)NC1CC1");
  const SafeString s = encode(g, FragmentationScheme::kHR);
  std::vector<std::size_t> heavy;
  for (const std::string &block: s.blocks()) {
    const auto h = std::count_if(block.begin(), block.end(), [](char c) { return std::isalpha(c) != 0; });
    heavy.push_back(static_cast<std::size_t>(h));
  }
  EXPECT_TRUE(std::is_sorted(heavy.rbegin(), heavy.rend())) << s.text();
  EXPECT_EQ(canonical_smiles(decode(s)), canonical_smiles(g));
}

TEST(Encode, AttachmentDigitsAvoidRingDigitsAndAreNotReused) {
  const MolGraph g = parse_smiles("O=C(Nc1ccc2c(c1)CCC2)c1ccc(-c2ccncc2)cc1");
  for (auto scheme: kAllSchemes) {
    const SafeString s = encode(g, scheme);
    std::set<int> ring_digits;
    std::map<int, int> seen;
    for (const DigitLink &link: s.links()) {
      ++seen[link.digit];
      if (!link.spans_blocks())
        ring_digits.insert(link.digit);
    }
    for (const DigitLink &link: s.links()) {
      if (link.spans_blocks()) {
        EXPECT_EQ(ring_digits.count(link.digit), 0U) << s.text();
        EXPECT_EQ(seen[link.digit], 1) << s.text();
      }
    }
  }
}

TEST(Encode, TwoDigitLabelsUsePercent) {
  // Ten aryl groups on a chain force attachment digits past 9.
  std::string smi = "C";
  for (int i = 0; i < 10; ++i)
    smi += "(Oc1ccccc1)";
  smi = "CC" + std::string("(Oc1ccccc1)") + "C(Oc1ccccc1)C(Oc1ccccc1)C(Oc1ccccc1)C(Oc1ccccc1)"
        "C(Oc1ccccc1)C(Oc1ccccc1)C(Oc1ccccc1)C(Oc1ccccc1)C(Oc1ccccc1)C";
  const MolGraph g = parse_smiles(smi);
  const SafeString s = encode(g, FragmentationScheme::kHR);
  EXPECT_NE(s.text().find('%'), std::string::npos) << s.text();
  EXPECT_EQ(canonical_smiles(decode(s)), canonical_smiles(g));
  EXPECT_TRUE(s.closed());
}

TEST(Encode, CodecIdentityOnCorpus) {
  for (const std::string &smi: testing::moses_train(1000)) {
    const MolGraph g = parse_smiles(smi);
    const std::string expect = canonical_smiles(g);
    for (auto scheme: kAllSchemes) {
      const SafeString s = encode(g, scheme);
      ASSERT_TRUE(s.closed()) << s.text();
      const MolGraph back = decode(s);
      ASSERT_FALSE(is_fragmented(back)) << s.text();
      ASSERT_EQ(canonical_smiles(back), expect) << smi << " -> " << s.text();
      ASSERT_EQ(encode(g, scheme).text(), s.text());
    }
  }
}

TEST(Decode, SpecExamples) {
  const MolGraph g = decode("CC1.O1");
  EXPECT_EQ(g.num_atoms(), 3U);
  EXPECT_EQ(g.component_count(), 1U);
  EXPECT_EQ(canonical_smiles(g), canon("CCO"));
  EXPECT_EQ(decode("CC.O").component_count(), 2U);
  EXPECT_TRUE(is_fragmented(decode("CC.O")));
  EXPECT_FALSE(is_fragmented(decode("CC1.O1")));
  EXPECT_THROW(decode("CC1.O"), Error);
}

TEST(Randomize, SingleBlockIsIdentity) {
  const MolGraph g = parse_smiles("c1ccc2ccccc2c1");
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    EXPECT_EQ(randomize_safe(g, FragmentationScheme::kBRICS, seed).text(), canonical_smiles(g));
}

TEST(Randomize, SeedsChangeOrderNotMolecule) {
  const MolGraph g = parse_smiles("c1ccccc1C(=O)NCCOc1ccncc1");
  const SafeString canonical_safe = encode(g, FragmentationScheme::kHR);
  ASSERT_GE(canonical_safe.blocks().size(), 4U);
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SafeString s = randomize_safe(g, FragmentationScheme::kHR, seed);
    seen.insert(s.text());
    EXPECT_EQ(canonical_smiles(decode(s)), canonical_smiles(g));
    EXPECT_EQ(randomize_safe(g, FragmentationScheme::kHR, seed).text(), s.text());
  }
  EXPECT_GE(seen.size(), 2U);
}

TEST(Randomize, AllBlockPermutationsDecode) {
  const MolGraph g = parse_smiles("c1ccccc1C(=O)NCc1ccncc1");
  const FragmentSet set = fragment(g, eligible_bonds(g, FragmentationScheme::kBRICS));
  ASSERT_GE(set.fragments.size(), 2U);
  ASSERT_LE(set.fragments.size(), 5U);
  std::vector<std::uint32_t> order(set.fragments.size());
  std::iota(order.begin(), order.end(), 0U);
  const std::string expect = canonical_smiles(g);
  std::size_t n = 0;
  do {
    ASSERT_EQ(canonical_smiles(decode(encode_fragments(set, order))), expect);
    ++n;
  } while (std::next_permutation(order.begin(), order.end()));
  EXPECT_GE(n, 2U);
}

TEST(Randomize, BlockPermutationsOfEncodedCorpus) {
  Rng rng(99);
  for (const std::string &smi: testing::moses_train(200)) {
    const MolGraph g = parse_smiles(smi);
    const std::string expect = canonical_smiles(g);
    const SafeString s = encode(g, FragmentationScheme::kBRICS);
    // Shuffle the written blocks directly; digits travel with their blocks.
    std::vector<std::string> blocks = s.blocks();
    for (int k = 0; k < 10; ++k) {
      shuffle(blocks, rng);
      std::string text;
      for (std::size_t i = 0; i < blocks.size(); ++i)
        text += (i ? "." : "") + blocks[i];
      ASSERT_EQ(canonical_smiles(decode(text)), expect) << text;
    }
  }
}

TEST(ScaffoldPrompt, MinimalScaffold) {
  const Prompt p = scaffold_prompt(parse_smiles("[*]C"));
  EXPECT_EQ(p.text, "C1.");
  EXPECT_EQ(p.open_digits, std::vector<int> { 1 });
  EXPECT_EQ(p.task, PromptTask::kDecorate);
}

TEST(ScaffoldPrompt, BaricitinibHasTwoOpenDigits) {
  const Prompt p = scaffold_prompt(parse_smiles(testing::kBaricitinibScaffold));
  EXPECT_EQ(p.open_digits.size(), 2U);
  EXPECT_EQ(p.text.back(), '.');
  EXPECT_EQ(SafeString(p.text).open_digits(), p.open_digits);
}

TEST(ScaffoldPrompt, Errors) {
  try {
    scaffold_prompt(parse_smiles("CC"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoAttachmentPoints);
  }
  EXPECT_THROW(scaffold_prompt(parse_smiles("C**")), Error);
}

TEST(ScaffoldPrompt, ClosingCompletionContainsScaffold) {
  const MolGraph scaffold = parse_smiles(testing::kBaricitinibScaffold);
  const Prompt p = scaffold_prompt(scaffold);
  const QueryGraph q = scaffold_query(scaffold);
  // Head atom, then the attachment digit, then the rest of the substituent.
  const std::vector<std::pair<std::string, std::string>> tails = {
    { "C", "" }, { "C", "C#N" }, { "S", "(=O)(=O)CC" }, { "c", "9ccccc9" }, { "O", "" },
  };
  for (const auto &[ha, ra]: tails) {
    for (const auto &[hb, rb]: tails) {
      const std::string text = p.text + ha + format_ring_digit(p.open_digits[0]) + ra + "." + hb
                               + format_ring_digit(p.open_digits[1]) + rb;
      const SafeString s(text);
      ASSERT_TRUE(s.closed()) << text;
      const MolGraph g = decode(s);
      EXPECT_FALSE(is_fragmented(g));
      EXPECT_TRUE(has_substructure(q, g)) << text;
    }
  }
}

TEST(LinkerPrompt, BaricitinibFragments) {
  const Prompt p = linker_prompt(parse_smiles(testing::kBaricitinibLeft),
                                 parse_smiles(testing::kBaricitinibRight));
  ASSERT_EQ(p.open_digits.size(), 2U);
  EXPECT_NE(p.open_digits[0], p.open_digits[1]);
  EXPECT_EQ(p.task, PromptTask::kLink);
  EXPECT_EQ(SafeString(p.text).blocks().size(), 3U);  // two blocks plus the empty tail
  // Closing both digits through a pyrazole linker gives the drug.
  const std::string text = p.text + "n1cc" + format_ring_digit(p.open_digits[1]) + "cn1"
                           + format_ring_digit(p.open_digits[0]);
  EXPECT_EQ(canonical_smiles(decode(text)),
            canon("CCS(=O)(=O)N1CC(CC#N)(n2cc(-c3ncnc4[nH]ccc34)cn2)C1"));
}

TEST(LinkerPrompt, CyclothiazideFragments) {
  const Prompt p = linker_prompt(parse_smiles(testing::kCyclothiazideLeft),
                                 parse_smiles(testing::kCyclothiazideRight));
  EXPECT_EQ(p.open_digits.size(), 2U);
  EXPECT_NE(p.open_digits[0], p.open_digits[1]);
  // The prompt alone parses only once its digits are closed.
  const std::string closed = p.text + "C" + format_ring_digit(p.open_digits[0])
                             + format_ring_digit(p.open_digits[1]);
  EXPECT_FALSE(is_fragmented(decode(closed)));
}

TEST(LinkerPrompt, SingleCarbons) {
  const Prompt p = linker_prompt(parse_smiles("[*]C"), parse_smiles("[*]C"));
  const std::string text = p.text + "O" + format_ring_digit(p.open_digits[0])
                           + format_ring_digit(p.open_digits[1]);
  const MolGraph g = decode(text);
  EXPECT_EQ(canonical_smiles(g), canon("COC"));
}

TEST(LinkerPrompt, NeedsOneAttachmentEach) {
  try {
    linker_prompt(parse_smiles("[*]C[*]"), parse_smiles("[*]C"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBadAttachmentCount);
  }
  EXPECT_THROW(linker_prompt(parse_smiles("CC"), parse_smiles("[*]C")), Error);
}

TEST(Digits, NoDigitOpenTwiceAtOnce) {
  for (const std::string &smi: testing::moses_train(300)) {
    const SafeString s = encode(parse_smiles(smi), FragmentationScheme::kHR);
    std::set<int> open;
    for (int d: digits_in(s.text())) {
      if (open.count(d))
        open.erase(d);
      else
        open.insert(d);
    }
    EXPECT_TRUE(open.empty()) << s.text();
  }
}

}  // namespace
}  // namespace safekit
