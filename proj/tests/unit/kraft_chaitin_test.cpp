#include <gtest/gtest.h>

#include <random>

#include "ait/encodings.hpp"
#include "ait/enumerator.hpp"
#include "ait/errors.hpp"
#include "ait/kraft_chaitin.hpp"
#include "ait/machine.hpp"
#include "ait/programs.hpp"

using namespace ait;

namespace {

bool antichain(const std::vector<std::pair<BitString, Natural>>& issued) {
  for (std::size_t i = 0; i < issued.size(); ++i) {
    for (std::size_t j = 0; j < issued.size(); ++j) {
      if (i != j && issued[i].first.is_prefix_of(issued[j].first)) return false;
    }
  }
  return true;
}

}  // namespace

TEST(KraftChaitin, HandExample) {
  KraftChaitinAllocator a;
  EXPECT_EQ(a.request(1), BitString("0"));
  EXPECT_EQ(a.request(2), BitString("10"));
  EXPECT_EQ(a.request(3), BitString("110"));
  EXPECT_EQ(a.request(3), BitString("111"));
  EXPECT_TRUE(a.free_intervals().empty());
  EXPECT_THROW(a.request(20), Error);
}

TEST(KraftChaitin, EmptyCodewordTakesEverything) {
  KraftChaitinAllocator a;
  EXPECT_EQ(a.request(0), BitString());
  try {
    a.request(5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientBudget);
  }
}

TEST(KraftChaitin, BudgetExponentLengthensCodewords) {
  KraftChaitinAllocator a(2);
  EXPECT_EQ(a.request(0).size(), 2U);
  EXPECT_EQ(a.request(0).size(), 2U);
  EXPECT_EQ(a.request(1).size(), 3U);
}

TEST(KraftChaitin, RandomStreamsAgainstRationalOracle) {
  std::mt19937_64 rng(1234);
  for (int stream = 0; stream < 1000; ++stream) {
    KraftChaitinAllocator a;
    std::uint64_t used = 0;  // in units of 2^-8
    const int len = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < len; ++i) {
      const std::uint64_t k = rng() % 9;
      const std::uint64_t w = std::uint64_t{1} << (8 - k);
      const bool permitted = used + w <= 256;
      bool ok = true;
      try {
        const BitString cw = a.request(k, i);
        ASSERT_EQ(cw.size(), k);
      } catch (const Error& e) {
        ASSERT_EQ(e.kind(), ErrorKind::kInsufficientBudget);
        ok = false;
      }
      ASSERT_EQ(ok, permitted) << "stream " << stream << " request " << i;
      if (ok) used += w;
      ASSERT_EQ(a.free_weight() + a.issued_weight(), Dyadic(1));
      // free intervals: left to right, strictly growing
      for (std::size_t j = 1; j < a.free_intervals().size(); ++j) {
        ASSERT_GT(a.free_intervals()[j - 1].size(), a.free_intervals()[j].size());
      }
    }
    ASSERT_TRUE(antichain(a.issued()));
  }
}

TEST(KraftChaitin, Deterministic) {
  std::mt19937_64 rng(8);
  std::vector<std::uint64_t> ks;
  for (int i = 0; i < 30; ++i) ks.push_back(2 + rng() % 8);
  KraftChaitinAllocator a, b;
  for (std::uint64_t k : ks) {
    try {
      EXPECT_EQ(a.request(k), b.request(k));
    } catch (const Error&) {
    }
  }
}

TEST(KraftChaitin, TreeRoundTrip) {
  KraftChaitinAllocator a;
  for (std::uint64_t n = 0; n < 40; ++n) a.request(2 * (bit_length(Natural(n) + 1) - 1) + 2, n);
  const CodeTree t = a.tree();
  EXPECT_EQ(t.leaf_count(), 40U);
  EXPECT_EQ(CodeTree::parse(t.serialize()), t);
  for (const auto& [cw, n] : a.issued()) EXPECT_EQ(t.decode(cw), n);
}

TEST(CompileFunction, BerryLengthTree) {
  const UpperBoundFunction f = UpperBoundFunction::berry_length();
  const CompiledCode code = compile_function(f, 0, 62, MachineProfile::standard());
  EXPECT_EQ(code.tree.leaf_count(), 63U);
  EXPECT_EQ(code.tree_id, 1U);
  EXPECT_EQ(code.overhead, 17U);
  for (const auto& [cw, n] : code.tree.leaves()) {
    const std::uint64_t idx = static_cast<std::uint64_t>(n);
    ASSERT_EQ(cw.size(), f(idx));
    ASSERT_EQ(code.tree.decode(cw), n);
    const BitString prog = tree_decode_program(code.tree_id, cw);
    EXPECT_EQ(prog.size(), f(idx) + code.overhead);
    const Halted* h = as_halted(run_prefix(code.profile, prog, 10));
    ASSERT_NE(h, nullptr);
    EXPECT_EQ(h->output, lex_string(n));
  }
}

TEST(CompileFunction, EnumeratorSeesTreePrograms) {
  const UpperBoundFunction f = UpperBoundFunction::berry_length();
  const CompiledCode code = compile_function(f, 0, 62, MachineProfile::standard());
  Enumeration e(code.profile);
  e.advance(24);
  for (std::uint64_t n = 0; n <= 62; ++n) {
    if (f(n) + code.overhead > 24) continue;
    const auto k = e.K(lex_string(n));
    ASSERT_TRUE(k.has_value()) << n;
    EXPECT_LE(*k, f(n) + code.overhead);
  }
}

TEST(CompileFunction, SingleLeafAndBudget) {
  const CompiledCode one = compile_function(UpperBoundFunction::constant(0), 0, 0, MachineProfile::standard());
  EXPECT_EQ(one.tree.leaf_count(), 1U);
  EXPECT_EQ(one.tree.serialize(), "(0)");
  EXPECT_THROW(compile_function(UpperBoundFunction::constant(1), 0, 2, MachineProfile::standard()), Error);
  EXPECT_NO_THROW(compile_function(UpperBoundFunction::constant(1), 1, 2, MachineProfile::standard()));
}
