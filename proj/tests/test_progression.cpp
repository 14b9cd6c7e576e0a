#include <gtest/gtest.h>

#include <iostream>
#include <random>

#include "progression_check.hpp"
#include "support.hpp"

using namespace groundsmith;
using gs_test::ProgressionChecker;
using gs_test::ProgressionReport;

namespace {

std::string describe(const ProgressionReport& r) {
  std::string s = std::to_string(r.formulas) + " formulas, " + std::to_string(r.pairs) + " pairs, " +
                  std::to_string(r.mismatches) + " mismatches in " + std::to_string(r.seconds) + " s";
  for (const auto& e : r.examples) s += "\n  " + e;
  return s;
}

}  // namespace

TEST(Enumerate, Counts) {
  // Closed forms for 3 atoms, 2 unary and 3 binary operators.
  EXPECT_EQ(gs_test::enumerate_g_free(1, 3, true).size(), 9u + 27u);
  EXPECT_EQ(gs_test::enumerate_g_free(2, 3, true).size(), 21u + 297u + 1458u);
  EXPECT_EQ(gs_test::enumerate_g_free(3, 3, true).size(), 45u + 1917u + 40338u);
  for (const auto& f : gs_test::enumerate_g_free(3, 3, false)) {
    ASSERT_LE(operator_depth(f), 3);
    ASSERT_FALSE(gs_test::negates_temporal(f)) << format_ltl(f);
  }
}

TEST(Oracle, AgreesWithReferenceEvaluators) {
  gs_test::TraceSpace sp;
  gs_test::BitOracle oracle(sp);
  std::mt19937_64 rng(11);
  gs_test::FormulaGen gen;  // G and constants included
  for (int k = 0; k < 300; ++k) {
    Formula f = gen(rng, 4);
    const auto& bits = oracle.eval(f);
    for (int probe = 0; probe < 40; ++probe) {
      int len = std::uniform_int_distribution<int>(1, 5)(rng);
      std::size_t code = std::uniform_int_distribution<std::size_t>(0, sp.width(len) - 1)(rng);
      Trace t = sp.trace(len, code);
      bool want = gs_test::naive_sat(f, t);
      ASSERT_EQ(bits[sp.offset(len) + code] != 0, want) << format_ltl(f);
      ASSERT_EQ(evaluate_trace(f, t), want) << format_ltl(f);
    }
  }
}

TEST(Progression, ExhaustiveCoSafeDepth3) {
  ProgressionChecker chk;
  auto rep = chk.run(gs_test::enumerate_g_free(3, 3, false));
  std::cout << describe(rep) << "\n";
  EXPECT_EQ(rep.mismatches, 0u) << describe(rep);
  EXPECT_GT(rep.formulas, 20000u);
}

// With negation over temporal subformulas the two notions part ways: !F a
// holds on the one-step trace {} but its residual never becomes true. Every
// mismatch must be of that shape.
TEST(Progression, NegatedTemporalIsTheOnlyGap) {
  ProgressionChecker chk;
  auto rep = chk.run(gs_test::enumerate_g_free(3, 3, true));
  std::cout << describe(rep) << "\n";
  EXPECT_GT(rep.mismatched_formulas, 0u);
  EXPECT_EQ(rep.unexplained, 0u) << describe(rep);
}

TEST(Progression, RandomDeeperCoSafe) {
  ProgressionChecker chk;
  std::mt19937_64 rng(5);
  gs_test::FormulaGen gen;
  gen.allow_g = false;
  gen.cosafe = true;
  std::vector<Formula> fs;
  while (fs.size() < 3000) {
    Formula f = gen(rng, 4);
    if (operator_depth(f) >= 3) fs.push_back(f);
  }
  auto rep = chk.run(fs);
  EXPECT_EQ(rep.mismatches, 0u) << describe(rep);
}

TEST(Progression, TrueIsAbsorbing) {
  for (int s = 0; s < 8; ++s) EXPECT_TRUE(progress(Formula::truth(), gs_test::TraceSpace::labels(s)).is_true());
  EXPECT_TRUE(progression_accepts(parse_ltl("F a"), {{"a"}, {}}));
  EXPECT_FALSE(progression_accepts(parse_ltl("F a"), {{}, {}}));
}
