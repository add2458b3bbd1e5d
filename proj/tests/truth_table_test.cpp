#include <gtest/gtest.h>

#include <array>
#include <vector>

#include "anhom/error.hpp"
#include "anhom/truth_table.hpp"

using namespace anhom;

namespace {

TruthTable star(OutcomeSpace s, std::size_t i) { return TruthTable::containment(s, i); }

// T(A) = 1 iff A is the whole space.
TruthTable top_only(OutcomeSpace s) {
  return TruthTable::from_function(s, [&](EventMask m) { return m == s.full_mask(); });
}

// Brute-force grade-2 additivity over unordered disjoint triples, written
// independently of the library's ordered scan.
bool grade2_oracle(const TruthTable& t) {
  const std::size_t n = t.space().size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    std::array<EventMask, 4> part{};
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 4) part[c % 4] |= EventMask{1} << i;
    const EventMask a = part[1], b = part[2], d = part[3];
    const bool lhs = t(a | b | d);
    const bool rhs = t(a | b) ^ t(a | d) ^ t(b | d) ^ t(a) ^ t(b) ^ t(d);
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace

TEST(TruthTable, EmptyEventIsAlwaysFalse) {
  const OutcomeSpace s(2);
  TruthTable t(s);
  EXPECT_THROW(t.set(0, true), ArgumentError);
  EXPECT_THROW(TruthTable::from_integer(s, 1), ArgumentError);
}

TEST(TruthTable, FormatParseRoundTrip) {
  const OutcomeSpace s(3);
  const TruthTable t = star(s, 1) * star(s, 2);
  EXPECT_EQ(format_table(t), "[{1,2},{1,2,3}]");
  EXPECT_EQ(parse_table(s, "[{1,2},{1,2,3}]"), t);
  EXPECT_EQ(format_table(TruthTable(s)), "[]");
  EXPECT_THROW(parse_table(s, "[{}]"), Error);
  EXPECT_THROW(parse_table(s, "[{1},{4}]"), IndexError);
}

TEST(Classify, ContainmentMapIsEverything) {
  const OutcomeSpace s(3);
  const ClassificationReport r = classify(star(s, 1));
  EXPECT_TRUE(r.unital);
  EXPECT_TRUE(r.grade1_additive);
  EXPECT_TRUE(r.multiplicative);
  EXPECT_TRUE(r.grade2_additive);
  EXPECT_TRUE(r.homomorphism);
  EXPECT_TRUE(r.two_point_condition);
}

TEST(Classify, SumOfTwoStars) {
  const OutcomeSpace s(3);
  const ClassificationReport r = classify(star(s, 1) + star(s, 2));
  EXPECT_TRUE(r.grade1_additive);
  EXPECT_FALSE(r.multiplicative);
  EXPECT_FALSE(r.unital);
  EXPECT_FALSE(r.homomorphism);
}

TEST(Classify, ProductOfTwoStars) {
  const OutcomeSpace s(3);
  const ClassificationReport r = classify(star(s, 1) * star(s, 2));
  EXPECT_TRUE(r.multiplicative);
  EXPECT_FALSE(r.grade1_additive);
  EXPECT_TRUE(r.grade2_additive);
  EXPECT_TRUE(r.two_point_condition);
}

TEST(Decompose, Additive) {
  const OutcomeSpace s(3);
  EXPECT_EQ(decompose_additive(star(s, 1) + star(s, 3)), (std::vector<std::size_t>{1, 3}));
  EXPECT_THROW(decompose_additive(star(s, 1) * star(s, 2)), NotAdditiveError);
  EXPECT_THROW(decompose_additive(TruthTable(s)), ZeroFunctionError);
}

TEST(Decompose, Multiplicative) {
  const OutcomeSpace s(3);
  EXPECT_EQ(decompose_multiplicative(star(s, 1) * star(s, 2)), Event::of(s, {1, 2}));
  EXPECT_EQ(decompose_multiplicative(star(s, 3)), Event::of(s, {3}));
  EXPECT_THROW(decompose_multiplicative(star(s, 1) + star(s, 2)), NotMultiplicativeError);
  EXPECT_THROW(decompose_multiplicative(TruthTable(s)), DegenerateError);
}

TEST(Interference, Values) {
  const OutcomeSpace s(3);
  EXPECT_FALSE(interference(star(s, 1), {1, 2}));
  EXPECT_TRUE(interference(star(s, 1) * star(s, 2), {1, 2}));
  EXPECT_TRUE(interference(star(s, 1) * star(s, 2), {1, 2, 3}));
}

TEST(Interference, Preconditions) {
  const OutcomeSpace s(3);
  const TruthTable t = star(s, 1);
  EXPECT_THROW(interference(t, {1}), ArgumentError);
  EXPECT_THROW(interference(t, {1, 1}), ArgumentError);
  EXPECT_THROW(interference(t, {1, 4}), IndexError);
}

TEST(TwoPoint, Examples) {
  const OutcomeSpace s(3);
  EXPECT_TRUE(check_two_point(star(s, 2)));
  EXPECT_TRUE(check_two_point(star(s, 1) * star(s, 2)));
  EXPECT_FALSE(check_two_point(top_only(s)));
}

TEST(Enumerate, Counts) {
  const OutcomeSpace s2(2), s3(3);
  EXPECT_EQ(enumerate_tables(s3, [](const ClassificationReport& r) { return r.grade2_additive; }).size(),
            64u);
  EXPECT_EQ(enumerate_tables(s2, [](const ClassificationReport& r) { return r.homomorphism; }).size(),
            2u);
  EXPECT_EQ(enumerate_tables(s2, nullptr).size(), 8u);
  EXPECT_THROW(enumerate_tables(OutcomeSpace(5), nullptr), CapacityError);
}

TEST(Exhaustive, Grade2MatchesOracleAndTwoPoint) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for_each_table(OutcomeSpace(n), [](const TruthTable& t) {
      const bool g2 = is_grade2_additive(t);
      EXPECT_EQ(g2, grade2_oracle(t)) << format_table(t);
      EXPECT_EQ(g2, check_two_point(t)) << format_table(t);
      if (is_grade1_additive(t)) {
        EXPECT_TRUE(g2);
      }
    });
  }
}

TEST(Exhaustive, HomomorphismsAreStars) {
  const OutcomeSpace s(3);
  const auto homs =
      enumerate_tables(s, [](const ClassificationReport& r) { return r.homomorphism; });
  ASSERT_EQ(homs.size(), 3u);
  for (const auto& t : homs) {
    const auto outcomes = decompose_additive(t);
    ASSERT_EQ(outcomes.size(), 1u);
    EXPECT_EQ(t, star(s, outcomes[0]));
  }
}
