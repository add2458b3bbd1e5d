#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "anhom/coevent.hpp"
#include "anhom/error.hpp"

using namespace anhom;

namespace {

Coevent parse(std::size_t n, const char* text) { return parse_coevent(OutcomeSpace(n), text); }

const char* const kPsi =
    "w1* + w2* + w1*w2* + w4*w5* + w1*w3* + w1*w4* + w1*w5* + w2*w4* + w2*w5*";

// Evaluates a polynomial directly from its definition: sum of a_i [i in A]
// plus b_ij [i in A][j in A].
bool evaluate_by_definition(const Coevent& phi, EventMask a) {
  const std::size_t n = phi.space().size();
  bool v = false;
  for (std::size_t i = 1; i <= n; ++i) {
    const bool in_i = (a >> (i - 1)) & 1;
    if (in_i && phi.linear(i)) v = !v;
    for (std::size_t j = i + 1; j <= n; ++j) {
      const bool in_j = (a >> (j - 1)) & 1;
      if (in_i && in_j && phi.quadratic(i, j)) v = !v;
    }
  }
  return v;
}

std::vector<Coevent> every_coevent(OutcomeSpace s) {
  std::vector<Coevent> out;
  const std::size_t d = s.coevent_dimension();
  for (std::size_t code = 0; code < (std::size_t{1} << d); ++code) {
    Gf2Vector c(d);
    for (std::size_t k = 0; k < d; ++k) c.set(k, (code >> k) & 1);
    out.push_back(Coevent::from_coefficients(s, c));
  }
  return out;
}

}  // namespace

TEST(CoefficientLayout, PairOrder) {
  EXPECT_EQ(coefficient::quadratic(3, 1, 2), 3u);
  EXPECT_EQ(coefficient::quadratic(3, 1, 3), 4u);
  EXPECT_EQ(coefficient::quadratic(3, 3, 2), 5u);
  std::size_t k = 0;
  for (const auto& [i, j] : coefficient::pairs(6)) EXPECT_EQ(coefficient::pair(6, i, j), k++);
  EXPECT_EQ(k, 15u);
}

TEST(Coevent, Evaluate) {
  const OutcomeSpace s(5);
  const Coevent psi = parse_coevent(s, kPsi);
  EXPECT_TRUE(evaluate(psi, Event::of(s, {2, 3})));
  EXPECT_TRUE(evaluate(psi, Event::of(s, {4, 5})));
  EXPECT_FALSE(evaluate(psi, Event::empty(s)));
  EXPECT_THROW(evaluate(psi, Event::of(OutcomeSpace(4), {1})), ArgumentError);
}

TEST(Coevent, InterpolateWorkedExample) {
  const OutcomeSpace s(5);
  // Doubleton order: 12 13 14 15 23 24 25 34 35 45.
  const Coevent phi = interpolate(s, Gf2Vector::from_string("11000"),
                                  Gf2Vector::from_string("1000100001"));
  EXPECT_EQ(phi, parse_coevent(s, kPsi));
  EXPECT_EQ(format_coevent(phi),
            "w1* + w2* + w1*w2* + w1*w3* + w1*w4* + w1*w5* + w2*w4* + w2*w5* + w4*w5*");
}

TEST(Coevent, InterpolateSmallCases) {
  const OutcomeSpace s2(2);
  EXPECT_TRUE(interpolate(s2, Gf2Vector(2), Gf2Vector(1)).is_zero());
  EXPECT_EQ(interpolate(s2, Gf2Vector(2), Gf2Vector::from_string("1")),
            Coevent::product(s2, 1, 2));
  EXPECT_THROW(interpolate(s2, Gf2Vector(3), Gf2Vector(1)), ShapeError);
}

TEST(Coevent, FromTable) {
  const OutcomeSpace s3(3);
  const Coevent c = from_table(TruthTable::containment(s3, 2));
  EXPECT_EQ(c, Coevent::containment(s3, 2));

  const TruthTable top =
      TruthTable::from_function(s3, [&](EventMask m) { return m == s3.full_mask(); });
  try {
    from_table(top);
    FAIL() << "expected NotACoeventError";
  } catch (const NotACoeventError& e) {
    EXPECT_EQ(e.witness(), Event::full(s3));
  }

  const OutcomeSpace s5(5);
  const Coevent psi = parse_coevent(s5, kPsi);
  EXPECT_EQ(from_table(to_table(psi)), psi);
  EXPECT_EQ(psi.coefficients().popcount(), 9u);
}

TEST(Coevent, ToTable) {
  const OutcomeSpace s2(2), s3(3);
  EXPECT_TRUE(to_table(Coevent(s3)).is_zero());
  EXPECT_EQ(format_table(to_table(Coevent::product(s2, 1, 2))), "[{1,2}]");
  EXPECT_EQ(format_table(to_table(parse(3, "w3* + w1*w3* + w2*w3*"))),
            "[{3},{1,2,3}]");
}

TEST(Coevent, Addition) {
  const OutcomeSpace s(3);
  const Coevent a = parse(3, "w1* + w2*");
  const Coevent b = parse(3, "w1* + w1*w2*");
  EXPECT_TRUE((a + a).is_zero());
  EXPECT_EQ(a + Coevent(s), a);
  EXPECT_EQ(add(a, b), parse(3, "w2* + w1*w2*"));
  EXPECT_THROW(a + Coevent(OutcomeSpace(2)), ShapeError);
}

TEST(Coevent, PartitionIdentity) {
  const OutcomeSpace s(3);
  const std::vector<Event> triple{Event::of(s, {1}), Event::of(s, {2}), Event::of(s, {3})};
  for (const auto& phi : every_coevent(s)) EXPECT_TRUE(verify_partition_identity(phi, triple));

  const TruthTable top =
      TruthTable::from_function(s, [&](EventMask m) { return m == s.full_mask(); });
  EXPECT_FALSE(verify_partition_identity(top, triple));

  // m even: the singleton sum must not enter.
  const OutcomeSpace s4(4);
  const std::vector<Event> four{Event::of(s4, {1}), Event::of(s4, {2}), Event::of(s4, {3}),
                                Event::of(s4, {4})};
  for (const auto& phi : {parse(4, "w1*"), parse(4, "w1*w2* + w3*"), parse(4, "w2*w4*")}) {
    EXPECT_TRUE(verify_partition_identity(phi, four));
  }
  EXPECT_THROW(verify_partition_identity(parse(3, "w1*"), std::vector<Event>{Event::of(s, {1})}), ArgumentError);
  EXPECT_THROW(verify_partition_identity(parse(3, "w1*"),
                           std::vector<Event>{Event::of(s, {1, 2}), Event::of(s, {2})}),
               DisjointnessError);
}

TEST(Coevent, LiftToProduct) {
  const OutcomeSpace s(3);
  const PairAdditiveMap l1 = lift_to_product(Coevent::containment(s, 1));
  EXPECT_EQ(l1.generators(), (std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}}));
  EXPECT_TRUE(l1(square(Event::of(s, {1}))));

  const PairAdditiveMap l23 = lift_to_product(Coevent::product(s, 2, 3));
  EXPECT_EQ(l23.generators(), (std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}}));
  EXPECT_TRUE(l23(square(Event::of(s, {2, 3}))));
  EXPECT_FALSE(l23(square(Event::of(s, {2}))));

  const PairAdditiveMap l0 = lift_to_product(Coevent(s));
  EXPECT_TRUE(l0.generators().empty());
  EXPECT_TRUE(l0.to_table().is_zero());
}

TEST(Coevent, FormatParse) {
  const OutcomeSpace s(3);
  EXPECT_EQ(format_coevent(Coevent(s)), "0");
  EXPECT_EQ(format_coevent(parse(3, "w2*w3* + w1*w3*+w3*")), "w3* + w1*w3* + w2*w3*");
  EXPECT_TRUE(parse(3, "w1* + w1*").is_zero());
  EXPECT_EQ(parse(3, "w2*w2*"), Coevent::containment(s, 2));
  EXPECT_TRUE(parse(3, "0").is_zero());
  EXPECT_THROW(parse(3, "w1*w2*w3*"), ParseError);
  EXPECT_THROW(parse(3, "w4*"), IndexError);
  EXPECT_THROW(parse(3, "w1 + w2*"), ParseError);
  EXPECT_THROW(parse(3, ""), ParseError);
  for (const auto& phi : every_coevent(s)) EXPECT_EQ(parse_coevent(s, format_coevent(phi)), phi);
}

// Exhaustive at n <= 3 against independent oracles.
TEST(CoeventExhaustive, AgreesWithDefinitionAndTables) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const OutcomeSpace s(n);
    std::set<std::vector<bool>> images;
    for (const auto& phi : every_coevent(s)) {
      const TruthTable t = to_table(phi);
      std::vector<bool> bits;
      for (std::size_t m = 0; m < s.event_count(); ++m) {
        const auto mask = static_cast<EventMask>(m);
        ASSERT_EQ(t(mask), evaluate_by_definition(phi, mask));
        ASSERT_EQ(evaluate(phi, Event(s, mask)), t(mask));
        bits.push_back(t(mask));
      }
      EXPECT_TRUE(is_grade2_additive(t));
      EXPECT_EQ(from_table(t), phi);
      images.insert(bits);

      const PairAdditiveMap lambda = lift_to_product(phi);
      for (std::size_t m = 0; m < s.event_count(); ++m) {
        const Event a(s, static_cast<EventMask>(m));
        EXPECT_EQ(lambda(square(a)), evaluate(phi, a));
      }
      EXPECT_TRUE(is_grade1_additive(lambda.to_table()));
    }
    EXPECT_EQ(images.size(), std::size_t{1} << s.coevent_dimension());
  }
}
