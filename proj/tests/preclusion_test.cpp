#include <gtest/gtest.h>

#include <vector>

#include "anhom/coevent.hpp"
#include "anhom/error.hpp"
#include "anhom/preclusion.hpp"

using namespace anhom;

namespace {

const OutcomeSpace kThree(3);

PrecludedFamily family(const char* text) { return parse_family(kThree, text); }

Coevent co(const char* text) { return parse_coevent(kThree, text); }

CoeventSubspace span(std::initializer_list<const char*> texts) {
  std::vector<Coevent> gens;
  for (const char* t : texts) gens.push_back(co(t));
  return CoeventSubspace::span_of(kThree, gens);
}

// All coevents phi with phi(A_i) = 0 for every member, by scanning the
// whole coevent space.
std::vector<Gf2Vector> preclusive_by_scan(const PrecludedFamily& fam) {
  const std::size_t d = fam.space().coevent_dimension();
  std::vector<Gf2Vector> out;
  for (std::size_t code = 0; code < (std::size_t{1} << d); ++code) {
    Gf2Vector c(d);
    for (std::size_t k = 0; k < d; ++k) c.set(k, (code >> k) & 1);
    const Coevent phi = Coevent::from_coefficients(fam.space(), c);
    bool ok = true;
    for (const auto& e : fam.members()) ok = ok && !evaluate(phi, e);
    if (ok) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(Family, ParseFormatAndClosure) {
  const PrecludedFamily f = family("{2,3};{1,2};{1,2}");
  EXPECT_EQ(f.members().size(), 2u);
  EXPECT_EQ(format_family(f), "{1,2};{2,3}");
  EXPECT_EQ(f.union_event(), Event::full(kThree));
  EXPECT_TRUE(f.is_precluded(Event::empty(kThree)));
  EXPECT_EQ(format_family(PrecludedFamily(kThree)), "{}");
  EXPECT_EQ(format_family(family("")), "{}");

  const PrecludedFamily closed(kThree, {Event::of(kThree, {1}), Event::of(kThree, {2})}, true);
  EXPECT_EQ(format_family(closed), "{1};{2};{1,2}");
  EXPECT_THROW(family("{1,4}"), IndexError);
  EXPECT_THROW(family("{1} {2}"), ParseError);
}

TEST(Preclusive, PairFamily) {
  const CoeventSubspace s = preclusive_basis(family("{1,2}"));
  EXPECT_EQ(s.dimension(), 5u);
  for (const char* t : {"w3*", "w1*w3*", "w2*w3*", "w1* + w2*", "w1* + w1*w2*"}) {
    EXPECT_TRUE(s.contains(co(t))) << t;
  }
}

TEST(Preclusive, TwoSingletons) {
  EXPECT_EQ(preclusive_basis(family("{1};{2}")),
            span({"w3*", "w1*w3*", "w2*w3*", "w1*w2*"}));
}

TEST(Preclusive, EmptyFamilyIsEverything) {
  EXPECT_EQ(preclusive_basis(PrecludedFamily(kThree)).dimension(), 6u);
}

TEST(Precluding, WorkedFamilies) {
  const CoeventSubspace pair = precluding_basis(family("{1,2}"));
  ASSERT_EQ(pair.dimension(), 1u);
  EXPECT_EQ(format_coevent(pair.basis()[0]), "w3* + w1*w3* + w2*w3*");
  EXPECT_TRUE(evaluate(pair.basis()[0], Event::full(kThree)));

  EXPECT_EQ(precluding_basis(family("{1};{2}")), pair);
  EXPECT_EQ(precluding_basis(family("{1}")),
            span({"w2*w3*", "w2* + w1*w2*", "w3* + w1*w3*"}));
  EXPECT_EQ(precluding_basis(family("{1,2};{2,3}")).dimension(), 0u);
  EXPECT_EQ(preclusive_basis(family("{1,2};{2,3}")),
            span({"w1* + w2* + w3*", "w1* + w1*w2*", "w3* + w2*w3*", "w1*w3*"}));
}

TEST(Precluding, RoutesAgreeAndMatchScan) {
  const MasterObservable obs(kThree);
  for (const char* text : {"{1}", "{1,2}", "{1};{2}", "{1,2};{2,3}", "{1,2,3}", "{2};{1,3}"}) {
    const PrecludedFamily f = family(text);
    EXPECT_EQ(precluding_from_null_space(f, obs), precluding_from_range(f, obs)) << text;
    const auto scan = preclusive_by_scan(f);
    EXPECT_EQ(scan.size(), std::size_t{1} << preclusive_basis(f).dimension()) << text;
    for (const auto& v : scan) {
      EXPECT_TRUE(preclusive_basis(f).contains(Coevent::from_coefficients(kThree, v)));
    }
  }
}

TEST(Occurrence, Queries) {
  const PrecludedFamily pair = family("{1,2}");
  const Event b1 = Event::of(kThree, {1});
  const Occurrence o = occurrence_query(pair, b1, CoeventClass::preclusive);
  ASSERT_TRUE(o.exists);
  ASSERT_TRUE(o.witness.has_value());
  EXPECT_TRUE(evaluate(*o.witness, b1));
  EXPECT_TRUE(preclusive_basis(pair).contains(*o.witness));
  // The coevent w1* + w2* is a valid witness as well.
  EXPECT_TRUE(preclusive_basis(pair).contains(co("w1* + w2*")));
  EXPECT_TRUE(evaluate(co("w1* + w2*"), b1));

  const Occurrence none =
      occurrence_query(family("{1}"), Event::of(kThree, {1, 2}), CoeventClass::precluding);
  EXPECT_FALSE(none.exists);
  EXPECT_FALSE(none.witness.has_value());

  for (auto mode : {CoeventClass::preclusive, CoeventClass::precluding}) {
    EXPECT_FALSE(occurrence_query(pair, Event::empty(kThree), mode).exists);
  }
}

TEST(Duality, WorkedFamilies) {
  const DualityReport r2 = duality_report(family("{1,2}"));
  EXPECT_TRUE(r2.passed);
  EXPECT_EQ(r2.precluding_dimension, 1u);
  EXPECT_EQ(r2.preclusive_dimension, 5u);
  EXPECT_TRUE(r2.precluding_within_preclusive);
  EXPECT_NE(std::find(r2.preclusive_inside_union.begin(), r2.preclusive_inside_union.end(),
                      Event::of(kThree, {1})),
            r2.preclusive_inside_union.end());

  const DualityReport r5 = duality_report(family("{1,2};{2,3}"));
  EXPECT_TRUE(r5.passed);
  EXPECT_EQ(r5.precluding_dimension, 0u);

  const DualityReport r4 = duality_report(family("{1}"));
  EXPECT_NE(std::find(r4.precluding_missing_outside_union.begin(),
                      r4.precluding_missing_outside_union.end(), Event::of(kThree, {1, 2})),
            r4.precluding_missing_outside_union.end());

  EXPECT_THROW(duality_report(PrecludedFamily(OutcomeSpace(5))), CapacityError);
}
