#include <gtest/gtest.h>

#include "anhom/error.hpp"
#include "anhom/problem.hpp"

using namespace anhom;

TEST(ParseProblem, ThreeSlitSetup) {
  const ProblemSpec p = parse_problem("n = 3\nprecluded = {1,2};{2,3}");
  EXPECT_EQ(p.n, 3u);
  ASSERT_TRUE(p.precluded.has_value());
  EXPECT_EQ(format_family(*p.precluded), "{1,2};{2,3}");
  EXPECT_TRUE(p.query.empty());
  EXPECT_FALSE(p.f.has_value());
}

TEST(ParseProblem, AllKeysWithCommentsAndBlanks) {
  const ProblemSpec p =
      parse_problem("# setup\n\n  n=3  \nquery = {1};{1,2}\nf = 1, 1.5,2\nprecluded = {1}\n");
  EXPECT_EQ(p.query.size(), 2u);
  ASSERT_TRUE(p.f.has_value());
  EXPECT_EQ(p.f->values(), (std::vector<double>{1, 1.5, 2}));
}

TEST(ParseProblem, Errors) {
  EXPECT_THROW(parse_problem("n = 0"), ParseError);
  EXPECT_THROW(parse_problem("n = 17"), ParseError);
  EXPECT_THROW(parse_problem("n = 3\nprecluded = {1,4}"), IndexError);
  EXPECT_THROW(parse_problem("precluded = {1}"), ParseError);
  EXPECT_THROW(parse_problem("n = 3\nn = 3"), ParseError);
  EXPECT_THROW(parse_problem("n = 3\nf = 1,2"), ParseError);
  EXPECT_THROW(parse_problem("n = 3\nf = 1,x,2"), ParseError);
  try {
    parse_problem("n = 3\ncolour = red");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 1u);
  }
  try {
    parse_problem("n = 3\nquery = {1};{2 x}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 16u);
  }
}

TEST(RenderProblem, RoundTrip) {
  for (const char* text : {"n = 3\nprecluded = {1,2};{2,3}\n",
                           "n = 4\nprecluded = {1};{2,4}\nquery = {1};{1,2,3}\nf = 1,1,2,0.25\n",
                           "n = 1\n", "n = 2\nquery = {}\n"}) {
    const ProblemSpec p = parse_problem(text);
    EXPECT_EQ(render_problem(p), text);
    const ProblemSpec again = parse_problem(render_problem(p));
    EXPECT_EQ(again.n, p.n);
    EXPECT_EQ(again.precluded, p.precluded);
    EXPECT_EQ(again.query, p.query);
  }
}
