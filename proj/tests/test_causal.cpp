#include <catch_amalgamated.hpp>

#include <uvqft/causal_set.hpp>

using namespace uvqft;

TEST_CASE("closure of a chain") {
  const auto cs = CausalSet::simple(3, {{0, 1}, {1, 2}});
  CHECK(cs->leq(0, 2));
  CHECK_FALSE(cs->leq(2, 0));
  CHECK_FALSE(cs->is_spacelike(0, 2));
  CHECK(cs->past_of({2}) == SupportSet{0, 1, 2});
  CHECK(cs->future_of({1}) == SupportSet{1, 2});
}

TEST_CASE("none_leq and minimal points") {
  // 0 <= 2, 1 spacelike to both
  const auto cs = CausalSet::simple(3, {{0, 2}});
  CHECK(cs->none_leq({2}, {0, 1}));
  CHECK_FALSE(cs->none_leq({0}, {2}));
  CHECK(cs->none_leq({1}, {0, 2}));
  CHECK(cs->minimal_points({0, 1, 2}) == SupportSet{0, 1});
}

TEST_CASE("literal relations report the first violation") {
  std::vector<std::vector<bool>> rel(3, std::vector<bool>(3, false));
  for (int i = 0; i < 3; ++i) rel[i][i] = true;
  rel[0][1] = rel[1][2] = true;
  const auto r = validate_preorder(rel);
  REQUIRE_FALSE(r.valid);
  CHECK(r.violations.front().kind == PreorderViolation::Kind::transitivity);
  CHECK(r.violations.front().points == std::vector<PointId>{0, 1, 2});
  // with closure off the constructor rejects the same relation
  CausalSetOptions opts;
  opts.close = false;
  CHECK_THROWS_AS(CausalSet::make({"x", "y", "z"}, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}},
                                  {{"phi"}, {"phi"}, {"phi"}}, opts),
                  std::invalid_argument);
}

TEST_CASE("preorders only when allowed") {
  CHECK_THROWS(CausalSet::make({"a", "b"}, {{0, 1}, {1, 0}}, {{"phi"}, {"phi"}}));
  CausalSetOptions opts;
  opts.allow_preorder = true;
  const auto cs = CausalSet::make({"a", "b"}, {{0, 1}, {1, 0}}, {{"phi"}, {"phi"}}, opts);
  CHECK(cs->leq(1, 0));
}

TEST_CASE("species and point caps") {
  std::vector<std::string> eight{"a", "b", "c", "d", "e", "f", "g", "h"};
  CHECK_THROWS(CausalSet::make({"x"}, {}, {eight}));
  const auto cs = CausalSet::make({"x", "y"}, {}, {{"phi", "psi"}, {"phi"}});
  CHECK(cs->num_fields() == 3);
  CHECK(cs->field_index(1, 0) == 2);
  CHECK(cs->field_point(1) == 0);
}
