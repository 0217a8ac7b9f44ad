#include <catch_amalgamated.hpp>

#include <uvqft/parse.hpp>
#include <uvqft/scalar.hpp>

using namespace uvqft;
using E = ExactComplex;

TEST_CASE("exact complex arithmetic and printing") {
  const E a(Rational(1), Rational(2)), b(Rational(3), Rational(-1));
  CHECK(a * b == E(Rational(5), Rational(5)));
  CHECK((a * b).str() == "5+5i");
  CHECK((a / b) * b == a);
  CHECK(E::i() * E::i() == E(-1));
  CHECK(a.conj() == E(Rational(1), Rational(-2)));
  CHECK(E(Rational(3, 4)).str() == "3/4");
  CHECK(E(Rational(0), Rational(3, 4)).str() == "3/4i");
}

TEST_CASE("printed exact values parse back") {
  const auto cs = CausalSet::simple(1, {});
  ExpressionParser p(*cs, nullptr);
  for (const E& z : {E(Rational(3, 4)), E(Rational(0), Rational(3, 4)), E(Rational(-1, 2), Rational(7, 3)),
                    E(Rational(2), Rational(-1))}) {
    const auto back = lower_to_exact(p.scalar(z.str()));
    REQUIRE(back);
    CHECK(*back == z);
  }
}

TEST_CASE("coupling series truncate at the ring order") {
  const auto ring = make_ring({"lam"}, 2);
  const auto lam = CouplingSeries::variable(ring, "lam");
  const CouplingSeries one = CouplingSeries::constant(ring, E(1));
  const auto cube = (one + lam) * (one + lam) * (one + lam);
  CHECK(cube == one + mul_int(lam, 3) + mul_int(lam * lam, 3));
  CHECK(lam * lam * lam == CouplingSeries());
  CHECK(cube.str() == "1 + 3*lam + 3*lam^2");
  CHECK((one + lam).inverse() * (one + lam) == one);
}

TEST_CASE("series exp and log on the coupling ideal") {
  const auto ring = make_ring({"a", "b"}, 3);
  const auto a = CouplingSeries::variable(ring, "a"), b = CouplingSeries::variable(ring, "b");
  const auto e = series_exp(a);
  // 1 + a + a^2/2 + a^3/6
  CHECK(e.coefficient({2, 0}) == E(Rational(1, 2)));
  CHECK(e.coefficient({3, 0}) == E(Rational(1, 6)));
  CHECK(series_exp(a) * series_exp(b) == series_exp(a + b));
  CHECK(series_log(series_exp(a + a * b)) == a + a * b);
}

TEST_CASE("laurent split and minimal subtraction parts") {
  using L = RegulatorLaurent;
  const auto ring = make_ring({"lam"}, 2);
  const auto lam = CouplingSeries::variable(ring, "lam");
  const L x = L::eps_power(-2, lam) + L::eps_power(-1, CouplingSeries(E(3))) + L(E(5)) + L::eps_power(1);
  const auto [pp, fp] = laurent_split(x);
  CHECK(pp == L::eps_power(-2, lam) + L::eps_power(-1, CouplingSeries(E(3))));
  CHECK(fp == L(E(5)) + L::eps_power(1));
  CHECK(x.pole_order() == 2);
  CHECK(L::eps_power(-1) * L::eps_power(1) == L(E(1)));
  CHECK(fp.is_pole_free());
}
