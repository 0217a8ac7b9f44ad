#include <catch_amalgamated.hpp>

#include <uvqft/oracles.hpp>
#include <uvqft/random_models.hpp>

using namespace uvqft;
using E = ExactComplex;

namespace {
Propagator<E> two_point(const CausalSetPtr& cs, E a, E b, E c) {
  Propagator<E> p(cs);
  p.set(0, 0, a);
  p.set(1, 1, b);
  p.set(0, 1, c);
  p.set(1, 0, c);
  return p;
}
}  // namespace

TEST_CASE("frozen Wick values") {
  const auto cs = CausalSet::simple(2, {});
  const auto df = two_point(cs, E(2), E(5), E(3));
  WickEngine<E> w(df);
  // phi_x^4 = 3 c^2 with c = 2
  CHECK(w.eval(Multiset{field_power(0, 0, 4)}) == E(12));
  // phi_x^6 = 15 c^3
  CHECK(w.eval(Multiset{field_power(0, 0, 6)}) == E(120));
  // phi_x^2 phi_y^2 = ab + 2c^2
  CHECK(w.eval(make_multiset({field_power(0, 0, 2), field_power(1, 0, 2)})) == E(28));
  // phi_x phi_y^3 = 3 c b
  CHECK(w.eval(make_multiset({field_power(0, 0, 1), field_power(1, 0, 3)})) == E(45));
  // vertex products at one point reuse the same pairings
  CHECK(w.eval(make_multiset({field_power(0, 0, 2), field_power(0, 0, 2)})) == E(12));
  CHECK(w.eval(Multiset{field_power(0, 0, 3)}) == E(0));
  CHECK(w.eval(Multiset{density(0)}) == E(1));
}

TEST_CASE("Wick engine matches the matching enumerator with two species") {
  const auto cs = CausalSet::make({"x"}, {}, {{"phi", "psi"}});
  Propagator<E> p(cs);
  p.set(0, 0, E(1));
  p.set(1, 1, E(Rational(1, 2)));
  p.set(0, 1, E(Rational(0), Rational(1)));
  p.set(1, 0, E(Rational(0), Rational(1)));
  WickEngine<E> w(p);
  for (const auto& m : spanning_basis(*cs, Truncation{2, 6})) CHECK(w.eval(m) == oracle::naive_wick(*cs, p, m));
  // phi psi at one vertex is Delta(phi, psi)
  CHECK(w.eval(Multiset{make_vertex(0, {1, 1})}) == E(Rational(0), Rational(1)));
}

TEST_CASE("Feynman propagator from cut and diagonal") {
  const auto cs = CausalSet::simple(2, {{0, 1}});
  CutPropagator<E> cut(cs);
  cut.set(0, 0, E(1));
  cut.set(1, 1, E(1));
  cut.set(0, 1, E(Rational(1), Rational(1)));
  cut.set(1, 0, E(Rational(1), Rational(-1)));
  DiagonalData<E> diag{{{0, 0, 0}, E(7)}, {{1, 0, 0}, E(8)}};
  const auto omega = FeynmanMeasure<E>::from_cut(cut, diag);
  const auto& f = omega.feynman();
  CHECK(f.at(0, 0) == E(7));
  CHECK(f.at(0, 1) == f.at(1, 0));
  CHECK(f.is_symmetric());
}

TEST_CASE("Gaussian condition only applies to split supports") {
  const auto cs = CausalSet::simple(2, {{0, 1}});
  Rng rng(5);
  const auto omega = random_measure(rng, cs);
  const auto a = SymElement<E>::vertex(field_power(1, 0, 2));
  const auto b = SymElement<E>::vertex(field_power(0, 0, 2));
  const auto r = gaussian_check(omega, a, b);
  CHECK(r.applicable);
  CHECK(r.holds);
  // lower point on the left: nothing to check
  CHECK_FALSE(gaussian_check(omega, b, a).applicable);
}
