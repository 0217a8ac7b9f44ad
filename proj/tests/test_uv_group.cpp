#include <catch_amalgamated.hpp>

#include <uvqft/random_models.hpp>
#include <uvqft/uv_group.hpp>

using namespace uvqft;
using E = ExactComplex;
using L = RegulatorLaurent;

namespace {
CutPropagator<E> constant_cut(const CausalSetPtr& cs, E v) {
  CutPropagator<E> c(cs);
  for (int i = 0; i < cs->num_fields(); ++i)
    for (int j = 0; j < cs->num_fields(); ++j) c.set(i, j, v);
  return c;
}
}  // namespace

TEST_CASE("single point: the phi^2 component is the difference of diagonals") {
  const auto cs = CausalSet::simple(1, {});
  const Truncation tr{2, 4};
  const auto cut = constant_cut(cs, E(1));
  const auto w1 = FeynmanMeasure<E>::from_cut(cut, {{{0, 0, 0}, E(2)}});
  const auto w2 = FeynmanMeasure<E>::from_cut(cut, {{{0, 0, 0}, E(Rational(7, 2))}});
  const auto st = find_renormalization_stages(w1, w2, tr);
  REQUIRE(st.components.size() == 2);
  CHECK(st.forced);
  CHECK(st.components[0].data().at(Multiset{field_power(0, 0, 2)}) == E(Rational(3, 2)));
  for (const auto& m : spanning_basis(*cs, tr)) {
    E v;
    for (const auto& [k, c] : st.rho.act_basis(m)) v += c * w1.eval(k);
    CHECK(v == w2.eval(m));
  }
  // phi^4 = 3 d^2
  CHECK(w2.eval(Multiset{field_power(0, 0, 4)}) == E(Rational(147, 4)));
}

TEST_CASE("measures with different cuts are rejected") {
  const auto cs = CausalSet::simple(1, {});
  const auto w1 = FeynmanMeasure<E>::from_cut(constant_cut(cs, E(1)), {});
  const auto w2 = FeynmanMeasure<E>::from_cut(constant_cut(cs, E(2)), {});
  CHECK_THROWS_AS(find_renormalization_stages(w1, w2, Truncation{2, 2}), std::invalid_argument);
}

TEST_CASE("a nonlocal change of the Feynman propagator is obstructed") {
  const auto cs = CausalSet::simple(2, {});
  const auto cut = constant_cut(cs, E(1));
  const auto w1 = FeynmanMeasure<E>::from_cut(cut, {});
  FeynmanPropagator<E> f = w1.feynman();
  f.set(0, 1, E(5));
  f.set(1, 0, E(5));
  const FeynmanMeasure<E> w2(cut, f);
  CHECK_THROWS_AS(find_renormalization_stages(w1, w2, Truncation{2, 2}), InvariantViolation);
}

TEST_CASE("factorization recomposes and components have the right sizes") {
  Rng rng(11);
  const auto cs = chain(2);
  const Truncation tr{3, 3};
  const auto rho = random_renormalization(rng, *cs, tr);
  const auto gs = factorize(rho, *cs, tr);
  REQUIRE(gs.size() == 3);
  for (std::size_t n = 0; n < gs.size(); ++n)
    for (const auto& [m, c] : gs[n].data()) CHECK(m.size() == n + 1);
  const auto back = recompose(gs, *cs, tr);
  for (const auto& m : spanning_basis(*cs, tr)) CHECK(back.act_basis(m) == rho.restricted(tr).act_basis(m));
}

TEST_CASE("pole killing with a 1/eps + 1 diagonal") {
  const auto cs = CausalSet::simple(1, {});
  const Truncation tr{2, 4};
  CutPropagator<L> cut(cs);
  cut.set(0, 0, L(1));
  const auto omega = FeynmanMeasure<L>::from_cut(cut, {{{0, 0, 0}, L::eps_power(-1) + L(1)}});
  const auto res = pole_kill(omega, tr);
  CHECK(res.stages.components[0].data().at(Multiset{field_power(0, 0, 2)}) == -L::eps_power(-1));
  CHECK(res.finite.eval(Multiset{field_power(0, 0, 2)}) == L(1));
  CHECK(res.finite.eval(Multiset{field_power(0, 0, 4)}) == L(3));
  // a hook that adds a finite part shifts phi^2 by the same amount
  const SubtractionHook<L> hook = [](const Multiset& m) {
    return m == Multiset{field_power(0, 0, 2)} ? L(2) : L();
  };
  const auto shifted = pole_kill(omega, tr, hook);
  CHECK(shifted.finite.eval(Multiset{field_power(0, 0, 2)}) == L(3));
}

TEST_CASE("pole killing refuses nonlocal singular parts") {
  const auto cs = CausalSet::simple(2, {});
  CutPropagator<L> cut(cs);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) cut.set(i, j, L(1));
  FeynmanPropagator<L> f(cs);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) f.set(i, j, i == j ? L(1) : L::eps_power(-1));
  const FeynmanMeasure<L> omega(cut, f);
  CHECK_THROWS_AS(pole_kill(omega, Truncation{2, 2}), InvariantViolation);
}
