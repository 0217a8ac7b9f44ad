#include <catch_amalgamated.hpp>

#include <uvqft/anomaly.hpp>

using namespace uvqft;
using E = ExactComplex;

namespace {
const Matrix kOne = identity_matrix(1);
const Matrix kMinus{{E(-1)}};

CutPropagator<E> symmetric_cut(const CausalSetPtr& cs, E diag, E off) {
  CutPropagator<E> cut(cs);
  for (int i = 0; i < cs->num_fields(); ++i)
    for (int j = 0; j < cs->num_fields(); ++j) cut.set(i, j, i == j ? diag : off);
  return cut;
}

Multiset sq(PointId p) { return Multiset{field_power(p, 0, 2)}; }
}  // namespace

TEST_CASE("swap of two spacelike points: frozen cocycle") {
  const auto cs = CausalSet::simple(2, {});
  const Truncation tr{2, 4};
  const auto omega = FeynmanMeasure<E>::from_cut(symmetric_cut(cs, E(1), E(Rational(1, 3))),
                                                 {{{0, 0, 0}, E(1)}, {{1, 0, 0}, E(2)}});
  const auto group = group_closure(*cs, {FieldSymmetry({1, 0}, {kOne, kOne})});
  REQUIRE(group);
  REQUIRE(group->size() == 2);
  const auto coc = induced_cocycle(*group, omega, tr);
  const auto* swap = coc.find(FieldSymmetry({1, 0}, {kOne, kOne}));
  REQUIRE(swap);
  CHECK(swap->rho.data().at(sq(0)) == E(-1));
  CHECK(swap->rho.data().at(sq(1)) == E(1));
  CHECK(coc.find(FieldSymmetry::identity(*cs))->rho.is_identity());
  const auto chk = cocycle_check(coc, *cs);
  CHECK(chk.holds);
  CHECK(chk.pairs_checked == 4);
  const auto cb = coboundary_solve(coc, *cs, tr);
  REQUIRE(cb.solved);
  const auto fixed = omega.acted_on_by(cb.rho, tr);
  CHECK(fixed.eval(sq(0)) == fixed.eval(sq(1)));
  const auto moved = act_symmetry(group->at(1), fixed, tr);
  for (const auto& m : spanning_basis(*cs, tr)) CHECK(moved.eval(m) == fixed.eval(m));
}

TEST_CASE("a trivially acting generator with nontrivial cocycle is obstructed") {
  // an infinite cyclic group acting by the identity on fields: no rho with rho o rho^-1 = R
  const auto cs = CausalSet::simple(1, {});
  const Truncation tr{2, 2};
  CocycleData c;
  c.truncation = tr;
  c.entries.push_back({FieldSymmetry::identity(*cs), Renormalization<E>({{sq(0), E(1)}}, tr)});
  const auto cb = coboundary_solve(c, *cs, tr);
  CHECK_FALSE(cb.solved);
  CHECK(cb.layer_size == 1);
  CHECK(cb.layer_fields == 2);
  CHECK_FALSE(cb.message.empty());
}

TEST_CASE("symmetries must respect the order and compose") {
  const auto chain = CausalSet::simple(2, {{0, 1}});
  CHECK_THROWS(FieldSymmetry({1, 0}, {kOne, kOne}).validate(*chain));
  const auto cs = CausalSet::simple(2, {});
  const auto flip = FieldSymmetry({0, 1}, {kMinus, kMinus}), swap = FieldSymmetry({1, 0}, {kOne, kOne});
  CHECK(flip.after(flip) == FieldSymmetry::identity(*cs));
  CHECK(group_closure(*cs, {flip, swap})->size() == 4);
  // phi_x phi_x^2 is odd under the flip
  const auto odd = make_multiset({field_power(0, 0, 1), field_power(0, 0, 2)});
  CHECK(flip.apply(odd) == std::map<Multiset, E>{{odd, E(-1)}});
}

TEST_CASE("invariant lift") {
  const auto cs = CausalSet::simple(2, {});
  const Truncation tr{2, 4};
  const auto pair = [](PointId p) { return make_multiset({field_power(p, 0, 1), field_power(p, 0, 1)}); };
  const auto omega = FeynmanMeasure<E>::from_cut(symmetric_cut(cs, E(2), E(1)), {{{0, 0, 0}, E(2)}, {{1, 0, 0}, E(2)}},
                                                 Renormalization<E>({{pair(0), E(Rational(1, 2))}}, tr));
  const auto group = *group_closure(*cs, {FieldSymmetry({1, 0}, {kOne, kOne})});
  const auto coc = induced_cocycle(group, omega, tr);
  SymElement<E> a;
  a.add(pair(0), E(1));
  a.add(pair(1), E(1));
  for (bool finite : {true, false}) {
    const auto r = invariant_lift(a, coc, finite);
    REQUIRE(r.ok);
    CHECK(r.primitive_rhs);
    CHECK(r.averaged == finite);
    for (const auto& [m, v] : r.correction.terms()) CHECK(m.size() == 1);
  }
  SymElement<E> lopsided;
  lopsided.add(pair(0), E(1));
  const auto bad = invariant_lift(lopsided, coc, true);
  CHECK_FALSE(bad.ok);
  CHECK(bad.error == "a is not invariant under the first action");
}
