#include <catch_amalgamated.hpp>

#include <uvqft/renormalization.hpp>

using namespace uvqft;
using E = ExactComplex;

namespace {
const Vertex kPhi = field_power(0, 0, 1);
const Vertex kPhi2 = field_power(0, 0, 2);
}  // namespace

TEST_CASE("vertices are primitive and the coproduct is multiplicative") {
  const auto pp = SymElement<E>::term(make_multiset({kPhi, kPhi}), E(1));
  const auto d = coproduct(pp);
  REQUIRE(d.size() == 3);
  CHECK(d.at({Multiset{kPhi}, Multiset{kPhi}}) == E(2));
  CHECK(d.at({make_multiset({kPhi, kPhi}), Multiset{}}) == E(1));
  const auto v = SymElement<E>::vertex(kPhi2);
  CHECK(coproduct(v).size() == 2);
}

TEST_CASE("field coaction of phi^2 has binomial weights") {
  const auto t = coaction_split(kPhi2);
  REQUIRE(t.size() == 3);
  long total = 0;
  for (const auto& s : t) total += s.weight;
  CHECK(total == 4);
}

TEST_CASE("star conjugates and signs by symmetric degree") {
  SymElement<E> a;
  a.add(Multiset{kPhi}, E(Rational(1), Rational(2)));
  a.add(make_multiset({kPhi, kPhi2}), E(Rational(0), Rational(1)));
  const auto s = star(a);
  CHECK(s.coefficient(Multiset{kPhi}) == E(Rational(-1), Rational(2)));
  CHECK(s.coefficient(make_multiset({kPhi, kPhi2})) == E(Rational(0), Rational(-1)));
  CHECK(star(s) == a);
}

TEST_CASE("exp of a nilpotent local element is group-like and log inverts it") {
  const auto ring = make_ring({"lam"}, 3);
  const auto lam = CouplingSeries::variable(ring, "lam");
  SymElement<CouplingSeries> x;
  x.add(Multiset{kPhi2}, lam);
  x.add(Multiset{field_power(1, 0, 1)}, mul_int(lam * lam, 2));
  const auto g = hopf_exp(x);
  CHECK(is_group_like(g));
  CHECK(hopf_log(g) == x);
  // lam^3 phi^2 phi^2 phi^2 / 6
  CHECK(g.coefficient(make_multiset({kPhi2, kPhi2, kPhi2})) == div_int(lam * lam * lam, 6));
  SymElement<E> bad;
  bad.add(Multiset{kPhi}, E(1));
  CHECK_THROWS(hopf_exp(bad));
}

TEST_CASE("renormalizations substitute blocks") {
  // c(phi phi) = 3 and c(phi^2) = 0: rho(phi phi) = phi phi + 3 dens, rho(phi^2) = phi^2
  Renormalization<E>::Data d;
  d[make_multiset({kPhi, kPhi})] = E(3);
  const Renormalization<E> rho(d);
  const auto img = rho.act(SymElement<E>::term(make_multiset({kPhi, kPhi}), E(1)));
  CHECK(img.coefficient(make_multiset({kPhi, kPhi})) == E(1));
  CHECK(img.coefficient(Multiset{density(0)}) == E(3));
  CHECK(rho.act(SymElement<E>::vertex(kPhi2)) == SymElement<E>::vertex(kPhi2));
  // phi^2 phi: the block {phi, phi^2}-free partitions give phi^2 phi + 3*... only {phi,phi} pairs qualify
  const auto three = rho.act(SymElement<E>::term(make_multiset({kPhi, kPhi, kPhi}), E(1)));
  CHECK(three.coefficient(make_multiset({density(0), kPhi})) == E(9));
}

TEST_CASE("composition and inversion") {
  const auto cs = CausalSet::simple(1, {});
  const Truncation tr{3, 4};
  Renormalization<E>::Data d;
  d[Multiset{kPhi2}] = E(2);
  d[make_multiset({kPhi, kPhi})] = E(-1);
  const Renormalization<E> rho(d, tr);
  const auto inv = renorm_invert(rho, *cs, tr);
  const auto id = renorm_compose(rho, inv, *cs, tr);
  for (const auto& m : spanning_basis(*cs, tr)) CHECK(id.act_basis(m) == std::map<Multiset, E>{{m, E(1)}});
  CHECK_THROWS(Renormalization<E>({{make_multiset({kPhi, field_power(1, 0, 1)}), E(1)}}));
}
