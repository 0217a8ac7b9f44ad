#include <catch_amalgamated.hpp>

#include <uvqft/model_io.hpp>

using namespace uvqft;
using E = ExactComplex;

namespace {
json two_species_point() {
  return json::parse(R"({"points": ["x"], "species": ["phi", "psi"],
    "cut": [["phi[x]", "phi[x]", "1"], ["psi[x]", "psi[x]", "2"]]})");
}

std::string rejection(const std::string& text) {
  try {
    parse_model_json(json::parse(text));
  } catch (const ModelError& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("expression forms") {
  const Model m = parse_model_json(two_species_point());
  auto p = m.parser(m.truncation);
  const auto sq = p.element("phi[x]^2");
  REQUIRE(sq.terms().size() == 1);
  CHECK(sq.terms().begin()->first == Multiset{make_vertex(0, {2, 0})});
  const auto prod = p.element("phi[x]*phi[x]");
  CHECK(prod.terms().begin()->first == make_multiset({make_vertex(0, {1, 0}), make_vertex(0, {1, 0})}));
  const auto mixed = p.element("(phi^2*psi)[x]");
  CHECK(mixed.terms().begin()->first == Multiset{make_vertex(0, {2, 1})});
  CHECK(lower_to_exact(p.scalar("1/2 + 3i")) == E(Rational(1, 2), Rational(3)));
  CHECK_THROWS_AS(p.element("phi[y]"), std::exception);
  CHECK_THROWS_AS(p.scalar("phi[x]"), ParseError);
  const auto w = p.word("[phi[x], 1]");
  REQUIRE(w.length() == 2);
  CHECK(w.at_position(2).terms().begin()->first.size() == 1);
  CHECK(w.at_position(1).terms().begin()->first.empty());
}

TEST_CASE("model rejections name the problem") {
  CHECK(rejection(R"({"points": ["a", "b", "c"], "order": [["a", "b"], ["b", "c"]], "close_order": false})") ==
        "causality relation: transitivity fails: a<=b, b<=c but not a<=c");
  CHECK(rejection(R"({"points": ["x", "y"], "cut_fill": "none", "cut": [["phi[x]", "phi[y]", "1"]]})")
            .find("not local") != std::string::npos);
  CHECK(rejection(R"({"points": ["x", "y"], "couplings": {"names": ["g"]}, "lagrangian": "g*phi[x]*phi[y]"})")
            .find("local") != std::string::npos);
  CHECK(rejection(R"({"points": ["x"], "lagrangian": "phi[x]^4"})").find("coupling ideal") != std::string::npos);
  CHECK(rejection(R"({"points": ["x"], "cut": [["phi[x]", "phi[x]", "eps^-1"]]})").find("regulator") !=
        std::string::npos);
  CHECK(rejection(R"({"points": ["x", "x"]})") == "duplicate point 'x'");
  CHECK(rejection(R"({"points": ["x", "y"], "order": [["x", "y"]],
    "symmetries": [{"perm": {"x": "y", "y": "x"}}]})").find("causality") != std::string::npos);
}

TEST_CASE("closed orders and digests") {
  const auto j = json::parse(R"({"points": ["a", "b", "c"], "order": [["a", "b"], ["b", "c"]]})");
  const Model m = parse_model_json(j);
  CHECK(m.cs->leq(0, 2));
  CHECK(parse_model_json(j).digest == m.digest);
  CHECK(parse_model_json(two_species_point()).digest != m.digest);
}

TEST_CASE("renormalization json round trip") {
  const Model m = parse_model_json(two_species_point());
  const Truncation tr{2, 4};
  Renormalization<E>::Data d;
  d[Multiset{make_vertex(0, {2, 0})}] = E(Rational(3, 2));
  d[make_multiset({make_vertex(0, {1, 0}), make_vertex(0, {0, 1})})] = E(Rational(0), Rational(-1));
  const Renormalization<E> rho(d, tr);
  const json j = renormalization_json(*m.cs, rho);
  const auto back = parse_renormalization<E>(j, m, tr);
  CHECK(back.data() == rho.data());
  CHECK(j.at("components").size() == 2);
}

TEST_CASE("regulated values and precision") {
  const auto j = json::parse(R"({"points": ["x"], "regulator": {"precision": 0},
    "cut": [["phi[x]", "phi[x]", "1"]], "feynman_diagonal": [["phi[x]", "phi[x]", "eps^-1 + 2 + eps"]]})");
  const Model m = parse_model_json(j);
  REQUIRE(m.eps_precision == 0);
  const auto omega = m.measure<RegulatorLaurent>(m.truncation);
  const auto v = omega.eval(Multiset{field_power(0, 0, 2)});
  CHECK(v.pole_order() == 1);
  CHECK(v.coefficient(1).is_zero());
  CHECK(v.coefficient(0) == CouplingSeries(2));
  CHECK_THROWS_AS(m.measure<E>(m.truncation), ModelError);
}
