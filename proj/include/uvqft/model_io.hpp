#pragma once

// JSON model files, renormalization files and report helpers.
//
// Model keys: points, species, order, close_order, allow_preorder, couplings
// {names, order}, regulator {enabled, precision}, cut, cut_fill
// (symmetric|hermitian|none), require_local, feynman_diagonal ("cut" or
// entries), lagrangian, truncation {max_sym_degree, max_field_degree},
// symmetries [{name, perm, matrices}], group_finite, twist.

#include <uvqft/anomaly.hpp>
#include <uvqft/parse.hpp>

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

namespace uvqft {

using json = nlohmann::json;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScalarKind { exact = 0, series = 1, laurent = 2 };

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* d = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, v >>= 4) out[k] = d[v & 15];
  return out;
}

template <class S>
Propagator<S> lower_propagator(const Propagator<RegulatorLaurent>& p) {
  Propagator<S> out(p.causal_set());
  for (int i = 0; i < p.num_fields(); ++i)
    for (int j = 0; j < p.num_fields(); ++j) {
      auto v = lower_scalar<S>(p.at(i, j));
      if (!v) throw ModelError("propagator entry " + p.at(i, j).str() + " does not fit the model's scalar type");
      out.set(i, j, *v);
    }
  return out;
}

struct Model {
  CausalSetPtr cs;
  RingPtr ring;  // null when there are no couplings
  ScalarKind kind = ScalarKind::exact;
  std::optional<int> eps_precision;
  Propagator<RegulatorLaurent> cut;
  std::optional<DiagonalData<RegulatorLaurent>> diagonal;  // nullopt: symmetric part of the cut
  std::optional<std::string> lagrangian_text;
  Truncation truncation{3, 8};
  std::vector<std::pair<std::string, FieldSymmetry>> symmetries;
  bool group_finite = true;
  json twist;  // null when absent
  std::string digest;

  ExpressionParser parser(Truncation tr) const { return ExpressionParser(*cs, ring, tr); }

  template <class S>
  FeynmanMeasure<S> measure(Truncation tr) const;

  template <class S>
  std::optional<SymElement<S>> lagrangian(Truncation tr) const {
    if (!lagrangian_text) return std::nullopt;
    auto p = parser(tr);
    auto e = lower_element<S>(p.element(*lagrangian_text));
    if (!e) throw ModelError("lagrangian does not fit the model's scalar type");
    return e;
  }
};

/// "phi[x]" -> (point, species).
inline FieldId parse_field_ref(const CausalSet& cs, const std::string& s) {
  const auto lb = s.find('['), rb = s.rfind(']');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb) throw ModelError("bad field reference '" + s + "'");
  const std::string sp = s.substr(0, lb), pt = s.substr(lb + 1, rb - lb - 1);
  if (!cs.has_point(pt)) throw ModelError("unknown point '" + pt + "' in '" + s + "'");
  const PointId p = cs.point(pt);
  const int idx = cs.species_index(p, sp);
  if (idx < 0) throw ModelError("no species '" + sp + "' at point '" + pt + "'");
  return {p, idx};
}

inline std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ModelError("scalars are written as strings or integers, got " + j.dump());
}

/// Species monomial "phi^2*psi" at p; "1" is the density.
inline Vertex parse_monomial(const CausalSet& cs, PointId p, const std::string& s) {
  std::vector<int> e(kMaxSpecies, 0);
  if (s == "1") return make_vertex(p, e);
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, '*')) {
    int k = 1;
    const auto c = part.find('^');
    std::string name = part.substr(0, c);
    if (c != std::string::npos) k = std::stoi(part.substr(c + 1));
    const int idx = cs.species_index(p, name);
    if (idx < 0) throw ModelError("no species '" + name + "' at point '" + cs.name(p) + "'");
    e[idx] += k;
  }
  return make_vertex(p, e);
}

inline std::string monomial_text(const CausalSet& cs, Vertex v) {
  std::string out;
  const PointId p = vertex_point(v);
  for (int s = 0; s < cs.num_species(p); ++s) {
    const int k = vertex_exp(v, s);
    if (!k) continue;
    if (!out.empty()) out += "*";
    out += cs.species(p)[s];
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "1" : out;
}

inline json truncation_json(Truncation tr) {
  json j = json::object();
  if (tr.max_sym_degree != INT_MAX) j["max_sym_degree"] = tr.max_sym_degree;
  if (tr.max_field_degree != INT_MAX) j["max_field_degree"] = tr.max_field_degree;
  return j;
}

inline Truncation parse_truncation(const json& j, Truncation dflt) {
  Truncation tr = dflt;
  if (j.contains("max_sym_degree")) tr.max_sym_degree = j.at("max_sym_degree").get<int>();
  if (j.contains("max_field_degree")) tr.max_field_degree = j.at("max_field_degree").get<int>();
  return tr;
}

/// {"truncation": ..., "components": [{"degree": m, "terms": [[point, [monomials], scalar], ...]}]}
template <class S>
json renormalization_json(const CausalSet& cs, const Renormalization<S>& rho) {
  std::map<int, json> by_degree;
  for (const auto& [x, c] : rho.data()) {
    json mons = json::array();
    for (Vertex v : x) mons.push_back(monomial_text(cs, v));
    by_degree[static_cast<int>(x.size())].push_back(
        json::array({cs.name(vertex_point(x.front())), mons, to_string(c)}));
  }
  json comps = json::array();
  for (auto& [d, terms] : by_degree) comps.push_back({{"degree", d}, {"terms", terms}});
  return {{"truncation", truncation_json(rho.domain())}, {"components", comps}};
}

template <class S>
Renormalization<S> parse_renormalization(const json& j, const Model& m, Truncation dflt) {
  const CausalSet& cs = *m.cs;
  const Truncation tr = j.contains("truncation") ? parse_truncation(j.at("truncation"), dflt) : dflt;
  auto parser = m.parser(tr);
  typename Renormalization<S>::Data data;
  for (const auto& comp : j.at("components")) {
    const int deg = comp.value("degree", -1);
    for (const auto& t : comp.at("terms")) {
      if (!t.is_array() || t.size() != 3) throw ModelError("renormalization terms are [point, [monomials], scalar]");
      const std::string pt = t[0].get<std::string>();
      if (!cs.has_point(pt)) throw ModelError("unknown point '" + pt + "' in renormalization");
      const PointId p = cs.point(pt);
      Multiset x;
      for (const auto& mono : t[1]) x.push_back(parse_monomial(cs, p, mono.get<std::string>()));
      std::sort(x.begin(), x.end());
      if (deg >= 0 && static_cast<int>(x.size()) != deg)
        throw ModelError("renormalization term listed under degree " + std::to_string(deg) + " has " +
                         std::to_string(x.size()) + " monomials");
      auto c = lower_scalar<S>(parser.scalar(scalar_text(t[2])));
      if (!c) throw ModelError("renormalization coefficient does not fit the scalar type");
      if (!is_zero(*c)) data[x] += *c;
    }
  }
  return Renormalization<S>(std::move(data), tr);
}

inline FieldSymmetry parse_symmetry(const json& j, const CausalSet& cs) {
  std::vector<PointId> perm(cs.size());
  for (PointId p = 0; p < cs.size(); ++p) perm[p] = p;
  if (j.contains("perm"))
    for (auto& [from, to] : j.at("perm").items()) {
      if (!cs.has_point(from) || !cs.has_point(to.get<std::string>()))
        throw ModelError("symmetry permutation names an unknown point");
      perm[cs.point(from)] = cs.point(to.get<std::string>());
    }
  std::vector<Matrix> mats;
  ExpressionParser parser(cs, nullptr);
  for (PointId p = 0; p < cs.size(); ++p) mats.push_back(identity_matrix(cs.num_species(p)));
  if (j.contains("matrices"))
    for (auto& [pt, rows] : j.at("matrices").items()) {
      if (!cs.has_point(pt)) throw ModelError("symmetry matrix for unknown point '" + pt + "'");
      Matrix m;
      for (const auto& row : rows) {
        std::vector<ExactComplex> r;
        for (const auto& v : row) {
          auto c = lower_to_exact(parser.scalar(scalar_text(v)));
          if (!c) throw ModelError("symmetry matrices must be exact numbers");
          r.push_back(*c);
        }
        m.push_back(std::move(r));
      }
      mats[cs.point(pt)] = std::move(m);
    }
  FieldSymmetry g(perm, mats);
  try {
    g.validate(cs);
  } catch (const std::invalid_argument& e) {
    throw ModelError(e.what());
  }
  return g;
}

inline Model parse_model_json(const json& j, const std::string& text_for_digest = "") {
  Model m;
  m.digest = hex64(fnv1a(text_for_digest.empty() ? j.dump() : text_for_digest));
  if (!j.contains("points")) throw ModelError("model needs a 'points' list");
  std::vector<std::string> names = j.at("points").get<std::vector<std::string>>();
  std::vector<std::vector<std::string>> species(names.size(), std::vector<std::string>{"phi"});
  if (j.contains("species")) {
    const json& sp = j.at("species");
    if (sp.is_array()) {
      for (auto& s : species) s = sp.get<std::vector<std::string>>();
    } else {
      for (auto& [pt, list] : sp.items()) {
        auto it = std::find(names.begin(), names.end(), pt);
        if (it == names.end()) throw ModelError("species given for unknown point '" + pt + "'");
        species[it - names.begin()] = list.get<std::vector<std::string>>();
      }
    }
  }
  std::map<std::string, PointId> idx;
  for (std::size_t k = 0; k < names.size(); ++k)
    if (!idx.emplace(names[k], static_cast<PointId>(k)).second) throw ModelError("duplicate point '" + names[k] + "'");
  std::vector<std::pair<PointId, PointId>> pairs;
  if (j.contains("order"))
    for (const auto& pr : j.at("order")) {
      const auto a = pr.at(0).get<std::string>(), b = pr.at(1).get<std::string>();
      if (!idx.count(a) || !idx.count(b)) throw ModelError("order relation names an unknown point");
      pairs.emplace_back(idx[a], idx[b]);
    }
  CausalSetOptions opts;
  opts.allow_preorder = j.value("allow_preorder", false);
  opts.close = j.value("close_order", true);
  // Reflexivity is implicit in model files; only transitivity is checked literally.
  if (!opts.close)
    for (std::size_t k = 0; k < names.size(); ++k) pairs.emplace_back(k, k);
  try {
    m.cs = CausalSet::make(names, pairs, species, opts);
  } catch (const std::exception& e) {
    throw ModelError(e.what());
  }
  const CausalSet& cs = *m.cs;

  if (j.contains("couplings")) {
    const json& c = j.at("couplings");
    m.ring = make_ring(c.at("names").get<std::vector<std::string>>(), c.value("order", 3));
    m.kind = ScalarKind::series;
  }
  if (j.contains("regulator") && j.at("regulator").value("enabled", true)) {
    m.kind = ScalarKind::laurent;
    if (j.at("regulator").contains("precision")) m.eps_precision = j.at("regulator").at("precision").get<int>();
  }
  if (j.contains("truncation")) m.truncation = parse_truncation(j.at("truncation"), m.truncation);

  auto parser = m.parser(m.truncation);
  auto scalar = [&](const json& v) {
    RegulatorLaurent x = parser.scalar(scalar_text(v));
    if (!x.is_pole_free() || !lower_to_series(x)) {
      if (m.kind != ScalarKind::laurent) throw ModelError("value " + x.str() + " needs a regulator section");
    }
    if (m.eps_precision) x.truncate_above(*m.eps_precision);
    return x;
  };

  m.cut = Propagator<RegulatorLaurent>(m.cs);
  const std::string fill = j.value("cut_fill", std::string("symmetric"));
  if (fill != "symmetric" && fill != "hermitian" && fill != "none") throw ModelError("cut_fill must be symmetric, hermitian or none");
  std::set<std::pair<int, int>> given;
  if (j.contains("cut"))
    for (const auto& e : j.at("cut")) {
      if (!e.is_array() || e.size() != 3) throw ModelError("cut entries are [field, field, value]");
      const FieldId a = parse_field_ref(cs, e[0].get<std::string>()), b = parse_field_ref(cs, e[1].get<std::string>());
      const int ia = cs.field_index(a.point, a.species), ib = cs.field_index(b.point, b.species);
      m.cut.set(ia, ib, scalar(e[2]));
      given.emplace(ia, ib);
    }
  if (fill != "none")
    for (auto [ia, ib] : std::set<std::pair<int, int>>(given))
      if (!given.count({ib, ia})) {
        m.cut.set(ib, ia, fill == "hermitian" ? m.cut.at(ia, ib).conj() : m.cut.at(ia, ib));
        given.emplace(ib, ia);
      }
  if (j.value("require_local", true) && !CutPropagator<RegulatorLaurent>(m.cut).is_local()) {
    for (int ia = 0; ia < cs.num_fields(); ++ia)
      for (int ib = 0; ib < cs.num_fields(); ++ib)
        if (cs.is_spacelike(cs.field_point(ia), cs.field_point(ib)) && !(m.cut.at(ia, ib) == m.cut.at(ib, ia)))
          throw ModelError("cut propagator is not local: entries for fields " + std::to_string(ia) + " and " +
                           std::to_string(ib) + " at spacelike points differ");
  }

  if (j.contains("feynman_diagonal") && !j.at("feynman_diagonal").is_string()) {
    DiagonalData<RegulatorLaurent> d = symmetric_cut_diagonal(CutPropagator<RegulatorLaurent>(m.cut));
    std::set<std::tuple<PointId, int, int>> seen;
    for (const auto& e : j.at("feynman_diagonal")) {
      if (!e.is_array() || e.size() != 3) throw ModelError("feynman_diagonal entries are [field, field, value]");
      const FieldId a = parse_field_ref(cs, e[0].get<std::string>()), b = parse_field_ref(cs, e[1].get<std::string>());
      if (a.point != b.point) throw ModelError("feynman_diagonal entries must be at one point");
      d[{a.point, a.species, b.species}] = scalar(e[2]);
      seen.emplace(a.point, a.species, b.species);
      if (!seen.count({a.point, b.species, a.species})) d[{a.point, b.species, a.species}] = scalar(e[2]);
    }
    m.diagonal = std::move(d);
  } else if (j.contains("feynman_diagonal") && j.at("feynman_diagonal").get<std::string>() != "cut") {
    throw ModelError("feynman_diagonal is \"cut\" or a list of entries");
  }

  if (j.contains("lagrangian")) {
    m.lagrangian_text = j.at("lagrangian").get<std::string>();
    const LaurentElement L = parser.element(*m.lagrangian_text);
    if (!is_local(L)) throw ModelError("lagrangian must be local: every term sits on one vertex");
    if (!has_nilpotent_coefficients(L)) throw ModelError("lagrangian coefficients must lie in the coupling ideal");
  }
  if (j.contains("symmetries"))
    for (const auto& s : j.at("symmetries")) m.symmetries.emplace_back(s.value("name", ""), parse_symmetry(s, cs));
  m.group_finite = j.value("group_finite", true);
  if (j.contains("twist")) m.twist = j.at("twist");
  // Build once so invalid diagonal data is reported at load time.
  try {
    build_feynman_propagator(CutPropagator<RegulatorLaurent>(m.cut),
                             m.diagonal ? *m.diagonal : symmetric_cut_diagonal(CutPropagator<RegulatorLaurent>(m.cut)));
  } catch (const std::exception& e) {
    throw ModelError(e.what());
  }
  return m;
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model syntax error: ") + e.what());
  }
  return parse_model_json(j, buf.str());
}

template <class S>
FeynmanMeasure<S> Model::measure(Truncation tr) const {
  CutPropagator<S> c(lower_propagator<S>(cut));
  DiagonalData<S> d;
  if (diagonal) {
    for (const auto& [k, v] : *diagonal) {
      auto x = lower_scalar<S>(v);
      if (!x) throw ModelError("diagonal entry does not fit the scalar type");
      d[k] = *x;
    }
  } else {
    d = symmetric_cut_diagonal(c);
  }
  Renormalization<S> tw;
  if (!twist.is_null()) tw = parse_renormalization<S>(twist, *this, tr);
  return FeynmanMeasure<S>::from_cut(c, d, tw);
}

}  // namespace uvqft
