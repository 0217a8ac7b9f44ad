#pragma once

// Symmetries of the field content, the renormalization cocycle they induce on
// a measure, coboundary solving and the invariant lifting step.

#include <uvqft/linear_algebra.hpp>
#include <uvqft/uv_group.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uvqft {

using Exact = ExactComplex;

/// phi_{p,s} -> sum_{s'} mats[p][s'][s] phi_{perm[p], s'}, extended as an algebra map.
class FieldSymmetry {
 public:
  FieldSymmetry() = default;
  FieldSymmetry(std::vector<PointId> perm, std::vector<Matrix> mats) : perm_(std::move(perm)), mats_(std::move(mats)) {}

  static FieldSymmetry identity(const CausalSet& cs) {
    std::vector<PointId> perm(cs.size());
    std::vector<Matrix> mats;
    for (PointId p = 0; p < cs.size(); ++p) {
      perm[p] = p;
      mats.push_back(identity_matrix(cs.num_species(p)));
    }
    return {perm, mats};
  }

  const std::vector<PointId>& perm() const { return perm_; }
  const std::vector<Matrix>& matrices() const { return mats_; }

  /// Throws unless this is a causality-preserving bijection with invertible species maps.
  void validate(const CausalSet& cs) const {
    const int n = cs.size();
    if (static_cast<int>(perm_.size()) != n || static_cast<int>(mats_.size()) != n)
      throw std::invalid_argument("symmetry needs one image and one matrix per point");
    std::vector<bool> hit(n, false);
    for (PointId p = 0; p < n; ++p) {
      const PointId q = perm_[p];
      if (q < 0 || q >= n || hit[q]) throw std::invalid_argument("symmetry point map is not a permutation");
      hit[q] = true;
      const int ns = cs.num_species(p);
      if (cs.num_species(q) != ns) throw std::invalid_argument("symmetry maps points with different species counts");
      if (static_cast<int>(mats_[p].size()) != ns) throw std::invalid_argument("species matrix has the wrong size");
      for (const auto& row : mats_[p])
        if (static_cast<int>(row.size()) != ns) throw std::invalid_argument("species matrix is not square");
      if (ns > 0 && !invert_matrix(mats_[p])) throw std::invalid_argument("species matrix is not invertible");
    }
    for (PointId x = 0; x < n; ++x)
      for (PointId y = 0; y < n; ++y)
        if (cs.leq(x, y) != cs.leq(perm_[x], perm_[y]))
          throw std::invalid_argument("symmetry does not preserve causality");
  }

  /// (this o h)(A) = this(h(A)).
  FieldSymmetry after(const FieldSymmetry& h) const {
    std::vector<PointId> perm(perm_.size());
    std::vector<Matrix> mats(perm_.size());
    for (std::size_t p = 0; p < perm_.size(); ++p) {
      perm[p] = perm_[h.perm_[p]];
      mats[p] = matmul(mats_[h.perm_[p]], h.mats_[p]);
    }
    return {perm, mats};
  }

  FieldSymmetry inverse() const {
    std::vector<PointId> perm(perm_.size());
    std::vector<Matrix> mats(perm_.size());
    for (std::size_t p = 0; p < perm_.size(); ++p) {
      perm[perm_[p]] = static_cast<PointId>(p);
      mats[perm_[p]] = mats_[p].empty() ? Matrix{} : *invert_matrix(mats_[p]);
    }
    return {perm, mats};
  }

  bool operator==(const FieldSymmetry& o) const {
    if (perm_ != o.perm_ || mats_.size() != o.mats_.size()) return false;
    for (std::size_t p = 0; p < mats_.size(); ++p)
      for (std::size_t i = 0; i < mats_[p].size(); ++i)
        for (std::size_t j = 0; j < mats_[p][i].size(); ++j)
          if (!(mats_[p][i][j] == o.mats_[p][i][j])) return false;
    return true;
  }

  /// Image of one vertex: a polynomial at perm[p].
  const std::map<Vertex, Exact>& apply(Vertex v) const {
    auto it = vcache_->find(v);
    if (it != vcache_->end()) return it->second;
    const PointId p = vertex_point(v), q = perm_.at(p);
    const int ns = static_cast<int>(mats_.at(p).size());
    std::map<Vertex, Exact> poly{{density(q), Exact(1)}};
    for (int s = 0; s < ns; ++s)
      for (int k = 0; k < vertex_exp(v, s); ++k) {
        std::map<Vertex, Exact> next;
        for (const auto& [u, c] : poly)
          for (int t = 0; t < ns; ++t) {
            const Exact& m = mats_[p][t][s];
            if (m.is_zero()) continue;
            const Vertex w = with_exp(u, t, vertex_exp(u, t) + 1);
            auto [pos, ins] = next.emplace(w, c * m);
            if (!ins) {
              pos->second += c * m;
              if (pos->second.is_zero()) next.erase(pos);
            }
          }
        poly = std::move(next);
      }
    return vcache_->emplace(v, std::move(poly)).first->second;
  }

  std::map<Multiset, Exact> apply(const Multiset& m) const {
    std::map<Multiset, Exact> cur{{Multiset{}, Exact(1)}};
    for (Vertex v : m) {
      std::map<Multiset, Exact> next;
      for (const auto& [k, c] : cur)
        for (const auto& [u, w] : apply(v)) {
          Multiset k2 = k;
          k2.insert(std::upper_bound(k2.begin(), k2.end(), u), u);
          auto [pos, ins] = next.emplace(std::move(k2), c * w);
          if (!ins) {
            pos->second += c * w;
            if (pos->second.is_zero()) next.erase(pos);
          }
        }
      cur = std::move(next);
    }
    return cur;
  }

  template <class T>
  SymElement<T> apply(const SymElement<T>& a) const {
    SymElement<T> r(a.truncation());
    for (const auto& [m, c] : a.terms())
      for (const auto& [k, w] : apply(m)) r.add(k, c * lift<T>(w));
    return r;
  }

  /// Delta^g(a, b) = Delta(g a, g b) on single fields.
  template <class S>
  Propagator<S> pull_back(const Propagator<S>& d) const {
    const auto& cs = *d.causal_set();
    Propagator<S> out(d.causal_set());
    for (PointId p = 0; p < cs.size(); ++p)
      for (int s = 0; s < cs.num_species(p); ++s)
        for (PointId q = 0; q < cs.size(); ++q)
          for (int t = 0; t < cs.num_species(q); ++t) {
            S v;
            for (int s2 = 0; s2 < cs.num_species(p); ++s2)
              for (int t2 = 0; t2 < cs.num_species(q); ++t2) {
                const Exact w = mats_[p][s2][s] * mats_[q][t2][t];
                if (w.is_zero()) continue;
                v += lift<S>(w) * d.at({perm_[p], s2}, {perm_[q], t2});
              }
            out.set({p, s}, {q, t}, v);
          }
    return out;
  }

 private:
  std::vector<PointId> perm_;
  std::vector<Matrix> mats_;
  std::shared_ptr<std::map<Vertex, std::map<Vertex, Exact>>> vcache_ =
      std::make_shared<std::map<Vertex, std::map<Vertex, Exact>>>();
};

/// g^-1 o rho o g as data on single-point multisets within tr.
inline Renormalization<Exact> conjugate(const Renormalization<Exact>& rho, const FieldSymmetry& g, const CausalSet& cs,
                                        Truncation tr) {
  if (rho.is_identity()) return {};
  const FieldSymmetry gi = g.inverse();
  Renormalization<Exact>::Data d;
  for (PointId p = 0; p < cs.size(); ++p)
    for (const Multiset& x : single_point_basis(cs, p, tr)) {
      if (x.size() == 1 && is_density(x.front())) continue;
      Exact c;
      for (const auto& [y, a] : g.apply(x))
        for (const auto& [z, b] : rho.act_basis(y)) {
          // only the density at g(p) maps back to the density at p
          if (z.size() == 1 && is_density(z.front())) c += a * b;
        }
      (void)gi;
      if (!c.is_zero()) d.emplace(x, c);
    }
  return Renormalization<Exact>(std::move(d), tr);
}

/// (g . omega)(A) = omega(g(A)) as a measure in (cut, Feynman, twist) form.
inline FeynmanMeasure<Exact> act_symmetry(const FieldSymmetry& g, const FeynmanMeasure<Exact>& omega, Truncation tr) {
  const CausalSet& cs = omega.model();
  g.validate(cs);
  CutPropagator<Exact> cut(g.pull_back(omega.cut()));
  if (!(cut == omega.cut())) throw std::invalid_argument("symmetry does not preserve the cut propagator");
  FeynmanPropagator<Exact> feyn(g.pull_back(omega.feynman()));
  // omega(g A) = wick(F, tau(g A)) = wick(F^g, g^-1 tau g (A)).
  return FeynmanMeasure<Exact>(cut, feyn, conjugate(omega.twist(), g, cs, tr));
}

/// All elements generated by gens, or nullopt when more than `limit` appear.
inline std::optional<std::vector<FieldSymmetry>> group_closure(const CausalSet& cs, const std::vector<FieldSymmetry>& gens,
                                                               std::size_t limit = 512) {
  std::vector<FieldSymmetry> elems{FieldSymmetry::identity(cs)};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      FieldSymmetry h = g.after(elems[i]);
      bool seen = false;
      for (const auto& e : elems)
        if (e == h) {
          seen = true;
          break;
        }
      if (!seen) {
        if (elems.size() >= limit) return std::nullopt;
        elems.push_back(std::move(h));
      }
    }
  return elems;
}

struct CocycleEntry {
  FieldSymmetry g;
  Renormalization<Exact> rho;
};

struct CocycleData {
  std::vector<CocycleEntry> entries;
  Truncation truncation;

  const CocycleEntry* find(const FieldSymmetry& g) const {
    for (const auto& e : entries)
      if (e.g == g) return &e;
    return nullptr;
  }
};

/// rho_g with (g . omega)(rho_g(A)) = omega(A).
inline CocycleData induced_cocycle(const std::vector<FieldSymmetry>& group, const FeynmanMeasure<Exact>& omega,
                                   Truncation tr) {
  CocycleData c;
  c.truncation = tr;
  for (const auto& g : group) {
    const auto moved = act_symmetry(g, omega, tr);
    c.entries.push_back({g, find_renormalization(moved, omega, tr)});
  }
  return c;
}

struct CocycleReport {
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::vector<std::pair<std::size_t, std::size_t>> failures;
};

/// rho_{gh} = (h^-1 rho_g h) o rho_h whenever gh is listed.
inline CocycleReport cocycle_check(const CocycleData& c, const CausalSet& cs) {
  CocycleReport r;
  for (std::size_t i = 0; i < c.entries.size(); ++i)
    for (std::size_t j = 0; j < c.entries.size(); ++j) {
      const auto& g = c.entries[i];
      const auto& h = c.entries[j];
      const CocycleEntry* gh = c.find(g.g.after(h.g));
      if (!gh) continue;
      ++r.pairs_checked;
      const auto rhs = renorm_compose(conjugate(g.rho, h.g, cs, c.truncation), h.rho, cs, c.truncation);
      if (!(rhs == gh->rho)) {
        r.holds = false;
        r.failures.emplace_back(i, j);
      }
    }
  return r;
}

struct CoboundaryResult {
  bool solved = false;
  Renormalization<Exact> rho;  // rho_g = (g^-1 rho g) o rho^-1 for every listed g
  // Obstruction: first layer (size, field degree) whose linear system is inconsistent.
  int layer_size = 0;
  int layer_fields = 0;
  Exact residual;
  std::string message;
};

/// Layered exact solve of g^-1 rho g = rho_g o rho over all listed elements.
inline CoboundaryResult coboundary_solve(const CocycleData& c, const CausalSet& cs, Truncation tr) {
  CoboundaryResult out;
  const int D = bounded(tr.max_sym_degree, 0), F = bounded(tr.max_field_degree, 0);
  Renormalization<Exact>::Data data;
  std::vector<FieldSymmetry> inverses;
  for (const auto& e : c.entries) inverses.push_back(e.g.inverse());
  for (int m = 1; m <= D; ++m)
    for (int f = 0; f <= F; ++f) {
      std::vector<Multiset> layer;
      for (PointId p = 0; p < cs.size(); ++p)
        for (auto& x : single_point_basis(cs, p, tr))
          if (static_cast<int>(x.size()) == m && field_degree(x) == f && !(m == 1 && f == 0)) layer.push_back(x);
      if (layer.empty()) continue;
      std::map<Multiset, int> col;
      for (std::size_t k = 0; k < layer.size(); ++k) col[layer[k]] = static_cast<int>(k);
      const Renormalization<Exact> P0(data, tr);
      Matrix A;
      std::vector<Exact> b;
      for (std::size_t gi = 0; gi < c.entries.size(); ++gi) {
        const auto& e = c.entries[gi];
        for (const Multiset& x : layer) {
          const PointId p = vertex_point(x.front());
          std::vector<Exact> row(layer.size());
          Exact lhs0, rhs0;
          for (const auto& [y, a] : e.g.apply(x)) {
            row[col.at(y)] += a;
            for (const auto& [z, w] : P0.act_basis(y))
              for (const auto& [u, v] : inverses[gi].apply(z))
                if (u.size() == 1 && is_density(u.front()) && vertex_point(u.front()) == p) lhs0 += a * w * v;
          }
          for (const auto& [z, w] : P0.act_basis(x)) rhs0 += w * density_coefficient(e.rho.act_basis(z), p);
          row[col.at(x)] -= 1;
          A.push_back(std::move(row));
          b.push_back(rhs0 - lhs0);
        }
      }
      auto sol = solve_linear(A, b, static_cast<int>(layer.size()));
      if (!sol.consistent) {
        out.layer_size = m;
        out.layer_fields = f;
        out.residual = sol.residual;
        out.message = "cocycle is not a coboundary: inconsistent layer (size " + std::to_string(m) + ", fields " +
                      std::to_string(f) + ")";
        return out;
      }
      for (std::size_t k = 0; k < layer.size(); ++k)
        if (!sol.x[k].is_zero()) data.emplace(layer[k], sol.x[k]);
    }
  out.solved = true;
  out.rho = Renormalization<Exact>(std::move(data), tr);
  return out;
}

struct LiftResult {
  bool ok = false;
  std::string error;
  SymElement<Exact> correction;  // v
  SymElement<Exact> lifted;      // a + v
  bool primitive_rhs = false;
  bool averaged = false;
};

/// Two actions sigma1(g) = G and sigma2(g) = G o rho_g that agree on degree one.
/// Given sigma1-invariant a whose reduced coproduct is invariant under both,
/// finds v in degree one with sigma1(g)(a + v) = sigma2(g)(a) + v.
inline LiftResult invariant_lift(const SymElement<Exact>& a, const CocycleData& c, bool finite_group) {
  LiftResult r;
  for (const auto& e : c.entries) {
    if (e.rho.order() < 2) {
      r.error = "the two actions differ in degree one";
      return r;
    }
    if (!(e.g.apply(a) == a)) {
      r.error = "a is not invariant under the first action";
      return r;
    }
  }
  // Reduced coproduct and its invariance under both diagonal actions.
  TensorSquare<Exact> red = coproduct(a);
  const Multiset empty;
  for (const auto& [m, v] : a.terms()) {
    for (const auto& key : {std::make_pair(m, empty), std::make_pair(empty, m)}) {
      auto it = red.find(key);
      if (it == red.end()) continue;
      it->second -= v;
      if (it->second.is_zero()) red.erase(it);
    }
  }
  auto apply_pair = [&](const TensorSquare<Exact>& t, auto&& act) {
    TensorSquare<Exact> out;
    for (const auto& [k, v] : t) {
      const auto l = act(SymElement<Exact>::term(k.first, v));
      const auto rr = act(SymElement<Exact>::term(k.second, Exact(1)));
      for (const auto& [kk, vv] : tensor_product(l, rr)) {
        auto [pos, ins] = out.emplace(kk, vv);
        if (!ins) {
          pos->second += vv;
          if (pos->second.is_zero()) out.erase(pos);
        }
      }
    }
    return out;
  };
  for (const auto& e : c.entries) {
    auto s1 = [&](const SymElement<Exact>& x) { return e.g.apply(x); };
    auto s2 = [&](const SymElement<Exact>& x) { return e.g.apply(e.rho.act(x)); };
    if (!tensor_equal(apply_pair(red, s1), red) || !tensor_equal(apply_pair(red, s2), red)) {
      r.error = "coproduct hypothesis fails: lower-degree parts are not invariant under both actions";
      return r;
    }
  }
  // r_g = sigma2(g)(a) - a must be primitive.
  std::vector<SymElement<Exact>> rs;
  r.primitive_rhs = true;
  for (const auto& e : c.entries) {
    SymElement<Exact> rg = e.g.apply(e.rho.act(a)) - a;
    for (const auto& kv : rg.terms())
      if (kv.first.size() != 1) r.primitive_rhs = false;
    rs.push_back(std::move(rg));
  }
  if (!r.primitive_rhs) {
    r.error = "sigma2(g)(a) - a is not primitive";
    return r;
  }
  SymElement<Exact> v;
  if (finite_group) {
    // v = -(1/|G|) sum_h r_h
    for (const auto& rg : rs) v -= rg;
    v = v.map_coefficients([n = static_cast<long>(rs.size())](const Multiset&, const Exact& x) { return div_int(x, n); });
    r.averaged = true;
  } else {
    // Linear solve over the vertices reachable from the supports of the r_g.
    std::vector<Vertex> basis;
    for (const auto& rg : rs)
      for (const auto& kv : rg.terms()) basis.push_back(kv.first.front());
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (const auto& e : c.entries)
        for (const auto& kv : e.g.apply(basis[i]))
          if (std::find(basis.begin(), basis.end(), kv.first) == basis.end()) basis.push_back(kv.first);
    std::sort(basis.begin(), basis.end());
    Matrix A;
    std::vector<Exact> b;
    for (std::size_t gi = 0; gi < c.entries.size(); ++gi)
      for (std::size_t row = 0; row < basis.size(); ++row) {
        std::vector<Exact> coeffs(basis.size());
        for (std::size_t col = 0; col < basis.size(); ++col) {
          const auto& img = c.entries[gi].g.apply(basis[col]);
          auto it = img.find(basis[row]);
          if (it != img.end()) coeffs[col] += it->second;
        }
        coeffs[row] -= 1;
        A.push_back(std::move(coeffs));
        b.push_back(rs[gi].coefficient({basis[row]}));
      }
    auto sol = solve_linear(A, b, static_cast<int>(basis.size()));
    if (!sol.consistent) {
      r.error = "sigma1(g)v - v = sigma2(g)(a) - a has no solution; residual " + sol.residual.str();
      return r;
    }
    for (std::size_t k = 0; k < basis.size(); ++k) v.add({basis[k]}, sol.x[k]);
  }
  r.correction = v;
  r.lifted = a + v;
  for (const auto& e : c.entries) {
    if (!(e.g.apply(r.lifted) == e.g.apply(e.rho.act(a)) + v)) {
      r.error = "lifted element fails the twisted invariance";
      return r;
    }
  }
  r.ok = true;
  return r;
}

}  // namespace uvqft
