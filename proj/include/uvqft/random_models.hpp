#pragma once

// Seeded generators for property suites. Everything is driven by one
// mt19937_64 so a seed replays a whole suite.

#include <uvqft/basis.hpp>
#include <uvqft/coupling_series.hpp>
#include <uvqft/measure.hpp>

#include <random>
#include <vector>

namespace uvqft {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool chance(int num, int den) { return uniform(0, den - 1) < num; }

  Rational rational(int range = 3, int max_den = 3) {
    Rational q(uniform(-range, range), uniform(1, max_den));
    q.canonicalize();
    return q;
  }
  Rational nonzero_rational(int range = 3, int max_den = 3) {
    Rational q;
    do q = rational(range, max_den);
    while (q == 0);
    return q;
  }
  ExactComplex complex(int range = 3) { return {rational(range), rational(range)}; }
  ExactComplex real(int range = 3) { return ExactComplex(rational(range)); }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v.at(uniform(0, static_cast<int>(v.size()) - 1));
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Random partial order on n points: i <= j for i < j with probability num/den, then closed.
inline CausalSetPtr random_poset(Rng& rng, int n, int species_per_point = 1, int num = 1, int den = 3) {
  std::vector<std::pair<PointId, PointId>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(num, den)) pairs.emplace_back(i, j);
  return CausalSet::simple(n, pairs, species_per_point);
}

inline CausalSetPtr chain(int n, int species_per_point = 1) {
  std::vector<std::pair<PointId, PointId>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return CausalSet::simple(n, pairs, species_per_point);
}

enum class CutKind { local, hermitian, positive };

/// A local cut propagator: symmetric on spacelike pairs. `hermitian` adds
/// cut(j,i) = conj(cut(i,j)); `positive` is a real Gram matrix, hence PSD.
inline CutPropagator<ExactComplex> random_cut(Rng& rng, const CausalSetPtr& cs, CutKind kind) {
  CutPropagator<ExactComplex> cut(cs);
  const int nf = cs->num_fields();
  if (kind == CutKind::positive) {
    const int rank = rng.uniform(1, nf);
    std::vector<std::vector<Rational>> v(nf, std::vector<Rational>(rank));
    for (auto& row : v)
      for (auto& x : row) x = rng.rational(2, 2);
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j) {
        Rational s = 0;
        for (int k = 0; k < rank; ++k) s += v[i][k] * v[j][k];
        cut.set(i, j, ExactComplex(s));
      }
    return cut;
  }
  for (int i = 0; i < nf; ++i)
    for (int j = i; j < nf; ++j) {
      const PointId x = cs->field_point(i), y = cs->field_point(j);
      const bool spacelike = cs->is_spacelike(x, y);
      if (kind == CutKind::hermitian) {
        const ExactComplex z = (i == j || spacelike) ? rng.real() : rng.complex();
        cut.set(i, j, z);
        cut.set(j, i, conj(z));
      } else {
        const ExactComplex z = rng.complex();
        cut.set(i, j, z);
        cut.set(j, i, spacelike ? z : rng.complex());
      }
    }
  return cut;
}

/// Symmetric random same-point block for the Feynman diagonal.
inline DiagonalData<ExactComplex> random_diagonal(Rng& rng, const CausalSet& cs, bool real = false) {
  DiagonalData<ExactComplex> d;
  for (PointId p = 0; p < cs.size(); ++p)
    for (int s = 0; s < cs.num_species(p); ++s)
      for (int t = s; t < cs.num_species(p); ++t) {
        const ExactComplex z = real ? rng.real() : rng.complex();
        d[{p, s, t}] = z;
        d[{p, t, s}] = z;
      }
  return d;
}

inline FeynmanMeasure<ExactComplex> random_measure(Rng& rng, const CausalSetPtr& cs, CutKind kind = CutKind::local) {
  auto cut = random_cut(rng, cs, kind);
  if (kind == CutKind::local) return FeynmanMeasure<ExactComplex>::from_cut(cut, random_diagonal(rng, *cs));
  return FeynmanMeasure<ExactComplex>::hermitian_wick(cut);
}

/// Random renormalization with components on single-point multisets of size
/// in [min_size, max_size]. Size-one components are kept off the density.
inline Renormalization<ExactComplex> random_renormalization(Rng& rng, const CausalSet& cs, Truncation tr,
                                                            int min_size = 1, int max_size = 3, int num = 1,
                                                            int den = 2, bool real = true) {
  Renormalization<ExactComplex>::Data d;
  for (PointId p = 0; p < cs.size(); ++p)
    for (const Multiset& x : single_point_basis(cs, p, tr)) {
      const int sz = static_cast<int>(x.size());
      if (sz < min_size || sz > max_size) continue;
      if (sz == 1 && is_density(x.front())) continue;
      if (!rng.chance(num, den)) continue;
      const ExactComplex c = real ? ExactComplex(rng.nonzero_rational()) : rng.complex();
      if (!c.is_zero()) d.emplace(x, c);
    }
  return Renormalization<ExactComplex>(std::move(d), tr);
}

/// Random combination of `terms` basis multisets within tr.
inline SymElement<ExactComplex> random_element(Rng& rng, const CausalSet& cs, Truncation tr, int terms = 3) {
  const auto basis = spanning_basis(cs, tr);
  SymElement<ExactComplex> a(tr);
  for (int k = 0; k < terms; ++k) a.add(rng.pick(basis), rng.complex());
  return a;
}

inline SymElement<ExactComplex> random_element_on(Rng& rng, const std::vector<Multiset>& basis, int terms = 3,
                                                  Truncation tr = {}) {
  SymElement<ExactComplex> a(tr);
  for (int k = 0; k < terms; ++k) a.add(rng.pick(basis), rng.complex());
  return a;
}

/// exp(X), untruncated, with X a random local element within tr whose coefficients are lam times or lam^2 times rationals.
inline SymElement<CouplingSeries> random_group_like(Rng& rng, const CausalSet& cs, const RingPtr& ring, Truncation tr,
                                                    int terms = 2) {
  std::vector<Multiset> singles;
  for (const auto& m : spanning_basis(cs, Truncation{1, tr.max_field_degree}))
    if (m.size() == 1) singles.push_back(m);
  const CouplingSeries lam = CouplingSeries::variable(ring, ring->names.front());
  SymElement<CouplingSeries> x;
  for (int k = 0; k < terms; ++k) {
    CouplingSeries c = CouplingSeries::constant(ring, rng.complex()) * lam;
    if (rng.chance(1, 2)) c = c + CouplingSeries::constant(ring, rng.complex()) * lam * lam;
    x.add(rng.pick(singles), c);
  }
  return hopf_exp(x);
}

}  // namespace uvqft
