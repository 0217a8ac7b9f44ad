#pragma once

// Reference computations that share no code with the engines they check.

#include <uvqft/coupling_series.hpp>
#include <uvqft/propagator.hpp>

#include <vector>

namespace uvqft::oracle {

/// Sum over perfect matchings of the flattened field slots, one slot per field
/// occurrence, no multiplicities or memoization.
template <class S>
S naive_wick(const CausalSet& cs, const Propagator<S>& delta_f, const Multiset& m) {
  std::vector<int> slots;
  for (Vertex v : m) {
    const PointId p = vertex_point(v);
    for (int s = 0; s < cs.num_species(p); ++s)
      for (int k = 0; k < vertex_exp(v, s); ++k) slots.push_back(cs.field_index(p, s));
  }
  if (slots.size() % 2) return S();
  std::vector<bool> used(slots.size(), false);
  auto rec = [&](auto&& self) -> S {
    std::size_t a = 0;
    while (a < slots.size() && used[a]) ++a;
    if (a == slots.size()) return S(1);
    used[a] = true;
    S total;
    for (std::size_t b = a + 1; b < slots.size(); ++b) {
      if (used[b]) continue;
      used[b] = true;
      total += delta_f.at(slots[a], slots[b]) * self(self);
      used[b] = false;
    }
    used[a] = false;
    return total;
  };
  return rec(rec);
}

inline Rational factorial(int n) {
  Rational r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

/// One point, one species, L = lam phi^4. Value of
/// [exp(i lam phi^4) phi^a, exp(i lam phi^4) phi^b] (position 1 rightmost) read as
/// <Tbar(A2) T(A1)> with Tbar the inverse of time ordering on group-like
/// elements: Tbar(V_1...V_m) = sum over ordered set partitions (P_1..P_r) of
/// (-1)^r T(P_1)...T(P_r). Each operator product is expanded over every
/// perfect matching of field slots: feyn inside a block, cut between blocks.
inline CouplingSeries lambda_phi4_two_factor(const RingPtr& ring, const Rational& cut, const Rational& feyn, int a,
                                             int b) {
  const int K = ring->order;
  CouplingSeries total = CouplingSeries::constant(ring, ExactComplex(0));
  for (int k2 = 0; k2 <= K; ++k2)
    for (int k1 = 0; k1 + k2 <= K; ++k1) {
      std::vector<int> upper;  // field counts of the position-2 vertices
      for (int k = 0; k < k2; ++k) upper.push_back(4);
      if (a > 0) upper.push_back(a);
      const int lower_fields = 4 * k1 + b;
      const int m = static_cast<int>(upper.size());
      Rational value = 0;
      // Ordered set partitions as surjections vertex -> block 0..r-1.
      for (int r = (m == 0 ? 0 : 1); r <= m; ++r) {
        std::vector<int> label(m, 0);
        for (;;) {
          std::vector<bool> hit(r, false);
          for (int l : label) hit[l] = true;
          bool onto = true;
          for (bool h : hit) onto = onto && h;
          if (onto) {
            std::vector<int> block_of;  // one entry per slot; block r is T(A1)
            for (int v = 0; v < m; ++v)
              for (int f = 0; f < upper[v]; ++f) block_of.push_back(label[v]);
            for (int f = 0; f < lower_fields; ++f) block_of.push_back(r);
            if (block_of.size() % 2 == 0) {
              std::vector<bool> used(block_of.size(), false);
              auto rec = [&](auto&& self) -> Rational {
                std::size_t i = 0;
                while (i < block_of.size() && used[i]) ++i;
                if (i == block_of.size()) return Rational(1);
                used[i] = true;
                Rational sum = 0;
                for (std::size_t j = i + 1; j < block_of.size(); ++j) {
                  if (used[j]) continue;
                  used[j] = true;
                  sum += (block_of[i] == block_of[j] ? feyn : cut) * self(self);
                  used[j] = false;
                }
                used[i] = false;
                return sum;
              };
              const Rational c = rec(rec);
              value += r % 2 ? -c : c;
            }
          }
          // next labelling in [0, r)^m
          int pos = 0;
          while (pos < m && ++label[pos] == r) label[pos++] = 0;
          if (pos == m) break;
        }
      }
      if (value == 0) continue;
      value /= factorial(k1) * factorial(k2);
      ExactComplex coeff(value);
      for (int k = 0; k < k1 + k2; ++k) coeff *= ExactComplex::i();
      CouplingSeries term = CouplingSeries::constant(ring, coeff);
      for (int k = 0; k < k1 + k2; ++k) term = term * CouplingSeries::variable(ring, ring->names.front());
      total = total + term;
    }
  return total;
}

}  // namespace uvqft::oracle
