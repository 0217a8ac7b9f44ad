#pragma once

// Exhaustive property flags of a Feynman measure within a truncation.

#include <uvqft/basis.hpp>
#include <uvqft/word_measure.hpp>

#include <string>
#include <vector>

namespace uvqft {

struct MeasureFlags {
  bool normalized = true;                  // omega(v_x) = 1 for every density
  bool normally_ordered = true;            // zero on single vertices with fields
  bool simple_operator_normalized = true;  // omega(a B) = sum Delta_F(a B1) omega(B2) for single fields a
  bool hermitian = true;                   // on two-factor words of basis elements
  std::vector<std::string> notes;          // first counterexample per failed flag
};

template <class S>
MeasureFlags classify_measure(const FeynmanMeasure<S>& omega, Truncation tr, int hermitian_max_size = 2) {
  MeasureFlags r;
  const CausalSet& cs = omega.model();
  const int F = bounded(tr.max_field_degree, 4), D = bounded(tr.max_sym_degree, 3);
  for (PointId p = 0; p < cs.size(); ++p) {
    if (!(omega.eval(Multiset{density(p)}) == S(1)) && r.normalized) {
      r.normalized = false;
      r.notes.push_back("not normalized at " + cs.name(p));
    }
    for (Vertex v : vertices_at(cs, p, F)) {
      if (is_density(v)) continue;
      if (!is_zero(omega.eval(Multiset{v})) && r.normally_ordered) {
        r.normally_ordered = false;
        r.notes.push_back("not normally ordered on " + vertex_to_string(cs, v));
      }
    }
  }
  // Simple-operator identity for every single field a and B of smaller size.
  const auto basis = spanning_basis(cs, Truncation{D - 1, F - 1});
  for (PointId p = 0; p < cs.size() && r.simple_operator_normalized; ++p)
    for (int s = 0; s < cs.num_species(p) && r.simple_operator_normalized; ++s) {
      const Vertex a = field_power(p, s, 1);
      for (const Multiset& b : basis) {
        Multiset ab = multiset_union(Multiset{a}, b);
        const S lhs = omega.eval(ab);
        S rhs;
        for (const auto& t : coaction_split(b)) {
          if (field_degree(t.field_part) != 1) continue;
          const auto counts = field_counts(cs, t.field_part);
          for (int f = 0; f < static_cast<int>(counts.size()); ++f)
            if (counts[f])
              rhs += mul_int(omega.feynman().at(cs.field_index(p, s), f) * omega.eval(t.omega_part), t.weight);
        }
        if (!(lhs == rhs)) {
          r.simple_operator_normalized = false;
          r.notes.push_back("simple-operator identity fails on " + multiset_to_string(cs, ab));
          break;
        }
      }
    }
  // Hermitian on two-factor words.
  WordEvaluator<S> ev(omega);
  const auto hb = spanning_basis(cs, Truncation{hermitian_max_size, F});
  for (std::size_t i = 0; i < hb.size() && r.hermitian; ++i)
    for (std::size_t j = 0; j < hb.size(); ++j) {
      const std::vector<Multiset> w{hb[j], hb[i]};
      // (A2 (x) A1)* = A1* (x) A2*; star of a basis multiset is a sign.
      const long sign = (hb[i].size() + hb[j].size()) % 2 ? -1 : 1;
      const S lhs = ev.eval_basis(w);
      const S rhs = mul_int(conj(ev.eval_basis({hb[i], hb[j]})), sign);
      if (!(lhs == rhs)) {
        r.hermitian = false;
        r.notes.push_back("not Hermitian on [" + multiset_to_string(cs, hb[i]) + ", " + multiset_to_string(cs, hb[j]) +
                          "]");
        break;
      }
    }
  return r;
}

}  // namespace uvqft
