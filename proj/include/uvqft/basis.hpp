#pragma once

// Enumeration of basis multisets inside a truncation.

#include <uvqft/sym_element.hpp>

#include <functional>
#include <vector>

namespace uvqft {

/// All vertices at p with field degree <= max_fields, density first.
inline std::vector<Vertex> vertices_at(const CausalSet& cs, PointId p, int max_fields) {
  std::vector<Vertex> out;
  const int ns = cs.num_species(p);
  std::vector<int> e(ns, 0);
  std::function<void(int, int)> rec = [&](int s, int left) {
    if (s == ns) {
      out.push_back(make_vertex(p, e));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[s] = k;
      rec(s + 1, left - k);
    }
    e[s] = 0;
  };
  rec(0, max_fields);
  std::sort(out.begin(), out.end(), [](Vertex a, Vertex b) {
    const int fa = vertex_field_degree(a), fb = vertex_field_degree(b);
    return fa != fb ? fa < fb : a < b;
  });
  return out;
}

/// Multisets of size in [min_size, max_size] drawn from `pool` with total field degree <= max_fields.
inline std::vector<Multiset> multisets_from(const std::vector<Vertex>& pool, int min_size, int max_size,
                                            int max_fields) {
  std::vector<Vertex> sorted = pool;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Multiset> out;
  Multiset cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int fields) {
    if (static_cast<int>(cur.size()) >= min_size) out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (std::size_t i = start; i < sorted.size(); ++i) {
      const int f = vertex_field_degree(sorted[i]);
      if (fields + f > max_fields) continue;
      cur.push_back(sorted[i]);
      rec(i, fields + f);
      cur.pop_back();
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), [](const Multiset& a, const Multiset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    const int fa = field_degree(a), fb = field_degree(b);
    if (fa != fb) return fa < fb;
    return a < b;
  });
  return out;
}

inline int bounded(int v, int cap) { return v == INT_MAX ? cap : v; }

/// Single-point multisets of size 1..D at p, ordered by (size, field degree).
inline std::vector<Multiset> single_point_basis(const CausalSet& cs, PointId p, Truncation tr) {
  const int D = bounded(tr.max_sym_degree, 0), F = bounded(tr.max_field_degree, 0);
  return multisets_from(vertices_at(cs, p, F), 1, D, F);
}

/// Every multiset of size 0..D with total field degree <= F.
inline std::vector<Multiset> spanning_basis(const CausalSet& cs, Truncation tr) {
  const int D = bounded(tr.max_sym_degree, 0), F = bounded(tr.max_field_degree, 0);
  std::vector<Vertex> pool;
  for (PointId p = 0; p < cs.size(); ++p)
    for (Vertex v : vertices_at(cs, p, F)) pool.push_back(v);
  return multisets_from(pool, 0, D, F);
}

}  // namespace uvqft
