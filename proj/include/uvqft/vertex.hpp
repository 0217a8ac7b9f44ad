#pragma once

// Vertex monomials (a polynomial in the species at one point, times the
// point's density) and canonical multisets of them.

#include <uvqft/causal_set.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uvqft {

/// Packed: bits 56..63 hold the point, byte s (s < 7) holds the exponent of species s.
using Vertex = std::uint64_t;
using Multiset = std::vector<Vertex>;  // always sorted

inline Vertex make_vertex(PointId p, const std::vector<int>& exps) {
  if (p < 0 || p > 255) throw std::out_of_range("point id does not fit a vertex");
  if (exps.size() > kMaxSpecies) throw std::out_of_range("too many species");
  Vertex v = static_cast<Vertex>(p) << 56;
  for (std::size_t s = 0; s < exps.size(); ++s) {
    if (exps[s] < 0 || exps[s] > 255) throw std::out_of_range("exponent out of range");
    v |= static_cast<Vertex>(exps[s]) << (8 * s);
  }
  return v;
}
inline Vertex density(PointId p) { return make_vertex(p, {}); }
/// phi_s(p)^k as a single vertex.
inline Vertex field_power(PointId p, int s, int k) {
  std::vector<int> e(s + 1, 0);
  e[s] = k;
  return make_vertex(p, e);
}

inline PointId vertex_point(Vertex v) { return static_cast<PointId>(v >> 56); }
inline int vertex_exp(Vertex v, int s) { return static_cast<int>((v >> (8 * s)) & 0xff); }
inline int vertex_field_degree(Vertex v) {
  int d = 0;
  for (int s = 0; s < kMaxSpecies; ++s) d += vertex_exp(v, s);
  return d;
}
inline bool is_density(Vertex v) { return (v & ((Vertex(1) << 56) - 1)) == 0; }
inline Vertex with_exp(Vertex v, int s, int k) {
  v &= ~(Vertex(0xff) << (8 * s));
  return v | (static_cast<Vertex>(k) << (8 * s));
}
/// Vertex at p whose exponents are the sum of those of a and b.
inline Vertex vertex_mul(Vertex a, Vertex b) {
  if (vertex_point(a) != vertex_point(b)) throw std::invalid_argument("vertex_mul across points");
  Vertex v = static_cast<Vertex>(vertex_point(a)) << 56;
  for (int s = 0; s < kMaxSpecies; ++s) {
    const int e = vertex_exp(a, s) + vertex_exp(b, s);
    if (e > 255) throw std::overflow_error("exponent overflow");
    v |= static_cast<Vertex>(e) << (8 * s);
  }
  return v;
}
inline Vertex move_vertex(Vertex v, PointId q) {
  return (v & ((Vertex(1) << 56) - 1)) | (static_cast<Vertex>(q) << 56);
}

inline Multiset multiset_union(const Multiset& a, const Multiset& b) {
  Multiset out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
inline Multiset make_multiset(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  return vs;
}
inline int field_degree(const Multiset& m) {
  int d = 0;
  for (Vertex v : m) d += vertex_field_degree(v);
  return d;
}
inline SupportSet support(const Multiset& m) {
  SupportSet s;
  for (Vertex v : m) s.insert(vertex_point(v));
  return s;
}
inline bool is_single_point(const Multiset& m) {
  for (Vertex v : m)
    if (vertex_point(v) != vertex_point(m.front())) return false;
  return !m.empty();
}

/// Run-length view of a sorted multiset: (vertex, multiplicity).
inline std::vector<std::pair<Vertex, int>> runs(const Multiset& m) {
  std::vector<std::pair<Vertex, int>> r;
  for (Vertex v : m) {
    if (!r.empty() && r.back().first == v) ++r.back().second;
    else r.emplace_back(v, 1);
  }
  return r;
}

/// Counts of each global field index over the whole multiset.
inline std::vector<std::uint8_t> field_counts(const CausalSet& cs, const Multiset& m) {
  std::vector<std::uint8_t> c(cs.num_fields(), 0);
  for (Vertex v : m) {
    const PointId p = vertex_point(v);
    for (int s = 0; s < cs.num_species(p); ++s) c[cs.field_index(p, s)] += vertex_exp(v, s);
    for (int s = cs.num_species(p); s < kMaxSpecies; ++s)
      if (vertex_exp(v, s) != 0) throw std::invalid_argument("vertex uses a species the point lacks");
  }
  return c;
}

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::string vertex_to_string(const CausalSet& cs, Vertex v) {
  const PointId p = vertex_point(v);
  std::vector<std::string> parts;
  int nonzero = 0;
  for (int s = 0; s < kMaxSpecies; ++s) {
    const int e = vertex_exp(v, s);
    if (e == 0) continue;
    ++nonzero;
    std::string nm = s < cs.num_species(p) ? cs.species(p)[s] : "s" + std::to_string(s);
    if (e > 1) nm += "^" + std::to_string(e);
    parts.push_back(nm);
  }
  const std::string at = "[" + cs.name(p) + "]";
  if (parts.empty()) return "dens" + at;
  if (nonzero == 1) {
    // phi^3 -> phi[x]^3
    const std::string& only = parts.front();
    const auto caret = only.find('^');
    if (caret == std::string::npos) return only + at;
    return only.substr(0, caret) + at + only.substr(caret);
  }
  std::string body;
  for (const auto& s : parts) body += (body.empty() ? "" : "*") + s;
  return "(" + body + ")" + at;
}

inline std::string multiset_to_string(const CausalSet& cs, const Multiset& m) {
  if (m.empty()) return "1";
  std::string out;
  for (Vertex v : m) out += (out.empty() ? "" : "*") + vertex_to_string(cs, v);
  return out;
}

}  // namespace uvqft
