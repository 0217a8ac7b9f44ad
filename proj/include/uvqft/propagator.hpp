#pragma once

// Cut and Feynman propagators on the finite model, plus the bijection-sum
// extension of a two-point function to field monomials.

#include <uvqft/causal_set.hpp>
#include <uvqft/linear_algebra.hpp>
#include <uvqft/scalar.hpp>
#include <uvqft/vertex.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace uvqft {

struct FieldId {
  PointId point;
  int species;
  friend auto operator<=>(const FieldId&, const FieldId&) = default;
};

/// Dense field-by-field matrix of scalars.
template <class S>
class Propagator {
 public:
  Propagator() = default;
  explicit Propagator(CausalSetPtr cs) : cs_(std::move(cs)) {
    n_ = cs_->num_fields();
    m_.assign(static_cast<std::size_t>(n_) * n_, S());
  }

  const CausalSetPtr& causal_set() const { return cs_; }
  int num_fields() const { return n_; }
  const S& at(int i, int j) const { return m_[static_cast<std::size_t>(i) * n_ + j]; }
  const S& at(FieldId a, FieldId b) const {
    return at(cs_->field_index(a.point, a.species), cs_->field_index(b.point, b.species));
  }
  void set(int i, int j, S v) { m_[static_cast<std::size_t>(i) * n_ + j] = std::move(v); }
  void set(FieldId a, FieldId b, S v) {
    set(cs_->field_index(a.point, a.species), cs_->field_index(b.point, b.species), std::move(v));
  }

  bool is_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (!(at(i, j) == at(j, i))) return false;
    return true;
  }

  bool is_hermitian() const {
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j)
        if (!(at(i, j) == conj(at(j, i)))) return false;
    return true;
  }

  friend bool operator==(const Propagator& a, const Propagator& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t k = 0; k < a.m_.size(); ++k)
      if (!(a.m_[k] == b.m_[k])) return false;
    return true;
  }

  template <class U>
  Propagator<U> lifted() const {
    Propagator<U> r(cs_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.set(i, j, lift<U>(at(i, j)));
    return r;
  }

 private:
  CausalSetPtr cs_;
  int n_ = 0;
  std::vector<S> m_;
};

template <class S>
class CutPropagator : public Propagator<S> {
 public:
  using Propagator<S>::Propagator;
  CutPropagator() = default;
  CutPropagator(const Propagator<S>& p) : Propagator<S>(p) {}  // NOLINT(google-explicit-constructor)

  /// Symmetric on every pair of fields sitting at spacelike points.
  bool is_local() const {
    const auto& cs = *this->causal_set();
    const int n = this->num_fields();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (cs.is_spacelike(cs.field_point(i), cs.field_point(j)) && !(this->at(i, j) == this->at(j, i)))
          return false;
    return true;
  }

  /// Hermitian and positive semidefinite; only decidable for exact scalars.
  bool is_positive() const {
    if constexpr (std::is_same_v<S, ExactComplex>) {
      const int n = this->num_fields();
      Matrix g(n, std::vector<ExactComplex>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = this->at(i, j);
      return hermitian_ldl(g).psd;
    } else {
      return false;
    }
  }

  template <class U>
  CutPropagator<U> lifted() const {
    return CutPropagator<U>(Propagator<S>::template lifted<U>());
  }
};

template <class S>
class FeynmanPropagator : public Propagator<S> {
 public:
  using Propagator<S>::Propagator;
  FeynmanPropagator() = default;
  explicit FeynmanPropagator(const Propagator<S>& p) : Propagator<S>(p) {}

  template <class U>
  FeynmanPropagator<U> lifted() const {
    return FeynmanPropagator<U>(Propagator<S>::template lifted<U>());
  }
};

/// Diagonal data: (point, species, species) -> value. Missing entries are zero.
template <class S>
using DiagonalData = std::map<std::tuple<PointId, int, int>, S>;

/// The symmetric part of the cut propagator at coincident points.
template <class S>
DiagonalData<S> symmetric_cut_diagonal(const CutPropagator<S>& cut) {
  DiagonalData<S> d;
  const auto& cs = *cut.causal_set();
  for (PointId p = 0; p < cs.size(); ++p)
    for (int s = 0; s < cs.num_species(p); ++s)
      for (int t = 0; t < cs.num_species(p); ++t) {
        S v = div_int(cut.at({p, s}, {p, t}) + cut.at({p, t}, {p, s}), 2);
        if (!is_zero(v)) d[{p, s, t}] = v;
      }
  return d;
}

/// Delta_F(x,y) = Delta(x,y) when x is not <= y, Delta(y,x) when y is not <= x,
/// and the supplied symmetric diagonal at coincident points.
template <class S>
FeynmanPropagator<S> build_feynman_propagator(const CutPropagator<S>& cut, const DiagonalData<S>& diagonal) {
  if (!cut.is_local()) throw std::invalid_argument("cut propagator is not local (asymmetric on a spacelike pair)");
  const auto& cs = *cut.causal_set();
  for (PointId x = 0; x < cs.size(); ++x)
    for (PointId y = x + 1; y < cs.size(); ++y)
      if (cs.leq(x, y) && cs.leq(y, x))
        throw std::invalid_argument("points " + cs.name(x) + " and " + cs.name(y) +
                                    " are two-way comparable; Feynman ordering undefined");
  FeynmanPropagator<S> f(cut.causal_set());
  const int n = cs.num_fields();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const PointId x = cs.field_point(i), y = cs.field_point(j);
      if (x == y) continue;
      f.set(i, j, !cs.leq(x, y) ? cut.at(i, j) : cut.at(j, i));
    }
  for (const auto& [key, v] : diagonal) {
    const auto [p, s, t] = key;
    if (p < 0 || p >= cs.size() || s < 0 || t < 0 || s >= cs.num_species(p) || t >= cs.num_species(p))
      throw std::out_of_range("diagonal entry outside the model");
    auto other = diagonal.find({p, t, s});
    if (other != diagonal.end() && !(other->second == v))
      throw std::invalid_argument("Feynman diagonal must be symmetric at " + cs.name(p));
    f.set({p, s}, {p, t}, v);
    f.set({p, t}, {p, s}, v);
  }
  return f;
}

/// Sum over bijections between the fields of A and those of B of the product of
/// w(a, b) entries; zero when the field counts differ, one when both are empty.
template <class S>
class BijectionSum {
 public:
  explicit BijectionSum(const Propagator<S>& w) : w_(w) {}

  S operator()(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    int na = 0, nb = 0;
    for (auto c : a) na += c;
    for (auto c : b) nb += c;
    if (na != nb) return S();
    std::string key(a.begin(), a.end());
    key.append(b.begin(), b.end());
    return rec(key, static_cast<int>(a.size()));
  }

 private:
  S rec(std::string& key, int n) {
    int i = 0;
    while (i < n && key[i] == 0) ++i;
    if (i == n) return S(1);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    S total;
    --key[i];
    for (int j = 0; j < n; ++j) {
      const int c = static_cast<unsigned char>(key[n + j]);
      if (c == 0) continue;
      const S& wij = w_.at(i, j);
      if (is_zero(wij)) continue;
      --key[n + j];
      total += mul_int(wij * rec(key, n), c);
      ++key[n + j];
    }
    ++key[i];
    memo_.emplace(key, total);
    return total;
  }

  const Propagator<S>& w_;
  std::unordered_map<std::string, S> memo_;
};

template <class S>
S extend_propagator(const Propagator<S>& delta, const Multiset& A, const Multiset& B) {
  const auto& cs = *delta.causal_set();
  BijectionSum<S> sum(delta);
  return sum(field_counts(cs, A), field_counts(cs, B));
}

}  // namespace uvqft
