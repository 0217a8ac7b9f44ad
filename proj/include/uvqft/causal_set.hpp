#pragma once

// Finite model spacetimes.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace uvqft {

using PointId = int;
using SupportSet = std::set<PointId>;

inline constexpr int kMaxSpecies = 7;
inline constexpr int kMaxPoints = 255;

struct PreorderViolation {
  enum class Kind { reflexivity, transitivity, antisymmetry } kind;
  std::vector<PointId> points;  // (x) / (x,y,z) / (x,y)
};

struct PreorderReport {
  bool valid = true;
  std::vector<PreorderViolation> violations;
};

/// Raw relation audit. relation[x][y] means x <= y.
inline PreorderReport validate_preorder(const std::vector<std::vector<bool>>& relation,
                                        bool require_antisymmetry = true) {
  PreorderReport r;
  const int n = static_cast<int>(relation.size());
  for (int x = 0; x < n; ++x)
    if (!relation[x][x]) r.violations.push_back({PreorderViolation::Kind::reflexivity, {x}});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!relation[x][y]) continue;
      for (int z = 0; z < n; ++z)
        if (relation[y][z] && !relation[x][z])
          r.violations.push_back({PreorderViolation::Kind::transitivity, {x, y, z}});
      if (require_antisymmetry && x < y && relation[y][x])
        r.violations.push_back({PreorderViolation::Kind::antisymmetry, {x, y}});
    }
  r.valid = r.violations.empty();
  return r;
}

struct CausalSetOptions {
  bool allow_preorder = false;
  bool close = true;  // apply reflexive-transitive closure before validating
};

class CausalSet {
 public:
  using Options = CausalSetOptions;

  /// pairs (x,y) read as x <= y. species[p] names the field species at p.
  CausalSet(std::vector<std::string> names, const std::vector<std::pair<PointId, PointId>>& pairs,
            std::vector<std::vector<std::string>> species, Options opts)
      : names_(std::move(names)), species_(std::move(species)), allow_preorder_(opts.allow_preorder) {
    const int n = static_cast<int>(names_.size());
    if (n == 0) throw std::invalid_argument("causal set needs at least one point");
    if (n > kMaxPoints) throw std::invalid_argument("too many points");
    if (static_cast<int>(species_.size()) != n)
      throw std::invalid_argument("species list must have one entry per point");
    for (const auto& sp : species_)
      if (static_cast<int>(sp.size()) > kMaxSpecies)
        throw std::invalid_argument("at most 7 species per point");
    leq_.assign(n, std::vector<bool>(n, false));
    for (auto [x, y] : pairs) {
      if (x < 0 || y < 0 || x >= n || y >= n) throw std::out_of_range("relation mentions unknown point");
      leq_[x][y] = true;
    }
    if (opts.close) {
      for (int x = 0; x < n; ++x) leq_[x][x] = true;
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          if (leq_[i][k])
            for (int j = 0; j < n; ++j)
              if (leq_[k][j]) leq_[i][j] = true;
    }
    report_ = validate_preorder(leq_, !allow_preorder_);
    if (!report_.valid) throw std::invalid_argument("causality relation: " + describe(report_.violations.front()));
    int off = 0;
    for (int p = 0; p < n; ++p) {
      offsets_.push_back(off);
      off += static_cast<int>(species_[p].size());
      index_[names_[p]] = p;
    }
    num_fields_ = off;
  }

  static std::shared_ptr<const CausalSet> make(std::vector<std::string> names,
                                               const std::vector<std::pair<PointId, PointId>>& pairs,
                                               std::vector<std::vector<std::string>> species,
                                               Options opts = {}) {
    return std::make_shared<const CausalSet>(std::move(names), pairs, std::move(species), opts);
  }

  /// n points with one species "phi" each.
  static std::shared_ptr<const CausalSet> simple(int n, const std::vector<std::pair<PointId, PointId>>& pairs,
                                                 int species_per_point = 1) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> sp;
    static const char* kSpecies[] = {"phi", "psi", "chi", "eta", "xi", "zeta", "theta"};
    for (int i = 0; i < n; ++i) {
      names.push_back("p" + std::to_string(i));
      std::vector<std::string> s;
      for (int k = 0; k < species_per_point; ++k) s.emplace_back(kSpecies[k]);
      sp.push_back(s);
    }
    return make(names, pairs, sp);
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(PointId p) const { return names_.at(p); }
  const std::vector<std::string>& names() const { return names_; }
  bool allow_preorder() const { return allow_preorder_; }

  PointId point(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) throw std::out_of_range("unknown point '" + n + "'");
    return it->second;
  }
  bool has_point(const std::string& n) const { return index_.count(n) != 0; }

  int num_species(PointId p) const { return static_cast<int>(species_.at(p).size()); }
  const std::vector<std::string>& species(PointId p) const { return species_.at(p); }
  int species_index(PointId p, const std::string& s) const {
    const auto& sp = species_.at(p);
    for (int i = 0; i < static_cast<int>(sp.size()); ++i)
      if (sp[i] == s) return i;
    return -1;
  }

  /// Global index of the field (p, s); fields are numbered point-major.
  int field_index(PointId p, int s) const {
    check(p);
    if (s < 0 || s >= num_species(p)) throw std::out_of_range("species index out of range");
    return offsets_[p] + s;
  }
  int num_fields() const { return num_fields_; }
  PointId field_point(int f) const {
    for (int p = size() - 1; p >= 0; --p)
      if (offsets_[p] <= f && num_species(p) > 0) return p;
    throw std::out_of_range("field index");
  }
  int field_species(int f) const { return f - offsets_[field_point(f)]; }

  bool leq(PointId x, PointId y) const {
    check(x);
    check(y);
    return leq_[x][y];
  }
  const std::vector<std::vector<bool>>& relation() const { return leq_; }

  bool is_spacelike(PointId x, PointId y) const { return !leq(x, y) && !leq(y, x); }

  /// No a in A with a <= b for some b in B.
  bool none_leq(const SupportSet& A, const SupportSet& B) const {
    for (PointId a : A)
      for (PointId b : B)
        if (leq(a, b)) return false;
    return true;
  }

  SupportSet past_of(const SupportSet& A) const {
    SupportSet out;
    for (PointId p = 0; p < size(); ++p)
      for (PointId a : A)
        if (leq(p, a)) {
          out.insert(p);
          break;
        }
    return out;
  }
  SupportSet future_of(const SupportSet& A) const {
    SupportSet out;
    for (PointId p = 0; p < size(); ++p)
      for (PointId a : A)
        if (leq(a, p)) {
          out.insert(p);
          break;
        }
    return out;
  }

  /// Points of A with nothing of A strictly below them.
  SupportSet minimal_points(const SupportSet& A) const {
    SupportSet out;
    for (PointId a : A) {
      bool minimal = true;
      for (PointId b : A)
        if (b != a && leq(b, a) && !leq(a, b)) minimal = false;
      if (minimal) out.insert(a);
    }
    return out;
  }

  bool operator==(const CausalSet& o) const {
    return names_ == o.names_ && species_ == o.species_ && leq_ == o.leq_;
  }

  std::string describe(const PreorderViolation& v) const {
    auto nm = [&](PointId p) { return p < static_cast<int>(names_.size()) ? names_[p] : std::to_string(p); };
    switch (v.kind) {
      case PreorderViolation::Kind::reflexivity: return "reflexivity fails at " + nm(v.points[0]);
      case PreorderViolation::Kind::transitivity:
        return "transitivity fails: " + nm(v.points[0]) + "<=" + nm(v.points[1]) + ", " + nm(v.points[1]) +
               "<=" + nm(v.points[2]) + " but not " + nm(v.points[0]) + "<=" + nm(v.points[2]);
      case PreorderViolation::Kind::antisymmetry:
        return "antisymmetry fails: " + nm(v.points[0]) + " and " + nm(v.points[1]) + " are two-way comparable";
    }
    return "unknown violation";
  }

 private:
  void check(PointId p) const {
    if (p < 0 || p >= size()) throw std::out_of_range("unknown point " + std::to_string(p));
  }

  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> species_;
  std::vector<std::vector<bool>> leq_;
  std::vector<int> offsets_;
  std::map<std::string, PointId> index_;
  int num_fields_ = 0;
  bool allow_preorder_ = false;
  PreorderReport report_;
};

using CausalSetPtr = std::shared_ptr<const CausalSet>;

}  // namespace uvqft
