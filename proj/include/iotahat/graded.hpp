#pragma once

// Graded free modules over F2[U] (deg U = -2) and homogeneous maps between
// them. A map stores one bit per (target, source) pair; the U-exponent of an
// entry is determined by the gradings and the degree of the map.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "iotahat/gf2.hpp"

namespace iotahat {

struct Generator {
  std::string name;
  int grading = 0;
  bool operator==(const Generator&) const = default;
};

class GradedBasis {
 public:
  GradedBasis() = default;
  explicit GradedBasis(std::vector<Generator> gens) : gens_(std::move(gens)) {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (!index_.emplace(gens_[i].name, i).second) throw Error("duplicate generator name '" + gens_[i].name + "'");
  }

  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }
  int grading(std::size_t i) const { return gens_[i].grading; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw Error("unknown generator '" + name + "'");
    return *i;
  }

  int max_grading() const {
    if (gens_.empty()) throw Error("empty basis has no grading range");
    return std::max_element(gens_.begin(), gens_.end(), by_grading)->grading;
  }
  int min_grading() const {
    if (gens_.empty()) throw Error("empty basis has no grading range");
    return std::min_element(gens_.begin(), gens_.end(), by_grading)->grading;
  }

  /// Same names, all gradings moved by `delta`.
  GradedBasis shifted(int delta) const {
    std::vector<Generator> g = gens_;
    for (auto& x : g) x.grading += delta;
    return GradedBasis(std::move(g));
  }

  bool operator==(const GradedBasis& o) const { return gens_ == o.gens_; }

 private:
  static bool by_grading(const Generator& a, const Generator& b) { return a.grading < b.grading; }

  std::vector<Generator> gens_;
  std::unordered_map<std::string, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

inline BasisPtr make_basis(std::vector<Generator> gens) {
  return std::make_shared<const GradedBasis>(std::move(gens));
}

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) { return a == b || *a == *b; }

/// U^exponent * generator.
struct Term {
  std::size_t gen = 0;
  int u_power = 0;
  auto operator<=>(const Term&) const = default;
};

/// An element of a free F2[U]-module: a finite sum of monomials, stored
/// sorted with coinciding monomials cancelled.
class Element {
 public:
  Element() = default;
  Element(std::initializer_list<Term> terms) {
    for (const auto& t : terms) add(t);
  }

  void add(Term t) {
    if (t.u_power < 0) throw Error("negative U exponent");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
    if (it != terms_.end() && *it == t)
      terms_.erase(it);
    else
      terms_.insert(it, t);
  }
  Element& operator+=(const Element& o) {
    for (const auto& t : o.terms_) add(t);
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }

  Element times_u(int k) const {
    Element out = *this;
    for (auto& t : out.terms_) t.u_power += k;
    return out;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const Element&) const = default;

  /// True when every term is divisible by U (zero included).
  bool in_image_of_u() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.u_power >= 1; });
  }

  /// Grading if all terms share one, nullopt for zero or inhomogeneous elements.
  std::optional<int> grading(const GradedBasis& basis) const {
    std::optional<int> g;
    for (const auto& t : terms_) {
      const int tg = basis.grading(t.gen) - 2 * t.u_power;
      if (g && *g != tg) return std::nullopt;
      g = tg;
    }
    return g;
  }

  /// Homogeneous element of grading `g` with the given support bits.
  static Element from_bits(const GradedBasis& basis, const BitVector& bits, int g) {
    Element e;
    bits.for_each_set([&](std::size_t i) {
      const int diff = basis.grading(i) - g;
      if (diff < 0 || diff % 2 != 0) throw Error("support bit incompatible with grading");
      e.add({i, diff / 2});
    });
    return e;
  }

  /// Support bits; requires homogeneity (bits lose the exponents).
  BitVector bits(std::size_t dim) const {
    BitVector v(dim);
    for (const auto& t : terms_) v.flip(t.gen);
    return v;
  }

  std::string to_string(const GradedBasis& basis) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) os << " + ";
      const auto& t = terms_[i];
      if (t.u_power == 1)
        os << "U*";
      else if (t.u_power > 1)
        os << "U^" << t.u_power << "*";
      os << basis[t.gen].name;
    }
    return os.str();
  }

 private:
  std::vector<Term> terms_;
};

/// Homogeneous F2[U]-module map of a fixed degree. Row index = target
/// generator, column index = source generator.
class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(BasisPtr source, BasisPtr target, int degree)
      : source_(std::move(source)), target_(std::move(target)), degree_(degree),
        bits_(target_->size(), source_->size()) {}

  static ModuleMap identity(const BasisPtr& basis) {
    ModuleMap m(basis, basis, 0);
    m.bits_ = BitMatrix::identity(basis->size());
    return m;
  }

  /// Wraps a bit matrix; throws if a set bit is inadmissible.
  static ModuleMap from_bits(BasisPtr source, BasisPtr target, int degree, BitMatrix bits) {
    ModuleMap m(std::move(source), std::move(target), degree);
    if (bits.rows() != m.target_->size() || bits.cols() != m.source_->size())
      throw Error("ModuleMap: bit matrix shape does not match bases");
    for (std::size_t t = 0; t < bits.rows(); ++t)
      bits.row(t).for_each_set([&](std::size_t s) {
        if (!m.admissible(t, s)) throw Error("ModuleMap: inadmissible entry " + m.entry_name(t, s));
      });
    m.bits_ = std::move(bits);
    return m;
  }

  const BasisPtr& source() const { return source_; }
  const BasisPtr& target() const { return target_; }
  int degree() const { return degree_; }
  const BitMatrix& bits() const { return bits_; }

  /// Forced U-exponent of entry (t, s), or nullopt when no entry can exist.
  std::optional<int> exponent(std::size_t t, std::size_t s) const {
    const int diff = target_->grading(t) - source_->grading(s) - degree_;
    if (diff < 0 || diff % 2 != 0) return std::nullopt;
    return diff / 2;
  }
  bool admissible(std::size_t t, std::size_t s) const { return exponent(t, s).has_value(); }

  bool test(std::size_t t, std::size_t s) const { return bits_.test(t, s); }
  void set(std::size_t t, std::size_t s, bool v = true) {
    if (v && !admissible(t, s)) throw Error("ModuleMap: inadmissible entry " + entry_name(t, s));
    bits_.set(t, s, v);
  }
  void flip(std::size_t t, std::size_t s) { set(t, s, !test(t, s)); }

  /// Image of a source generator, as an element of the target.
  Element column(std::size_t s) const {
    Element e;
    for (std::size_t t = 0; t < bits_.rows(); ++t)
      if (bits_.test(t, s)) e.add({t, *exponent(t, s)});
    return e;
  }

  bool is_zero() const { return bits_.is_zero(); }

  bool operator==(const ModuleMap& o) const {
    return degree_ == o.degree_ && same_basis(source_, o.source_) && same_basis(target_, o.target_) &&
           bits_ == o.bits_;
  }

  ModuleMap& operator+=(const ModuleMap& o) {
    if (degree_ != o.degree_ || !same_basis(source_, o.source_) || !same_basis(target_, o.target_))
      throw Error("ModuleMap: sum of incompatible maps");
    bits_ ^= o.bits_;
    return *this;
  }
  friend ModuleMap operator+(ModuleMap a, const ModuleMap& b) { return a += b; }

  /// Same bits with source and target bases replaced (gradings may move;
  /// admissibility is rechecked).
  ModuleMap rebased(BasisPtr source, BasisPtr target, int degree) const {
    return from_bits(std::move(source), std::move(target), degree, bits_);
  }

  std::string entry_name(std::size_t t, std::size_t s) const {
    return (*source_)[s].name + " -> " + (*target_)[t].name;
  }

 private:
  BasisPtr source_;
  BasisPtr target_;
  int degree_ = 0;
  BitMatrix bits_;
};

inline Element apply(const ModuleMap& map, const Element& elt) {
  Element out;
  for (const auto& term : elt.terms()) {
    if (term.gen >= map.source()->size()) throw Error("apply: unknown generator index");
    for (std::size_t t = 0; t < map.target()->size(); ++t)
      if (map.test(t, term.gen)) out.add({t, term.u_power + *map.exponent(t, term.gen)});
  }
  return out;
}

/// f after g.
inline ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
  if (!same_basis(g.target(), f.source())) throw Error("compose: basis mismatch");
  return ModuleMap::from_bits(g.source(), f.target(), f.degree() + g.degree(), f.bits() * g.bits());
}

/// Keeps the exponent-zero entries: the induced map modulo U.
inline ModuleMap mod_u_reduce(const ModuleMap& f) {
  ModuleMap out(f.source(), f.target(), f.degree());
  for (std::size_t t = 0; t < f.target()->size(); ++t)
    f.bits().row(t).for_each_set([&](std::size_t s) {
      if (*f.exponent(t, s) == 0) out.set(t, s);
    });
  return out;
}

inline ModuleMap zero_map(const BasisPtr& source, const BasisPtr& target, int degree) {
  return ModuleMap(source, target, degree);
}

/// Transposed map between dual bases (gradings negated); exponents agree.
inline ModuleMap transpose(const ModuleMap& f, const BasisPtr& dual_source, const BasisPtr& dual_target) {
  return ModuleMap::from_bits(dual_source, dual_target, f.degree(), f.bits().transposed());
}

inline std::string to_string(const ModuleMap& f) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t s = 0; s < f.source()->size(); ++s) {
    const Element e = f.column(s);
    if (e.is_zero()) continue;
    if (any) os << "; ";
    os << (*f.source())[s].name << " -> " << e.to_string(*f.target());
    any = true;
  }
  return any ? os.str() : "0";
}

}  // namespace iotahat
