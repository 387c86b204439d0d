#pragma once

// Shared fixtures: deterministic random parameters and complexes, and a
// brute-force map enumerator used as an oracle for the linear-algebra search.

#include <optional>
#include <random>
#include <vector>

#include "iotahat.hpp"

namespace fixtures {

using namespace iotahat;

inline std::mt19937& rng() {
  static std::mt19937 gen(20240611u);
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline int nonzero(int bound) {
  const int v = uniform(1, bound);
  return uniform(0, 1) ? v : -v;
}

/// Random standard parameters with at most `max_pairs` (a, b) pairs.
inline Params random_params(int max_pairs, int bound) {
  std::vector<int> s;
  const int pairs = uniform(0, max_pairs);
  for (int i = 0; i < pairs; ++i) {
    s.push_back(uniform(0, 1) ? 1 : -1);
    s.push_back(nonzero(bound));
  }
  return Params(s);
}

/// Every standard parameter sequence of length <= 2 * pairs with |b| <= bound.
inline std::vector<Params> params_grid(int pairs, int bound) {
  std::vector<Params> out{Params()};
  std::vector<Params> layer{Params()};
  for (int k = 0; k < pairs; ++k) {
    std::vector<Params> next;
    for (const auto& p : layer)
      for (int a : {-1, 1})
        for (int b = -bound; b <= bound; ++b)
          if (b != 0) next.push_back(p.with(a).with(b));
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// Acyclic or torsion summand y -> U^eta z with omega = 0.
inline AlmostIotaComplex torsion_pair(int z_grading, int eta, const std::string& tag) {
  return make_complex({{"y" + tag, z_grading - 2 * eta + 1}, {"z" + tag, z_grading}}, {{0, 1}}, {});
}

/// Random invertible grading-preserving change of basis, built from
/// elementary operations e_a += U^k e_b.
inline ModuleMap random_basis_change(const BasisPtr& basis, int steps) {
  ModuleMap p = ModuleMap::identity(basis);
  const int n = static_cast<int>(basis->size());
  if (n < 2) return p;
  for (int i = 0; i < steps; ++i) {
    const auto a = static_cast<std::size_t>(uniform(0, n - 1));
    const auto b = static_cast<std::size_t>(uniform(0, n - 1));
    if (a == b) continue;
    ModuleMap e = ModuleMap::identity(basis);
    if (!e.admissible(b, a)) continue;
    e.set(b, a);
    p = compose(p, e);
  }
  return p;
}

/// Valid almost iota-complex that is generally neither reduced nor in a
/// convenient basis: a standard complex (or a tensor of two) plus torsion
/// summands, conjugated by a random change of basis.
inline AlmostIotaComplex random_valid_complex(int max_extra_pairs = 3) {
  AlmostIotaComplex c = build(random_params(2, 3));
  if (uniform(0, 3) == 0) c = tensor(build(random_params(1, 2)), build(random_params(1, 2)));
  const int extra = uniform(0, max_extra_pairs);
  for (int i = 0; i < extra; ++i)
    c = direct_sum(c, torsion_pair(2 * uniform(-3, 1), uniform(0, 2), std::to_string(i)));
  c.reduced_flag = false;
  c.augmented = false;
  return change_basis(c, random_basis_change(c.basis, 4 * static_cast<int>(c.size())));
}

// ---------------------------------------------------------------------------
// Brute-force oracle

/// Whether v lies in the GF(2) column span of m.
inline bool in_span(const BitMatrix& m, const BitVector& v) {
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.test(r, c));
    aug.set(r, m.cols(), v.test(r));
  }
  return aug.rank() == m.rank();
}

/// Some even-graded cycle that is not a boundary after inverting U: for U^N
/// with N large, boundaries are exactly the column span of d's bits.
inline std::optional<BitVector> localized_generator(const AlmostIotaComplex& c) {
  const std::size_t n = c.size();
  const BitMatrix& d = c.differential.bits();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    BitVector v(n);
    bool ok = true;
    int grading = 0;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1U) {
        v.set(i);
        const int g = c.basis->grading(i);
        if (first) grading = g, first = false;
        if (((g - grading) % 2) != 0 || (g % 2) != 0) ok = false;
      }
    if (!ok || d.apply(v).any()) continue;
    if (!in_span(d, v)) return v;
  }
  return std::nullopt;
}

/// Admissible entries ordered by source then target, the same unknown order
/// the search uses.
inline std::vector<std::pair<std::size_t, std::size_t>> unknowns(const AlmostIotaComplex& s, const AlmostIotaComplex& t) {
  ModuleMap probe(s.basis, t.basis, 0);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t src = 0; src < s.size(); ++src)
    for (std::size_t tgt = 0; tgt < t.size(); ++tgt)
      if (probe.admissible(tgt, src)) out.push_back({tgt, src});
  return out;
}

/// Checks a candidate map directly from the definitions (reduced complexes,
/// so the omega condition is a strict identity mod U).
inline bool oracle_accepts(const AlmostIotaComplex& s, const AlmostIotaComplex& t, const ModuleMap& f,
                           ShortMapKind kind, const BitVector& src_gen) {
  const std::size_t last = s.size() - 1;
  const BitMatrix chain = (t.differential.bits() * f.bits()) ^ (f.bits() * s.differential.bits());
  if (!chain.is_zero()) return false;
  for (std::size_t col = 0; col < s.size(); ++col) {
    if (kind == ShortMapKind::StandardShort && col == last) continue;
    for (std::size_t row = 0; row < t.size(); ++row) {
      if (t.basis->grading(row) != s.basis->grading(col)) continue;  // U-divisible entries vanish mod U
      bool bit = false;
      for (std::size_t k = 0; k < t.size(); ++k) bit ^= t.omega.test(row, k) && f.test(k, col);
      for (std::size_t k = 0; k < s.size(); ++k) bit ^= f.test(row, k) && s.omega.test(k, col);
      if (bit) return false;
    }
  }
  return !in_span(t.differential.bits(), f.bits().apply(src_gen));
}

/// First map in lex order (unknown 0 most significant) passing the oracle.
inline std::optional<ModuleMap> brute_force_map(const AlmostIotaComplex& s, const AlmostIotaComplex& t,
                                                ShortMapKind kind) {
  const auto vars = unknowns(s, t);
  if (vars.size() > 18) throw Error("brute_force_map: too many unknowns");
  const auto src_gen = localized_generator(s);
  if (!src_gen) return std::nullopt;
  const std::size_t n = vars.size();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    ModuleMap f(s.basis, t.basis, 0);
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> (n - 1 - i)) & 1U) f.set(vars[i].first, vars[i].second);
    if (oracle_accepts(s, t, f, kind, *src_gen)) return f;
  }
  return std::nullopt;
}

}  // namespace fixtures
