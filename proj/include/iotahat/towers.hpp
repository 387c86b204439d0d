#pragma once

// Paired-basis (tower) decomposition of a differential over F2[U]:
// a homogeneous change of basis after which the differential consists of
// isolated arrows d(y) = U^eta z plus cycles that carry the nontorsion towers.

#include <algorithm>
#include <climits>
#include <cstddef>
#include <optional>
#include <tuple>
#include <vector>

#include "iotahat/graded.hpp"

namespace iotahat {

struct Tower {
  int top_grading = 0;
  std::optional<int> height;  // nullopt for a nontorsion tower
  auto operator<=>(const Tower&) const = default;
};

struct PairedArrow {
  std::size_t y = 0;  // non-cycle generator (new basis index)
  std::size_t z = 0;  // torsion generator
  int eta = 0;
};

struct PairedBasis {
  BasisPtr basis;            // new basis; index i has the grading of old index i
  ModuleMap to_old;          // new -> old, degree 0 (columns are new vectors)
  ModuleMap from_old;        // old -> new, inverse of to_old
  ModuleMap differential;    // differential in the new basis
  std::vector<std::size_t> nontorsion;  // generators not involved in any arrow
  std::vector<PairedArrow> pairs;
  std::vector<std::size_t> unpaired;    // left over when eta was capped

  /// Homology towers: nontorsion generators and pairs with eta >= 1.
  std::vector<Tower> towers() const {
    std::vector<Tower> out;
    for (auto x : nontorsion) out.push_back({basis->grading(x), std::nullopt});
    for (const auto& p : pairs)
      if (p.eta > 0) out.push_back({basis->grading(p.z), p.eta});
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

// Elementary change of basis e'_a = e_a + U^c e_b applied to a conjugated
// square matrix M' = P^{-1} M P: column a += column b, row b += row a.
inline void conjugate_step(BitMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (m.test(r, b)) m.flip(r, a);
  m.row(b) ^= m.row(a);
}

}  // namespace detail

/// Repeatedly cancels the differential entry of least U-exponent (ties broken
/// by source index, then target index). Entries with exponent above `max_eta`
/// are left alone; those generators end up in `unpaired`.
inline PairedBasis tower_decomposition(const ModuleMap& differential, int max_eta = INT_MAX) {
  const BasisPtr& basis = differential.source();
  if (!same_basis(basis, differential.target()) || differential.degree() != -1)
    throw Error("tower_decomposition: expects a differential (square, degree -1)");
  if (!compose(differential, differential).is_zero())
    throw Error("tower_decomposition: differential does not square to zero");

  const std::size_t n = basis->size();
  BitMatrix d = differential.bits();
  BitMatrix to_old = BitMatrix::identity(n);
  BitMatrix from_old = BitMatrix::identity(n);
  std::vector<bool> done(n, false);
  PairedBasis out;

  auto exponent = [&](std::size_t t, std::size_t s) { return *differential.exponent(t, s); };
  auto change = [&](std::size_t a, std::size_t b) {
    detail::conjugate_step(d, a, b);
    for (std::size_t r = 0; r < n; ++r)
      if (to_old.test(r, b)) to_old.flip(r, a);
    from_old.row(b) ^= from_old.row(a);
  };

  for (;;) {
    std::optional<std::tuple<int, std::size_t, std::size_t>> best;
    for (std::size_t s = 0; s < n; ++s) {
      if (done[s]) continue;
      for (std::size_t t = 0; t < n; ++t) {
        if (done[t] || !d.test(t, s)) continue;
        const auto cand = std::make_tuple(exponent(t, s), s, t);
        if (!best || cand < *best) best = cand;
      }
    }
    if (!best || std::get<0>(*best) > max_eta) break;
    const auto [eta, s0, t0] = *best;

    // t0' = t0 + sum U^{k_t - eta} t absorbs the rest of d(s0).
    for (std::size_t t = 0; t < n; ++t)
      if (t != t0 && d.test(t, s0)) change(t0, t);
    // s' = s + U^{k - eta} s0 removes t0 from every other boundary.
    for (std::size_t s = 0; s < n; ++s)
      if (s != s0 && d.test(t0, s)) change(s, s0);

    done[s0] = done[t0] = true;
    out.pairs.push_back({s0, t0, eta});
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    bool isolated = d.row(i).none() && d.column(i).none();
    (isolated ? out.nontorsion : out.unpaired).push_back(i);
  }

  out.basis = make_basis(basis->generators());
  out.to_old = ModuleMap::from_bits(out.basis, basis, 0, to_old);
  out.from_old = ModuleMap::from_bits(basis, out.basis, 0, from_old);
  out.differential = ModuleMap::from_bits(out.basis, out.basis, -1, d);
  return out;
}

}  // namespace iotahat
