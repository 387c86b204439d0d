#pragma once

// Almost iota-complexes: a free graded F2[U]-complex with an endomorphism
// omega = 1 + iota-bar that is a chain map and squares to zero up to homotopy,
// both modulo U.

#include <algorithm>
#include <climits>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iotahat/graded.hpp"
#include "iotahat/towers.hpp"

namespace iotahat {

struct AlmostIotaComplex {
  BasisPtr basis;
  ModuleMap differential;  // degree -1
  ModuleMap omega;         // degree 0
  bool reduced_flag = false;
  bool augmented = false;  // two nontorsion towers allowed

  std::size_t size() const { return basis->size(); }
};

/// Arrow by generator index; the U-power is forced by the gradings.
struct Arrow {
  std::size_t from = 0;
  std::size_t to = 0;
};

inline AlmostIotaComplex make_complex(std::vector<Generator> gens, const std::vector<Arrow>& d,
                                      const std::vector<Arrow>& omega) {
  AlmostIotaComplex c;
  c.basis = make_basis(std::move(gens));
  c.differential = ModuleMap(c.basis, c.basis, -1);
  c.omega = ModuleMap(c.basis, c.basis, 0);
  for (const auto& a : d) c.differential.flip(a.to, a.from);
  for (const auto& a : omega) c.omega.flip(a.to, a.from);
  return c;
}

/// True when every differential entry carries a positive U-power.
inline bool has_reduced_differential(const AlmostIotaComplex& c) { return mod_u_reduce(c.differential).is_zero(); }

// ---------------------------------------------------------------------------
// Homotopy search

/// Looks for H of degree +1 from `src` to `tgt` with d_tgt H + H d_src = m.
/// With `mod_u`, the identity is only required modulo U and H is restricted to
/// exponent-zero entries.
inline std::optional<ModuleMap> find_homotopy(const ModuleMap& d_src, const ModuleMap& d_tgt, const ModuleMap& m,
                                              bool mod_u) {
  const BasisPtr& src = m.source();
  const BasisPtr& tgt = m.target();
  const ModuleMap ds = mod_u ? mod_u_reduce(d_src) : d_src;
  const ModuleMap dt = mod_u ? mod_u_reduce(d_tgt) : d_tgt;
  const ModuleMap rhs = mod_u ? mod_u_reduce(m) : m;
  ModuleMap h(src, tgt, 1);

  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  std::vector<std::vector<long>> index(tgt->size(), std::vector<long>(src->size(), -1));
  for (std::size_t s = 0; s < src->size(); ++s)
    for (std::size_t t = 0; t < tgt->size(); ++t) {
      auto k = h.exponent(t, s);
      if (!k || (mod_u && *k != 0)) continue;
      index[t][s] = static_cast<long>(unknowns.size());
      unknowns.emplace_back(t, s);
    }

  LinearSystem sys(unknowns.size());
  for (std::size_t s = 0; s < src->size(); ++s)
    for (std::size_t t = 0; t < tgt->size(); ++t) {
      auto k = m.exponent(t, s);
      if (!k || (mod_u && *k != 0)) continue;
      BitVector eq(unknowns.size());
      // (d_tgt H)[t][s] = sum_u d_tgt[t][u] H[u][s]
      dt.bits().row(t).for_each_set([&](std::size_t u) {
        if (index[u][s] >= 0) eq.flip(static_cast<std::size_t>(index[u][s]));
      });
      // (H d_src)[t][s] = sum_v H[t][v] d_src[v][s]
      for (std::size_t v = 0; v < src->size(); ++v)
        if (ds.test(v, s) && index[t][v] >= 0) eq.flip(static_cast<std::size_t>(index[t][v]));
      if (eq.none() && !rhs.test(t, s)) continue;
      sys.add_equation(std::move(eq), rhs.test(t, s));
    }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  sol->assignment.for_each_set([&](std::size_t i) { h.set(unknowns[i].first, unknowns[i].second); });
  return h;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  bool square_zero = false;
  bool rank_one = false;          // exactly one nontorsion tower (skipped for augmented)
  bool even_tower = false;        // its top lies in even grading
  bool omega_chain_mod_u = false;
  bool omega_square_null = false; // omega^2 homotopic to zero mod U
  bool reduced_ok = false;        // reduced_flag is truthful
  bool normalized = false;        // nontorsion top at grading zero (informational)
  std::optional<int> nontorsion_top;
  std::vector<Tower> towers;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

inline ValidationReport validate(const AlmostIotaComplex& c) {
  ValidationReport r;
  if (!c.basis || c.basis->empty()) {
    r.failures.push_back("empty basis");
    return r;
  }
  const auto& d = c.differential;
  r.square_zero = compose(d, d).is_zero();
  if (!r.square_zero) r.failures.push_back("differential does not square to zero");

  if (r.square_zero) {
    const PairedBasis pb = tower_decomposition(d);
    r.towers = pb.towers();
    const std::size_t count = pb.nontorsion.size();
    if (!c.augmented) {
      r.rank_one = count == 1;
      if (!r.rank_one)
        r.failures.push_back("localized homology has rank " + std::to_string(count) + ", expected 1");
    } else {
      r.rank_one = true;
    }
    r.even_tower = count > 0;
    int top = INT_MIN;
    // An augmented complex's second tower sits at the pivot, which may be odd.
    for (auto x : pb.nontorsion) {
      const int g = pb.basis->grading(x);
      if (g % 2 != 0 && (!c.augmented || x == pb.nontorsion.front())) r.even_tower = false;
      top = std::max(top, g);
    }
    if (count > 0) r.nontorsion_top = c.augmented ? pb.basis->grading(pb.nontorsion.front()) : top;
    if (count > 0 && !r.even_tower) r.failures.push_back("nontorsion tower in odd grading");
    r.normalized = r.nontorsion_top && *r.nontorsion_top == 0;
  }

  r.omega_chain_mod_u = mod_u_reduce(compose(c.omega, d) + compose(d, c.omega)).is_zero();
  if (!r.omega_chain_mod_u) r.failures.push_back("omega does not commute with the differential mod U");

  const ModuleMap sq = compose(c.omega, c.omega);
  r.omega_square_null = mod_u_reduce(sq).is_zero() || find_homotopy(d, d, sq, true).has_value();
  if (!r.omega_square_null) r.failures.push_back("omega^2 is not null-homotopic mod U");

  r.reduced_ok = !c.reduced_flag || has_reduced_differential(c);
  if (!r.reduced_ok) r.failures.push_back("flagged reduced but a differential entry has U-power 0");
  return r;
}

// ---------------------------------------------------------------------------
// Grading normalization

inline AlmostIotaComplex shift_grading(const AlmostIotaComplex& c, int delta) {
  if (delta == 0) return c;
  AlmostIotaComplex out = c;
  out.basis = std::make_shared<const GradedBasis>(c.basis->shifted(delta));
  out.differential = c.differential.rebased(out.basis, out.basis, -1);
  out.omega = c.omega.rebased(out.basis, out.basis, 0);
  return out;
}

/// Shift so the top of the nontorsion tower sits in grading zero.
inline AlmostIotaComplex normalize_grading(const AlmostIotaComplex& c) {
  const PairedBasis pb = tower_decomposition(c.differential);
  if (pb.nontorsion.empty()) throw Error("normalize_grading: no nontorsion tower");
  if (!c.augmented && pb.nontorsion.size() != 1) throw Error("normalize_grading: localized homology is not rank one");
  const int top = pb.basis->grading(pb.nontorsion.front());
  if (top % 2 != 0) throw Error("normalize_grading: nontorsion tower in odd grading");
  return shift_grading(c, -top);
}

// ---------------------------------------------------------------------------
// Reduction

struct Reduction {
  AlmostIotaComplex reduced;
  ModuleMap forward;   // original -> reduced
  ModuleMap backward;  // reduced -> original
  ModuleMap homotopy;  // on the original: id + backward*forward = dH + Hd
};

/// omega_2 = f omega_1 g; the identity part cancels because f g = id.
inline ModuleMap transfer_iota(const AlmostIotaComplex& c1, const AlmostIotaComplex& c2, const ModuleMap& f,
                               const ModuleMap& g) {
  if (!same_basis(f.source(), c1.basis) || !same_basis(f.target(), c2.basis) || !same_basis(g.source(), c2.basis) ||
      !same_basis(g.target(), c1.basis))
    throw Error("transfer_iota: maps do not connect the two complexes");
  const ModuleMap fg_plus_id = compose(f, g) + ModuleMap::identity(c2.basis);
  if (!find_homotopy(c2.differential, c2.differential, fg_plus_id, false))
    throw Error("transfer_iota: f g is not homotopic to the identity");
  const ModuleMap gf_plus_id = compose(g, f) + ModuleMap::identity(c1.basis);
  if (!find_homotopy(c1.differential, c1.differential, gf_plus_id, false))
    throw Error("transfer_iota: g f is not homotopic to the identity");
  // 1 + f (1 + omega) g = (1 + f g) + f omega g
  return fg_plus_id + compose(f, compose(c1.omega, g));
}

inline Reduction reduce(const AlmostIotaComplex& c) {
  const PairedBasis pb = tower_decomposition(c.differential, 0);
  std::vector<std::size_t> keep;
  std::vector<bool> cancelled(c.size(), false);
  for (const auto& p : pb.pairs) {
    if (p.eta != 0) throw Error("reduce: internal error, positive pair under eta cap 0");
    cancelled[p.y] = cancelled[p.z] = true;
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!cancelled[i]) keep.push_back(i);

  std::vector<Generator> gens;
  for (auto i : keep) gens.push_back((*c.basis)[i]);
  const BasisPtr rb = make_basis(std::move(gens));

  BitMatrix project(keep.size(), c.size());
  for (std::size_t r = 0; r < keep.size(); ++r) project.set(r, keep[r]);
  const BitMatrix include = project.transposed();

  Reduction out;
  out.forward = ModuleMap::from_bits(c.basis, rb, 0, project * pb.from_old.bits());
  out.backward = ModuleMap::from_bits(rb, c.basis, 0, pb.to_old.bits() * include);

  BitMatrix h_new(c.size(), c.size());
  for (const auto& p : pb.pairs) h_new.set(p.y, p.z);
  out.homotopy =
      ModuleMap::from_bits(c.basis, c.basis, 1, pb.to_old.bits() * h_new * pb.from_old.bits());

  out.reduced.basis = rb;
  out.reduced.differential = ModuleMap::from_bits(rb, rb, -1, project * pb.differential.bits() * include);
  out.reduced.omega = compose(out.forward, compose(c.omega, out.backward));
  out.reduced.reduced_flag = true;
  out.reduced.augmented = c.augmented;
  return out;
}

// ---------------------------------------------------------------------------
// Dual, tensor product, direct sum

inline std::string dual_name(const std::string& name) {
  if (!name.empty() && name.back() == '*') return name.substr(0, name.size() - 1);
  return name + "*";
}

/// Dual complex (gradings negated, maps transposed), then normalized.
inline AlmostIotaComplex dual(const AlmostIotaComplex& c) {
  std::vector<Generator> gens;
  for (const auto& g : c.basis->generators()) gens.push_back({dual_name(g.name), -g.grading});
  AlmostIotaComplex out;
  out.basis = make_basis(std::move(gens));
  out.differential = transpose(c.differential, out.basis, out.basis);
  out.omega = transpose(c.omega, out.basis, out.basis);
  out.reduced_flag = c.reduced_flag;
  out.augmented = c.augmented;
  if (c.augmented) return out;
  return normalize_grading(out);
}

inline AlmostIotaComplex tensor(const AlmostIotaComplex& a, const AlmostIotaComplex& b) {
  std::vector<Generator> gens;
  for (const auto& x : a.basis->generators())
    for (const auto& y : b.basis->generators()) gens.push_back({x.name + "|" + y.name, x.grading + y.grading});
  AlmostIotaComplex out;
  out.basis = make_basis(std::move(gens));
  const BitMatrix ia = BitMatrix::identity(a.size());
  const BitMatrix ib = BitMatrix::identity(b.size());
  const BitMatrix& da = a.differential.bits();
  const BitMatrix& db = b.differential.bits();
  const BitMatrix& wa = a.omega.bits();
  const BitMatrix& wb = b.omega.bits();
  out.differential = ModuleMap::from_bits(out.basis, out.basis, -1, kronecker(da, ib) ^ kronecker(ia, db));
  out.omega = ModuleMap::from_bits(out.basis, out.basis, 0,
                                   kronecker(wa, ib) ^ kronecker(ia, wb) ^ kronecker(wa, wb));
  out.reduced_flag = a.reduced_flag && b.reduced_flag;
  return out;
}

/// Block sum of two complexes (not an almost iota-complex in general; used to
/// attach acyclic or torsion summands).
inline AlmostIotaComplex direct_sum(const AlmostIotaComplex& a, const AlmostIotaComplex& b) {
  std::vector<Generator> gens = a.basis->generators();
  for (const auto& g : b.basis->generators()) gens.push_back(g);
  AlmostIotaComplex out;
  out.basis = make_basis(std::move(gens));
  const std::size_t n = a.size();
  BitMatrix d(out.size(), out.size()), w(out.size(), out.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t s = 0; s < a.size(); ++s) {
      d.set(r, s, a.differential.test(r, s));
      w.set(r, s, a.omega.test(r, s));
    }
  for (std::size_t r = 0; r < b.size(); ++r)
    for (std::size_t s = 0; s < b.size(); ++s) {
      d.set(n + r, n + s, b.differential.test(r, s));
      w.set(n + r, n + s, b.omega.test(r, s));
    }
  out.differential = ModuleMap::from_bits(out.basis, out.basis, -1, d);
  out.omega = ModuleMap::from_bits(out.basis, out.basis, 0, w);
  out.reduced_flag = a.reduced_flag && b.reduced_flag;
  return out;
}

/// Conjugates both structure maps by an invertible degree-0 change of basis
/// (columns of `p` are the new generators written in the old ones).
inline AlmostIotaComplex change_basis(const AlmostIotaComplex& c, const ModuleMap& p) {
  auto inv = p.bits().inverse();
  if (!inv) throw Error("change_basis: matrix is not invertible");
  AlmostIotaComplex out = c;
  out.differential = ModuleMap::from_bits(c.basis, c.basis, -1, *inv * c.differential.bits() * p.bits());
  out.omega = ModuleMap::from_bits(c.basis, c.basis, 0, *inv * c.omega.bits() * p.bits());
  return out;
}

/// Isomorphism of labeled complexes: identical gradings and structure maps
/// after matching generators by position.
inline bool identical(const AlmostIotaComplex& a, const AlmostIotaComplex& b) {
  return *a.basis == *b.basis && a.differential.bits() == b.differential.bits() && a.omega.bits() == b.omega.bits();
}

}  // namespace iotahat
