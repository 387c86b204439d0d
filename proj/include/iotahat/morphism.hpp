#pragma once

// Almost iota-morphisms between complexes: verification of the defining
// conditions, existence search as a GF(2) linear system, and the extension and
// merge constructions for short maps out of standard and augmented complexes.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iotahat/complex.hpp"
#include "iotahat/params.hpp"
#include "iotahat/towers.hpp"

namespace iotahat {

enum class ShortMapKind {
  Full,            // every condition
  StandardShort,   // omega-condition waived on the final generator
  AugmentedShort,  // differential condition waived on the final generator
};

enum class Locality { None, Forwards, Backwards, Totally };

inline const char* to_string(ShortMapKind k) {
  switch (k) {
    case ShortMapKind::Full: return "full";
    case ShortMapKind::StandardShort: return "standard-short";
    case ShortMapKind::AugmentedShort: return "augmented-short";
  }
  return "?";
}

struct Morphism {
  AlmostIotaComplex source;
  AlmostIotaComplex target;
  ModuleMap map;  // degree 0, source -> target
  ShortMapKind kind = ShortMapKind::Full;
  std::optional<Params> source_params;
  bool is_chain = false;        // chain condition (with the kind's waiver)
  bool omega_ok_mod_u = false;  // omega condition mod U (with the kind's waiver)
  bool is_local = false;        // forwards locality
  bool is_backwards_local = false;
};

struct MorphismReport {
  bool chain_ok = false;
  bool omega_ok = false;
  bool forwards_local = false;
  bool backwards_local = false;
  std::optional<ModuleMap> homotopy;  // mod-U witness for the omega condition
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// ---------------------------------------------------------------------------
// Nontorsion bookkeeping

/// Cycles representing the tops of the nontorsion towers, ordered by the
/// position of their generator (for built complexes: T_0 first, T_k last).
inline std::vector<BitVector> nontorsion_cycles(const AlmostIotaComplex& c) {
  const PairedBasis pb = tower_decomposition(c.differential);
  std::vector<BitVector> out;
  for (auto x : pb.nontorsion) out.push_back(pb.to_old.bits().column(x));
  return out;
}

/// Linear functional that reads off the coefficient of the nontorsion
/// generator: on a cycle it is 1 exactly when the class is U-nontorsion.
inline BitVector nontorsion_functional(const AlmostIotaComplex& c) {
  const PairedBasis pb = tower_decomposition(c.differential);
  if (pb.nontorsion.size() != 1) throw Error("target must have exactly one nontorsion tower");
  return pb.from_old.bits().row(pb.nontorsion.front());
}

// ---------------------------------------------------------------------------
// Verification

namespace detail {

inline void clear_column(BitMatrix& m, std::size_t col) {
  for (std::size_t r = 0; r < m.rows(); ++r) m.set(r, col, false);
}

inline bool locality_of(const BitMatrix& f, const BitVector& functional, const BitVector& cycle) {
  return dot(functional, f.apply(cycle));
}

}  // namespace detail

inline MorphismReport verify(const AlmostIotaComplex& source, const AlmostIotaComplex& target, const ModuleMap& f,
                             ShortMapKind kind, Locality required = Locality::Forwards) {
  MorphismReport r;
  if (!same_basis(f.source(), source.basis) || !same_basis(f.target(), target.basis) || f.degree() != 0)
    throw Error("verify: map does not connect the given complexes");
  const std::size_t last = source.size() - 1;

  BitMatrix chain = (target.differential.bits() * f.bits()) ^ (f.bits() * source.differential.bits());
  if (kind == ShortMapKind::AugmentedShort) detail::clear_column(chain, last);
  r.chain_ok = chain.is_zero();
  if (!r.chain_ok) r.failures.push_back("map does not commute with the differential");

  ModuleMap defect = compose(target.omega, f) + compose(f, source.omega);
  const bool reduced = has_reduced_differential(source) && has_reduced_differential(target);
  if (kind == ShortMapKind::StandardShort) {
    BitMatrix b = defect.bits();
    detail::clear_column(b, last);
    defect = ModuleMap::from_bits(defect.source(), defect.target(), 0, std::move(b));
  }
  if (mod_u_reduce(defect).is_zero()) {
    r.omega_ok = true;
  } else if (!reduced) {
    if (kind != ShortMapKind::Full) throw Error("verify: short maps require reduced complexes");
    r.homotopy = find_homotopy(source.differential, target.differential, defect, true);
    r.omega_ok = r.homotopy.has_value();
  }
  if (!r.omega_ok) r.failures.push_back("map does not commute with omega mod U");

  const auto cycles = nontorsion_cycles(source);
  const BitVector functional = nontorsion_functional(target);
  if (!cycles.empty()) {
    r.forwards_local = detail::locality_of(f.bits(), functional, cycles.front());
    if (source.augmented && cycles.size() > 1)
      r.backwards_local = detail::locality_of(f.bits(), functional, cycles.back());
  }
  const bool want_fwd = required == Locality::Forwards || required == Locality::Totally;
  const bool want_bwd = required == Locality::Backwards || required == Locality::Totally;
  if (want_fwd && !r.forwards_local) r.failures.push_back("map is not (forwards) local");
  if (want_bwd && !r.backwards_local) r.failures.push_back("map is not backwards local");
  return r;
}

inline Morphism make_morphism(const AlmostIotaComplex& source, const AlmostIotaComplex& target, ModuleMap f,
                              ShortMapKind kind, std::optional<Params> params = std::nullopt) {
  const MorphismReport r = verify(source, target, f, kind, Locality::None);
  Morphism m{source, target, std::move(f), kind, std::move(params)};
  m.is_chain = r.chain_ok;
  m.omega_ok_mod_u = r.omega_ok;
  m.is_local = r.forwards_local;
  m.is_backwards_local = r.backwards_local;
  return m;
}

// ---------------------------------------------------------------------------
// Search

/// Target data reused across many searches.
struct PreparedTarget {
  AlmostIotaComplex complex;
  BitVector functional;
};

inline PreparedTarget prepare_target(const AlmostIotaComplex& c) {
  if (!has_reduced_differential(c)) throw Error("map search: target is not reduced");
  const PairedBasis pb = tower_decomposition(c.differential);
  if (pb.nontorsion.size() != 1) throw Error("map search: target must have one nontorsion tower");
  if (pb.basis->grading(pb.nontorsion.front()) != 0) throw Error("map search: target is not normalized");
  return {c, pb.from_old.bits().row(pb.nontorsion.front())};
}

/// Decides whether a map of the given kind and locality exists; returns the
/// lexicographically least one (unknowns ordered by source, then target).
inline std::optional<Morphism> find_map(const AlmostIotaComplex& source, const PreparedTarget& prepared,
                                        ShortMapKind kind, Locality locality,
                                        std::optional<Params> source_params = std::nullopt) {
  const AlmostIotaComplex& target = prepared.complex;
  if (!has_reduced_differential(source)) throw Error("map search: source is not reduced");
  const std::size_t ns = source.size(), nt = target.size(), last = ns - 1;

  ModuleMap f(source.basis, target.basis, 0);
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  std::vector<std::vector<long>> index(nt, std::vector<long>(ns, -1));
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t t = 0; t < nt; ++t)
      if (f.admissible(t, s)) {
        index[t][s] = static_cast<long>(unknowns.size());
        unknowns.emplace_back(t, s);
      }
  auto var = [&](std::size_t t, std::size_t s) { return index[t][s]; };

  LinearSystem sys(unknowns.size());
  const BitMatrix& dt = target.differential.bits();
  const BitMatrix& ds = source.differential.bits();
  const BitMatrix wt = mod_u_reduce(target.omega).bits();
  const BitMatrix ws = mod_u_reduce(source.omega).bits();
  ModuleMap d_shape(source.basis, target.basis, -1);

  for (std::size_t s = 0; s < ns; ++s) {
    const bool waive_d = kind == ShortMapKind::AugmentedShort && s == last;
    const bool waive_w = kind == ShortMapKind::StandardShort && s == last;
    for (std::size_t t = 0; t < nt; ++t) {
      if (!waive_d && d_shape.admissible(t, s)) {
        BitVector eq(unknowns.size());
        dt.row(t).for_each_set([&](std::size_t u) {
          if (var(u, s) >= 0) eq.flip(static_cast<std::size_t>(var(u, s)));
        });
        for (std::size_t v = 0; v < ns; ++v)
          if (ds.test(v, s) && var(t, v) >= 0) eq.flip(static_cast<std::size_t>(var(t, v)));
        sys.add_equation(std::move(eq), false);
      }
      if (!waive_w && target.basis->grading(t) == source.basis->grading(s)) {
        BitVector eq(unknowns.size());
        wt.row(t).for_each_set([&](std::size_t u) {
          if (target.basis->grading(u) == source.basis->grading(s)) eq.flip(static_cast<std::size_t>(var(u, s)));
        });
        for (std::size_t v = 0; v < ns; ++v)
          if (ws.test(v, s) && target.basis->grading(t) == source.basis->grading(v))
            eq.flip(static_cast<std::size_t>(var(t, v)));
        sys.add_equation(std::move(eq), false);
      }
    }
  }

  if (locality != Locality::None) {
    const auto cycles = nontorsion_cycles(source);
    std::vector<BitVector> required;
    if (cycles.empty()) throw Error("map search: source has no nontorsion tower");
    if (locality == Locality::Forwards || locality == Locality::Totally) required.push_back(cycles.front());
    if (locality == Locality::Backwards || locality == Locality::Totally) {
      if (cycles.size() < 2) throw Error("map search: backwards locality needs a second nontorsion tower");
      required.push_back(cycles.back());
    }
    for (const auto& cyc : required) {
      BitVector eq(unknowns.size());
      for (std::size_t i = 0; i < unknowns.size(); ++i)
        if (prepared.functional.test(unknowns[i].first) && cyc.test(unknowns[i].second)) eq.set(i);
      sys.add_equation(std::move(eq), true);
    }
  }

  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  sol->assignment.for_each_set([&](std::size_t i) { f.set(unknowns[i].first, unknowns[i].second); });
  Morphism m = make_morphism(source, target, std::move(f), kind, std::move(source_params));
  if (!m.is_chain || !m.omega_ok_mod_u) throw Error("map search: internal error, solution fails verification");
  return m;
}

inline std::optional<Morphism> find_map(const AlmostIotaComplex& source, const AlmostIotaComplex& target,
                                        ShortMapKind kind, Locality locality) {
  return find_map(source, prepare_target(target), kind, locality);
}

/// Map out of the complex built from `p`.
inline std::optional<Morphism> find_short_map(const Params& p, const PreparedTarget& target, ShortMapKind kind,
                                              Locality locality = Locality::Forwards) {
  return find_map(build(p), target, kind, locality, p);
}

/// Reduced, normalized model of a complex.
inline AlmostIotaComplex reduced_model(const AlmostIotaComplex& c) {
  return normalize_grading(reduce(c).reduced);
}

/// a <= b: a local map a -> b exists.
inline bool leq(const AlmostIotaComplex& a, const AlmostIotaComplex& b) {
  return find_map(reduced_model(a), prepare_target(reduced_model(b)), ShortMapKind::Full, Locality::Forwards)
      .has_value();
}

// ---------------------------------------------------------------------------
// Extending short maps

struct Extension {
  Params params;
  Morphism map;
};

/// Extends a short map out of a standard complex by appending (-,-1) pairs
/// until the omega-condition holds on the final generator.
inline Extension extend_short(const Morphism& f) {
  if (!f.source_params || !f.source_params->is_standard())
    throw Error("extend_short: source must be a standard complex given by parameters");
  const AlmostIotaComplex& target = f.target;
  if (!has_reduced_differential(target)) throw Error("extend_short: target is not reduced");
  if (!f.is_chain) throw Error("extend_short: input is not a chain map");

  Params p = *f.source_params;
  std::vector<BitVector> cols;
  for (std::size_t s = 0; s < f.map.source()->size(); ++s) cols.push_back(f.map.bits().column(s));
  std::vector<int> grading = param_gradings(p);

  const int span = target.basis->max_grading() - target.basis->min_grading();
  for (int guard = 0;; ++guard) {
    const BitVector tau = target.omega.bits().apply(cols.back());
    bool nonzero_mod_u = false;
    tau.for_each_set([&](std::size_t t) {
      if (target.basis->grading(t) == grading.back()) nonzero_mod_u = true;
    });
    if (!nonzero_mod_u) break;
    if (guard > span + 2) throw Error("extend_short: iteration bound exceeded");
    // d(tau) = U * sigma with sigma one grading above tau; the support bits agree.
    const BitVector sigma = target.differential.bits().apply(tau);
    p = p.with(-1).with(-1);
    cols.push_back(tau);
    cols.push_back(sigma);
    grading = param_gradings(p);
  }

  const AlmostIotaComplex src = build(p);
  BitMatrix bits(target.size(), src.size());
  for (std::size_t s = 0; s < cols.size(); ++s)
    cols[s].for_each_set([&](std::size_t t) { bits.set(t, s); });
  Morphism out = make_morphism(src, target, ModuleMap::from_bits(src.basis, target.basis, 0, std::move(bits)),
                               ShortMapKind::Full, p);
  if (!out.is_chain || !out.omega_ok_mod_u) throw Error("extend_short: internal error, extension fails verification");
  return {p, out};
}

// ---------------------------------------------------------------------------
// Shared suffixes and merging short maps

/// Smallest indices (p, q) at which the complexes of `p` and `q` share a
/// suffix, or nullopt.
inline std::optional<std::pair<std::size_t, std::size_t>> shared_suffix(const Params& p, const Params& q) {
  if (p.is_standard() != q.is_standard()) return std::nullopt;
  if (pivot(p) != pivot(q)) return std::nullopt;
  std::size_t common = 0;
  while (common < p.size() && common < q.size() &&
         p.symbols()[p.size() - 1 - common] == q.symbols()[q.size() - 1 - common])
    ++common;
  return std::make_pair(p.size() - common, q.size() - common);
}

inline int sign_of(int x) { return (x > 0) - (x < 0); }

/// Sum of f and f' along the shared suffix starting at T_p and T'_q, completed
/// at T_{p-1}; requires t_p >! t'_q.
inline Morphism merge(const Morphism& f, const Morphism& g, std::size_t p_idx, std::size_t q_idx) {
  if (!f.source_params || !g.source_params) throw Error("merge: sources must be given by parameters");
  if (!same_basis(f.target.basis, g.target.basis)) throw Error("merge: maps have different targets");
  const Params& p = *f.source_params;
  const Params& q = *g.source_params;
  if (p.is_standard() != q.is_standard()) throw Error("merge: complexes of different parity");
  if (p_idx > p.size() || q_idx > q.size() || p.size() - p_idx != q.size() - q_idx)
    throw Error("merge: suffix indices out of range");
  for (std::size_t i = 1; p_idx + i <= p.size(); ++i)
    if (p.at(p_idx + i) != q.at(q_idx + i)) throw Error("merge: complexes do not share this suffix");
  const std::vector<int> gp = param_gradings(p), gq = param_gradings(q);
  if (gp[p_idx] != gq[q_idx]) throw Error("merge: suffix gradings differ");
  const int tp = p.at(p_idx), tq = q.at(q_idx);
  if (compare_bang(tp, tq) <= 0) throw Error("merge: requires t_p >! t'_q");

  BitMatrix bits = f.map.bits();
  for (std::size_t i = p_idx; i <= p.size(); ++i) {
    const BitVector extra = g.map.bits().column(i - p_idx + q_idx);
    extra.for_each_set([&](std::size_t t) { bits.flip(t, i); });
  }
  if (p_idx >= 1 && sign_of(tp) != 0 && sign_of(tp) == sign_of(tq)) {
    const int m = std::abs(tp - tq);
    if (gq[q_idx - 1] - 2 * m != gp[p_idx - 1]) throw Error("merge: internal error, correction term has wrong grading");
    g.map.bits().column(q_idx - 1).for_each_set([&](std::size_t t) { bits.flip(t, p_idx - 1); });
  }
  Morphism out = make_morphism(f.source, f.target, ModuleMap::from_bits(f.source.basis, f.target.basis, 0, bits),
                               f.kind, p);
  if (!out.is_chain || !out.omega_ok_mod_u) throw Error("merge: internal error, merged map fails verification");
  return out;
}

// ---------------------------------------------------------------------------
// Contraction C (x) C^dual -> C(0)

inline bool contraction_check(const AlmostIotaComplex& c) {
  std::vector<Generator> gens;
  for (const auto& g : c.basis->generators()) gens.push_back({dual_name(g.name), -g.grading});
  AlmostIotaComplex dc;
  dc.basis = make_basis(std::move(gens));
  dc.differential = transpose(c.differential, dc.basis, dc.basis);
  dc.omega = transpose(c.omega, dc.basis, dc.basis);
  const AlmostIotaComplex src = tensor(c, dc);
  const AlmostIotaComplex unit = build(Params{});

  const std::size_t n = c.size();
  ModuleMap contraction(src.basis, unit.basis, 0);
  for (std::size_t i = 0; i < n; ++i) contraction.set(0, i * n + i);
  const MorphismReport r = verify(src, unit, contraction, ShortMapKind::Full, Locality::Forwards);
  return r.ok();
}

}  // namespace iotahat
