#pragma once

// The standard-complex representative of an almost iota-complex, computed
// symbol by symbol as the Z^!-greatest admissible continuation, and the group
// operations and homomorphisms it makes computable.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iotahat/complex.hpp"
#include "iotahat/morphism.hpp"
#include "iotahat/params.hpp"

namespace iotahat {

struct CandidateProbe {
  std::size_t position = 0;  // 1-based symbol index
  int symbol = 0;
  bool accepted = false;
};

struct RepresentativeTrace {
  std::vector<int> symbols;         // s_1, s_2, ..., ending with 0
  std::vector<Morphism> witnesses;  // one map per accepted symbol
  std::vector<CandidateProbe> log;  // every candidate tried, in order
  int search_bound = 0;             // largest |b| probed

  Params params() const {
    std::vector<int> s(symbols.begin(), symbols.end() - 1);
    return Params(std::move(s));
  }
};

/// Probes candidates for s_1, s_2, ... on the reduced, normalized model of `a`.
inline RepresentativeTrace s_invariants(const AlmostIotaComplex& a) {
  const AlmostIotaComplex model = reduced_model(a);
  const PreparedTarget target = prepare_target(model);
  const int span = model.basis->max_grading() - model.basis->min_grading();
  const int bound = span / 2 + 1;
  const std::size_t cap = 2 * a.size();

  RepresentativeTrace trace;
  trace.search_bound = bound;
  Params prefix;

  auto probe = [&](const Params& p, ShortMapKind kind) {
    auto m = find_short_map(p, target, kind);
    trace.log.push_back({p.size(), p.symbols().empty() ? 0 : p.symbols().back(), m.has_value()});
    return m;
  };

  for (;;) {
    if (prefix.size() >= cap) throw Error("s_invariants: length cap exceeded");
    if (prefix.is_standard()) {
      // Odd position: +, then 0 (stop), then -.
      if (auto m = probe(prefix.with(1), ShortMapKind::AugmentedShort)) {
        prefix = prefix.with(1);
        trace.symbols.push_back(1);
        trace.witnesses.push_back(std::move(*m));
        continue;
      }
      auto full = find_short_map(prefix, target, ShortMapKind::Full);
      trace.log.push_back({prefix.size() + 1, 0, full.has_value()});
      if (full) {
        trace.symbols.push_back(0);
        trace.witnesses.push_back(std::move(*full));
        return trace;
      }
      auto m = probe(prefix.with(-1), ShortMapKind::AugmentedShort);
      if (!m) throw Error("s_invariants: no admissible odd symbol (internal inconsistency)");
      prefix = prefix.with(-1);
      trace.symbols.push_back(-1);
      trace.witnesses.push_back(std::move(*m));
    } else {
      // Even position: 1, 2, ..., bound, then -bound, ..., -1.
      std::optional<int> chosen;
      std::vector<int> order;
      for (int b = 1; b <= bound; ++b) order.push_back(b);
      for (int b = bound; b >= 1; --b) order.push_back(-b);
      for (int b : order) {
        if (auto m = probe(prefix.with(b), ShortMapKind::StandardShort)) {
          chosen = b;
          trace.witnesses.push_back(std::move(*m));
          break;
        }
      }
      if (!chosen) throw Error("s_invariants: no admissible even symbol within the search bound");
      prefix = prefix.with(*chosen);
      trace.symbols.push_back(*chosen);
    }
  }
}

struct LocalEquivalence {
  Params params;
  Morphism to_complex;    // build(params) -> model
  Morphism from_complex;  // model -> build(params)
};

/// Representative together with local maps in both directions.
inline LocalEquivalence representative_with_witness(const AlmostIotaComplex& a) {
  const Params p = s_invariants(a).params();
  const AlmostIotaComplex model = reduced_model(a);
  const AlmostIotaComplex std_complex = build(p);
  auto there = find_map(std_complex, prepare_target(model), ShortMapKind::Full, Locality::Forwards, p);
  auto back = find_map(model, prepare_target(std_complex), ShortMapKind::Full, Locality::Forwards);
  if (!there || !back) throw Error("representative: local equivalence check failed for " + format_params(p));
  return {p, std::move(*there), std::move(*back)};
}

inline Params representative(const AlmostIotaComplex& a) { return representative_with_witness(a).params; }

inline Params group_sum(const Params& p, const Params& q) { return representative(tensor(build(p), build(q))); }

inline Params group_neg(const Params& p) { return representative(dual(build(p))); }

inline int order_compare(const Params& p, const Params& q) { return lex_compare(p, q); }

inline int order_compare(const AlmostIotaComplex& a, const AlmostIotaComplex& b) {
  return lex_compare(representative(a), representative(b));
}

inline int f_n(int n, const AlmostIotaComplex& a) { return phi(n, representative(a)); }

inline std::map<int, int> f_vec(const AlmostIotaComplex& a) { return phi_vector(representative(a)); }

inline Params shift_on_class(int n, const AlmostIotaComplex& a) { return shift(n, representative(a)); }

inline int pivot_on_class(const AlmostIotaComplex& a) { return pivot(representative(a)); }

/// Dimension of ker/im of omega on C/U, per grading (zero entries omitted).
inline std::map<int, int> omega_homology(const AlmostIotaComplex& a) {
  if (!has_reduced_differential(a)) throw Error("omega_homology: complex is not reduced");
  const ModuleMap w = mod_u_reduce(a.omega);
  if (!compose(w, w).is_zero()) throw Error("omega_homology: omega does not square to zero mod U");
  std::map<int, std::vector<std::size_t>> by_grading;
  for (std::size_t i = 0; i < a.size(); ++i) by_grading[a.basis->grading(i)].push_back(i);
  std::map<int, int> out;
  for (const auto& [g, idx] : by_grading) {
    BitMatrix block(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) block.set(r, c, w.test(idx[r], idx[c]));
    const int dim = static_cast<int>(idx.size()) - 2 * static_cast<int>(block.rank());
    if (dim != 0) out[g] = dim;
  }
  return out;
}

}  // namespace iotahat
