#pragma once

// Named complexes and the Brieskorn-sphere table.

#include <algorithm>
#include <string>
#include <vector>

#include "iotahat/complex.hpp"
#include "iotahat/params.hpp"

namespace iotahat {

/// Three generators T0, T1, T2 in gradings 0, 0, 1 - 2i with omega T0 = T1
/// and d T2 = U^i T1.
inline AlmostIotaComplex x_complex(int i) {
  if (i < 1) throw Error("x_complex: index must be positive");
  return make_complex({{"T0", 0}, {"T1", 0}, {"T2", 1 - 2 * i}}, {{2, 1}}, {{0, 1}});
}

/// Five generators T-2 ... T2, isomorphic to its dual under T_i <-> T_-i.
/// omega^2 = U^2 (T-1 -> T1) is nonzero but null-homotopic (H T-1 = T2).
inline AlmostIotaComplex self_dual_complex() {
  return make_complex({{"T-2", 1}, {"T-1", -2}, {"T0", 0}, {"T1", 2}, {"T2", -1}},
                      {{1, 0}, {4, 3}},   // d T-1 = U^2 T-2, d T2 = U^2 T1
                      {{1, 2}, {2, 3}});  // omega T-1 = U T0, omega T0 = U T1
}

struct BrieskornEntry {
  int i = 0;
  std::string label;  // Sigma(2i+1, 4i+1, 4i+3)
  Params params;      // (-, i)
};

inline BrieskornEntry brieskorn(int i) {
  if (i < 1) throw Error("brieskorn: index must be positive");
  return {i,
          "Sigma(" + std::to_string(2 * i + 1) + "," + std::to_string(4 * i + 1) + "," + std::to_string(4 * i + 3) +
              ")",
          Params({-1, i})};
}

/// One term C(-, i) (negative = false) or C(+, -i) (negative = true).
struct SeifertTerm {
  bool negative = false;
  int i = 1;
  bool operator==(const SeifertTerm&) const = default;
};

struct SeifertSpanElement {
  std::vector<SeifertTerm> terms;
};

inline Params seifert_term_params(const SeifertTerm& t) {
  return t.negative ? Params({1, -t.i}) : Params({-1, t.i});
}

/// Concatenated parameters of a fully simplified element listed with
/// nonincreasing indices.
inline Params seifert_span_class(const SeifertSpanElement& e) {
  Params out;
  for (std::size_t k = 0; k < e.terms.size(); ++k) {
    const auto& t = e.terms[k];
    if (t.i < 1) throw Error("seifert_span_class: indices must be positive");
    if (k > 0 && e.terms[k - 1].i < t.i) throw Error("seifert_span_class: indices must be nonincreasing");
    const bool cancels = std::any_of(e.terms.begin(), e.terms.end(), [&](const SeifertTerm& o) {
      return o.i == t.i && o.negative != t.negative;
    });
    if (cancels) throw Error("seifert_span_class: element is not fully simplified");
    out = concat(out, seifert_term_params(t));
  }
  return out;
}

}  // namespace iotahat
