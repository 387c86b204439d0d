#pragma once

// Explicit paired basis for the tensor product of two standard complexes:
// x00, and for each index pair the arrows d y_ij = U^eta_ij z_ij and
// d upsilon_ij = U^eta_ij zeta_ij.

#include <algorithm>
#include <string>
#include <vector>

#include "iotahat/complex.hpp"
#include "iotahat/params.hpp"

namespace iotahat {

struct StandardPair {
  std::size_t y = 0, z = 0;  // generator indices in the built complex
  int eta = 0;
};

/// Pairs of a standard complex: (T_{2i-1}, T_{2i}) or (T_{2i}, T_{2i-1}).
inline std::vector<StandardPair> standard_pairs(const Params& p) {
  if (!p.is_standard()) throw Error("standard_pairs: expects a standard sequence");
  std::vector<StandardPair> out;
  for (std::size_t i = 1; 2 * i <= p.size(); ++i) {
    const int b = p.at(2 * i);
    if (b < 0)
      out.push_back({2 * i - 1, 2 * i, -b});
    else
      out.push_back({2 * i, 2 * i - 1, b});
  }
  return out;
}

struct TensorArrow {
  std::string name;  // "y_ij" or "upsilon_ij"
  std::size_t i = 0, j = 0;
  Element source;  // y_ij or upsilon_ij
  Element target;  // z_ij or zeta_ij
  int eta = 0;
};

struct PairedTensorBasis {
  AlmostIotaComplex complex;  // tensor(build(p1), build(p2))
  Element x00;
  std::vector<TensorArrow> arrows;

  /// All arrows satisfy d(source) = U^eta target exactly.
  bool relations_hold() const {
    return std::all_of(arrows.begin(), arrows.end(), [&](const TensorArrow& a) {
      return apply(complex.differential, a.source) == a.target.times_u(a.eta);
    });
  }

  /// The listed elements form a homogeneous basis over F2[U].
  bool is_basis() const {
    std::vector<const Element*> elems{&x00};
    for (const auto& a : arrows) {
      elems.push_back(&a.source);
      elems.push_back(&a.target);
    }
    const std::size_t n = complex.size();
    if (elems.size() != n) return false;
    std::vector<Generator> gens;
    BitMatrix cols(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto g = elems[k]->grading(*complex.basis);
      if (!g) return false;
      gens.push_back({"e" + std::to_string(k), *g});
      elems[k]->bits(n).for_each_set([&](std::size_t r) { cols.set(r, k); });
    }
    auto inv = cols.inverse();
    if (!inv) return false;
    try {
      const BasisPtr nb = make_basis(std::move(gens));
      ModuleMap::from_bits(nb, complex.basis, 0, cols);
      ModuleMap::from_bits(complex.basis, nb, 0, *inv);
    } catch (const Error&) {
      return false;
    }
    return true;
  }
};

inline PairedTensorBasis paired_tensor_basis(const Params& p1, const Params& p2) {
  PairedTensorBasis out;
  const AlmostIotaComplex c1 = build(p1), c2 = build(p2);
  out.complex = tensor(c1, c2);
  const std::size_t n2 = c2.size();
  const auto pairs1 = standard_pairs(p1), pairs2 = standard_pairs(p2);
  auto at = [&](std::size_t a, std::size_t b, int u = 0) { return Element{{a * n2 + b, u}}; };

  out.x00 = at(0, 0);
  for (std::size_t i = 1; i <= pairs1.size(); ++i) {
    const auto& q = pairs1[i - 1];
    out.arrows.push_back({"y_" + std::to_string(i) + "0", i, 0, at(q.y, 0), at(q.z, 0), q.eta});
  }
  for (std::size_t j = 1; j <= pairs2.size(); ++j) {
    const auto& q = pairs2[j - 1];
    out.arrows.push_back({"y_0" + std::to_string(j), 0, j, at(0, q.y), at(0, q.z), q.eta});
  }
  for (std::size_t i = 1; i <= pairs1.size(); ++i)
    for (std::size_t j = 1; j <= pairs2.size(); ++j) {
      const auto& a = pairs1[i - 1];
      const auto& b = pairs2[j - 1];
      const std::string ij = std::to_string(i) + std::to_string(j);
      const int eta = std::min(a.eta, b.eta);
      const Element z = at(a.z, b.z);
      Element y, zeta;
      if (a.eta >= b.eta) {
        y = at(a.z, b.y);
        zeta = at(a.z, b.y, a.eta - b.eta) + at(a.y, b.z);
      } else {
        y = at(a.y, b.z);
        zeta = at(a.z, b.y) + at(a.y, b.z, b.eta - a.eta);
      }
      out.arrows.push_back({"y_" + ij, i, j, y, z, eta});
      out.arrows.push_back({"upsilon_" + ij, i, j, at(a.y, b.y), zeta, eta});
    }
  return out;
}

}  // namespace iotahat
