#pragma once

#include <string>
#include <vector>

#include "hhb/errors.hpp"
#include "hhb/hypergraph.hpp"

namespace hhb {

/// A set of vertex permutations claimed to preserve the skeleton measure.
/// Each generator lists the image of every vertex index.
struct SymmetrySpec {
  std::vector<std::vector<int>> generators;
};

/// Checks that each generator is a bijection on the vertex table of the
/// 2-uniform graph G, fixes mu_1 pointwise, and preserves mu_2 face by face,
/// all within kMeasureTol. Throws SymmetryError with the first violation.
inline void validate_symmetry(const WeightedHypergraph& G, const SymmetrySpec& sym) {
  if (G.k() != 2) throw InputError("symmetry validation expects a 2-uniform graph");
  const int n = G.vertex_count();
  FaceMeasure mu1 = G.induced_measure(1);
  auto mu1_of = [&](int v) { return mu1.mass(Multiset({v})); };
  for (std::size_t g = 0; g < sym.generators.size(); ++g) {
    const auto& perm = sym.generators[g];
    std::string tag = "generator " + std::to_string(g + 1);
    if (static_cast<int>(perm.size()) != n)
      throw SymmetryError(tag + " has length " + std::to_string(perm.size()) +
                          ", expected " + std::to_string(n));
    std::vector<char> seen(n, 0);
    for (int v : perm) {
      if (v < 0 || v >= n)
        throw SymmetryError(tag + " maps outside the vertex range");
      if (seen[v]) throw SymmetryError(tag + " is not a permutation");
      seen[v] = 1;
    }
    for (int v = 0; v < n; ++v)
      if (std::abs(mu1_of(v) - mu1_of(perm[v])) > kMeasureTol)
        throw SymmetryError(tag + " does not preserve the vertex measure at vertex " +
                            std::to_string(v));
    for (const auto& [e, w] : G.faces()) {
      Multiset image({perm[e.slots()[0]], perm[e.slots()[1]]});
      if (std::abs(G.weight(image) - w) > kMeasureTol)
        throw SymmetryError(tag + " does not preserve the edge measure on face [" +
                            std::to_string(e.slots()[0]) + ", " +
                            std::to_string(e.slots()[1]) + "]");
    }
  }
}

}  // namespace hhb
