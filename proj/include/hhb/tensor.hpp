#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hhb/errors.hpp"
#include "hhb/hypergraph.hpp"

namespace hhb {

inline constexpr std::size_t kDefaultTensorFaceCap = 1000000;

/// Tensor product of two k-uniform hypergraphs on the paired vertex set V x V'.
/// The product measure lives on ordered k-tuples; a face of the product is
/// obtained by pairing the slot list of tau with an ordering of tau' slot by
/// slot. Each distinct ordering carries an equal share of mu(tau) * mu'(tau'),
/// and pairings that canonicalize to the same multiset accumulate.
inline WeightedHypergraph tensor_product(const WeightedHypergraph& A,
                                         const WeightedHypergraph& B,
                                         std::size_t face_cap = kDefaultTensorFaceCap) {
  if (A.k() != B.k())
    throw InputError("tensor product requires equal uniformity, got " +
                     std::to_string(A.k()) + " and " + std::to_string(B.k()));
  const int k = A.k();
  const int nb = B.vertex_count();
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(A.vertex_count()) * nb);
  for (const auto& la : A.labels())
    for (const auto& lb : B.labels())
      labels.push_back("(" + la + "," + lb + ")");

  std::map<Multiset, double> acc;
  std::vector<int> paired(k);
  for (const auto& [tau, w] : A.faces()) {
    const auto& sa = tau.slots();
    for (const auto& [tau2, w2] : B.faces()) {
      std::vector<int> perm = tau2.slots();  // sorted: next_permutation covers
      // every distinct ordering exactly once
      int mult_prod = 1;
      for (auto [v, m] : tau2.entries()) mult_prod *= static_cast<int>(factorial(m));
      double share = w * w2 * static_cast<double>(mult_prod) / static_cast<double>(factorial(k));
      do {
        for (int i = 0; i < k; ++i) paired[i] = sa[i] * nb + perm[i];
        acc[Multiset(paired)] += share;
        if (acc.size() > face_cap)
          throw ResourceError("tensor product exceeds face cap of " + std::to_string(face_cap));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  std::vector<std::pair<Multiset, double>> faces(acc.begin(), acc.end());
  return WeightedHypergraph::build(k, std::move(labels), faces, true);
}

/// n-fold tensor power by iterated products, guarded by the face cap.
inline WeightedHypergraph tensor_power(const WeightedHypergraph& X, int n,
                                       std::size_t face_cap = kDefaultTensorFaceCap) {
  if (n < 1) throw InputError("tensor power exponent must be >= 1");
  WeightedHypergraph P = X;
  for (int i = 1; i < n; ++i) P = tensor_product(P, X, face_cap);
  return P;
}

}  // namespace hhb
