#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "hhb/format.hpp"
#include "hhb/spectral.hpp"

namespace hhb {

inline constexpr double kDegenerateTol = 1e-12;
inline constexpr double kTensorStableTol = 1e-12;
inline constexpr double kCertifyTol = 1e-9;

/// Spectral certificate for the independence ratio of a k-uniform hypergraph:
///   alpha(X) <= 1 - 1 / prod_{i=0}^{k-2} (1 - lambda_i).
/// A negative bound certifies that no independent set has positive measure.
struct BoundReport {
  std::vector<double> lambdas;     // lambda_0 .. lambda_{k-2}
  std::vector<Multiset> witnesses; // face whose link attains each minimum
  double product = 1.0;            // prod (1 - lambda_i)
  double bound = 0.0;
  bool tensor_stable = false;      // all lambda_i <= 1e-12: bound survives powers
  bool conditional_symmetry = false;  // lambda_0 replaced by an invariant restriction
  bool degenerate = false;         // some 1 - lambda_i vanished; bound forced to 1
};

namespace detail {

inline BoundReport report_from_lambdas(std::vector<double> lambdas,
                                       std::vector<Multiset> witnesses) {
  BoundReport r;
  r.lambdas = std::move(lambdas);
  r.witnesses = std::move(witnesses);
  r.tensor_stable = true;
  double product = 1.0;
  for (double l : r.lambdas) {
    if (l > kTensorStableTol) r.tensor_stable = false;
    if (1.0 - l <= kDegenerateTol) r.degenerate = true;
    product *= 1.0 - l;
  }
  r.product = product;
  if (r.degenerate) {
    r.bound = 1.0;
  } else if (r.lambdas.size() == 1) {
    // One factor: use the classical ratio form so the reported number matches
    // -lambda / (1 - lambda) operation for operation.
    r.bound = -r.lambdas[0] / (1.0 - r.lambdas[0]);
  } else {
    r.bound = 1.0 - 1.0 / product;
  }
  return r;
}

}  // namespace detail

/// The product-form spectral bound from the per-level minima of X.
inline BoundReport hoffman_bound(const WeightedHypergraph& X) {
  std::vector<double> lambdas;
  std::vector<Multiset> witnesses;
  for (const auto& lm : lambda_levels(X)) {
    lambdas.push_back(lm.value);
    witnesses.push_back(lm.witness);
  }
  return detail::report_from_lambdas(std::move(lambdas), std::move(witnesses));
}

/// Bound for the n-th tensor power without building it: nonpositive level
/// minima persist, positive ones decay geometrically (lambda_i -> lambda_i^n).
inline BoundReport tensor_bound(const WeightedHypergraph& X, int n) {
  if (n < 1) throw InputError("tensor power exponent must be >= 1");
  BoundReport base = hoffman_bound(X);
  std::vector<double> lambdas = base.lambdas;
  for (double& l : lambdas) {
    if (l > 0.0) {
      double p = l;
      for (int i = 1; i < n; ++i) p *= l;
      l = p;
    }
  }
  BoundReport r = detail::report_from_lambdas(std::move(lambdas), base.witnesses);
  r.tensor_stable = base.tensor_stable;
  return r;
}

/// Bound with lambda_0 replaced by the minimum over symmetry-invariant
/// functions. Valid for independent sets preserved by the group, hence the
/// conditional flag. Generators are validated against the skeleton measure.
inline BoundReport symmetric_hoffman_bound(const WeightedHypergraph& X,
                                           const SymmetrySpec& sym) {
  WeightedHypergraph skel = X.skeleton();
  validate_symmetry(skel, sym);
  SkeletonOperator op = SkeletonOperator::from_graph(skel);
  InvariantRestriction inv = invariant_lambda_min(op, sym);
  std::vector<double> lambdas{inv.lambda_min};
  std::vector<Multiset> witnesses{Multiset{}};
  for (int i = 1; i <= X.k() - 2; ++i) {
    LevelMinimum lm = lambda_level(X, i);
    lambdas.push_back(lm.value);
    witnesses.push_back(lm.witness);
  }
  BoundReport r = detail::report_from_lambdas(std::move(lambdas), std::move(witnesses));
  r.conditional_symmetry = true;
  return r;
}

/// Re-checks a claimed lambda vector: every level-i link must have smallest
/// skeleton eigenvalue >= lambdas[i] - kCertifyTol.
struct CertifyResult {
  bool ok = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  int level = -1;        // level of the worst face
  Multiset witness;      // face attaining the worst margin
};

inline CertifyResult certify_lambda(const WeightedHypergraph& X,
                                    const std::vector<double>& lambdas) {
  if (static_cast<int>(lambdas.size()) != X.k() - 1)
    throw InputError("expected " + std::to_string(X.k() - 1) + " lambda values");
  CertifyResult res;
  for (int i = 0; i <= X.k() - 2; ++i) {
    if (i == 0) {
      double l = spectrum(SkeletonOperator::from_graph(X.skeleton())).min();
      double margin = l - lambdas[0];
      if (margin < res.worst_margin) {
        res.worst_margin = margin;
        res.level = 0;
        res.witness = Multiset{};
      }
      continue;
    }
    FaceMeasure mui = X.induced_measure(i);
    std::vector<Multiset> faces;
    for (const auto& [sigma, m] : mui.masses) faces.push_back(sigma);
    std::vector<double> vals(faces.size());
    parallel_for(static_cast<int>(faces.size()), [&](int j) {
      vals[j] = spectrum(SkeletonOperator::from_graph(X.link(faces[j]).skeleton())).min();
    });
    for (std::size_t j = 0; j < faces.size(); ++j) {
      double margin = vals[j] - lambdas[i];
      if (margin < res.worst_margin) {
        res.worst_margin = margin;
        res.level = i;
        res.witness = faces[j];
      }
    }
  }
  res.ok = res.worst_margin >= -kCertifyTol;
  return res;
}

/// Machine-readable report: 17 significant digits, witnesses as slot lists.
inline std::string bound_report_json(const BoundReport& r) {
  std::ostringstream out;
  out << "{\n  \"lambdas\": [";
  for (std::size_t i = 0; i < r.lambdas.size(); ++i)
    out << (i ? ", " : "") << fmt_g17(r.lambdas[i]);
  out << "],\n  \"witnesses\": [";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    out << (i ? ", [" : "[");
    const auto& slots = r.witnesses[i].slots();
    for (std::size_t j = 0; j < slots.size(); ++j) out << (j ? ", " : "") << slots[j];
    out << "]";
  }
  out << "],\n  \"product\": " << fmt_g17(r.product)
      << ",\n  \"bound\": " << fmt_g17(r.bound)
      << ",\n  \"tensor_stable\": " << (r.tensor_stable ? "true" : "false")
      << ",\n  \"conditional_symmetry\": " << (r.conditional_symmetry ? "true" : "false")
      << ",\n  \"degenerate\": " << (r.degenerate ? "true" : "false") << "\n}\n";
  return out.str();
}

}  // namespace hhb
