#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "hhb/errors.hpp"
#include "hhb/hypergraph.hpp"
#include "hhb/parallel.hpp"
#include "hhb/symmetry.hpp"

namespace hhb {

inline constexpr double kRowSumTol = 1e-8;
inline constexpr double kResidualTol = 1e-8;
inline constexpr double kQuotientRowTol = 1e-8;

/// The normalized adjacency operator of a weighted graph (a 2-uniform
/// hypergraph), restricted to the vertices with mu_1 above kSupportTol:
///   T(u,u) = mu_2([u,u]) / mu_1(u)
///   T(u,v) = mu_2([u,v]) / (2 mu_1(u))   for u != v.
/// T is row-stochastic and self-adjoint in the mu_1 inner product.
struct SkeletonOperator {
  std::vector<int> support;  // operator row -> vertex index in the graph
  Eigen::VectorXd mu1;       // restricted vertex measure
  Eigen::MatrixXd T;

  int dim() const { return static_cast<int>(support.size()); }

  static SkeletonOperator from_graph(const WeightedHypergraph& G) {
    if (G.k() != 2)
      throw InputError("skeleton operator expects a 2-uniform graph, got k = " +
                       std::to_string(G.k()));
    FaceMeasure mu1 = G.induced_measure(1);
    SkeletonOperator op;
    std::vector<int> row_of(G.vertex_count(), -1);
    for (const auto& [sigma, m] : mu1.masses) {
      if (m > kSupportTol) {
        row_of[sigma.slots()[0]] = op.dim();
        op.support.push_back(sigma.slots()[0]);
      }
    }
    if (op.support.empty())
      throw InputError("graph has no vertices with positive measure");
    const int n = op.dim();
    op.mu1 = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < n; ++r) op.mu1[r] = mu1.mass(Multiset({op.support[r]}));
    op.T = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [e, w] : G.faces()) {
      int u = e.slots()[0], v = e.slots()[1];
      int ru = row_of[u], rv = row_of[v];
      if (ru < 0 || rv < 0) continue;  // an endpoint below the support cutoff
      if (u == v) {
        op.T(ru, ru) += w / op.mu1[ru];
      } else {
        op.T(ru, rv) += w / (2.0 * op.mu1[ru]);
        op.T(rv, ru) += w / (2.0 * op.mu1[rv]);
      }
    }
    return op;
  }

  /// Similarity transform D^{1/2} T D^{-1/2} with D = diag(mu1); symmetric, so
  /// a symmetric eigensolver applies. Entry (u,v) = mu_2([u,v]) / (2 sqrt(mu_1(u) mu_1(v)))
  /// off the diagonal.
  Eigen::MatrixXd symmetrized() const {
    const int n = dim();
    Eigen::VectorXd d = mu1.array().sqrt();
    Eigen::MatrixXd S(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) S(i, j) = T(i, j) * d[i] / d[j];
    // Force exact symmetry before the eigensolve.
    return 0.5 * (S + S.transpose());
  }

  double row_sum_residual() const {
    return (T.rowwise().sum() - Eigen::VectorXd::Ones(dim())).cwiseAbs().maxCoeff();
  }
};

/// Eigenvalues in descending order.
struct Spectrum {
  std::vector<double> eigenvalues;

  double max() const { return eigenvalues.front(); }
  double min() const { return eigenvalues.back(); }
};

/// Full spectrum of the skeleton operator via the symmetrized matrix. Each
/// eigenpair must satisfy |S x - lambda x| <= kResidualTol; violations throw.
inline Spectrum spectrum(const SkeletonOperator& op) {
  Eigen::MatrixXd S = op.symmetrized();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigensolver failed to converge");
  Eigen::MatrixXd R = S * solver.eigenvectors() -
                      solver.eigenvectors() * solver.eigenvalues().asDiagonal();
  double worst = R.colwise().norm().maxCoeff();
  if (worst > kResidualTol)
    throw std::runtime_error("eigenpair residual " + std::to_string(worst) +
                             " exceeds tolerance");
  Spectrum s;
  s.eigenvalues.assign(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + solver.eigenvalues().size());
  std::reverse(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

/// Smallest skeleton eigenvalue of the link of every level-i face, minimized
/// over X^(i). level 0 is the skeleton of X itself (witness: empty face).
struct LevelMinimum {
  double value = 0.0;
  Multiset witness;  // the face whose link attains the minimum
};

inline LevelMinimum lambda_level(const WeightedHypergraph& X, int level) {
  if (level < 0 || level > X.k() - 2)
    throw InputError("lambda level " + std::to_string(level) +
                     " out of range [0, " + std::to_string(X.k() - 2) + "]");
  if (level == 0) {
    LevelMinimum r;
    r.value = spectrum(SkeletonOperator::from_graph(X.skeleton())).min();
    return r;
  }
  FaceMeasure mui = X.induced_measure(level);
  std::vector<Multiset> faces;
  faces.reserve(mui.masses.size());
  for (const auto& [sigma, m] : mui.masses) faces.push_back(sigma);
  std::vector<double> lambdas(faces.size());
  parallel_for(static_cast<int>(faces.size()), [&](int i) {
    lambdas[i] =
        spectrum(SkeletonOperator::from_graph(X.link(faces[i]).skeleton())).min();
  });
  // Reduce in lexicographic face order; strict improvement keeps the
  // lexicographically least witness on exact ties.
  LevelMinimum r;
  r.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (lambdas[i] < r.value) {
      r.value = lambdas[i];
      r.witness = faces[i];
    }
  }
  return r;
}

/// All level minima lambda_0 .. lambda_{k-2}.
inline std::vector<LevelMinimum> lambda_levels(const WeightedHypergraph& X) {
  std::vector<LevelMinimum> out;
  for (int i = 0; i <= X.k() - 2; ++i) out.push_back(lambda_level(X, i));
  return out;
}

/// Result of restricting the skeleton operator to functions constant on the
/// orbits of a symmetry group.
struct InvariantRestriction {
  double lambda_min = 0.0;
  int orbit_count = 0;
  std::vector<double> quotient_eigenvalues;  // descending
  double row_residual = 0.0;                 // worst disagreement between member rows
};

/// Minimum eigenvalue of the quotient operator on orbit-constant functions.
/// Generators must preserve the operator support; orbit members must induce
/// identical quotient rows within kQuotientRowTol.
inline InvariantRestriction invariant_lambda_min(const SkeletonOperator& op,
                                                 const SymmetrySpec& sym) {
  const int n = op.dim();
  std::vector<int> row_of_vertex;
  {
    int maxv = *std::max_element(op.support.begin(), op.support.end());
    row_of_vertex.assign(maxv + 1, -1);
    for (int r = 0; r < n; ++r) row_of_vertex[op.support[r]] = r;
  }
  // Generators as permutations of operator rows.
  std::vector<std::vector<int>> perms;
  for (std::size_t g = 0; g < sym.generators.size(); ++g) {
    const auto& perm = sym.generators[g];
    std::vector<int> p(n);
    for (int r = 0; r < n; ++r) {
      int v = op.support[r];
      if (v >= static_cast<int>(perm.size()))
        throw SymmetryError("generator " + std::to_string(g + 1) +
                            " is shorter than the vertex table");
      int img = perm[v];
      int ri = (img >= 0 && img < static_cast<int>(row_of_vertex.size()))
                   ? row_of_vertex[img] : -1;
      if (ri < 0)
        throw SymmetryError("generator " + std::to_string(g + 1) +
                            " maps a supported vertex onto one with zero measure");
      p[r] = ri;
    }
    perms.push_back(std::move(p));
  }
  // Orbits: connected components of the union of the generator graphs.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : perms)
    for (int r = 0; r < n; ++r) {
      int a = find(r), b = find(p[r]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> orbit_of(n, -1), reps;
  for (int r = 0; r < n; ++r) {
    int root = find(r);
    if (orbit_of[root] < 0) {
      orbit_of[root] = static_cast<int>(reps.size());
      reps.push_back(root);
    }
    orbit_of[r] = orbit_of[root];
  }
  const int m = static_cast<int>(reps.size());
  // Quotient rows: aggregate T over target orbits; every member of an orbit
  // must produce the same aggregated row.
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd orbit_mass = Eigen::VectorXd::Zero(m);
  double worst = 0.0;
  for (int r = 0; r < n; ++r) orbit_mass[orbit_of[r]] += op.mu1[r];
  std::vector<Eigen::VectorXd> row_cache(m);
  for (int r = 0; r < n; ++r) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(m);
    for (int c = 0; c < n; ++c) row[orbit_of[c]] += op.T(r, c);
    int o = orbit_of[r];
    if (row_cache[o].size() == 0) {
      row_cache[o] = row;
    } else {
      worst = std::max(worst, (row_cache[o] - row).cwiseAbs().maxCoeff());
    }
  }
  if (worst > kQuotientRowTol)
    throw SymmetryError("quotient rows disagree by " + std::to_string(worst) +
                        ", beyond tolerance; the given generators do not act by "
                        "automorphisms");
  for (int o = 0; o < m; ++o) Q.row(o) = row_cache[o];
  // The quotient is self-adjoint with respect to the aggregated orbit masses.
  Eigen::VectorXd d = orbit_mass.array().sqrt();
  Eigen::MatrixXd S(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) S(i, j) = Q(i, j) * d[i] / d[j];
  S = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigensolver failed to converge");
  InvariantRestriction out;
  out.orbit_count = m;
  out.row_residual = worst;
  out.quotient_eigenvalues.assign(solver.eigenvalues().data(),
                                  solver.eigenvalues().data() + m);
  std::reverse(out.quotient_eigenvalues.begin(), out.quotient_eigenvalues.end());
  out.lambda_min = out.quotient_eigenvalues.back();
  return out;
}

}  // namespace hhb
