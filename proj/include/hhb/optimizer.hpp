#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hhb/bound.hpp"
#include "hhb/errors.hpp"
#include "hhb/format.hpp"
#include "hhb/parallel.hpp"
#include "hhb/spectral.hpp"
#include "hhb/support.hpp"

namespace hhb {

/// Search over weight functions with fixed support and fixed vertex marginal,
/// minimizing prod (1 - lambda_i). Non-convex for k > 2: this is a seeded
/// multi-restart direct search with no global-optimality claim; every reported
/// bound is certified by re-computing the level minima.
struct OptimizerConfig {
  int restarts = 32;
  int iterations = 2000;       // per restart
  std::uint64_t seed = 0;
  double step_scale = 0.1;
  double tolerance = 1e-7;     // simplex spread stopping threshold
  double marginal_tol = 1e-8;  // feasibility tolerance on the constraints

  void validate() const {
    if (restarts < 1 || iterations < 1 || step_scale <= 0.0 || tolerance <= 0.0 ||
        marginal_tol <= 0.0)
      throw InputError("optimizer configuration values must be positive");
  }
};

struct FeasiblePoint {
  bool feasible = false;
  Eigen::VectorXd x;      // weight per support face (when feasible)
  double residual = 0.0;  // final constraint residual (reported when infeasible)
};

struct OptimizerResult {
  std::vector<Multiset> support;
  std::vector<double> mu_star;
  std::vector<double> lambdas;
  std::vector<Multiset> witnesses;
  double objective = 1.0;  // prod (1 - lambda_i)
  double bound = 0.0;
  double residual_marginal = 0.0;
  double residual_normalization = 0.0;
  long iterations = 0;  // direct-search iterations of the winning restart
};

namespace detail {

/// Stacked equality constraints: one marginal row per vertex plus the
/// normalization row.
struct ConstraintSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;

  ConstraintSystem(const SupportSpec& s) {
    const int m = static_cast<int>(s.faces.size());
    const int nv = static_cast<int>(s.labels.size());
    A = Eigen::MatrixXd::Zero(nv + 1, m);
    b = Eigen::VectorXd::Zero(nv + 1);
    for (int f = 0; f < m; ++f) {
      for (auto [v, mult] : s.faces[f].entries())
        A(v, f) = static_cast<double>(mult) / s.k;
      A(nv, f) = 1.0;
    }
    for (int v = 0; v < nv; ++v) b[v] = s.nu[v];
    b[nv] = 1.0;
    cod.compute(A);
  }

  double residual(const Eigen::VectorXd& x) const {
    double r = (A * x - b).cwiseAbs().maxCoeff();
    double neg = x.minCoeff() < 0.0 ? -x.minCoeff() : 0.0;
    return std::max(r, neg);
  }

  /// Alternating projection: affine least-squares step, then clip to the
  /// nonnegative orthant. Always ends on the clip, so the result is >= 0.
  Eigen::VectorXd repair(Eigen::VectorXd x, int rounds) const {
    for (int i = 0; i < rounds; ++i) {
      x -= cod.solve(A * x - b);
      x = x.cwiseMax(0.0);
      if ((A * x - b).cwiseAbs().maxCoeff() <= 1e-12) break;
    }
    return x;
  }
};

}  // namespace detail

/// A nonnegative weight vector meeting the marginal and normalization rows
/// within marginal_tol, or an infeasibility report with the final residual.
inline FeasiblePoint feasible_point(const SupportSpec& s, double marginal_tol = 1e-8) {
  s.validate();
  detail::ConstraintSystem cs(s);
  Eigen::VectorXd x = cs.cod.solve(cs.b);  // least-squares, min-norm
  x = cs.repair(std::move(x), 10000);
  FeasiblePoint fp;
  fp.residual = cs.residual(x);
  fp.feasible = fp.residual <= marginal_tol;
  if (fp.feasible) fp.x = std::move(x);
  return fp;
}

/// Exact per-level minima for a candidate weight vector on the support.
/// Entries <= 0 leave the face measure (their sub-faces may disappear with
/// them); lambdas are computed on the hypergraph the weights actually define.
struct ObjectiveValue {
  std::vector<double> lambdas;
  std::vector<Multiset> witnesses;
  double product = 1.0;
};

inline ObjectiveValue objective(const SupportSpec& s, const std::vector<double>& mu) {
  if (mu.size() != s.faces.size())
    throw InputError("weight vector length does not match the support");
  std::vector<std::pair<Multiset, double>> faces;
  for (std::size_t f = 0; f < mu.size(); ++f)
    if (mu[f] > 0.0) faces.emplace_back(s.faces[f], mu[f]);
  // Normalization cancels in every skeleton operator, so the exact sum is not
  // required here; build_normalized guards against degenerate input anyway.
  WeightedHypergraph X = WeightedHypergraph::build_normalized(s.k, s.labels, faces);
  ObjectiveValue val;
  for (const auto& lm : lambda_levels(X)) {
    val.lambdas.push_back(lm.value);
    val.witnesses.push_back(lm.witness);
    val.product *= 1.0 - lm.value;
  }
  return val;
}

/// Best-of-restarts Nelder-Mead style search over the null space of the
/// constraint system. Restart 0 starts at the feasible point itself, so the
/// result is never worse than the starting point; later restarts perturb the
/// start deterministically from (seed, restart index).
inline OptimizerResult optimize_weights(const SupportSpec& s,
                                        const OptimizerConfig& config = {}) {
  config.validate();
  s.validate();
  FeasiblePoint fp = feasible_point(s, config.marginal_tol);
  if (!fp.feasible)
    throw ResourceError("no feasible weight vector: constraint residual " +
                        fmt_g17(fp.residual));
  detail::ConstraintSystem cs(s);
  const int m = static_cast<int>(s.faces.size());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(cs.A);
  Eigen::MatrixXd N = lu.kernel();  // m x d; d may be 0
  const int d = (N.cols() == 1 && N.col(0).isZero()) ? 0 : static_cast<int>(N.cols());

  auto evaluate = [&](const Eigen::VectorXd& z, Eigen::VectorXd* x_out) -> double {
    Eigen::VectorXd x = fp.x;
    if (d > 0) x += N.leftCols(d) * z;
    x = cs.repair(std::move(x), 200);
    if (cs.residual(x) > config.marginal_tol) return std::numeric_limits<double>::infinity();
    std::vector<double> mu(x.data(), x.data() + m);
    double product;
    try {
      product = objective(s, mu).product;
    } catch (const InputError&) {
      return std::numeric_limits<double>::infinity();  // e.g. everything clipped away
    }
    if (x_out) *x_out = std::move(x);
    return product;
  };

  struct RestartOutcome {
    double value = std::numeric_limits<double>::infinity();
    Eigen::VectorXd z;
    long iterations = 0;
  };
  std::vector<RestartOutcome> outcomes(config.restarts);

  auto run_restart = [&](int r) {
    RestartOutcome& out = outcomes[r];
    Eigen::VectorXd z0 = Eigen::VectorXd::Zero(d);
    if (r > 0) {
      std::mt19937_64 rng(config.seed ^ (0x9E3779B97F4A7C15ULL * (std::uint64_t(r) + 1)));
      std::normal_distribution<double> gauss(0.0, 5.0 * config.step_scale);
      for (int i = 0; i < d; ++i) z0[i] = gauss(rng);
    }
    if (d == 0) {
      out.value = evaluate(z0, nullptr);
      out.z = z0;
      return;
    }
    // Simplex: z0 plus one step along each free coordinate.
    std::vector<Eigen::VectorXd> pts(d + 1, z0);
    std::vector<double> f(d + 1);
    for (int i = 0; i < d; ++i) pts[i + 1][i] += config.step_scale;
    for (int i = 0; i <= d; ++i) f[i] = evaluate(pts[i], nullptr);
    std::vector<int> idx(d + 1);
    for (long it = 0; it < config.iterations; ++it) {
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
      ++out.iterations;
      if (f[idx[d]] - f[idx[0]] <= config.tolerance) break;
      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
      for (int i = 0; i < d; ++i) centroid += pts[idx[i]];
      centroid /= d;
      const int worst = idx[d];
      Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
      double fr = evaluate(refl, nullptr);
      if (fr < f[idx[0]]) {
        Eigen::VectorXd expd = centroid + 2.0 * (centroid - pts[worst]);
        double fe = evaluate(expd, nullptr);
        if (fe < fr) { pts[worst] = expd; f[worst] = fe; }
        else { pts[worst] = refl; f[worst] = fr; }
      } else if (fr < f[idx[d - 1]]) {
        pts[worst] = refl; f[worst] = fr;
      } else {
        Eigen::VectorXd contr = centroid + 0.5 * (pts[worst] - centroid);
        double fc = evaluate(contr, nullptr);
        if (fc < f[worst]) {
          pts[worst] = contr; f[worst] = fc;
        } else {
          for (int i = 0; i <= d; ++i) {
            if (i == idx[0]) continue;
            pts[i] = pts[idx[0]] + 0.5 * (pts[i] - pts[idx[0]]);
            f[i] = evaluate(pts[i], nullptr);
          }
        }
      }
    }
    int besti = 0;
    for (int i = 1; i <= d; ++i)
      if (f[i] < f[besti]) besti = i;
    out.value = f[besti];
    out.z = pts[besti];
  };

  parallel_for(config.restarts, run_restart);
  // Reduce in restart order: strict improvement keeps the earliest seed index,
  // so the best value is non-increasing in the number of restarts.
  int best = 0;
  for (int r = 1; r < config.restarts; ++r)
    if (outcomes[r].value < outcomes[best].value) best = r;
  if (!std::isfinite(outcomes[best].value))
    throw ResourceError("optimizer failed to retain a feasible point");

  Eigen::VectorXd x_best;
  evaluate(outcomes[best].z, &x_best);
  std::vector<double> mu(x_best.data(), x_best.data() + m);
  ObjectiveValue val = objective(s, mu);
  OptimizerResult res;
  res.support = s.faces;
  res.mu_star = std::move(mu);
  res.lambdas = val.lambdas;
  res.witnesses = val.witnesses;
  BoundReport report = detail::report_from_lambdas(val.lambdas, val.witnesses);
  res.objective = report.product;
  res.bound = report.bound;
  const int nv = static_cast<int>(s.labels.size());
  Eigen::VectorXd gap = cs.A * x_best - cs.b;
  res.residual_marginal = gap.head(nv).cwiseAbs().maxCoeff();
  res.residual_normalization = std::abs(gap[nv]);
  res.iterations = outcomes[best].iterations;
  return res;
}

/// Machine-readable result, 17 significant digits throughout.
inline std::string optimizer_result_json(const OptimizerResult& r) {
  std::ostringstream out;
  out << "{\n  \"support\": [";
  for (std::size_t f = 0; f < r.support.size(); ++f) {
    out << (f ? ", [" : "[");
    const auto& slots = r.support[f].slots();
    for (std::size_t i = 0; i < slots.size(); ++i) out << (i ? ", " : "") << slots[i];
    out << "]";
  }
  out << "],\n  \"mu_star\": [";
  for (std::size_t f = 0; f < r.mu_star.size(); ++f)
    out << (f ? ", " : "") << fmt_g17(r.mu_star[f]);
  out << "],\n  \"lambdas\": [";
  for (std::size_t i = 0; i < r.lambdas.size(); ++i)
    out << (i ? ", " : "") << fmt_g17(r.lambdas[i]);
  out << "],\n  \"witnesses\": [";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    out << (i ? ", [" : "[");
    const auto& slots = r.witnesses[i].slots();
    for (std::size_t j = 0; j < slots.size(); ++j) out << (j ? ", " : "") << slots[j];
    out << "]";
  }
  out << "],\n  \"objective\": " << fmt_g17(r.objective)
      << ",\n  \"bound\": " << fmt_g17(r.bound)
      << ",\n  \"residual_marginal\": " << fmt_g17(r.residual_marginal)
      << ",\n  \"residual_normalization\": " << fmt_g17(r.residual_normalization)
      << ",\n  \"iterations\": " << r.iterations << "\n}\n";
  return out.str();
}

}  // namespace hhb
