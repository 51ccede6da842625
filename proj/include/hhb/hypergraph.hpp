#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hhb/errors.hpp"
#include "hhb/multiset.hpp"

namespace hhb {

/// Compensated (Kahan) sum, used wherever measure normalization is checked.
class KahanSum {
public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

private:
  double s_ = 0.0, c_ = 0.0;
};

inline constexpr double kMeasureTol = 1e-9;      // weight-sum validation
inline constexpr double kSupportTol = 1e-12;     // mu_1 below this counts as zero

/// A measure on the level-i faces of a hypergraph (the induced measure mu_i).
struct FaceMeasure {
  int level = 0;
  std::map<Multiset, double> masses;  // only positive-mass faces are stored

  double mass(const Multiset& sigma) const {
    auto it = masses.find(sigma);
    return it == masses.end() ? 0.0 : it->second;
  }
  double total() const {
    KahanSum s;
    for (const auto& [sigma, w] : masses) s.add(w);
    return s.value();
  }
};

/// A k-uniform weighted hypergraph: a probability measure on k-multisets of a
/// finite vertex set. Faces with zero weight are never stored; multisets allow
/// repeated vertices (loops).
class WeightedHypergraph {
public:
  WeightedHypergraph() = default;

  /// Builds from possibly duplicated, unsorted face entries. Duplicate
  /// multisets are merged by summing. Weights must be nonnegative; exact zeros
  /// are dropped. When require_normalized is set the merged weights must sum
  /// to 1 within kMeasureTol.
  static WeightedHypergraph build(int k, std::vector<std::string> labels,
                                  const std::vector<std::pair<Multiset, double>>& faces,
                                  bool require_normalized = true) {
    if (k < 2) throw InputError("uniformity k must be at least 2, got " + std::to_string(k));
    WeightedHypergraph X;
    X.k_ = k;
    X.labels_ = std::move(labels);
    for (std::size_t i = 0; i < X.labels_.size(); ++i)
      for (std::size_t j = i + 1; j < X.labels_.size(); ++j)
        if (X.labels_[i] == X.labels_[j])
          throw InputError("duplicate vertex label \"" + X.labels_[i] + "\"");
    for (const auto& [sigma, w] : faces) {
      if (sigma.size() != k)
        throw InputError("face of size " + std::to_string(sigma.size()) +
                         " in a " + std::to_string(k) + "-uniform hypergraph");
      if (!sigma.empty() && sigma.slots().back() >= static_cast<int>(X.labels_.size()))
        throw InputError("face refers to vertex index " +
                         std::to_string(sigma.slots().back()) + " but |V| = " +
                         std::to_string(X.labels_.size()));
      if (w < 0.0)
        throw InputError("negative face weight " + std::to_string(w));
      if (w == 0.0) continue;
      X.faces_[sigma] += w;
    }
    // Merging may cancel nothing (weights are >= 0) but may create entries
    // from several zero-dropped duplicates; drop exact zeros defensively.
    for (auto it = X.faces_.begin(); it != X.faces_.end();)
      it = (it->second == 0.0) ? X.faces_.erase(it) : std::next(it);
    if (require_normalized) {
      double s = X.weight_sum();
      if (std::abs(s - 1.0) > kMeasureTol)
        throw InputError("face weights sum to " + std::to_string(s) +
                         ", expected 1 within 1e-9");
    }
    return X;
  }

  /// Same as build() but rescales the weights to sum to exactly 1.
  static WeightedHypergraph build_normalized(int k, std::vector<std::string> labels,
                                             const std::vector<std::pair<Multiset, double>>& faces) {
    auto X = build(k, std::move(labels), faces, false);
    double s = X.weight_sum();
    if (s <= 0.0) throw InputError("total face weight is not positive");
    for (auto& [sigma, w] : X.faces_) w /= s;
    return X;
  }

  int k() const { return k_; }
  int vertex_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::map<Multiset, double>& faces() const { return faces_; }

  double weight(const Multiset& sigma) const {
    auto it = faces_.find(sigma);
    return it == faces_.end() ? 0.0 : it->second;
  }

  double weight_sum() const {
    KahanSum s;
    for (const auto& [sigma, w] : faces_) s.add(w);
    return s.value();
  }

  /// The induced measure mu_i: mu_i(sigma) = sum_tau mu(tau) N(sigma,tau) / C(k,i)
  /// where N counts realizations of sigma inside tau. mu_k is mu itself and
  /// mu_0 is the point mass on the empty multiset.
  FaceMeasure induced_measure(int level) const {
    if (level < 0 || level > k_)
      throw InputError("induced measure level " + std::to_string(level) +
                       " out of range [0, " + std::to_string(k_) + "]");
    FaceMeasure m;
    m.level = level;
    if (level == k_) {
      m.masses = faces_;
      return m;
    }
    double denom = static_cast<double>(binomial(k_, level));
    for (const auto& [tau, w] : faces_) {
      for_each_submultiset(tau, level, [&](const Multiset& sigma, std::uint64_t n) {
        m.masses[sigma] += w * static_cast<double>(n) / denom;
      });
    }
    for (auto it = m.masses.begin(); it != m.masses.end();)
      it = (it->second == 0.0) ? m.masses.erase(it) : std::next(it);
    return m;
  }

  /// The link of a face sigma: the (k-|sigma|)-uniform hypergraph on the same
  /// vertex table with mu_sigma(rho) proportional to mu(sigma+rho) * N(sigma, sigma+rho).
  /// The link of the empty face is the hypergraph itself.
  WeightedHypergraph link(const Multiset& sigma) const {
    if (sigma.empty()) return *this;
    if (sigma.size() >= k_)
      throw InputError("link face must have fewer than k vertices");
    WeightedHypergraph L;
    L.k_ = k_ - sigma.size();
    L.labels_ = labels_;
    KahanSum total;
    for (const auto& [tau, w] : faces_) {
      std::uint64_t n = submultiset_count(sigma, tau);
      if (n == 0) continue;
      double mass = w * static_cast<double>(n);
      L.faces_[tau.minus(sigma)] += mass;
      total.add(mass);
    }
    if (!(total.value() > 0.0))
      throw InputError("link of a face with zero induced mass");
    for (auto& [rho, w] : L.faces_) w /= total.value();
    return L;
  }

  /// The weighted graph (X^(1), mu_2): vertex table unchanged, faces are the
  /// 2-multisets with their induced measure. For k = 2 this is X itself.
  WeightedHypergraph skeleton() const {
    if (k_ == 2) return *this;
    WeightedHypergraph S;
    S.k_ = 2;
    S.labels_ = labels_;
    S.faces_ = induced_measure(2).masses;
    return S;
  }

private:
  int k_ = 2;
  std::vector<std::string> labels_;
  std::map<Multiset, double> faces_;
};

}  // namespace hhb
