#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhb/errors.hpp"
#include "hhb/hypergraph.hpp"
#include "hhb/kpartite.hpp"
#include "hhb/symmetry.hpp"

namespace hhb {

/// Expected pipeline outputs for a catalog model. The bound refers to the
/// tensor-stable value (the limit of the n-th-power bound): it equals the
/// plain product bound whenever every level minimum is nonpositive.
struct ReferenceValues {
  std::vector<double> lambdas;
  double bound = 0.0;
  double tol = 1e-9;
  std::string note;
};

struct CatalogEntry {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  WeightedHypergraph hypergraph;
  std::optional<KPartiteSpec> kpartite;
  std::optional<SymmetrySpec> symmetry;
  std::optional<ReferenceValues> reference;            // unrestricted pipeline
  std::optional<ReferenceValues> symmetric_reference;  // invariant-restricted lambda_0
  std::optional<std::vector<double>> quotient_spectrum;
};

namespace detail {

/// Weights computed from closed forms can undershoot zero by rounding noise.
inline double clamp_zero(double w) { return (w < 0.0 && w >= -1e-12) ? 0.0 : w; }

inline std::string fmt_param(double x) {
  std::string s = std::to_string(x);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace detail

/// Biased independent-family model: a single edge {0,1} of weight 2p plus a
/// loop at 0 of weight 1-2p. Independent sets avoid {0,1} together and the
/// loop vertex, so alpha is the best single-vertex mass; the ratio bound is
/// sharp at p.
inline CatalogEntry ekr_biased(double p) {
  if (!(p > 0.0 && p <= 0.5))
    throw InputError("ekr model needs 0 < p <= 1/2, got " + detail::fmt_param(p));
  CatalogEntry e;
  e.name = "ekr";
  e.params = {{"p", detail::fmt_param(p)}};
  e.hypergraph = WeightedHypergraph::build(
      2, {"0", "1"},
      {{Multiset({0, 1}), 2.0 * p}, {Multiset({0, 0}), detail::clamp_zero(1.0 - 2.0 * p)}});
  e.reference = ReferenceValues{{-p / (1.0 - p)},
                                p,
                                1e-9,
                                "lambda_min = -p/(1-p); ratio bound p is attained by {1}"};
  return e;
}

/// s-uniform generalization with one mixed face [1,0^(s-1)] of weight sp and a
/// full loop [0^s] of weight 1-sp; the vertex measure of 1 is p.
inline CatalogEntry matching_hypergraph(int s, double p) {
  if (s < 2) throw InputError("matching model needs s >= 2");
  if (!(p > 0.0 && p <= 1.0 / s))
    throw InputError("matching model needs 0 < p <= 1/s, got p = " + detail::fmt_param(p));
  CatalogEntry e;
  e.name = "matching";
  e.params = {{"s", std::to_string(s)}, {"p", detail::fmt_param(p)}};
  std::vector<int> mixed(s, 0);
  mixed[s - 1] = 1;
  e.hypergraph = WeightedHypergraph::build(
      s, {"0", "1"},
      {{Multiset(mixed), s * p},
       {Multiset(std::vector<int>(s, 0)), detail::clamp_zero(1.0 - s * p)}});
  // Level-l minimum comes from the link of [0^l]: a two-point skeleton whose
  // mass on vertex 1 is q_l = sp C(s-1,l) / (sp C(s-1,l) + (1-sp) C(s,l)),
  // giving lambda_l = -q_l / (s - l - q_l).
  std::vector<double> lambdas;
  for (int l = 0; l <= s - 2; ++l) {
    double a = s * p * static_cast<double>(binomial(s - 1, l));
    double bwt = (1.0 - s * p) * static_cast<double>(binomial(s, l));
    double q = a / (a + bwt);
    lambdas.push_back(-q / (static_cast<double>(s - l) - q));
  }
  double product = 1.0;
  for (double l : lambdas) product *= 1.0 - l;
  e.reference = ReferenceValues{std::move(lambdas),
                                1.0 - 1.0 / product,
                                1e-9,
                                "per-level minima from the [0^l] links, in closed form"};
  return e;
}

/// Triangle-free-style model on two vertices: face [1,1,0] with weight (3/2)p
/// and loop [0,0,0] with weight 1-(3/2)p.
inline CatalogEntry frankl_triangle_biased(double p) {
  if (!(p > 0.0 && p <= 2.0 / 3.0))
    throw InputError("biased triangle model needs 0 < p <= 2/3, got " + detail::fmt_param(p));
  CatalogEntry e;
  e.name = "frankl-biased";
  e.params = {{"p", detail::fmt_param(p)}};
  e.hypergraph = WeightedHypergraph::build(
      3, {"0", "1"},
      {{Multiset({0, 1, 1}), 1.5 * p},
       {Multiset({0, 0, 0}), detail::clamp_zero(1.0 - 1.5 * p)}});
  e.reference = ReferenceValues{
      {(1.0 - 2.0 * p) / (2.0 * (1.0 - p)), -1.0},
      std::max(p, 0.5),
      1e-9,
      "lambda_0 = (1-2p)/(2(1-p)), lambda_1 = -1; tensor-stable bound max(p, 1/2)"};
  return e;
}

/// Uniform extended-triangle model: vertices are the 2k-subsets of [n], faces
/// are triples {A, B, A xor B} with |A intersect B| = k, uniform measure.
inline CatalogEntry frankl_triangle_uniform(int n, int k) {
  if (k < 1 || n < 2 * k) throw InputError("uniform triangle model needs n >= 2k");
  if (n > 4 * k - 1)
    throw InputError("uniform triangle model needs n <= 4k-1 (closed forms valid there)");
  if (binomial(n, 2 * k) > 5000)
    throw ResourceError("uniform triangle model capped at C(n,2k) <= 5000 vertices");
  // Vertex table: 2k-subsets of {1..n} as bitmasks, lexicographic by element list.
  std::vector<std::uint32_t> sets;
  std::vector<int> pick(2 * k);
  std::function<void(int, int)> gen = [&](int from, int depth) {
    if (depth == 2 * k) {
      std::uint32_t mask = 0;
      for (int v : pick) mask |= std::uint32_t{1} << v;
      sets.push_back(mask);
      return;
    }
    for (int v = from; v < n; ++v) {
      pick[depth] = v;
      gen(v + 1, depth + 1);
    }
  };
  gen(0, 0);
  std::map<std::uint32_t, int> index_of;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    index_of[sets[i]] = static_cast<int>(i);
    std::string lab = "{";
    for (int v = 0; v < n; ++v)
      if (sets[i] >> v & 1) lab += std::to_string(v + 1) + ",";
    lab.back() = '}';
    labels.push_back(lab);
  }
  // Faces from unordered triples {D, E, F} of pairwise-disjoint k-sets:
  // A = D|E, B = D|F, C = E|F.
  std::vector<std::uint32_t> ksets;
  std::vector<int> kpick(k);
  std::function<void(int, int)> genk = [&](int from, int depth) {
    if (depth == k) {
      std::uint32_t mask = 0;
      for (int v : kpick) mask |= std::uint32_t{1} << v;
      ksets.push_back(mask);
      return;
    }
    for (int v = from; v < n; ++v) {
      kpick[depth] = v;
      genk(v + 1, depth + 1);
    }
  };
  genk(0, 0);
  std::vector<std::pair<Multiset, double>> faces;
  for (std::size_t a = 0; a < ksets.size(); ++a)
    for (std::size_t b = a + 1; b < ksets.size(); ++b) {
      if (ksets[a] & ksets[b]) continue;
      for (std::size_t c = b + 1; c < ksets.size(); ++c) {
        if ((ksets[a] | ksets[b]) & ksets[c]) continue;
        faces.emplace_back(Multiset({index_of[ksets[a] | ksets[b]],
                                     index_of[ksets[a] | ksets[c]],
                                     index_of[ksets[b] | ksets[c]]}),
                           1.0);
      }
    }
  if (faces.empty()) throw InputError("uniform triangle model has no faces");
  for (auto& [f, w] : faces) w = 1.0 / static_cast<double>(faces.size());
  CatalogEntry e;
  e.name = "frankl-uniform";
  e.params = {{"n", std::to_string(n)}, {"k", std::to_string(k)}};
  e.hypergraph = WeightedHypergraph::build(3, std::move(labels), faces);
  double l0 = static_cast<double>(n - 4 * k) / (2.0 * static_cast<double>(n - 2 * k));
  e.reference = ReferenceValues{
      {l0, -1.0},
      2.0 * static_cast<double>(k) / n,
      binomial(n, 2 * k) > 100 ? 1e-6 : 1e-9,
      "lambda_0 = (n-4k)/(2(n-2k)); vertex links are perfect matchings; bound 2k/n"};
  return e;
}

/// k-wise intersecting-family model: face [0,1^(k-1)] with weight kp/(k-1)
/// and loop [0^k] with weight 1 - kp/(k-1).
inline CatalogEntry kwise_intersecting(int k, double p) {
  if (k < 2) throw InputError("k-wise model needs k >= 2");
  double pmax = static_cast<double>(k - 1) / k;
  if (!(p > 0.0 && p <= pmax))
    throw InputError("k-wise model needs 0 < p <= (k-1)/k, got p = " + detail::fmt_param(p));
  CatalogEntry e;
  e.name = "kwise";
  e.params = {{"k", std::to_string(k)}, {"p", detail::fmt_param(p)}};
  std::vector<int> mixed(k, 1);
  mixed[0] = 0;
  double wm = k * p / (k - 1.0);
  e.hypergraph = WeightedHypergraph::build(
      k, {"0", "1"},
      {{Multiset(mixed), wm},
       {Multiset(std::vector<int>(k, 0)), detail::clamp_zero(1.0 - wm)}});
  std::vector<double> lambdas{(static_cast<double>(k - 2) / (k - 1) - p) / (1.0 - p)};
  for (int l = 1; l <= k - 2; ++l) lambdas.push_back(-1.0 / static_cast<double>(k - 1 - l));
  e.reference = ReferenceValues{
      std::move(lambdas),
      std::max(p, static_cast<double>(k - 2) / (k - 1)),
      1e-9,
      "lambda_0 = ((k-2)/(k-1)-p)/(1-p); lambda_l = -1/(k-1-l) from the [1^l] links; "
      "tensor-stable bound max(p, (k-2)/(k-1))"};
  return e;
}

/// Triangle-count model on three m*m parts: faces [(i,j),(j,k),(k,i)] with
/// uniform weights. Ships with the part-rotation and coordinate-transposition
/// generators; the invariant restriction lifts lambda_0 from -1/2 to 0.
inline CatalogEntry mantel(int m) {
  if (m != 2 && m != 4 && m != 8)
    throw InputError("triangle-count model supports m in {2, 4, 8}");
  KPartiteSpec spec;
  std::vector<std::string> part;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      part.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  spec.parts = {part, part, part};
  double w = 1.0 / static_cast<double>(m * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        spec.faces[{i * m + j, j * m + k, k * m + i}] = w;
  CatalogEntry e;
  e.name = "mantel";
  e.params = {{"m", std::to_string(m)}};
  e.kpartite = spec;
  e.hypergraph = from_kpartite(spec);
  // Generators on the flattened table: rotate the parts, and transpose the
  // coordinates while swapping the first two parts.
  const int ps = m * m;
  std::vector<int> rot(3 * ps), trans(3 * ps);
  for (int a = 0; a < 3; ++a)
    for (int t = 0; t < ps; ++t) {
      rot[a * ps + t] = ((a + 1) % 3) * ps + t;
      int i = t / m, j = t % m;
      int swapped = j * m + i;
      int target_part = (a == 0) ? 1 : (a == 1 ? 0 : 2);
      trans[a * ps + t] = target_part * ps + swapped;
    }
  e.symmetry = SymmetrySpec{{rot, trans}};
  // Both generators must map faces onto faces with equal weight.
  for (const auto& perm : e.symmetry->generators)
    for (const auto& [tau, wt] : e.hypergraph.faces()) {
      std::vector<int> img;
      for (int v : tau.slots()) img.push_back(perm[v]);
      if (std::abs(e.hypergraph.weight(Multiset(img)) - wt) > 1e-12)
        throw std::logic_error("triangle-count generator fails to preserve a face");
    }
  e.reference = ReferenceValues{{-0.5, -1.0},
                                2.0 / 3.0,
                                1e-9,
                                "unrestricted skeleton minimum -1/2; vertex links are "
                                "perfect matchings"};
  e.symmetric_reference = ReferenceValues{
      {0.0, -1.0}, 0.5, 1e-9, "orbit-invariant skeleton minimum 0; bound 1/2"};
  if (m == 2) e.quotient_spectrum = std::vector<double>{1.0, 0.5, 0.0};
  return e;
}

/// Solution hypergraph of a linear system over F_q: weight of an m-multiset of
/// residues proportional to its number of ordered solutions of A x = b.
inline CatalogEntry linear_system_hypergraph(int q, int m,
                                             const std::vector<std::vector<int>>& rows,
                                             const std::vector<int>& rhs,
                                             bool exclude_degenerate = false) {
  static const int primes[] = {2, 3, 5, 7, 11, 13};
  if (std::find(std::begin(primes), std::end(primes), q) == std::end(primes))
    throw InputError("q must be a prime <= 13");
  if (m < 2) throw InputError("linear system model needs at least 2 variables");
  double cells = std::pow(static_cast<double>(q), m);
  if (cells > 1e6) throw ResourceError("q^m exceeds the enumeration cap of 1e6");
  if (rows.size() != rhs.size())
    throw InputError("coefficient rows and right-hand sides differ in count");
  for (const auto& row : rows)
    if (static_cast<int>(row.size()) != m)
      throw InputError("each coefficient row needs one entry per variable");
  std::map<Multiset, double> counts;
  std::vector<int> x(m, 0);
  long long total = 0;
  while (true) {
    bool solves = true;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      long long acc = 0;
      for (int i = 0; i < m; ++i) acc += static_cast<long long>(rows[r][i]) * x[i];
      long long want = ((rhs[r] % q) + q) % q;
      if (((acc % q) + q) % q != want) { solves = false; break; }
    }
    if (solves) {
      counts[Multiset(x)] += 1.0;
      ++total;
    }
    int pos = m - 1;
    while (pos >= 0 && x[pos] == q - 1) x[pos--] = 0;
    if (pos < 0) break;
    ++x[pos];
  }
  if (exclude_degenerate)
    for (auto it = counts.begin(); it != counts.end();)
      it = (it->first.support().size() <= 1) ? counts.erase(it) : std::next(it);
  if (counts.empty())
    throw InputError(exclude_degenerate
                         ? "no solutions remain after excluding degenerate faces"
                         : "the system has no solutions");
  std::vector<std::string> labels;
  for (int v = 0; v < q; ++v) labels.push_back(std::to_string(v));
  std::vector<std::pair<Multiset, double>> faces(counts.begin(), counts.end());
  CatalogEntry e;
  e.name = "linsys";
  e.params = {{"q", std::to_string(q)},
              {"m", std::to_string(m)},
              {"exclude_degenerate", exclude_degenerate ? "true" : "false"}};
  e.hypergraph = WeightedHypergraph::build_normalized(m, std::move(labels), faces);
  return e;
}

}  // namespace hhb
