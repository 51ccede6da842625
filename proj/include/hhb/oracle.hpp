#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hhb/errors.hpp"
#include "hhb/hypergraph.hpp"
#include "hhb/kpartite.hpp"

namespace hhb {

inline constexpr int kDefaultAlphaCap = 30;
inline constexpr int kSymmetricCrossCap = 20;
inline constexpr double kPruneSlack = 1e-14;

/// True iff no stored face has its support inside I. A loop face [v,v,w]
/// therefore forbids {v,w}.
inline bool is_independent(const WeightedHypergraph& X, const std::vector<int>& I) {
  std::vector<char> in(X.vertex_count(), 0);
  for (int v : I) {
    if (v < 0 || v >= X.vertex_count())
      throw InputError("vertex index " + std::to_string(v) + " outside the table");
    in[v] = 1;
  }
  for (const auto& [tau, w] : X.faces()) {
    bool inside = true;
    for (int v : tau.support())
      if (!in[v]) { inside = false; break; }
    if (inside) return false;
  }
  return true;
}

struct IndependenceResult {
  double alpha = 0.0;
  std::vector<int> witness;  // ascending vertex indices
};

/// Exact maximum mu_1-measure of an independent set, by branch and bound over
/// the vertices with positive measure (descending-mass order, greedy warm
/// start, face-based pruning). Ties at the exact maximum resolve to the
/// lexicographically least vertex set.
inline IndependenceResult brute_force_alpha(const WeightedHypergraph& X,
                                            int cap = kDefaultAlphaCap) {
  FaceMeasure mu1 = X.induced_measure(1);
  std::vector<int> verts;
  for (const auto& [sigma, m] : mu1.masses) verts.push_back(sigma.slots()[0]);
  const int n = static_cast<int>(verts.size());
  if (n > cap)
    throw ResourceError("support has " + std::to_string(n) +
                        " vertices, above the brute-force cap of " + std::to_string(cap));
  if (n > 62) throw ResourceError("brute-force search is limited to 62 support vertices");
  // Order: descending mass, ascending index on ties.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> mass(n);
  for (int i = 0; i < n; ++i) mass[i] = mu1.mass(Multiset({verts[i]}));
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (mass[a] != mass[b]) return mass[a] > mass[b];
    return verts[a] < verts[b];
  });
  std::vector<int> vert_at(n);     // position -> vertex index
  std::vector<double> mass_at(n);  // position -> mass
  std::vector<int> pos_of_vert(X.vertex_count(), -1);
  for (int p = 0; p < n; ++p) {
    vert_at[p] = verts[order[p]];
    mass_at[p] = mass[order[p]];
    pos_of_vert[vert_at[p]] = p;
  }
  std::vector<double> suffix(n + 1, 0.0);
  for (int p = n - 1; p >= 0; --p) suffix[p] = suffix[p + 1] + mass_at[p];
  // Face bitmasks over positions, grouped by their highest position so a face
  // is tested exactly once: when its last vertex joins the set.
  std::vector<std::vector<std::uint64_t>> closing(n);
  for (const auto& [tau, w] : X.faces()) {
    std::uint64_t fmask = 0;
    int last = -1;
    for (int v : tau.support()) {
      int p = pos_of_vert[v];
      fmask |= std::uint64_t{1} << p;
      last = std::max(last, p);
    }
    closing[last].push_back(fmask);
  }
  IndependenceResult best;  // empty set is always independent
  std::vector<int> chosen;
  auto consider = [&](double value) {
    std::vector<int> w(chosen.begin(), chosen.end());
    std::sort(w.begin(), w.end());
    if (value > best.alpha || (value == best.alpha && w < best.witness)) {
      best.alpha = value;
      best.witness = std::move(w);
    }
  };
  std::function<void(int, std::uint64_t, double)> dfs = [&](int p, std::uint64_t mask,
                                                            double value) {
    if (value + suffix[p] < best.alpha - kPruneSlack) return;
    if (p == n) {
      consider(value);
      return;
    }
    // Include position p when no face closes inside the enlarged set.
    std::uint64_t with = mask | (std::uint64_t{1} << p);
    bool ok = true;
    for (std::uint64_t fmask : closing[p])
      if ((fmask & ~with) == 0) { ok = false; break; }
    if (ok) {
      chosen.push_back(vert_at[p]);
      dfs(p + 1, with, value + mass_at[p]);
      chosen.pop_back();
    }
    dfs(p + 1, mask, value);
  };
  dfs(0, 0, 0.0);
  return best;
}

/// True iff the product A_1 x ... x A_k carries no positive-weight tuple.
inline bool cross_independent(const KPartiteSpec& spec,
                              const std::vector<std::vector<int>>& sets) {
  if (static_cast<int>(sets.size()) != spec.k())
    throw InputError("cross-independence needs one set per part");
  std::vector<std::vector<char>> in(spec.k());
  for (int i = 0; i < spec.k(); ++i) {
    in[i].assign(spec.parts[i].size(), 0);
    for (int v : sets[i]) {
      if (v < 0 || v >= static_cast<int>(spec.parts[i].size()))
        throw InputError("set " + std::to_string(i + 1) + " leaves part " +
                         std::to_string(i + 1));
      in[i][v] = 1;
    }
  }
  for (const auto& [t, w] : spec.faces) {
    bool inside = true;
    for (int i = 0; i < spec.k(); ++i)
      if (!in[i][t[i]]) { inside = false; break; }
    if (inside) return false;
  }
  return true;
}

struct SymmetricCrossResult {
  double measure = 0.0;
  std::vector<int> witness;          // part-1 vertex indices, ascending
  std::vector<std::string> labels;   // the same vertices by label
};

namespace detail {

/// If every label looks like "(x,y)" and the swapped "(y,x)" exists, returns
/// the swap as an index involution; otherwise the identity.
inline std::vector<int> coordinate_swap(const std::vector<std::string>& labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<int> inv(n);
  std::iota(inv.begin(), inv.end(), 0);
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[labels[i]] = i;
  std::vector<int> swapped(n, -1);
  for (int i = 0; i < n; ++i) {
    const std::string& s = labels[i];
    if (s.size() < 3 || s.front() != '(' || s.back() != ')') return inv;
    auto comma = s.find(',');
    if (comma == std::string::npos) return inv;
    std::string a = s.substr(1, comma - 1);
    std::string b = s.substr(comma + 1, s.size() - comma - 2);
    auto it = index.find("(" + b + "," + a + ")");
    if (it == index.end()) return inv;
    swapped[i] = it->second;
  }
  return swapped;
}

}  // namespace detail

/// Exact maximum measure of a single set A used in every part, over candidates
/// that are cross-independent and closed under the coordinate swap
/// (x,y) -> (y,x) whenever the part labels carry that pair structure.
inline SymmetricCrossResult brute_force_symmetric_cross(const KPartiteSpec& spec) {
  spec.validate();
  const int k = spec.k();
  const int psize = static_cast<int>(spec.parts[0].size());
  for (int i = 1; i < k; ++i)
    if (spec.parts[i] != spec.parts[0])
      throw InputError("symmetric cross search needs identically labelled parts");
  if (psize > kSymmetricCrossCap)
    throw ResourceError("part size " + std::to_string(psize) +
                        " above the symmetric search cap of " +
                        std::to_string(kSymmetricCrossCap));
  // Vertex measure of label v summed over the parts of the flattened graph.
  WeightedHypergraph flat = from_kpartite(spec);
  FaceMeasure mu1 = flat.induced_measure(1);
  std::vector<double> label_mass(psize, 0.0);
  for (int i = 0; i < k; ++i)
    for (int v = 0; v < psize; ++v)
      label_mass[v] += mu1.mass(Multiset({i * psize + v}));
  // Orbits of the swap involution.
  std::vector<int> swap = detail::coordinate_swap(spec.parts[0]);
  std::vector<std::vector<int>> orbits;
  std::vector<char> seen(psize, 0);
  for (int v = 0; v < psize; ++v) {
    if (seen[v]) continue;
    std::vector<int> orb{v};
    seen[v] = 1;
    if (swap[v] != v && !seen[swap[v]]) {
      orb.push_back(swap[v]);
      seen[swap[v]] = 1;
    }
    orbits.push_back(std::move(orb));
  }
  const int r = static_cast<int>(orbits.size());
  SymmetricCrossResult best;  // empty set: measure 0
  std::vector<char> in(psize, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    std::fill(in.begin(), in.end(), 0);
    for (int o = 0; o < r; ++o)
      if (mask >> o & 1)
        for (int v : orbits[o]) in[v] = 1;
    bool independent = true;
    for (const auto& [t, w] : spec.faces) {
      bool inside = true;
      for (int i = 0; i < k; ++i)
        if (!in[t[i]]) { inside = false; break; }
      if (inside) { independent = false; break; }
    }
    if (!independent) continue;
    double measure = 0.0;
    std::vector<int> members;
    for (int v = 0; v < psize; ++v)
      if (in[v]) {
        measure += label_mass[v];
        members.push_back(v);
      }
    if (measure > best.measure ||
        (measure == best.measure && members < best.witness)) {
      best.measure = measure;
      best.witness = std::move(members);
    }
  }
  for (int v : best.witness) best.labels.push_back(spec.parts[0][v]);
  return best;
}

}  // namespace hhb
