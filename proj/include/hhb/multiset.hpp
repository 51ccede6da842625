#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hhb/errors.hpp"

namespace hhb {

/// Binomial coefficient C(n, k) in exact integer arithmetic.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

/// A multiset of vertex indices, stored as an ascending slot list.
/// Comparison is lexicographic on the slot list, which matches the order of
/// the serialized "m" arrays.
class Multiset {
public:
  Multiset() = default;

  explicit Multiset(std::vector<int> slots) : slots_(std::move(slots)) {
    std::sort(slots_.begin(), slots_.end());
    for (int v : slots_)
      if (v < 0) throw InputError("multiset contains a negative vertex index");
  }

  static Multiset from_entries(const std::vector<std::pair<int, int>>& entries) {
    std::vector<int> slots;
    for (auto [v, m] : entries) {
      if (m < 0) throw InputError("negative multiplicity in multiset entry");
      for (int i = 0; i < m; ++i) slots.push_back(v);
    }
    return Multiset(std::move(slots));
  }

  const std::vector<int>& slots() const { return slots_; }
  int size() const { return static_cast<int>(slots_.size()); }
  bool empty() const { return slots_.empty(); }

  int multiplicity(int v) const {
    auto [lo, hi] = std::equal_range(slots_.begin(), slots_.end(), v);
    return static_cast<int>(hi - lo);
  }

  /// Run-length view: (vertex, multiplicity) pairs in ascending vertex order.
  std::vector<std::pair<int, int>> entries() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < slots_.size();) {
      std::size_t j = i;
      while (j < slots_.size() && slots_[j] == slots_[i]) ++j;
      out.emplace_back(slots_[i], static_cast<int>(j - i));
      i = j;
    }
    return out;
  }

  /// Distinct vertices, ascending.
  std::vector<int> support() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (i == 0 || slots_[i] != slots_[i - 1]) out.push_back(slots_[i]);
    return out;
  }

  /// True iff *this is a sub-multiset of other.
  bool contained_in(const Multiset& other) const {
    return std::includes(other.slots_.begin(), other.slots_.end(),
                         slots_.begin(), slots_.end());
  }

  /// Multiset difference (other must be contained in *this).
  Multiset minus(const Multiset& other) const {
    std::vector<int> out;
    std::set_difference(slots_.begin(), slots_.end(),
                        other.slots_.begin(), other.slots_.end(),
                        std::back_inserter(out));
    return Multiset(std::move(out));
  }

  /// Multiset union with multiplicities added.
  Multiset plus(const Multiset& other) const {
    std::vector<int> out;
    std::merge(slots_.begin(), slots_.end(), other.slots_.begin(), other.slots_.end(),
               std::back_inserter(out));
    return Multiset(std::move(out));
  }

  friend bool operator==(const Multiset& a, const Multiset& b) { return a.slots_ == b.slots_; }
  friend std::strong_ordering operator<=>(const Multiset& a, const Multiset& b) {
    return a.slots_ <=> b.slots_;
  }

private:
  std::vector<int> slots_;
};

/// Number of ways to realize sigma inside tau when slots of tau are
/// distinguishable: the product over vertices of C(mult_tau(v), mult_sigma(v)).
/// Zero when sigma is not a sub-multiset of tau.
inline std::uint64_t submultiset_count(const Multiset& sigma, const Multiset& tau) {
  std::uint64_t n = 1;
  for (auto [v, m] : sigma.entries()) {
    int mt = tau.multiplicity(v);
    if (m > mt) return 0;
    n *= binomial(mt, m);
  }
  return n;
}

/// Enumerate every sub-multiset sigma of tau with |sigma| = level, calling
/// fn(sigma, submultiset_count(sigma, tau)) once per distinct sigma.
inline void for_each_submultiset(const Multiset& tau, int level,
                                 const std::function<void(const Multiset&, std::uint64_t)>& fn) {
  if (level < 0 || level > tau.size()) return;
  auto entries = tau.entries();
  std::vector<int> picked(entries.size(), 0);
  std::vector<int> slots;
  slots.reserve(level);
  // Depth-first choice of a multiplicity 0..m for each distinct vertex.
  std::function<void(std::size_t, int, std::uint64_t)> rec =
      [&](std::size_t idx, int remaining, std::uint64_t count) {
        if (remaining == 0) {
          // Remaining entries contribute choice 0 with factor C(m,0)=1.
          fn(Multiset(slots), count);
          return;
        }
        if (idx == entries.size()) return;
        int avail = 0;
        for (std::size_t j = idx; j < entries.size(); ++j) avail += entries[j].second;
        if (avail < remaining) return;
        auto [v, m] = entries[idx];
        for (int c = 0; c <= std::min(m, remaining); ++c) {
          for (int i = 0; i < c; ++i) slots.push_back(v);
          rec(idx + 1, remaining - c, count * binomial(m, c));
          for (int i = 0; i < c; ++i) slots.pop_back();
        }
      };
  rec(0, level, 1);
}

}  // namespace hhb
