#pragma once

#include <map>
#include <string>
#include <vector>

#include "hhb/errors.hpp"
#include "hhb/hypergraph.hpp"

namespace hhb {

/// A k-partite weighted hypergraph: parts V_1..V_k and a probability measure
/// on tuples with one vertex per part.
struct KPartiteSpec {
  std::vector<std::vector<std::string>> parts;
  std::map<std::vector<int>, double> faces;  // tuple of per-part indices -> weight

  int k() const { return static_cast<int>(parts.size()); }

  void validate() const {
    if (k() < 2) throw InputError("k-partite spec needs at least 2 parts");
    for (const auto& part : parts)
      if (part.empty()) throw InputError("empty part in k-partite spec");
    KahanSum s;
    for (const auto& [t, w] : faces) {
      if (static_cast<int>(t.size()) != k())
        throw InputError("k-partite face arity does not match part count");
      for (int i = 0; i < k(); ++i)
        if (t[i] < 0 || t[i] >= static_cast<int>(parts[i].size()))
          throw InputError("k-partite face index out of range for part " + std::to_string(i + 1));
      if (w < 0.0) throw InputError("negative face weight in k-partite spec");
      s.add(w);
    }
    if (std::abs(s.value() - 1.0) > kMeasureTol)
      throw InputError("k-partite face weights sum to " + std::to_string(s.value()) +
                       ", expected 1 within 1e-9");
  }
};

/// Flattens a k-partite hypergraph to a k-uniform one on the disjoint union of
/// the parts. Labels are part-tagged to stay unique; every face has exactly one
/// vertex per part, so no loops arise.
inline WeightedHypergraph from_kpartite(const KPartiteSpec& spec) {
  spec.validate();
  std::vector<std::string> labels;
  std::vector<int> offset(spec.k(), 0);
  for (int i = 0; i < spec.k(); ++i) {
    offset[i] = static_cast<int>(labels.size());
    for (const auto& name : spec.parts[i])
      labels.push_back("V" + std::to_string(i + 1) + ":" + name);
  }
  std::vector<std::pair<Multiset, double>> faces;
  faces.reserve(spec.faces.size());
  for (const auto& [t, w] : spec.faces) {
    std::vector<int> slots(spec.k());
    for (int i = 0; i < spec.k(); ++i) slots[i] = offset[i] + t[i];
    faces.emplace_back(Multiset(std::move(slots)), w);
  }
  return WeightedHypergraph::build(spec.k(), std::move(labels), faces, true);
}

}  // namespace hhb
