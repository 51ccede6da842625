#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hhb/errors.hpp"
#include "hhb/hypergraph.hpp"
#include "hhb/multiset.hpp"

namespace hhb {

/// An optimizer problem statement: which faces may carry weight, and the
/// target vertex marginal nu the weights must induce.
struct SupportSpec {
  int k = 2;
  std::vector<std::string> labels;
  std::vector<Multiset> faces;  // sorted, duplicate-free
  std::vector<double> nu;       // one entry per vertex, sums to 1

  void validate() const {
    if (k < 2) throw InputError("uniformity k must be at least 2");
    if (faces.empty()) throw InputError("support lists no faces");
    for (const auto& f : faces) {
      if (f.size() != k) throw InputError("support face arity does not match k");
      if (!f.empty() && f.slots().back() >= static_cast<int>(labels.size()))
        throw InputError("support face refers to a vertex outside the table");
    }
    if (!std::is_sorted(faces.begin(), faces.end()))
      throw InputError("support faces must be sorted");
    if (nu.size() != labels.size())
      throw InputError("\"nu\" must list one target measure per vertex");
    KahanSum total;
    for (double x : nu) {
      if (x < 0.0) throw InputError("negative target vertex measure");
      total.add(x);
    }
    if (std::abs(total.value() - 1.0) > kMeasureTol)
      throw InputError("target vertex measure sums to " + std::to_string(total.value()) +
                       ", expected 1 within 1e-9");
  }
};

}  // namespace hhb
