#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hhb/bound.hpp"
#include "hhb/spectral.hpp"
#include "hhb/tensor.hpp"

using hhb::Multiset;
using hhb::WeightedHypergraph;

namespace {

WeightedHypergraph single_edge() {
  return WeightedHypergraph::build(2, {"a", "b"}, {{Multiset({0, 1}), 1.0}});
}

WeightedHypergraph triangle_k3() {
  return WeightedHypergraph::build(2, {"0", "1", "2"},
                                   {{Multiset({0, 1}), 1.0 / 3.0},
                                    {Multiset({1, 2}), 1.0 / 3.0},
                                    {Multiset({0, 2}), 1.0 / 3.0}});
}

WeightedHypergraph biased_triangle() {
  return WeightedHypergraph::build(
      3, {"0", "1"}, {{Multiset({0, 1, 1}), 0.9}, {Multiset({0, 0, 0}), 0.1}});
}

// Independent product construction: enumerate all k! position orderings of the
// second face (duplicates included), each carrying an equal 1/k! share.
std::map<Multiset, double> naive_product_faces(const WeightedHypergraph& A,
                                               const WeightedHypergraph& B) {
  const int k = A.k();
  const int nb = B.vertex_count();
  double kfact = static_cast<double>(hhb::factorial(k));
  std::map<Multiset, double> acc;
  for (const auto& [tau, w] : A.faces()) {
    for (const auto& [tau2, w2] : B.faces()) {
      std::vector<int> pos(k);
      std::iota(pos.begin(), pos.end(), 0);
      do {
        std::vector<int> paired(k);
        for (int i = 0; i < k; ++i)
          paired[i] = tau.slots()[i] * nb + tau2.slots()[pos[i]];
        acc[Multiset(paired)] += w * w2 / kfact;
      } while (std::next_permutation(pos.begin(), pos.end()));
    }
  }
  return acc;
}

WeightedHypergraph random_hypergraph(std::mt19937_64& rng, int max_v, int k) {
  std::uniform_int_distribution<int> vdist(2, max_v);
  int nv = vdist(rng);
  std::vector<std::string> labels;
  for (int v = 0; v < nv; ++v) labels.push_back("v" + std::to_string(v));
  std::vector<Multiset> all;
  std::vector<int> slots(k, 0);
  std::function<void(int, int)> gen = [&](int from, int depth) {
    if (depth == k) {
      all.push_back(Multiset(slots));
      return;
    }
    for (int v = from; v < nv; ++v) {
      slots[depth] = v;
      gen(v, depth + 1);
    }
  };
  gen(0, 0);
  std::uniform_real_distribution<double> wdist(0.05, 1.0);
  std::vector<std::pair<Multiset, double>> faces;
  for (const auto& f : all)
    if (rng() % 2) faces.emplace_back(f, wdist(rng));
  if (faces.empty()) faces.emplace_back(all[rng() % all.size()], 1.0);
  return WeightedHypergraph::build_normalized(k, std::move(labels), faces);
}

}  // namespace

TEST_CASE("product of two single edges splits into the two pairings") {
  auto P = hhb::tensor_product(single_edge(), single_edge());
  REQUIRE(P.k() == 2);
  REQUIRE(P.vertex_count() == 4);
  REQUIRE(P.labels()[0] == "(a,a)");
  REQUIRE(P.labels()[3] == "(b,b)");
  REQUIRE(P.faces().size() == 2);
  // (a,a)-(b,b) and (a,b)-(b,a), half the mass each.
  REQUIRE(P.weight(Multiset({0, 3})) == Catch::Approx(0.5).margin(1e-15));
  REQUIRE(P.weight(Multiset({1, 2})) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("loops collapse pairings that agree after canonicalization") {
  auto loop = WeightedHypergraph::build(2, {"u"}, {{Multiset({0, 0}), 1.0}});
  auto P = hhb::tensor_product(loop, single_edge());
  REQUIRE(P.vertex_count() == 2);
  REQUIRE(P.faces().size() == 1);
  REQUIRE(P.weight(Multiset({0, 1})) == Catch::Approx(1.0).margin(1e-15));
  auto L2 = hhb::tensor_product(loop, loop);
  REQUIRE(L2.faces().size() == 1);
  REQUIRE(L2.weight(Multiset({0, 0})) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("first tensor power is the hypergraph itself") {
  auto X = biased_triangle();
  auto P = hhb::tensor_power(X, 1);
  REQUIRE(P.labels() == X.labels());
  REQUIRE(P.faces() == X.faces());
  REQUIRE_THROWS_AS(hhb::tensor_power(X, 0), hhb::InputError);
}

TEST_CASE("product matches an independent all-orderings enumeration") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 12; ++trial) {
    int k = 2 + static_cast<int>(rng() % 2);
    auto A = random_hypergraph(rng, 3, k);
    auto B = random_hypergraph(rng, 3, k);
    auto P = hhb::tensor_product(A, B);
    auto naive = naive_product_faces(A, B);
    REQUIRE(P.faces().size() == naive.size());
    for (const auto& [sigma, w] : naive)
      REQUIRE(P.weight(sigma) == Catch::Approx(w).margin(1e-12));
  }
}

TEST_CASE("product vertex measure is the product of the vertex measures") {
  auto A = biased_triangle();
  auto P = hhb::tensor_product(A, A);
  auto mu1A = A.induced_measure(1);
  auto mu1P = P.induced_measure(1);
  int nb = A.vertex_count();
  for (int u = 0; u < nb; ++u)
    for (int v = 0; v < nb; ++v) {
      double expect = mu1A.mass(Multiset({u})) * mu1A.mass(Multiset({v}));
      REQUIRE(mu1P.mass(Multiset({u * nb + v})) == Catch::Approx(expect).margin(1e-12));
    }
}

TEST_CASE("skeleton spectrum of a product is the pairwise eigenvalue products") {
  auto A = WeightedHypergraph::build(2, {"0", "1"},
                                     {{Multiset({0, 0}), 0.1},
                                      {Multiset({0, 1}), 0.6},
                                      {Multiset({1, 1}), 0.3}});
  auto B = triangle_k3();
  auto specA = hhb::spectrum(hhb::SkeletonOperator::from_graph(A));
  auto specB = hhb::spectrum(hhb::SkeletonOperator::from_graph(B));
  auto P = hhb::tensor_product(A, B);
  auto specP = hhb::spectrum(hhb::SkeletonOperator::from_graph(P.skeleton()));
  std::vector<double> expected;
  for (double x : specA.eigenvalues)
    for (double y : specB.eigenvalues) expected.push_back(x * y);
  std::sort(expected.rbegin(), expected.rend());
  REQUIRE(specP.eigenvalues.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    REQUIRE(specP.eigenvalues[i] == Catch::Approx(expected[i]).margin(1e-8));
  // Same law one level up: the skeleton of a 3-uniform product.
  auto X = biased_triangle();
  auto PX = hhb::tensor_product(X, X);
  auto specX = hhb::spectrum(hhb::SkeletonOperator::from_graph(X.skeleton()));
  auto specPX = hhb::spectrum(hhb::SkeletonOperator::from_graph(PX.skeleton()));
  std::vector<double> expX;
  for (double x : specX.eigenvalues)
    for (double y : specX.eigenvalues) expX.push_back(x * y);
  std::sort(expX.rbegin(), expX.rend());
  for (std::size_t i = 0; i < expX.size(); ++i)
    REQUIRE(specPX.eigenvalues[i] == Catch::Approx(expX[i]).margin(1e-8));
}

TEST_CASE("power-free bound agrees with the bound of the explicit power") {
  auto K3 = triangle_k3();
  auto direct = hhb::hoffman_bound(hhb::tensor_power(K3, 2));
  auto predicted = hhb::tensor_bound(K3, 2);
  REQUIRE(direct.bound == Catch::Approx(predicted.bound).margin(1e-8));
  REQUIRE(direct.lambdas[0] == Catch::Approx(predicted.lambdas[0]).margin(1e-8));
  REQUIRE(predicted.bound == Catch::Approx(1.0 / 3.0).margin(1e-9));
}

TEST_CASE("face cap aborts oversized products") {
  std::vector<std::pair<Multiset, double>> faces;
  for (int v = 0; v < 5; ++v) faces.emplace_back(Multiset({v, (v + 1) % 5}), 0.2);
  auto C5 = WeightedHypergraph::build(2, {"0", "1", "2", "3", "4"}, faces);
  REQUIRE_THROWS_AS(hhb::tensor_product(C5, C5, 10), hhb::ResourceError);
  REQUIRE_NOTHROW(hhb::tensor_product(C5, C5, 100));
}
