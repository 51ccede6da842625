// hhb: spectral certificates for independent sets in weighted uniform
// hypergraphs. Subcommands cover inspection, the product-form eigenvalue
// bound (with tensor-power and symmetry-restricted variants), exact
// brute-force checks, explicit tensor powers, weight optimization, and a
// catalog of built-in models.
//
// Exit codes: 0 success, 1 usage, 2 invalid input, 3 resource/infeasible,
// 4 symmetry violation.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hhb/hhb.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitSymmetry = 4;

std::string witness_string(const hhb::Multiset& w,
                           const std::vector<std::string>& labels) {
  if (w.empty()) return "(empty)";
  std::string out = "[";
  const auto& slots = w.slots();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i) out += ", ";
    out += labels[slots[i]];
  }
  return out + "]";
}

void print_report_human(const hhb::BoundReport& r,
                        const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < r.lambdas.size(); ++i) {
    std::cout << "lambda_" << i << " = " << hhb::fmt_f9(r.lambdas[i]);
    if (i == 0 && r.conditional_symmetry)
      std::cout << "  (invariant restriction)";
    else
      std::cout << "  witness " << witness_string(r.witnesses[i], labels);
    std::cout << "\n";
  }
  std::cout << "product = " << hhb::fmt_f9(r.product) << "\n";
  std::cout << "bound = " << hhb::fmt_f9(r.bound) << "\n";
  if (r.degenerate)
    std::cout << "degenerate: a factor 1 - lambda_i vanished; bound forced to 1\n";
  if (r.tensor_stable)
    std::cout << "tensor-stable: the bound persists under every tensor power\n";
  if (r.conditional_symmetry)
    std::cout << "conditional: valid for symmetry-invariant independent sets\n";
}

int run_info(const std::string& file, bool kpartite) {
  std::string text = hhb::read_file(file);
  if (kpartite) {
    hhb::KPartiteSpec spec = hhb::parse_kpartite(text);
    std::cout << "k=" << spec.k();
    for (int i = 0; i < spec.k(); ++i)
      std::cout << ", |V" << i + 1 << "|=" << spec.parts[i].size();
    std::cout << ", faces=" << spec.faces.size() << "\n";
    return 0;
  }
  hhb::WeightedHypergraph X = hhb::parse_hypergraph(text);
  std::cout << "k=" << X.k() << ", |V|=" << X.vertex_count();
  for (int i = X.k(); i >= 1; --i)
    std::cout << ", |X^(" << i << ")|=" << X.induced_measure(i).masses.size();
  std::cout << ", residual=" << hhb::fmt_g17(std::abs(X.weight_sum() - 1.0)) << "\n";
  return 0;
}

int run_bound(const std::string& file, const std::string& symmetry_file,
              bool tensor_given, int tensor_n, bool json) {
  hhb::WeightedHypergraph X = hhb::parse_hypergraph(hhb::read_file(file));
  hhb::BoundReport r;
  if (!symmetry_file.empty()) {
    hhb::SymmetrySpec sym = hhb::parse_symmetry(hhb::read_file(symmetry_file));
    r = hhb::symmetric_hoffman_bound(X, sym);
  } else if (tensor_given) {
    r = hhb::tensor_bound(X, tensor_n);
  } else {
    r = hhb::hoffman_bound(X);
  }
  if (json)
    std::cout << hhb::bound_report_json(r);
  else
    print_report_human(r, X.labels());
  return 0;
}

int run_eigs(const std::string& file, int level) {
  hhb::WeightedHypergraph X = hhb::parse_hypergraph(hhb::read_file(file));
  auto print_level = [&](int i) {
    hhb::LevelMinimum lm = hhb::lambda_level(X, i);
    std::cout << "lambda_" << i << " = " << hhb::fmt_f9(lm.value) << "  witness "
              << witness_string(lm.witness, X.labels()) << "\n";
  };
  if (level >= 0)
    print_level(level);
  else
    for (int i = 0; i <= X.k() - 2; ++i) print_level(i);
  return 0;
}

int run_alpha(const std::string& file, int cap) {
  hhb::WeightedHypergraph X = hhb::parse_hypergraph(hhb::read_file(file));
  hhb::IndependenceResult r = hhb::brute_force_alpha(X, cap);
  std::cout << "alpha = " << hhb::fmt_f9(r.alpha) << "\n";
  std::cout << "witness = {";
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    if (i) std::cout << ", ";
    std::cout << X.labels()[r.witness[i]];
  }
  std::cout << "}\n";
  return 0;
}

int run_tensor(const std::string& file, int n, const std::string& out,
               std::size_t face_cap) {
  hhb::WeightedHypergraph X = hhb::parse_hypergraph(hhb::read_file(file));
  hhb::WeightedHypergraph P = hhb::tensor_power(X, n, face_cap);
  hhb::write_file(out, hhb::serialize_hypergraph(P));
  std::cout << "wrote " << out << ": k=" << P.k() << ", |V|=" << P.vertex_count()
            << ", faces=" << P.faces().size() << "\n";
  return 0;
}

int run_optimize(const std::string& file, int restarts, int iters,
                 std::uint64_t seed, bool json) {
  hhb::SupportSpec s = hhb::parse_support(hhb::read_file(file));
  hhb::OptimizerConfig config;
  config.restarts = restarts;
  config.iterations = iters;
  config.seed = seed;
  hhb::OptimizerResult r = hhb::optimize_weights(s, config);
  if (json) {
    std::cout << hhb::optimizer_result_json(r);
    return 0;
  }
  for (std::size_t i = 0; i < r.lambdas.size(); ++i)
    std::cout << "lambda_" << i << " = " << hhb::fmt_f9(r.lambdas[i]) << "\n";
  std::cout << "objective = " << hhb::fmt_f9(r.objective) << "\n";
  std::cout << "bound = " << hhb::fmt_f9(r.bound) << "\n";
  std::cout << "residual_marginal = " << hhb::fmt_g17(r.residual_marginal) << "\n";
  std::cout << "residual_normalization = " << hhb::fmt_g17(r.residual_normalization)
            << "\n";
  std::cout << "iterations = " << r.iterations << "\n";
  return 0;
}

struct CatalogArgs {
  double p = -1.0;
  int s = -1, n = -1, k = -1, m = -1, q = -1;
  std::string rows, rhs;
  bool exclude_degenerate = false;
};

std::vector<std::vector<int>> parse_rows(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::stringstream outer(text);
  std::string row;
  while (std::getline(outer, row, ';')) {
    std::vector<int> r;
    std::stringstream inner(row);
    std::string cell;
    while (std::getline(inner, cell, ',')) {
      try {
        r.push_back(std::stoi(cell));
      } catch (const std::exception&) {
        throw hhb::InputError("cannot parse coefficient \"" + cell + "\"");
      }
    }
    if (!r.empty()) rows.push_back(std::move(r));
  }
  return rows;
}

hhb::CatalogEntry make_entry(const std::string& name, const CatalogArgs& a) {
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw hhb::InputError(std::string("catalog ") + name + " needs " + what);
  };
  if (name == "ekr") {
    need(a.p > 0, "--p");
    return hhb::ekr_biased(a.p);
  }
  if (name == "matching") {
    need(a.s > 0 && a.p > 0, "--s and --p");
    return hhb::matching_hypergraph(a.s, a.p);
  }
  if (name == "frankl-biased") {
    need(a.p > 0, "--p");
    return hhb::frankl_triangle_biased(a.p);
  }
  if (name == "frankl-uniform") {
    need(a.n > 0 && a.k > 0, "--n and --k");
    return hhb::frankl_triangle_uniform(a.n, a.k);
  }
  if (name == "kwise") {
    need(a.k > 0 && a.p > 0, "--k and --p");
    return hhb::kwise_intersecting(a.k, a.p);
  }
  if (name == "mantel") {
    need(a.m > 0, "--m");
    return hhb::mantel(a.m);
  }
  if (name == "linsys") {
    need(a.q > 0 && !a.rows.empty() && !a.rhs.empty(), "--q, --rows and --rhs");
    auto rows = parse_rows(a.rows);
    std::vector<int> rhs;
    for (const auto& r : parse_rows(a.rhs)) {
      if (r.size() != 1) throw hhb::InputError("--rhs expects single values separated by ;");
      rhs.push_back(r[0]);
    }
    if (rows.empty()) throw hhb::InputError("--rows is empty");
    return hhb::linear_system_hypergraph(a.q, static_cast<int>(rows[0].size()), rows, rhs,
                                         a.exclude_degenerate);
  }
  throw hhb::InputError("unknown catalog model \"" + name + "\"");
}

std::string strip_json_suffix(const std::string& path) {
  const std::string suffix = ".json";
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return path.substr(0, path.size() - suffix.size());
  return path;
}

int run_catalog(const std::string& name, const CatalogArgs& args, const std::string& out) {
  hhb::CatalogEntry e = make_entry(name, args);
  if (!out.empty()) {
    hhb::write_file(out, hhb::serialize_hypergraph(e.hypergraph));
    std::cout << "wrote " << out << "\n";
    if (e.kpartite) {
      std::string kp = strip_json_suffix(out) + ".kpartite.json";
      hhb::write_file(kp, hhb::serialize_kpartite(*e.kpartite));
      std::cout << "wrote " << kp << "\n";
    }
    if (e.symmetry) {
      std::string sy = strip_json_suffix(out) + ".sym.json";
      hhb::write_file(sy, hhb::serialize_symmetry(*e.symmetry));
      std::cout << "wrote " << sy << "\n";
    }
  }
  std::cout << e.name;
  for (const auto& [key, val] : e.params) std::cout << " " << key << "=" << val;
  std::cout << ": |V|=" << e.hypergraph.vertex_count()
            << ", faces=" << e.hypergraph.faces().size() << "\n";
  bool all_ok = true;
  hhb::BoundReport computed = hhb::tensor_bound(e.hypergraph, 256);
  if (e.reference) {
    const auto& ref = *e.reference;
    // The reference bound is the tensor-stable value; the reference lambdas
    // are the plain per-level minima.
    bool ok = std::abs(computed.bound - ref.bound) <= ref.tol &&
              computed.lambdas.size() == ref.lambdas.size();
    hhb::BoundReport plain = hhb::hoffman_bound(e.hypergraph);
    for (std::size_t i = 0; ok && i < ref.lambdas.size(); ++i)
      ok = std::abs(plain.lambdas[i] - ref.lambdas[i]) <= ref.tol;
    all_ok = all_ok && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " reference bound " << hhb::fmt_f9(ref.bound)
              << " (computed " << hhb::fmt_f9(computed.bound) << ")\n";
    std::cout << "  " << ref.note << "\n";
  } else {
    hhb::BoundReport plain = hhb::hoffman_bound(e.hypergraph);
    std::cout << "PASS computed bound " << hhb::fmt_f9(plain.bound)
              << " (no closed-form reference for this model)\n";
  }
  if (e.symmetric_reference && e.symmetry) {
    const auto& ref = *e.symmetric_reference;
    hhb::BoundReport sym = hhb::symmetric_hoffman_bound(e.hypergraph, *e.symmetry);
    bool ok = std::abs(sym.bound - ref.bound) <= ref.tol;
    for (std::size_t i = 0; ok && i < ref.lambdas.size() && i < sym.lambdas.size(); ++i)
      ok = std::abs(sym.lambdas[i] - ref.lambdas[i]) <= ref.tol;
    all_ok = all_ok && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " symmetric bound " << hhb::fmt_f9(ref.bound)
              << " (computed " << hhb::fmt_f9(sym.bound) << ")\n";
    std::cout << "  " << ref.note << "\n";
  }
  return all_ok ? 0 : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral independence bounds for weighted uniform hypergraphs"};
  app.require_subcommand(1);

  std::string file, symmetry_file, out;
  bool kpartite = false, json = false, exclude_degenerate = false;
  int tensor_n = 1, level = -1, cap = hhb::kDefaultAlphaCap, power_n = 1;
  std::size_t face_cap = hhb::kDefaultTensorFaceCap;
  int restarts = 32, iters = 2000;
  std::uint64_t seed = 0;
  CatalogArgs cargs;
  std::string catalog_name;

  auto* info = app.add_subcommand("info", "Summarize a hypergraph file");
  info->add_option("file", file)->required();
  info->add_flag("--kpartite", kpartite, "Treat the file as a k-partite spec");

  auto* bound = app.add_subcommand("bound", "Product-form eigenvalue bound");
  bound->add_option("file", file)->required();
  auto* sopt = bound->add_option("--symmetry", symmetry_file,
                                 "Generator file: restrict lambda_0 to invariant functions");
  auto* topt = bound->add_option("--tensor", tensor_n,
                                 "Bound for the n-th tensor power (shortcut, no expansion)");
  sopt->excludes(topt);
  bound->add_flag("--json", json, "Emit the machine-readable report");

  auto* eigs = app.add_subcommand("eigs", "Per-level minimum eigenvalues with witnesses");
  eigs->add_option("file", file)->required();
  eigs->add_option("--level", level, "Single level to print (default: all)");

  auto* alpha = app.add_subcommand("alpha", "Exact brute-force independence number");
  alpha->add_option("file", file)->required();
  alpha->add_option("--cap", cap, "Support-size cap for the search (default 30)");

  auto* tensor = app.add_subcommand("tensor", "Write an explicit tensor power");
  tensor->add_option("file", file)->required();
  tensor->add_option("-n", power_n, "Exponent")->required();
  tensor->add_option("-o", out, "Output hypergraph file")->required();
  tensor->add_option("--max-faces", face_cap, "Face-count cap (default 1000000)");

  auto* optimize = app.add_subcommand("optimize", "Optimize face weights for a fixed "
                                      "support and vertex marginal");
  optimize->add_option("file", file)->required();
  optimize->add_option("--restarts", restarts, "Search restarts (default 32)");
  optimize->add_option("--iters", iters, "Iterations per restart (default 2000)");
  optimize->add_option("--seed", seed, "Deterministic seed (default 0)");
  optimize->add_flag("--json", json, "Emit the machine-readable result");

  auto* catalog = app.add_subcommand("catalog", "Built-in models with reference checks");
  catalog->add_option("name", catalog_name,
                      "ekr | matching | frankl-biased | frankl-uniform | kwise | "
                      "mantel | linsys")
      ->required();
  catalog->add_option("--p", cargs.p);
  catalog->add_option("--s", cargs.s);
  catalog->add_option("--n", cargs.n);
  catalog->add_option("--k", cargs.k);
  catalog->add_option("--m", cargs.m);
  catalog->add_option("--q", cargs.q);
  catalog->add_option("--rows", cargs.rows, "Coefficient rows, e.g. \"1,1,1;0,1,2\"");
  catalog->add_option("--rhs", cargs.rhs, "Right-hand sides, e.g. \"0;1\"");
  catalog->add_flag("--exclude-degenerate", cargs.exclude_degenerate,
                    "Drop single-vertex faces and renormalize");
  catalog->add_option("-o", out, "Write the hypergraph (and spec files) here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);  // --help
    app.exit(err);
    return kExitUsage;
  }

  try {
    if (*info) return run_info(file, kpartite);
    if (*bound) return run_bound(file, symmetry_file, topt->count() > 0, tensor_n, json);
    if (*eigs) return run_eigs(file, level);
    if (*alpha) return run_alpha(file, cap);
    if (*tensor) return run_tensor(file, power_n, out, face_cap);
    if (*optimize) return run_optimize(file, restarts, iters, seed, json);
    if (*catalog) return run_catalog(catalog_name, cargs, out);
  } catch (const hhb::SymmetryError& err) {
    std::cerr << "symmetry error: " << err.what() << "\n";
    return kExitSymmetry;
  } catch (const hhb::ResourceError& err) {
    std::cerr << "resource error: " << err.what() << "\n";
    return kExitResource;
  } catch (const hhb::InputError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInput;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
