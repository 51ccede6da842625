#pragma once

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hhb/errors.hpp"
#include "hhb/format.hpp"
#include "hhb/hypergraph.hpp"
#include "hhb/kpartite.hpp"
#include "hhb/support.hpp"
#include "hhb/symmetry.hpp"

namespace hhb {

namespace detail {

inline nlohmann::json parse_json(const std::string& text, const char* what) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw InputError(std::string("malformed JSON in ") + what);
  return j;
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string("missing field \"") + name + "\"");
  return *it;
}

inline int as_int(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer())
    throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline double as_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number())
    throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

inline std::vector<int> as_int_array(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(as_int(e, what));
  return out;
}

}  // namespace detail

/// ---- hypergraph files ----
/// {"k": 3, "vertices": ["a", ...], "faces": [{"m": [0,1,1], "w": 0.9}, ...]}
/// Parsing canonicalizes face order and vertex order inside each face, merges
/// duplicate multisets, drops zero weights, rejects negative weights, and
/// checks the weight sum against 1 within 1e-9.

inline WeightedHypergraph parse_hypergraph(const std::string& text) {
  auto j = detail::parse_json(text, "hypergraph file");
  int k = detail::as_int(detail::field(j, "k"), "\"k\"");
  const auto& jv = detail::field(j, "vertices");
  if (!jv.is_array()) throw InputError("\"vertices\" must be an array");
  std::vector<std::string> labels;
  for (const auto& e : jv) {
    if (!e.is_string()) throw InputError("vertex labels must be strings");
    labels.push_back(e.get<std::string>());
  }
  const auto& jf = detail::field(j, "faces");
  if (!jf.is_array()) throw InputError("\"faces\" must be an array");
  std::vector<std::pair<Multiset, double>> faces;
  for (const auto& e : jf) {
    auto m = detail::as_int_array(detail::field(e, "m"), "face \"m\"");
    double w = detail::as_number(detail::field(e, "w"), "face \"w\"");
    faces.emplace_back(Multiset(std::move(m)), w);
  }
  return WeightedHypergraph::build(k, std::move(labels), faces, true);
}

/// Canonical serialization: faces sorted lexicographically by their ascending
/// slot lists, weights printed with 17 significant digits.
inline std::string serialize_hypergraph(const WeightedHypergraph& X) {
  std::ostringstream out;
  out << "{\n  \"k\": " << X.k() << ",\n  \"vertices\": [";
  for (std::size_t i = 0; i < X.labels().size(); ++i) {
    if (i) out << ", ";
    out << '"' << json_escape(X.labels()[i]) << '"';
  }
  out << "],\n  \"faces\": [";
  bool first = true;
  for (const auto& [sigma, w] : X.faces()) {
    out << (first ? "\n" : ",\n") << "    {\"m\": [";
    first = false;
    for (std::size_t i = 0; i < sigma.slots().size(); ++i) {
      if (i) out << ", ";
      out << sigma.slots()[i];
    }
    out << "], \"w\": " << fmt_g17(w) << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

/// ---- k-partite files ----
/// {"parts": [["a","b"], ...], "faces": [{"t": [0,1,0], "w": 0.25}, ...]}

inline KPartiteSpec parse_kpartite(const std::string& text) {
  auto j = detail::parse_json(text, "k-partite file");
  const auto& jp = detail::field(j, "parts");
  if (!jp.is_array()) throw InputError("\"parts\" must be an array");
  KPartiteSpec spec;
  for (const auto& part : jp) {
    if (!part.is_array()) throw InputError("each part must be an array of labels");
    std::vector<std::string> names;
    for (const auto& e : part) {
      if (!e.is_string()) throw InputError("vertex labels must be strings");
      names.push_back(e.get<std::string>());
    }
    spec.parts.push_back(std::move(names));
  }
  const auto& jf = detail::field(j, "faces");
  if (!jf.is_array()) throw InputError("\"faces\" must be an array");
  for (const auto& e : jf) {
    auto t = detail::as_int_array(detail::field(e, "t"), "face \"t\"");
    double w = detail::as_number(detail::field(e, "w"), "face \"w\"");
    if (w == 0.0) continue;
    spec.faces[t] += w;
  }
  spec.validate();
  return spec;
}

inline std::string serialize_kpartite(const KPartiteSpec& spec) {
  std::ostringstream out;
  out << "{\n  \"parts\": [";
  for (std::size_t i = 0; i < spec.parts.size(); ++i) {
    if (i) out << ", ";
    out << '[';
    for (std::size_t v = 0; v < spec.parts[i].size(); ++v) {
      if (v) out << ", ";
      out << '"' << json_escape(spec.parts[i][v]) << '"';
    }
    out << ']';
  }
  out << "],\n  \"faces\": [";
  bool first = true;
  for (const auto& [t, w] : spec.faces) {
    out << (first ? "\n" : ",\n") << "    {\"t\": [";
    first = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out << ", ";
      out << t[i];
    }
    out << "], \"w\": " << fmt_g17(w) << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

/// ---- symmetry files ----
/// {"generators": [[2,0,1,...], ...]} (image of each vertex index in order)

inline SymmetrySpec parse_symmetry(const std::string& text) {
  auto j = detail::parse_json(text, "symmetry file");
  const auto& jg = detail::field(j, "generators");
  if (!jg.is_array()) throw InputError("\"generators\" must be an array");
  SymmetrySpec sym;
  for (const auto& e : jg)
    sym.generators.push_back(detail::as_int_array(e, "generator"));
  return sym;
}

inline std::string serialize_symmetry(const SymmetrySpec& sym) {
  std::ostringstream out;
  out << "{\n  \"generators\": [";
  for (std::size_t g = 0; g < sym.generators.size(); ++g) {
    out << (g ? ",\n" : "\n") << "    [";
    for (std::size_t i = 0; i < sym.generators[g].size(); ++i) {
      if (i) out << ", ";
      out << sym.generators[g][i];
    }
    out << ']';
  }
  out << "\n  ]\n}\n";
  return out.str();
}

/// ---- optimizer support files ----
/// Hypergraph format plus "nu": one target vertex measure per vertex. Face
/// weights are optional and ignored; only the support multisets matter.

inline SupportSpec parse_support(const std::string& text) {
  auto j = detail::parse_json(text, "support file");
  SupportSpec s;
  s.k = detail::as_int(detail::field(j, "k"), "\"k\"");
  const auto& jv = detail::field(j, "vertices");
  if (!jv.is_array()) throw InputError("\"vertices\" must be an array");
  for (const auto& e : jv) {
    if (!e.is_string()) throw InputError("vertex labels must be strings");
    s.labels.push_back(e.get<std::string>());
  }
  const auto& jf = detail::field(j, "faces");
  if (!jf.is_array()) throw InputError("\"faces\" must be an array");
  std::set<Multiset> seen;
  for (const auto& e : jf) {
    Multiset m(detail::as_int_array(detail::field(e, "m"), "face \"m\""));
    if (seen.insert(m).second) s.faces.push_back(std::move(m));
  }
  std::sort(s.faces.begin(), s.faces.end());
  const auto& jn = detail::field(j, "nu");
  if (!jn.is_array()) throw InputError("\"nu\" must be an array");
  for (const auto& e : jn) s.nu.push_back(detail::as_number(e, "\"nu\" entry"));
  s.validate();
  return s;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
}

}  // namespace hhb
