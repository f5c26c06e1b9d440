#pragma once

// JSON description of box-like iterated function systems.
//
//   {"dimension": 2, "label": "...",
//    "maps": [{"matrix": [[...], ...] | {"perm": [...], "scalars": [...]},
//              "translation": [...]}, ...]}
//
// Numbers may be JSON numbers or strings "p/q", "-p/q", "p" or a decimal
// literal. Permutations are 1-indexed images: perm[j] = pi(j).

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "boxlike/dimension.hpp"
#include "boxlike/error.hpp"
#include "boxlike/gpmat.hpp"
#include "boxlike/matrix.hpp"

namespace boxlike {

struct AffineMapSpec {
  GenPermMatrix linear;
  std::vector<double> translation;

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> y(translation);
    for (std::size_t j = 0; j < linear.dim(); ++j) y[linear.image(j)] += linear.scalar(j) * x[j];
    return y;
  }

  friend bool operator==(const AffineMapSpec&, const AffineMapSpec&) = default;
};

struct IFSSpec {
  std::size_t dim = 0;
  std::vector<AffineMapSpec> maps;
  std::optional<std::string> label;

  std::vector<GenPermMatrix> linear_parts() const {
    std::vector<GenPermMatrix> out;
    out.reserve(maps.size());
    for (const auto& m : maps) out.push_back(m.linear);
    return out;
  }

  friend bool operator==(const IFSSpec&, const IFSSpec&) = default;
};

namespace detail {

using nlohmann::json;

inline std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw Error(Errc::parse_error, "bad number \"" + std::string(whole) + "\"");
  return v;
}

/// Exact rational "p/q" converted with one correctly rounded division.
inline double parse_number_string(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const std::int64_t p = parse_integer(text.substr(0, slash), text);
    const std::int64_t q = parse_integer(text.substr(slash + 1), text);
    if (q == 0) throw Error(Errc::parse_error, "zero denominator in \"" + std::string(text) + "\"");
    constexpr std::int64_t exact = std::int64_t{1} << 53;
    if (p > exact || p < -exact || q > exact || q < -exact)
      throw Error(Errc::parse_error, "rational component too large in \"" + std::string(text) + "\"");
    return static_cast<double>(p) / static_cast<double>(q);
  }
  const std::string owned(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(owned, &used);
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "bad number \"" + owned + "\"");
  }
  if (used != owned.size() || !std::isfinite(v)) throw Error(Errc::parse_error, "bad number \"" + owned + "\"");
  return v;
}

inline double parse_real(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_number_string(j.get<std::string>());
  throw Error(Errc::parse_error, "expected a number or rational string");
}

inline std::vector<double> parse_real_array(const json& j, std::string_view what) {
  if (!j.is_array()) throw Error(Errc::parse_error, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(parse_real(x));
  return out;
}

inline GenPermMatrix parse_linear(const json& j, std::size_t dim) {
  if (j.is_array()) {
    if (j.size() != dim) throw Error(Errc::dimension_mismatch, "matrix row count differs from dimension");
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const std::vector<double> row = parse_real_array(j[i], "matrix row");
      if (row.size() != dim) throw Error(Errc::dimension_mismatch, "matrix row length differs from dimension");
      for (std::size_t c = 0; c < dim; ++c) m(i, c) = row[c];
    }
    return from_dense(m);
  }
  if (j.is_object()) {
    if (!j.contains("perm") || !j.contains("scalars"))
      throw Error(Errc::parse_error, "matrix object needs \"perm\" and \"scalars\"");
    const json& perm_json = j.at("perm");
    if (!perm_json.is_array()) throw Error(Errc::parse_error, "perm must be an array");
    std::vector<std::size_t> perm;
    for (const auto& p : perm_json) {
      if (!p.is_number_integer()) throw Error(Errc::parse_error, "perm entries must be integers");
      const auto v = p.get<std::int64_t>();
      if (v < 1 || static_cast<std::size_t>(v) > dim)
        throw Error(Errc::not_generalized_permutation, "perm entry out of range");
      perm.push_back(static_cast<std::size_t>(v - 1));
    }
    std::vector<double> scalars = parse_real_array(j.at("scalars"), "scalars");
    if (perm.size() != dim || scalars.size() != dim)
      throw Error(Errc::dimension_mismatch, "perm/scalars length differs from dimension");
    return {std::move(perm), std::move(scalars)};
  }
  throw Error(Errc::parse_error, "matrix must be an array of rows or a {perm, scalars} object");
}

}  // namespace detail

/// Checks shared dimension and contraction of every map.
inline void validate(const IFSSpec& spec) {
  if (spec.dim == 0) throw Error(Errc::parse_error, "dimension must be positive");
  if (spec.maps.empty()) throw Error(Errc::empty_system, "system has no maps");
  for (const auto& m : spec.maps) {
    if (m.linear.dim() != spec.dim || m.translation.size() != spec.dim)
      throw Error(Errc::dimension_mismatch, "map dimension differs from system dimension");
    for (double v : m.translation)
      if (!std::isfinite(v)) throw Error(Errc::parse_error, "translation must be finite");
  }
  const auto linear = spec.linear_parts();
  check_contractive(linear);
}

inline IFSSpec parse_ifs(std::string_view text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
  if (!doc.is_object()) throw Error(Errc::parse_error, "document must be a JSON object");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
    throw Error(Errc::parse_error, "\"dimension\" must be an integer");
  const auto dim = doc["dimension"].get<std::int64_t>();
  if (dim < 1) throw Error(Errc::parse_error, "\"dimension\" must be positive");
  if (!doc.contains("maps") || !doc["maps"].is_array()) throw Error(Errc::parse_error, "\"maps\" must be an array");

  IFSSpec spec;
  spec.dim = static_cast<std::size_t>(dim);
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw Error(Errc::parse_error, "\"label\" must be a string");
    spec.label = doc["label"].get<std::string>();
  }
  for (const auto& m : doc["maps"]) {
    if (!m.is_object() || !m.contains("matrix") || !m.contains("translation"))
      throw Error(Errc::parse_error, "each map needs \"matrix\" and \"translation\"");
    GenPermMatrix linear = detail::parse_linear(m["matrix"], spec.dim);
    std::vector<double> translation = detail::parse_real_array(m["translation"], "translation");
    spec.maps.push_back({std::move(linear), std::move(translation)});
  }
  validate(spec);
  return spec;
}

inline std::string serialize_ifs(const IFSSpec& spec, int indent = 2) {
  using detail::json;
  json doc;
  doc["dimension"] = spec.dim;
  if (spec.label) doc["label"] = *spec.label;
  doc["maps"] = json::array();
  for (const auto& m : spec.maps) {
    json perm = json::array();
    for (std::size_t p : m.linear.perm()) perm.push_back(p + 1);
    json scalars(std::vector<double>(m.linear.scalars().begin(), m.linear.scalars().end()));
    doc["maps"].push_back({{"matrix", {{"perm", perm}, {"scalars", scalars}}}, {"translation", m.translation}});
  }
  return doc.dump(indent);
}

inline constexpr std::string_view kExample1 = R"({
  "dimension": 2,
  "label": "example1",
  "maps": [
    {"matrix": [["-13/27", 0], [0, "7/9"]], "translation": ["13/27", "2/9"]},
    {"matrix": [[0, "13/27"], ["7/9", 0]], "translation": ["14/27", 0]}
  ]
})";

inline constexpr std::string_view kExample2 = R"({
  "dimension": 2,
  "label": "example2",
  "maps": [
    {"matrix": [["1/3", 0], [0, "2/3"]], "translation": ["2/3", 0]},
    {"matrix": [["-2/3", 0], [0, "-1/3"]], "translation": ["2/3", 1]},
    {"matrix": [[0, "2/9"], ["-1/3", 0]], "translation": ["2/3", 1]},
    {"matrix": [[0, "4/9"], ["-1/3", 0]], "translation": ["2/9", "2/3"]}
  ]
})";

inline std::map<std::string, IFSSpec> builtin_examples() {
  return {{"example1", parse_ifs(kExample1)}, {"example2", parse_ifs(kExample2)}};
}

/// A builtin name, or else a path to a JSON file.
inline IFSSpec load_ifs(const std::string& name_or_path) {
  auto builtins = builtin_examples();
  if (auto it = builtins.find(name_or_path); it != builtins.end()) return it->second;
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open \"" + name_or_path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ifs(buf.str());
}

}  // namespace boxlike
