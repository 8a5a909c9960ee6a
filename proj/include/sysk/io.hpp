#pragma once

// JSON configs in, JSON reports out. Integers stay exact: big values are
// written as decimal strings, fractions as [num, den].

#include "sysk/checks.hpp"
#include "sysk/coefficients.hpp"
#include "sysk/errors.hpp"
#include "sysk/groups.hpp"
#include "sysk/kzero.hpp"
#include "sysk/rings.hpp"

#include <json.hpp>

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace sysk::io {

using json = nlohmann::ordered_json;

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::int64_t int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ConfigError(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

inline std::vector<std::int64_t> int_list(const json& j) {
  if (!j.is_array()) throw ConfigError("expected an integer array");
  std::vector<std::int64_t> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ConfigError("expected an integer array");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

inline std::vector<std::vector<std::int64_t>> int_matrix(const json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of integer arrays");
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& row : j) out.push_back(int_list(row));
  return out;
}

/// A degree is an integer (rank one) or an integer array.
inline GroupElement element(const json& j) {
  if (j.is_number_integer()) return GroupElement{j.get<std::int64_t>()};
  return GroupElement(int_list(j));
}

inline std::vector<GroupElement> elements(const json& j) {
  if (!j.is_array()) throw ConfigError("expected a list of degrees");
  std::vector<GroupElement> out;
  for (const auto& x : j) out.push_back(element(x));
  return out;
}

inline Group parse_group(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "free_abelian") return Group::free_abelian(static_cast<std::size_t>(int_field(j, "rank")));
  if (kind == "cyclic") return Group::cyclic(static_cast<std::size_t>(int_field(j, "order")));
  if (kind == "finite_table") {
    std::vector<std::vector<std::size_t>> t;
    for (const auto& row : int_matrix(field(j, "table"))) t.emplace_back(row.begin(), row.end());
    return Group::finite_table(t);
  }
  if (kind == "semidirect")
    return Group::semidirect(parse_group(field(j, "n")), parse_group(field(j, "h")),
                             j.value("action", std::string("trivial")));
  if (kind == "direct_product") return Group::direct_product(parse_group(field(j, "n")), parse_group(field(j, "h")));
  if (kind == "extension") {
    const json& g = field(j, "g");
    std::size_t rank = g.is_number_integer() ? g.get<std::size_t>() : parse_group(g).encoding_size();
    if (g.is_object() && parse_group(g).kind() != Group::Kind::FreeAbelian)
      throw ConfigError("extensions are taken inside a free abelian group");
    lattice::IntMatrix basis;
    for (const auto& row : int_matrix(field(j, "n_basis"))) basis.emplace_back(row.begin(), row.end());
    return Group::extension(rank, basis);
  }
  throw ConfigError("unknown group kind '" + kind + "'");
}

inline RingPtr parse_ring(const json& j, const Group& declared) {
  const std::string kind = field(j, "kind").get<std::string>();
  auto cone = j.contains("support_cone") ? int_matrix(j.at("support_cone")) : std::vector<std::vector<std::int64_t>>{};
  if (kind == "power_localization") {
    auto r = std::make_shared<const PowerLocalization>(int_field(j, "s"));
    if (!declared.same_as(r->grading()) && declared.encoding_size() != 1)
      throw ConfigError("power localizations are graded by Z");
    return r;
  }
  const Coefficients base = Coefficients::parse(j.value("base", std::string("Z")));
  if (kind == "monoid_ring" || kind == "laurent_group_ring") {
    if (j.contains("group") && !parse_group(j.at("group")).same_as(declared))
      throw ConfigError("group of the ring differs from the declared group");
    if (kind == "laurent_group_ring" && !cone.empty()) throw ConfigError("group rings carry no support cone");
    const std::string rule = j.value("rule", std::string("graded"));
    if (rule != "graded" && rule != "filtered") throw ConfigError("rule must be graded or filtered");
    return std::make_shared<const MonoidRing>(
        base, declared, cone, rule == "filtered" ? MonoidRing::Rule::Filtered : MonoidRing::Rule::Graded);
  }
  if (kind == "skew_group_ring") {
    // B[A] x| H with A a cone monoid in N: the monoid ring of N+ x| H
    Group g = Group::semidirect(parse_group(field(j, "n")), parse_group(field(j, "h")),
                                j.value("action", std::string("trivial")));
    if (!g.same_as(declared)) throw ConfigError("group of the ring differs from the declared group");
    return std::make_shared<const MonoidRing>(base, g, cone);
  }
  throw ConfigError("unknown ring kind '" + kind + "'");
}

inline json to_json(const Int& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline json to_json(const Rational& q) {
  if (denominator(q) == 1) return to_json(numerator(q));
  return json::array({to_json(numerator(q)), to_json(denominator(q))});
}

inline json to_json(const GroupElement& g) {
  json a = json::array();
  for (auto c : g.coords) a.push_back(c);
  return a;
}

/// [[coefficient, exponent], ...]
inline json to_json(const RingElem& x) {
  json a = json::array();
  for (const auto& [m, c] : x.terms()) a.push_back(json::array({to_json(c), to_json(m)}));
  return a;
}

inline json to_json(const RMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const Label& l) {
  json o;
  json parts = json::array();
  for (const auto& p : l.parts) parts.push_back(to_json(p));
  o["parts"] = parts;
  if (l.index != 0 || l.parts.empty()) o["index"] = l.index;
  return o;
}

inline json to_json(const K0Element& x) {
  json a = json::array();
  for (const auto& [l, c] : x.coeffs) a.push_back(json::array({to_json(c), to_json(l)}));
  return a;
}

inline json to_json(const K0Group& g) {
  json o;
  o["rank"] = g.rank();
  json snf = json::array();
  for (const auto& d : g.invariants()) snf.push_back(to_json(d));
  o["snf"] = snf;
  json tor = json::array();
  for (const auto& d : g.torsion()) tor.push_back(to_json(d));
  o["torsion"] = tor;
  json labels = json::array();
  for (const auto& l : g.labels()) labels.push_back(l.to_string());
  o["labels"] = labels;
  o["relations"] = g.relations().size();
  o["summary"] = g.summary();
  return o;
}

inline json to_json(const Check& c) {
  return json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"seed", c.seed}};
}

inline json to_json(const std::vector<Check>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(to_json(c));
  return a;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace sysk::io
