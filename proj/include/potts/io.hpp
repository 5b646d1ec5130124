#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "potts/lattice.hpp"
#include "potts/numtheory.hpp"
#include "potts/oracle.hpp"
#include "potts/spectrum.hpp"
#include "potts/verify.hpp"

namespace potts::io {

using json = nlohmann::ordered_json;

inline json to_json(const BigRat& r) { return r.to_string(); }

/// Coefficient array, index = power of Q.
inline json to_json(const PolyQ& p) {
  json arr = json::array();
  for (const auto& c : p.coefficients()) arr.push_back(c.to_string());
  return arr;
}

inline BigRat bigrat_from_json(const json& j) { return BigRat::parse(j.get<std::string>()); }

inline PolyQ polyq_from_json(const json& j) {
  std::vector<BigRat> cs;
  for (const auto& c : j) cs.push_back(bigrat_from_json(c));
  return PolyQ(std::move(cs));
}

inline json to_json(const ComplexF& z) { return json::array({z.real(), z.imag()}); }

inline json describe_graph(const TorusGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    const char* family = e.family == EdgeFamily::kLongitudinal ? "longitudinal"
                         : e.family == EdgeFamily::kTransverse ? "transverse"
                                                               : "diagonal";
    edges.push_back({{"u", e.u}, {"v", e.v}, {"disp", {e.dx, e.dy}}, {"family", family}, {"coupling", to_json(e.coupling)}});
  }
  return {{"lattice", to_string(g.kind())},
          {"width", g.width()},
          {"length", g.length()},
          {"vertices", g.vertex_count()},
          {"homogeneous", g.homogeneous()},
          {"edges", edges}};
}

template <class S>
json table_to_json(const RestrictedZTable<S>& t) {
  json rows = json::array();
  for (const auto& [key, value] : t.z) rows.push_back({{"j", key.first}, {"n1", key.second}, {"value", to_json(value)}});
  return rows;
}

template <class S>
json characters_to_json(const OracleCharacters<S>& k) {
  json level = json::array();
  for (std::size_t l = 0; l < k.level.size(); ++l) level.push_back({{"l", l}, {"value", to_json(k.level[l])}});
  json cls = json::array();
  for (const auto& [key, value] : k.cls) cls.push_back({{"d", key.first}, {"n1", key.second}, {"value", to_json(value)}});
  return {{"K_level", level}, {"K_class", cls}};
}

inline json stats_to_json(const EnumerationStats& s) {
  return {{"subsets", s.subsets}, {"violations", s.violations}, {"max_cross", s.max_cross}, {"max_j_n1", s.max_j_n1}};
}

inline json check_to_json(const Check& c) {
  json j = {{"id", c.id}, {"kind", c.exact ? "exact" : "numeric"}, {"pass", c.pass}};
  if (c.exact) {
    j["residual"] = c.residual;
  } else {
    j["residual"] = c.numeric_residual;
    j["tolerance"] = c.tolerance;
  }
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline json report_to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c));
  return {{"subject", r.subject}, {"mode", r.mode}, {"passed", r.passed()}, {"failures", r.failures()}, {"checks", checks}};
}

inline json spectrum_to_json(const SectorSpectrum& s) {
  json ev = json::array();
  for (const auto& e : s.eigenvalues) ev.push_back(to_json(e));
  return {{"level", s.l},
          {"irrep", s.k},
          {"dimension", s.dimension},
          {"power", s.power},
          {"power_sum", to_json(s.power_sum())},
          {"projector_idempotence", s.projector_idempotence},
          {"eigenvalues", ev}};
}

/// CSV cell quoting for strings that may contain commas.
inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace potts::io
