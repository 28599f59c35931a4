#pragma once

// JSON encodings. Cyclotomic numbers are {"m": conductor, "coeffs": ["p/q", ...]}
// in the power basis of the smallest conductor; matrices are arrays of rows.

#include "eisspace.hpp"
#include "fourier.hpp"
#include "hecke.hpp"
#include "verify.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace siegel {

using Json = nlohmann::ordered_json;

inline Json to_json(const CycNum& x) {
  const CycNum s = x.simplified();
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(rational_to_string(c));
  return Json{{"m", s.conductor()}, {"coeffs", std::move(coeffs)}};
}

inline CycNum cycnum_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("coeffs") || !j.at("coeffs").is_array())
    throw std::invalid_argument("cyclotomic number must be {\"m\": int, \"coeffs\": [...]}");
  std::vector<Rational> c;
  for (const auto& v : j.at("coeffs")) {
    if (v.is_string()) c.push_back(parse_rational(v.get<std::string>()));
    else if (v.is_number_integer()) c.push_back(Rational(v.get<long>()));
    else throw std::invalid_argument("cyclotomic coefficient must be a string \"p/q\" or an integer");
  }
  return CycNum(j.at("m").get<int>(), std::move(c));
}

inline Json to_json(const CycMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CycMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  std::vector<CycVector> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw std::invalid_argument("matrix row must be an array");
    CycVector row;
    for (const auto& x : r) row.push_back(cycnum_from_json(x));
    if (!rows.empty() && row.size() != rows[0].size()) throw std::invalid_argument("ragged matrix");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return CycMatrix(0, 0);
  return CycMatrix::from_rows(rows);
}

inline Json to_json(const CycVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const Partition& p) { return Json{{"N0", p.n0}, {"N1", p.n1}, {"N2", p.n2}}; }

inline Partition partition_from_json(const Json& j) {
  return {j.at("N0").get<long>(), j.at("N1").get<long>(), j.at("N2").get<long>()};
}

inline Json to_json(const CanonicalForm& t, Group group) {
  const GramForm g = t.form;
  Json j{{"a", g.a}, {"b", g.b}, {"c", g.c}};
  if (group == Group::SL2) j["orient"] = t.orient;
  return j;
}

inline Json space_json(const EisSpace& space) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    Json p = to_json(space[i]);
    p["index"] = i;
    p["rank"] = space[i].total_rank();
    basis.push_back(std::move(p));
  }
  return Json{{"level", space.level()},
              {"weight", space.weight()},
              {"chi", space.character().spec_string()},
              {"dimension", space.dimension()},
              {"parity_ok", space.parity_ok()},
              {"basis", std::move(basis)}};
}

inline Json to_json(const EigenvalueComparison& c) {
  return Json{{"partition", to_json(c.partition)},
              {"op", c.op.name()},
              {"matrix_value", to_json(c.matrix_value)},
              {"closed_form", to_json(c.closed_form)},
              {"match", c.match}};
}

inline Json to_json(const EigenSystem& sys) {
  Json vecs = Json::array();
  for (const auto& v : sys.vectors) {
    Json ev = Json::object();
    for (const auto& op : sys.ops) ev[op.name()] = to_json(v.eigenvalues.at(op));
    vecs.push_back(Json{{"partition", to_json(v.label)}, {"coeffs", to_json(v.coeffs)}, {"eigenvalues", std::move(ev)}});
  }
  Json comp = Json::array();
  for (const auto& c : compare_eigenvalues(sys)) comp.push_back(to_json(c));
  return Json{{"space", space_json(*sys.space)}, {"eigenvectors", std::move(vecs)}, {"comparison", std::move(comp)}};
}

inline Json to_json(const VerificationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json params = Json::object();
    for (const auto& [k, v] : c.parameters) params[k] = v;
    checks.push_back(Json{{"name", c.name}, {"parameters", std::move(params)}, {"status", to_string(c.status)}, {"details", c.details}});
  }
  const auto& cfg = rep.config;
  return Json{{"config",
               {{"N_max", cfg.N_max},
                {"k_set", cfg.k_set},
                {"prime_max", cfg.prime_max},
                {"char_orders", cfg.char_orders},
                {"trials", cfg.trials},
                {"seed", cfg.seed}}},
              {"summary",
               {{"pass", rep.count(CheckStatus::pass)},
                {"fail", rep.count(CheckStatus::fail)},
                {"documented-mismatch", rep.count(CheckStatus::documented_mismatch)}}},
              {"checks", std::move(checks)}};
}

/// Mirrors the provider text format.
inline Json to_json(const FourierExpansion& f, long weight = 0) {
  Json entries = Json::array();
  auto forms = domain_forms(f.group(), f.det_bound(), f.rank1_bound());
  std::sort(forms.begin(), forms.end(), sample_order);
  for (const auto& t : forms) {
    Json e = to_json(t, f.group());
    e["value"] = to_json(f.at_canonical(t));
    entries.push_back(std::move(e));
  }
  Json j = Json::object();
  if (weight) j["weight"] = weight;
  j["level"] = 1;
  j["group"] = f.group() == Group::GL2 ? "GL2" : "SL2";
  j["det_bound"] = f.det_bound();
  j["rank1_bound"] = f.rank1_bound();
  j["entries"] = std::move(entries);
  return j;
}

inline Json to_json(const Fit& f) {
  Json j{{"kind", f.kind}};
  if (f.scale) j["scale"] = rational_to_string(*f.scale);
  if (f.shift) j["shift"] = rational_to_string(*f.shift);
  return j;
}

inline Json to_json(const CalibrationReport& rep) {
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < e.labels.size(); ++i)
      rows.push_back(Json{{"partition", to_json(e.labels[i])},
                          {"measured", to_json(e.measured[i])},
                          {"closed_form", to_json(e.closed_form[i])},
                          {"matrix", to_json(e.matrix[i])}});
    entries.push_back(Json{{"q", e.q},
                           {"op", e.op.name()},
                           {"reference", e.reference_op.name()},
                           {"distinct_measured", e.distinct_measured},
                           {"components", std::move(rows)},
                           {"fit_closed_form", to_json(e.fit_closed_form)},
                           {"fit_matrix", to_json(e.fit_matrix)}});
  }
  Json j{{"level", rep.level}, {"weight", rep.weight}, {"entries", std::move(entries)}};
  if (!rep.level_one.empty()) {
    Json l = Json::array();
    for (const auto& v : rep.level_one) l.push_back(to_json(v));
    j["level_one_U(2,1)"] = std::move(l);
  }
  return j;
}

}  // namespace siegel
