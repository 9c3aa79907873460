#include "nbint/json_io.hpp"

#include "nbint/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace nbint {

Json complex_to_json(const Complex& z) {
  const double re = to_double(z.real()), im = to_double(z.imag());
  if (im == 0 || std::abs(im) <= 1e-30 * std::max(1.0, std::abs(re))) return re;
  return Json{{"re", re}, {"im", im}};
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(Real(j.get<double>()));
  if (j.is_array() && j.size() == 2) return Complex(Real(j[0].get<double>()), Real(j[1].get<double>()));
  if (j.is_object() && j.contains("re"))
    return Complex(Real(j.at("re").get<double>()), Real(j.value("im", 0.0)));
  throw InputError("expected a complex number");
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json matrix_to_json(const Matrix2& m) {
  Json rows = Json::array();
  for (const auto& r : m) rows.push_back(Json::array({complex_to_json(r[0]), complex_to_json(r[1])}));
  return rows;
}

Json to_json(const DarbouxPoint& d) {
  const auto& c = d.config;
  Json x = Json::array(), y = Json::array();
  for (int i = 0; i < c.n(); ++i) {
    x.push_back(complex_to_json(c.x(i)));
    y.push_back(complex_to_json(c.y(i)));
  }
  return Json{{"n", c.n()},
              {"x", x},
              {"y", y},
              {"multiplier", complex_to_json(d.multiplier)},
              {"residual", to_double(d.residual)},
              {"branches", c.branches()}};
}

Json to_json(const SpectralReport& r) {
  Json clusters = Json::array();
  for (const auto& c : r.clusters) {
    Json e{{"eigenvalue", complex_to_json(c.eigenvalue)}, {"algebraic", c.algebraic}, {"geometric", c.geometric}};
    if (c.exact) e["exact"] = to_string(*c.exact);
    clusters.push_back(e);
  }
  Json out{{"clusters", clusters},
           {"cluster_tolerance", to_double(r.cluster_tolerance)},
           {"tolerance_warning", r.tolerance_warning},
           {"exact_path", r.exact_path}};
  if (!r.characteristic_polynomial.empty()) {
    Json cp = Json::array();
    for (const auto& c : r.characteristic_polynomial) cp.push_back(c.to_string());
    out["characteristic_polynomial"] = cp;
  }
  return out;
}

Json to_json(const DecouplingReport& r) {
  Json out{{"decoupled", r.decoupled}, {"kind", to_string(r.kind)}, {"dimension", r.dimension}};
  if (r.lambda) out["lambda"] = complex_to_json(*r.lambda);
  if (r.witness) {
    Json w = Json::array();
    for (Eigen::Index i = 0; i < r.witness->size(); ++i) w.push_back(complex_to_json((*r.witness)(i)));
    out["witness"] = w;
  }
  out["residual"] = to_double(r.residual);
  if (r.kind == DecouplingKind::RankOne) out["rank_one_defect"] = to_double(r.rank_one_defect);
  return out;
}

Json to_json(const Verdict& v, const Json& evidence) {
  Json out{{"regime", to_string(v.regime)},
           {"lambda", complex_to_json(v.lambda)},
           {"abelian_possible", v.abelian_possible},
           {"matched_k", v.matched_k ? Json(*v.matched_k) : Json(nullptr)}};
  if (v.no_information) out["no_information"] = true;
  out["evidence"] = evidence;
  return out;
}

Json to_json(const LoopPath& p) {
  Json pts = Json::array();
  for (const Complex& z : p.waypoints) pts.push_back(Json::array({to_double(z.real()), to_double(z.imag())}));
  Json out{{"label", p.label}, {"base_point", complex_to_json(p.base_point)}};
  if (p.encircled) out["encircled"] = complex_to_json(*p.encircled);
  if (p.encircles_infinity) out["encircled"] = "infinity";
  out["clearance"] = to_double(p.clearance);
  out["waypoints"] = pts;
  return out;
}

Json to_json(const FundamentalMatrix& f) {
  return Json{{"entries", matrix_to_json(f.entries)},
              {"estimated_error", to_double(f.estimated_error)},
              {"wronskian_deviation", to_double(f.wronskian_deviation)},
              {"steps", f.steps},
              {"path", to_json(f.path)}};
}

Json to_json(const MonodromyReport& r) {
  Json gens = Json::array();
  for (const auto& g : r.generators) gens.push_back(to_json(g));
  Json local = Json::array();
  for (const auto& l : r.local)
    local.push_back(Json{{"label", l.label},
                         {"exponents", Json::array({complex_to_json(l.exponents.first), complex_to_json(l.exponents.second)})},
                         {"exponent_match", to_double(l.exponent_match)},
                         {"log_detected", l.log_detected}});
  return Json{{"base_point", complex_to_json(r.base_point)},
              {"tolerance", to_double(r.tolerance)},
              {"generators", gens},
              {"infinity", to_json(r.infinity)},
              {"max_commutator_deviation", to_double(r.max_commutator_deviation)},
              {"derived_commutator_deviation", to_double(r.derived_commutator_deviation)},
              {"product_relation_deviation", to_double(r.product_relation_deviation)},
              {"max_estimated_error", to_double(r.max_estimated_error)},
              {"max_wronskian_deviation", to_double(r.max_wronskian_deviation)},
              {"local_exponent_match", local}};
}

std::vector<Complex> waypoints_from_json(const Json& j) {
  const Json& arr = j.is_object() && j.contains("waypoints") ? j.at("waypoints") : j;
  if (!arr.is_array()) throw InputError("waypoints must be a JSON array");
  std::vector<Complex> out;
  for (const auto& e : arr) out.push_back(complex_from_json(e));
  return out;
}

namespace {

Rational entry_from_json(const Json& e, bool& exact) {
  if (e.is_string()) return parse_rational(e.get<std::string>());
  if (e.is_number_integer()) return Rational(e.get<long long>());
  if (e.is_number()) {
    exact = false;
    std::ostringstream s;
    s.precision(17);
    s << e.get<double>();
    return parse_rational(s.str());
  }
  throw InputError("masses must be numbers or rational strings");
}

}  // namespace

MassVector parse_masses_text(const std::string& text) {
  std::vector<Rational> values;
  bool exact = true;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InputError("no masses given");
  if (text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw InputError(std::string("invalid JSON mass list: ") + e.what());
    }
    for (const auto& e : j) values.push_back(entry_from_json(e, exact));
  } else {
    std::string cleaned = text;
    for (char& c : cleaned)
      if (c == ',') c = ' ';
    std::istringstream in(cleaned);
    std::string tok;
    while (in >> tok) values.push_back(parse_rational(tok));
  }
  if (!exact) {
    std::vector<Real> reals;
    for (const auto& v : values) reals.push_back(to_real(v));
    return MassVector::from_reals(reals);
  }
  return MassVector::from_rationals(values);
}

MassVector parse_masses(const std::string& input) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(input, ec)) {
    std::ifstream in(input);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_masses_text(buf.str());
  }
  return parse_masses_text(input);
}

}  // namespace nbint
