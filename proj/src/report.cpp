#include "nbint/report.hpp"

#include "nbint/errors.hpp"
#include "nbint/real_roots.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace nbint {

namespace {

std::string fmt(Complex z, int digits = 12) {
  std::ostringstream s;
  const Real scale = std::max(Real(1), Real(abs(z)));
  if (abs(z.real()) <= Real(1e-28) * scale) z.real(0);
  if (abs(z.imag()) <= Real(1e-25) * scale) {
    s << format_real(z.real(), digits);
  } else {
    s << format_real(z.real(), digits) << (z.imag() < 0 ? " - " : " + ") << format_real(abs(z.imag()), digits) << "i";
  }
  return s.str();
}

std::string fmt(const Real& x, int digits = 12) { return format_real(x, digits); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

Complex cube_root_of_unity(int k) {
  const Real th = 2 * pi() * k / 3;
  return Complex(cos(th), sin(th));
}

std::string unity_name(int k) { return k == 0 ? "1" : (k == 1 ? "j" : "j^2"); }


}  // namespace

// ---------------------------------------------------------------------------
// Table helpers

const std::vector<LevelKind>& table_regimes() {
  static const std::vector<LevelKind> r{LevelKind::ZeroC, LevelKind::ZeroH, LevelKind::MinusHalf, LevelKind::Generic};
  return r;
}

Complex representative_c(LevelKind regime) {
  switch (regime) {
    case LevelKind::ZeroC:
    case LevelKind::BothZero:
      return Complex(0);
    case LevelKind::ZeroH:
      return Complex(sqrt(Real(2)));
    case LevelKind::MinusHalf:
      return Complex(1);
    case LevelKind::Generic:
      break;
  }
  return Complex(3);
}

std::string allowed_set_text(LevelKind regime) {
  switch (regime) {
    case LevelKind::ZeroC:
    case LevelKind::ZeroH:
      return "(k-1)(k+2)/2, k >= 0";
    case LevelKind::MinusHalf:
      return "-k^2, k >= 0";
    case LevelKind::BothZero:
      return "no restriction obtained";
    case LevelKind::Generic:
      break;
  }
  return "{0, -1}";
}

std::string table_text() {
  std::ostringstream out;
  out << "level          C^2 H     allowed lambda\n";
  out << "ZeroC          C = 0     " << allowed_set_text(LevelKind::ZeroC) << "\n";
  out << "ZeroH          H = 0     " << allowed_set_text(LevelKind::ZeroH) << "\n";
  out << "MinusHalf      -1/2      " << allowed_set_text(LevelKind::MinusHalf) << "\n";
  out << "Generic        other     " << allowed_set_text(LevelKind::Generic) << "\n";
  out << "BothZero       C = H = 0 " << allowed_set_text(LevelKind::BothZero) << "\n";
  return out.str();
}

namespace {

VariationalEquation representative_equation(LevelKind regime, const Complex& lambda,
                                            const std::optional<Rational>& exact_lambda) {
  if (regime == LevelKind::BothZero) return VariationalEquation::from_level(Complex(0), Complex(0), lambda);
  const Complex C = representative_c(regime);
  if (exact_lambda) {
    const Rational c2 = regime == LevelKind::ZeroC ? Rational(0)
                        : regime == LevelKind::ZeroH ? Rational(2)
                        : regime == LevelKind::MinusHalf ? Rational(1)
                                                         : Rational(9);
    return VariationalEquation::normal_form_exact(c2, *exact_lambda);
  }
  return VariationalEquation::normal_form(C, lambda);
}

bool contradicts(Certificate c, const Verdict& v) {
  if (v.no_information) return false;
  return (c == Certificate::NonAbelian && v.abelian_possible) || (c == Certificate::Abelian && !v.abelian_possible);
}

}  // namespace

LevelVerdict judge_level(LevelKind regime, const Complex& lambda, const std::optional<Rational>& exact_lambda,
                         const AnalysisOptions& options) {
  LevelVerdict out;
  out.verdict = exact_lambda ? allowed_lambda_exact(regime, *exact_lambda, options.k_bound)
                             : allowed_lambda(regime, lambda, options.k_bound);
  out.representative_c = representative_c(regime);
  const VariationalEquation eq = representative_equation(regime, lambda, exact_lambda);
  const SingularPoint zero{Complex(0), false, "0"};
  out.exponents_at_zero = indicial_exponents(eq, zero);
  try {
    out.obstruction_at_zero = log_obstruction(eq, zero);
  } catch (const NoObstructionDefined&) {
  }
  if (regime != LevelKind::BothZero)
    if (auto sol = polynomial_solution_search(eq)) out.polynomial_solution = sol->formula();
  if (options.with_monodromy && regime != LevelKind::BothZero) {
    ContinuationOptions co;
    co.tolerance = options.monodromy_tol;
    out.monodromy = monodromy_generators(eq, std::nullopt, co);
    out.certificate = abelianity_certificate(*out.monodromy, options.abelian_threshold);
    out.disagreement = contradicts(*out.certificate, out.verdict);
  }
  return out;
}

Json to_json(const LevelVerdict& v) {
  Json evidence = Json::array();
  evidence.push_back(Json{{"kind", "exponents_at_0"},
                          {"representative_C", complex_to_json(v.representative_c)},
                          {"values", Json::array({complex_to_json(v.exponents_at_zero.first),
                                                  complex_to_json(v.exponents_at_zero.second)})}});
  if (v.obstruction_at_zero)
    evidence.push_back(Json{{"kind", "log_obstruction_at_0"}, {"value", complex_to_json(*v.obstruction_at_zero)}});
  if (v.polynomial_solution) evidence.push_back(Json{{"kind", "solution"}, {"value", *v.polynomial_solution}});
  Json out = nbint::to_json(v.verdict, evidence);
  if (v.certificate) {
    out["monodromy"] = nbint::to_json(*v.monodromy);
    out["monodromy_certificate"] = to_string(*v.certificate);
    out["disagreement"] = v.disagreement;
  }
  return out;
}

// ---------------------------------------------------------------------------
// analyze

namespace {

ConfigurationResult examine(const std::string& name, const MassVector& m, const std::function<DarbouxPoint()>& build,
                            const AnalysisOptions& options,
                            const std::optional<ExactMatrix<QuadraticNumber>>& exact = std::nullopt) {
  ConfigurationResult r;
  r.name = name;
  try {
    r.point = build();
    WMatrix w = build_w(m, *r.point);
    if (exact) w.exact = exact;
    r.spectral = analyze_spectrum(w, options.tol);
    r.mandatory_spectrum = mandatory_spectrum_check(w.entries);
    r.decoupling = partial_decoupling(w, options.tol);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::optional<Rational> exact_lambda_of(const ConfigurationResult& c, const Complex& lambda) {
  if (!c.spectral) return std::nullopt;
  for (const auto& cl : c.spectral->clusters)
    if (cl.exact && abs(Complex(to_real(*cl.exact)) - lambda) <= Real(1e-9)) return cl.exact;
  return std::nullopt;
}

}  // namespace

AnalysisReport cmd_analyze(const MassVector& masses, const AnalysisOptions& options) {
  AnalysisReport rep;
  rep.options = options;
  const MassVector m = masses.normalized();
  rep.masses = m.values;
  rep.exact_masses = m.exact.has_value();
  const int n = m.size();
  const bool equal = std::all_of(m.values.begin(), m.values.end(),
                                 [&](const Real& x) { return abs(x - m.values[0]) <= Real(1e-30); });
  if (n != 3 && !equal) throw InputError("analysis needs three bodies or equal masses");

  std::vector<std::future<ConfigurationResult>> jobs;
  auto launch = [&](std::string name, const MassVector& mm, std::function<DarbouxPoint()> build,
                    std::optional<ExactMatrix<QuadraticNumber>> exact = std::nullopt) {
    jobs.push_back(std::async(std::launch::async, [=] { return examine(name, mm, build, options, exact); }));
  };

  if (n == 3) {
    std::optional<ExactMatrix<QuadraticNumber>> exact_lagrange_w;
    if (options.exact && m.exact) exact_lagrange_w = exact_w(exact_lagrange(*m.exact));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const std::string name = "lagrange (1, " + unity_name(a) + ", " + unity_name(b) + ")";
        if (a == 0 && b == 0) {
          launch(name, m, [m] { return lagrange_equilateral(m); }, exact_lagrange_w);
        } else {
          launch(name, m, [m, a, b] {
            return lagrange_complex(m, Complex(1), cube_root_of_unity(a), cube_root_of_unity(b));
          });
        }
      }
    const std::vector<std::vector<int>> orders{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    for (const auto& order : orders) {
      const MassVector mp = m.permuted(order);
      const std::string tag =
          "(" + std::to_string(order[0] + 1) + "," + std::to_string(order[1] + 1) + "," + std::to_string(order[2] + 1) + ")";
      for (bool complex_order : {false, true}) {
        EulerResult er;
        try {
          er = euler_collinear(mp, complex_order);
        } catch (const std::exception& e) {
          ConfigurationResult bad;
          bad.name = "euler " + tag;
          bad.error = e.what();
          std::promise<ConfigurationResult> p;
          p.set_value(bad);
          jobs.push_back(p.get_future());
          continue;
        }
        for (std::size_t k = 0; k < er.points.size(); ++k) {
          const Complex rho = er.roots[k];
          const std::string name = std::string(complex_order ? "euler complex-order " : "euler ") + tag +
                                   " rho = " + fmt(rho, 10);
          std::optional<ExactMatrix<QuadraticNumber>> ex;
          if (options.exact && mp.exact && !complex_order && abs(rho.imag()) < Real(1e-30) && rho.real() > 0) {
            // Rational roots give an exact W.
            const auto L = euler_quintic(false);
            std::vector<Rational> lc;
            for (const auto& c : L.coefficients()) lc.push_back(c.evaluate({(*mp.exact)[0], (*mp.exact)[1], (*mp.exact)[2]}));
            const QPoly lq(lc);
            for (const auto& iv : real_root_isolation(lq))
              if (auto q = rational_root_in(lq, iv))
                if (abs(to_real(*q) - rho.real()) < Real(1e-20)) ex = exact_w(exact_collinear(*mp.exact, *q));
          }
          const DarbouxPoint pt = er.points[k];
          launch(name, mp, [pt] { return pt; }, ex);
        }
      }
    }
  } else {
    launch("regular " + std::to_string(n) + "-gon", m, [n] { return regular_ngon(n); });
  }
  for (auto& j : jobs) rep.configurations.push_back(j.get());

  // Unique decoupled eigenvalues.
  for (const auto& c : rep.configurations) {
    if (!c.decoupling || !c.decoupling->decoupled || !c.decoupling->lambda) continue;
    const Complex lambda = *c.decoupling->lambda;
    auto it = std::find_if(rep.decoupled.begin(), rep.decoupled.end(),
                           [&](const DecoupledLambda& d) { return abs(d.lambda - lambda) <= Real(1e-9); });
    if (it != rep.decoupled.end()) {
      it->configuration += "; " + c.name;
      if (!it->exact) it->exact = exact_lambda_of(c, lambda);
      continue;
    }
    rep.decoupled.push_back({c.name, lambda, exact_lambda_of(c, lambda), {}});
  }
  for (auto& d : rep.decoupled) {
    std::vector<std::future<LevelVerdict>> lv;
    for (LevelKind regime : table_regimes())
      lv.push_back(std::async(std::launch::async, [&, regime] { return judge_level(regime, d.lambda, d.exact, options); }));
    for (auto& f : lv) d.levels.push_back(f.get());
    for (const auto& l : d.levels)
      if (l.disagreement || (l.certificate && *l.certificate == Certificate::Inconclusive))
        rep.numerically_inconclusive = true;
  }

  std::vector<std::string> blocked, open;
  for (std::size_t i = 0; i < table_regimes().size(); ++i) {
    const LevelKind regime = table_regimes()[i];
    bool obstructed = false;
    for (const auto& d : rep.decoupled) obstructed = obstructed || !d.levels[i].verdict.abelian_possible;
    rep.regime_statements.emplace_back(regime, obstructed ? "non-integrable" : "method inconclusive");
    (obstructed ? blocked : open).push_back(to_string(regime));
  }
  if (rep.decoupled.empty()) {
    rep.conclusion = "method inconclusive";
  } else if (open.empty()) {
    rep.conclusion = "non-integrable";
  } else if (blocked.empty()) {
    rep.conclusion = "method inconclusive at this configuration";
  } else {
    rep.conclusion = "non-integrable on " + join(blocked, ", ") + "; method inconclusive at this configuration on " +
                     join(open, ", ");
  }
  return rep;
}

Json to_json(const AnalysisReport& r) {
  Json masses = Json::array();
  for (const Real& m : r.masses) masses.push_back(to_double(m));
  Json configs = Json::array();
  for (const auto& c : r.configurations) {
    Json j{{"name", c.name}};
    if (!c.error.empty()) j["error"] = c.error;
    if (c.point) j["darboux_point"] = nbint::to_json(*c.point);
    if (c.spectral) j["spectral"] = nbint::to_json(*c.spectral);
    if (c.decoupling) j["decoupling"] = nbint::to_json(*c.decoupling);
    if (c.point && c.error.empty()) j["mandatory_spectrum"] = c.mandatory_spectrum;
    configs.push_back(j);
  }
  Json verdicts = Json::array();
  for (const auto& d : r.decoupled) {
    Json levels = Json::array();
    for (const auto& l : d.levels) levels.push_back(nbint::to_json(l));
    Json j{{"lambda", complex_to_json(d.lambda)}, {"configurations", d.configuration}, {"levels", levels}};
    if (d.exact) j["lambda_exact"] = to_string(*d.exact);
    verdicts.push_back(j);
  }
  Json statements = Json::object();
  for (const auto& [k, s] : r.regime_statements) statements[to_string(k)] = s;
  return Json{{"input", {{"masses", masses}, {"exact_masses", r.exact_masses}}},
              {"configurations", configs},
              {"verdicts", verdicts},
              {"regimes", statements},
              {"conclusion", r.conclusion},
              {"numerically_inconclusive", r.numerically_inconclusive},
              {"provenance",
               {{"tool_version", kToolVersion},
                {"spectral_tolerance", to_double(r.options.tol)},
                {"k_bound", r.options.k_bound},
                {"exact", r.options.exact},
                {"with_monodromy", r.options.with_monodromy},
                {"monodromy_tolerance", to_double(r.options.monodromy_tol)},
                {"abelian_threshold", to_double(r.options.abelian_threshold)},
                {"darboux_tolerance", 1e-12},
                {"mandatory_spectrum_tolerance", 1e-9}}}};
}

std::string summary(const AnalysisReport& r) {
  std::ostringstream out;
  std::vector<std::string> ms;
  for (const Real& m : r.masses) ms.push_back(fmt(m, 15));
  out << "masses (normalized): " << join(ms, ", ") << "\n";
  for (const auto& c : r.configurations) {
    out << "  " << c.name << ": ";
    if (!c.error.empty()) {
      out << "failed (" << c.error << ")\n";
      continue;
    }
    std::vector<std::string> ev;
    for (const auto& cl : c.spectral->clusters) {
      std::string e = cl.exact ? to_string(*cl.exact) : fmt(cl.eigenvalue, 8);
      if (cl.algebraic > 1) e += " x" + std::to_string(cl.algebraic);
      if (cl.geometric < cl.algebraic) e += " (geom " + std::to_string(cl.geometric) + ")";
      ev.push_back(e);
    }
    out << "spectrum {" << join(ev, ", ") << "}";
    if (!c.mandatory_spectrum) out << " [missing {2,-1,0,0}]";
    if (c.decoupling->decoupled)
      out << " -> decoupled (" << to_string(c.decoupling->kind) << ", lambda = " << fmt(*c.decoupling->lambda) << ")";
    out << "\n";
  }
  for (const auto& d : r.decoupled) {
    out << "lambda = " << (d.exact ? to_string(*d.exact) : fmt(d.lambda)) << "\n";
    for (const auto& l : d.levels) {
      out << "  " << to_string(l.verdict.regime) << ": "
          << (l.verdict.abelian_possible ? "allowed" : "not allowed -> non-integrable");
      if (l.verdict.matched_k) out << " (k = " << *l.verdict.matched_k << ")";
      if (l.certificate) out << "; monodromy " << to_string(*l.certificate) << (l.disagreement ? " [DISAGREES]" : "");
      out << "\n";
    }
  }
  for (const auto& [k, s] : r.regime_statements) out << to_string(k) << ": " << s << "\n";
  out << "conclusion: " << r.conclusion << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// equal-masses

EqualMassReport cmd_equal_masses(int n_min, int n_max, long long k_bound, int residual_max_n) {
  if (n_min < 3 || n_max < n_min) throw InputError("need 3 <= n_min <= n_max");
  EqualMassReport rep;
  rep.residual_max_n = residual_max_n;
  for (int n = n_min; n <= n_max; ++n) {
    EqualMassRow row;
    row.n = n;
    if (n <= residual_max_n) {
      const auto chk = verify_equal_mass_eigenvector(n);
      row.lambda = chk.lambda;
      row.residual = chk.residual();
    } else {
      row.lambda = equal_mass_lambda(n);
    }
    row.in_bounds = row.lambda > 0 && row.lambda < 2;
    bool all_blocked = true;
    for (LevelKind regime : table_regimes()) {
      row.verdicts.push_back(allowed_lambda(regime, Complex(row.lambda), k_bound));
      all_blocked = all_blocked && !row.verdicts.back().abelian_possible;
    }
    row.statement = all_blocked ? "non-integrable" : "method inconclusive";
    rep.rows.push_back(row);
  }
  return rep;
}

Json to_json(const EqualMassReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json v = Json::array();
    for (const auto& x : row.verdicts) v.push_back(nbint::to_json(x));
    rows.push_back(Json{{"n", row.n},
                        {"lambda", format_real(row.lambda, 30)},
                        {"eigenvector_residual", row.residual ? Json(to_double(*row.residual)) : Json(nullptr)},
                        {"in_bounds", row.in_bounds},
                        {"verdicts", v},
                        {"statement", row.statement}});
  }
  return Json{{"rows", rows}, {"residual_max_n", r.residual_max_n}, {"tool_version", kToolVersion}};
}

std::string summary(const EqualMassReport& r) {
  std::ostringstream out;
  out << "   n  lambda(n)                       residual    0<l<2  verdict\n";
  for (const auto& row : r.rows) {
    out.width(4);
    out << row.n << "  ";
    std::string l = format_real(row.lambda, 25);
    l.resize(std::max<std::size_t>(l.size(), 30), ' ');
    out << l << "  ";
    std::string res = row.residual ? fmt(*row.residual, 3) : "-";
    res.resize(std::max<std::size_t>(res.size(), 10), ' ');
    out << res << "  " << (row.in_bounds ? "yes  " : "NO   ") << "  " << row.statement << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// search-3body

std::array<Real, 3> irrational_triple() {
  const Real s21 = sqrt(Real(21));
  const Real big = sqrt(Real(126) + 42 * s21);
  return {Real(1) / 4 + (s21 + big) / 84, Real(1) / 2 - s21 / 42, Real(1) / 4 + (s21 - big) / 84};
}

std::vector<MassFamily> decoupling_mass_families() {
  const Rational third(1, 3);
  std::vector<MassFamily> out;
  out.push_back({"equal masses", {Real(1) / 3, Real(1) / 3, Real(1) / 3}, std::array<Rational, 3>{third, third, third}});
  out.push_back({"collinear (1/7, 5/7, 1/7)",
                 {Real(1) / 7, Real(5) / 7, Real(1) / 7},
                 std::array<Rational, 3>{Rational(1, 7), Rational(5, 7), Rational(1, 7)}});
  out.push_back({"irrational triple", irrational_triple(), std::nullopt});
  return out;
}

MPoly aligned_decoupling_form() {
  const MPoly m1 = MPoly::variable(0), m2 = MPoly::variable(1), m3 = MPoly::variable(2);
  return 7 * m2 * m2 - 35 * m1 * m2 - 35 * m2 * m3 + 56 * m1 * m1 + 63 * m1 * m3 + 56 * m3 * m3;
}

MPoly lagrange_double_eigenvalue_form() {
  const MPoly m1 = MPoly::variable(0), m2 = MPoly::variable(1), m3 = MPoly::variable(2);
  return 3 * m2 * m2 - 3 * m2 * m3 - 3 * m1 * m2 + 3 * m3 * m3 - 3 * m1 * m3 + 3 * m1 * m1;
}

MPoly aligned_resultant() {
  const Polynomial<MPoly> q({MPoly(2), MPoly(3), MPoly(2)});
  return resultant(q, euler_quintic(false));
}

TripleCheck irrational_triple_check(bool conjugate) {
  const auto t = irrational_triple();
  const MassVector m = MassVector::from_reals({t[0], t[1], t[2]});
  const Complex j = cube_root_of_unity(conjugate ? 2 : 1);
  TripleCheck out;
  out.configuration = conjugate ? "(1, 1, j^2)" : "(1, 1, j)";
  const DarbouxPoint d = lagrange_complex(m, Complex(1), j, Complex(1));
  const WMatrix w = build_w(m, d);
  const SpectralReport sr = spectrum(w.entries, Real(1e-8));
  if (const Cluster* c = sr.find(Complex(Real(0.5)), Real(1e-6))) {
    out.double_eigenvalue = c->eigenvalue;
    out.algebraic = c->algebraic;
    out.geometric = c->geometric;
  }
  const DecouplingReport dr = partial_decoupling(w, Real(1e-8));
  out.decoupled = dr.decoupled;
  out.rank_one_defect = dr.rank_one_defect;
  return out;
}

SearchReport cmd_search_decoupling_3body(const Rational& grid_step) {
  if (!(grid_step > 0 && grid_step <= Rational(1, 10))) throw InputError("grid step must lie in (0, 0.1]");
  SearchReport rep;
  rep.grid_step = grid_step;
  rep.resultant = aligned_resultant();
  const MPoly closed = aligned_decoupling_form();
  rep.resultant_matches = proportional(rep.resultant, closed, rep.resultant_factor);
  rep.resultant_at_151 = rep.resultant.evaluate({Rational(1, 7), Rational(5, 7), Rational(1, 7)});

  const MPoly lag = lagrange_double_eigenvalue_form();
  // Grid m1 = i h, m2 = j h, m3 = 1 - m1 - m2 > 0.
  const long N = static_cast<long>(numerator_of(Rational(1 / grid_step)) / denominator_of(Rational(1 / grid_step))) + 1;
  std::vector<std::vector<int>> sign(N + 1, std::vector<int>(N + 1, 2));
  for (long i = 1; i <= N; ++i)
    for (long j = 1; j <= N; ++j) {
      const Rational m1 = grid_step * i, m2 = grid_step * j, m3 = 1 - m1 - m2;
      if (m3 <= 0) continue;
      ++rep.grid_points;
      const std::array<Rational, 3> at{m1, m2, m3};
      const Rational v = closed.evaluate(at);
      sign[i][j] = v > 0 ? 1 : (v < 0 ? -1 : 0);
      if (v == 0) rep.resultant_zeros.push_back(at);
      if (lag.evaluate(at) == 0) rep.lagrange_zeros.push_back(at);
    }
  for (long i = 1; i <= N; ++i)
    for (long j = 1; j <= N; ++j) {
      if (sign[i][j] == 2) continue;
      if (i + 1 <= N && sign[i + 1][j] != 2 && sign[i][j] * sign[i + 1][j] < 0) ++rep.resultant_sign_changes;
      if (j + 1 <= N && sign[i][j + 1] != 2 && sign[i][j] * sign[i][j + 1] < 0) ++rep.resultant_sign_changes;
    }
  rep.families = decoupling_mass_families();
  rep.triple = {irrational_triple_check(false), irrational_triple_check(true)};
  return rep;
}

Json to_json(const SearchReport& r) {
  auto triple = [](const std::array<Rational, 3>& a) {
    return Json::array({to_string(a[0]), to_string(a[1]), to_string(a[2])});
  };
  Json rz = Json::array(), lz = Json::array(), fam = Json::array(), tc = Json::array();
  for (const auto& z : r.resultant_zeros) rz.push_back(triple(z));
  for (const auto& z : r.lagrange_zeros) lz.push_back(triple(z));
  for (const auto& f : r.families) {
    Json j{{"name", f.name},
           {"masses", Json::array({format_real(f.masses[0], 30), format_real(f.masses[1], 30), format_real(f.masses[2], 30)})}};
    if (f.exact) j["exact"] = triple(*f.exact);
    fam.push_back(j);
  }
  for (const auto& t : r.triple)
    tc.push_back(Json{{"configuration", t.configuration},
                      {"double_eigenvalue", complex_to_json(t.double_eigenvalue)},
                      {"algebraic", t.algebraic},
                      {"geometric", t.geometric},
                      {"decoupled", t.decoupled},
                      {"rank_one_defect", to_double(t.rank_one_defect)}});
  return Json{{"resultant", r.resultant.to_string()},
              {"resultant_matches_closed_form", r.resultant_matches},
              {"resultant_factor", to_string(r.resultant_factor)},
              {"resultant_at_1_5_1", to_string(r.resultant_at_151)},
              {"grid_step", to_string(r.grid_step)},
              {"grid_points", r.grid_points},
              {"resultant_zeros", rz},
              {"resultant_sign_changes", r.resultant_sign_changes},
              {"lagrange_condition_zeros", lz},
              {"families", fam},
              {"irrational_triple", tc},
              {"tool_version", kToolVersion}};
}

std::string summary(const SearchReport& r) {
  std::ostringstream out;
  out << "Res(2 rho^2 + 3 rho + 2, L) = " << r.resultant.to_string() << "\n";
  out << "  matches 7m2^2 - 35m1m2 - 35m2m3 + 56m1^2 + 63m1m3 + 56m3^2: "
      << (r.resultant_matches ? "yes (factor " + to_string(r.resultant_factor) + ")" : "no") << "\n";
  out << "  value at (1/7, 5/7, 1/7): " << to_string(r.resultant_at_151) << "\n";
  out << "grid step " << to_string(r.grid_step) << ", " << r.grid_points << " interior points\n";
  out << "  resultant: " << r.resultant_zeros.size() << " exact zeros, " << r.resultant_sign_changes
      << " sign changes between neighbours\n";
  for (const auto& z : r.resultant_zeros)
    out << "    zero at (" << to_string(z[0]) << ", " << to_string(z[1]) << ", " << to_string(z[2]) << ")\n";
  out << "  Lagrange double-eigenvalue condition: " << r.lagrange_zeros.size() << " zeros";
  for (const auto& z : r.lagrange_zeros)
    out << " (" << to_string(z[0]) << ", " << to_string(z[1]) << ", " << to_string(z[2]) << ")";
  out << "\nmass families (up to permutation):\n";
  for (const auto& f : r.families)
    out << "  " << f.name << ": " << format_real(f.masses[0], 30) << ", " << format_real(f.masses[1], 30) << ", "
        << format_real(f.masses[2], 30) << "\n";
  for (const auto& t : r.triple)
    out << "irrational triple at " << t.configuration << ": eigenvalue " << fmt(t.double_eigenvalue, 15)
        << " algebraic " << t.algebraic << " geometric " << t.geometric << ", (w, iw) defect "
        << fmt(t.rank_one_defect, 3) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// table

TableResult cmd_table(const Complex& C, const Complex& H, const std::optional<Complex>& lambda,
                      const AnalysisOptions& options) {
  TableResult out;
  out.level = level_class(C, H);
  if (lambda) {
    std::optional<Rational> exact;
    if (options.exact && abs(lambda->imag()) == 0) {
      const Rational q = parse_rational(lambda->real().str(36, std::ios_base::scientific));
      const Rational s = simplest_between(q - Rational(1, 1000000000000LL), q + Rational(1, 1000000000000LL));
      if (abs(to_real(s) - lambda->real()) <= Real(1e-15)) exact = s;
    }
    out.verdict = judge_level(out.level.kind, *lambda, exact, options);
  }
  return out;
}

Json to_json(const TableResult& r) {
  Json out{{"regime", to_string(r.level.kind)},
           {"representative_C", complex_to_json(r.level.representative_C)},
           {"allowed_set", allowed_set_text(r.level.kind)}};
  if (r.verdict) {
    out["verdict"] = nbint::to_json(*r.verdict);
    out["statement"] = r.verdict->verdict.no_information ? "no information"
                       : r.verdict->verdict.abelian_possible ? "allowed"
                                                             : "not allowed: obstruction found";
  }
  out["tool_version"] = kToolVersion;
  return out;
}

std::string summary(const TableResult& r) {
  std::ostringstream out;
  out << "level: " << to_string(r.level.kind) << " (normal form C = " << fmt(r.level.representative_C) << ")\n";
  out << "allowed lambda: " << allowed_set_text(r.level.kind) << "\n";
  if (r.verdict) {
    const auto& v = r.verdict->verdict;
    out << "lambda = " << fmt(v.lambda) << ": ";
    if (v.no_information) out << "no information from the table";
    else if (v.abelian_possible) out << "allowed" << (v.matched_k ? " (k = " + std::to_string(*v.matched_k) + ")" : "");
    else out << "not allowed: obstruction found";
    out << "\n  exponents at t=0: " << fmt(r.verdict->exponents_at_zero.first) << ", "
        << fmt(r.verdict->exponents_at_zero.second) << "\n";
    if (r.verdict->obstruction_at_zero) out << "  log obstruction at t=0: " << fmt(*r.verdict->obstruction_at_zero) << "\n";
    if (r.verdict->polynomial_solution) out << "  solution: " << *r.verdict->polynomial_solution << "\n";
    if (r.verdict->certificate)
      out << "  monodromy: " << to_string(*r.verdict->certificate) << (r.verdict->disagreement ? " [DISAGREES]" : "")
          << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// monodromy

MonodromyResult cmd_monodromy(const Complex& C, const Complex& lambda, const Real& tol,
                              const std::optional<std::vector<Complex>>& path) {
  if (!(tol > 0)) throw InputError("tolerance must be positive");
  const auto eq = VariationalEquation::normal_form(C, lambda);
  ContinuationOptions co;
  co.tolerance = tol;
  MonodromyResult out{C, lambda, monodromy_generators(eq, std::nullopt, co), Certificate::Inconclusive, {}, false, {}};
  out.certificate = abelianity_certificate(out.report);
  out.table = allowed_lambda(level_class(C, C * C / Real(2) - Real(1)).kind, lambda);
  out.disagreement = contradicts(out.certificate, out.table);
  if (path) out.custom = continue_solution(eq, custom_loop(eq, out.report.base_point, *path), co);
  return out;
}

Json to_json(const MonodromyResult& r) {
  Json out{{"C", complex_to_json(r.C)},
           {"lambda", complex_to_json(r.lambda)},
           {"report", nbint::to_json(r.report)},
           {"certificate", to_string(r.certificate)},
           {"table", nbint::to_json(r.table)},
           {"disagreement", r.disagreement}};
  if (r.custom) out["custom_path"] = nbint::to_json(*r.custom);
  out["tool_version"] = kToolVersion;
  return out;
}

std::string summary(const MonodromyResult& r) {
  std::ostringstream out;
  const auto& m = r.report;
  out << "C = " << fmt(r.C) << ", lambda = " << fmt(r.lambda) << ", base point " << fmt(m.base_point) << "\n";
  for (std::size_t i = 0; i < m.generators.size(); ++i) {
    const auto [a, b] = eigenvalues(m.generators[i].entries);
    out << "  loop " << m.generators[i].path.label << ": eigenvalues " << fmt(a, 10) << ", " << fmt(b, 10)
        << "; exponent match " << fmt(m.local[i].exponent_match, 3) << (m.local[i].log_detected ? "; log" : "") << "\n";
  }
  out << "  max commutator deviation         " << fmt(m.max_commutator_deviation, 6) << "\n";
  out << "  derived commutator deviation     " << fmt(m.derived_commutator_deviation, 6) << "\n";
  out << "  product relation deviation       " << fmt(m.product_relation_deviation, 6) << "\n";
  out << "  estimated integration error      " << fmt(m.max_estimated_error, 6) << "\n";
  out << "  Wronskian (Abel) deviation       " << fmt(m.max_wronskian_deviation, 6) << "\n";
  out << "certificate: " << to_string(r.certificate) << "; table: "
      << (r.table.abelian_possible ? "allowed" : "not allowed") << (r.disagreement ? " [DISAGREES]" : "") << "\n";
  if (r.custom) out << "custom path transport error " << fmt(r.custom->estimated_error, 3) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// examples

std::vector<ExampleResult> cmd_examples() {
  std::vector<ExampleResult> out;
  for (Dim3Potential p : {Dim3Potential::V1, Dim3Potential::V2, Dim3Potential::FamilyA, Dim3Potential::FamilyB}) {
    ExampleResult r;
    r.result = dim3_example(p);
    for (LevelKind regime : table_regimes())
      r.verdicts.emplace_back(regime, allowed_lambda(regime, Complex(Real(r.result.lambda)), 1000000, Real(1e-8)));
    if (p == Dim3Potential::V2) r.cited_exclusions.push_back(LevelKind::ZeroC);
    out.push_back(r);
  }
  return out;
}

Json to_json(const std::vector<ExampleResult>& rs) {
  Json arr = Json::array();
  for (const auto& r : rs) {
    Json ints = Json::array();
    for (const auto& i : r.result.integrals)
      ints.push_back(Json{{"name", i.name}, {"level", i.level}, {"max_bracket", i.max_bracket}});
    Json verdicts = Json::array();
    for (const auto& [k, v] : r.verdicts) {
      Json j = nbint::to_json(v);
      if (std::find(r.cited_exclusions.begin(), r.cited_exclusions.end(), k) != r.cited_exclusions.end()) {
        j["excluded"] = true;
        j["source"] = "paper";
      }
      verdicts.push_back(j);
    }
    arr.push_back(Json{{"potential", to_string(r.result.which)},
                       {"darboux_point", r.result.darboux},
                       {"multiplier", r.result.multiplier},
                       {"hessian_diagonal", r.result.hessian_diagonal},
                       {"lambda", r.result.lambda},
                       {"integrals", ints},
                       {"verdicts", verdicts}});
  }
  return Json{{"examples", arr}, {"tool_version", kToolVersion}};
}

std::string summary(const std::vector<ExampleResult>& rs) {
  std::ostringstream out;
  for (const auto& r : rs) {
    out << to_string(r.result.which) << ": multiplier " << r.result.multiplier << ", lambda " << r.result.lambda << "\n";
    for (const auto& i : r.result.integrals)
      out << "  {H, " << i.name << "} on " << i.level << ": max " << i.max_bracket << "\n";
    std::vector<std::string> surviving;
    for (const auto& [k, v] : r.verdicts) {
      const bool cited = std::find(r.cited_exclusions.begin(), r.cited_exclusions.end(), k) != r.cited_exclusions.end();
      if (v.abelian_possible && !cited) surviving.push_back(to_string(k));
      if (v.abelian_possible && cited) out << "  " << to_string(k) << " excluded by a cited classification (not recomputed)\n";
    }
    out << "  levels not excluded: " << (surviving.empty() ? "none" : join(surviving, ", ")) << "\n";
  }
  return out.str();
}

}  // namespace nbint
