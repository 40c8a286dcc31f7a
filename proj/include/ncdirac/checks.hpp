#pragma once

// Check suites shared by the command-line tool: each returns a list of
// reports for one configuration.

#include "ncdirac/clifford.hpp"
#include "ncdirac/dirac_modes.hpp"
#include "ncdirac/lie_algebra.hpp"
#include "ncdirac/report.hpp"
#include "ncdirac/seesaw.hpp"
#include "ncdirac/uea.hpp"
#include "ncdirac/weyl.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncdirac {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int eps4 = 1;
  int eps5 = -1;
  Rational ell{1};
  Rational g{1};
  Rational vev = make_rational(1, 100);
  unsigned order = 4;
  std::uint64_t seed = 42;
  bool all_signs = false;
  bool timings = false;

  void validate() const {
    if (eps4 != 1 && eps4 != -1) throw ConfigError("eps4 must be +1 or -1");
    if (eps5 != 1 && eps5 != -1) throw ConfigError("eps5 must be +1 or -1");
    if (sgn(ell) <= 0) throw ConfigError("ell must be positive");
    if (sgn(vev) < 0) throw ConfigError("vev must be non-negative");
    if (order < 1) throw ConfigError("order must be at least 1");
  }

  CouplingConfig coupling() const { return {eps5, ell, ExactScalar(g), vev}; }

  Json to_json() const {
    return Json{{"eps4", eps4}, {"eps5", eps5},   {"ell", ell.get_str()}, {"g", g.get_str()},
                {"vev", vev.get_str()}, {"order", order}, {"seed", seed}};
  }
};

namespace detail {

inline std::string lie_str(const StructureConstants& alg, const LieVector& v) {
  if (v.is_zero()) return "0";
  std::string s;
  for (const auto& [i, c] : v.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*" + alg.basis()[i];
  }
  return s;
}

inline Json sign_params(int eps4, int eps5) { return Json{{"eps4", eps4}, {"eps5", eps5}}; }

/// Runs f and stores its wall time on every report it returns.
inline std::vector<CheckReport> timed(bool enabled, const std::function<std::vector<CheckReport>()>& f) {
  const auto start = std::chrono::steady_clock::now();
  auto reports = f();
  if (enabled) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : reports) r.duration_ms = ms;
  }
  return reports;
}

inline void append(std::vector<CheckReport>& to, std::vector<CheckReport> from) {
  for (auto& r : from) to.push_back(std::move(r));
}

constexpr std::size_t kListedFailures = 10;

}  // namespace detail

// ---------------------------------------------------------------------------
// Algebra

inline CheckReport jacobi_check(const StructureConstants& alg, const Json& params) {
  const JacobiReport jac = jacobi_residual(alg);
  Json jd{{"triples_checked", jac.triples_checked}, {"violations", Json::array()}};
  for (std::size_t k = 0; k < std::min(jac.failures.size(), detail::kListedFailures); ++k) {
    const auto& f = jac.failures[k];
    jd["violations"].push_back({{"triple", {alg.basis()[f.triple[0]], alg.basis()[f.triple[1]], alg.basis()[f.triple[2]]}},
                                {"residual", detail::lie_str(alg, f.residual)}});
  }
  return exact_report("algebra.jacobi", "deformed algebra: Jacobi identity, all generator triples", params,
                      jac.failures.size(), jd);
}

/// Isomorphism to o(eta) through the solved scaling map.
inline CheckReport isomorphism_check(const StructureConstants& alg, const Json& params) {
  try {
    const IsomorphismScalings s = solve_isomorphism_scalings(alg.eps4(), alg.eps5());
    const IsomorphismReport iso =
        verify_linear_isomorphism(alg, build_orthogonal_algebra(Metric6(alg.eps4(), alg.eps5())),
                                  ansatz_map(s.alpha, s.beta, s.gamma));
    Json d{{"alpha", s.alpha.str()},   {"beta", s.beta.str()},
           {"gamma", s.gamma.str()},   {"family", s.family},
           {"invertible", iso.invertible}, {"pairs_checked", iso.pairs_checked},
           {"mismatches", Json::array()}};
    for (std::size_t k = 0; k < std::min(iso.mismatches.size(), detail::kListedFailures); ++k) {
      const auto& m = iso.mismatches[k];
      d["mismatches"].push_back({{"pair", {alg.basis()[m.left], alg.basis()[m.right]}}, {"residual", detail::lie_str(alg, m.residual)}});
    }
    return exact_report("algebra.isomorphism", "deformed algebra: isomorphism to the six-dimensional pseudo-orthogonal algebra",
                        params, iso.mismatches.size() + (iso.invertible ? 0 : 1), d);
  } catch (const NoSolutionInAnsatz& e) {
    return exact_report("algebra.isomorphism", "deformed algebra: isomorphism to the six-dimensional pseudo-orthogonal algebra",
                        params, 1, Json{{"error", e.what()}});
  }
}

/// rho -> 0 keeps the Jacobi identity; ell, rho -> 0 gives the
/// Heisenberg-extended Poincare brackets.
inline CheckReport contraction_check(const StructureConstants& alg, const Json& params) {
  const StructureConstants flat = contract(alg, {{Symbol::rho, ParamPoly(0)}});
  const StructureConstants hp = contract(alg, {{Symbol::ell, ParamPoly(0)}, {Symbol::rho, ParamPoly(0)}});
  std::size_t bad = jacobi_residual(flat).failures.size();
  const std::size_t flat_jacobi = bad;
  Json wrong = Json::array();
  auto expect = [&](std::size_t a, std::size_t b, const LieVector& want) {
    if (hp.bracket(a, b) == want) return;
    ++bad;
    if (wrong.size() < detail::kListedFailures)
      wrong.push_back({{"pair", {alg.basis()[a], alg.basis()[b]}}, {"found", detail::lie_str(alg, hp.bracket(a, b))}});
  };
  for (int mu = 0; mu < 4; ++mu) {
    expect(gen::P(mu), gen::I, {});
    expect(gen::X(mu), gen::I, {});
    for (int nu = 0; nu < 4; ++nu) {
      if (mu != nu) {
        expect(gen::P(mu), gen::P(nu), {});
        expect(gen::X(mu), gen::X(nu), {});
      }
      expect(gen::P(mu), gen::X(nu),
             eta(mu, nu) ? LieVector::basis(gen::I, ParamPoly(ExactScalar::i() * ExactScalar(eta(mu, nu)))) : LieVector());
    }
  }
  for (std::size_t k = 0; k < gen::kLorentzCount; ++k) expect(k, gen::I, {});
  return exact_report("algebra.contraction", "contraction limits: flat limit and Heisenberg-Poincare limit", params, bad,
                      Json{{"flat_jacobi_violations", flat_jacobi}, {"limit_mismatches", wrong}});
}

/// All three algebra checks for a 15-generator table laid out like
/// build_deformed_algebra.
inline std::vector<CheckReport> check_algebra(const StructureConstants& alg, const std::string& source) {
  Json params = detail::sign_params(alg.eps4(), alg.eps5());
  params["source"] = source;
  return {jacobi_check(alg, params), isomorphism_check(alg, params), contraction_check(alg, params)};
}

inline std::vector<CheckReport> check_algebra(int eps4, int eps5) {
  return check_algebra(build_deformed_algebra(eps4, eps5), "built-in");
}

// Fixture files: {"eps4", "eps5", "basis": [...], "brackets": [{"left", "right",
// "value": [{"generator", "terms": [{"re", "im", "powers": {symbol: n}}]}]}]}

inline Json poly_to_json(const ParamPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json powers = Json::object();
    for (std::size_t s = 0; s < kSymbolCount; ++s)
      if (m[s]) powers[std::string(kSymbolNames[s])] = m[s];
    terms.push_back({{"re", c.re().get_str()}, {"im", c.im().get_str()}, {"powers", powers}});
  }
  return terms;
}

inline ParamPoly poly_from_json(const Json& terms) {
  ParamPoly p;
  for (const auto& t : terms) {
    Monomial m{};
    for (const auto& [name, n] : t.at("powers").items()) m[static_cast<std::size_t>(symbol_from_name(name))] = n.get<std::uint16_t>();
    const ExactScalar c(parse_rational(t.value("re", std::string("0"))), parse_rational(t.value("im", std::string("0"))));
    p += ParamPoly::term(m, c);
  }
  return p;
}

inline Json algebra_to_json(const StructureConstants& alg) {
  Json brackets = Json::array();
  for (const auto& [key, value] : alg.table()) {
    Json v = Json::array();
    for (const auto& [i, c] : value.terms()) v.push_back({{"generator", alg.basis()[i]}, {"terms", poly_to_json(c)}});
    brackets.push_back({{"left", alg.basis()[key.first]}, {"right", alg.basis()[key.second]}, {"value", v}});
  }
  return Json{{"eps4", alg.eps4()}, {"eps5", alg.eps5()}, {"basis", alg.basis()}, {"brackets", brackets}};
}

inline StructureConstants algebra_from_json(const Json& j) {
  try {
    const int eps4 = j.at("eps4").get<int>(), eps5 = j.at("eps5").get<int>();
    require_sign(eps4, "eps4");
    require_sign(eps5, "eps5");
    const auto basis = j.at("basis").get<std::vector<std::string>>();
    if (basis != gen::labels()) throw ConfigError("fixture basis must match the 15-generator layout");
    StructureConstants alg(basis, eps4, eps5);
    for (const auto& b : j.at("brackets")) {
      LieVector v;
      for (const auto& t : b.at("value")) v.add(alg.index_of(t.at("generator").get<std::string>()), poly_from_json(t.at("terms")));
      alg.set(alg.index_of(b.at("left").get<std::string>()), alg.index_of(b.at("right").get<std::string>()), v);
    }
    return alg;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid algebra fixture: ") + e.what());
  }
}

inline StructureConstants load_algebra_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fixture " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("fixture " + path + " is not valid JSON: " + e.what());
  }
  return algebra_from_json(j);
}

// ---------------------------------------------------------------------------
// Representation, Clifford, plane waves

inline std::vector<CheckReport> check_rep(int eps5) {
  std::vector<CheckReport> out;
  const auto labels = gen::labels();
  for (const auto& fam : verify_rep_closure(eps5)) {
    Json d{{"pairs_checked", fam.pairs_checked}, {"failing_pairs", Json::array()}};
    for (std::size_t k = 0; k < std::min(fam.failures.size(), detail::kListedFailures); ++k)
      d["failing_pairs"].push_back({labels[fam.failures[k].left], labels[fam.failures[k].right]});
    out.push_back(exact_report("rep.closure", "Weyl-algebra representation: bracket closure",
                               Json{{"eps5", eps5}, {"family", family_name(fam.family)}}, fam.failures.size(), d));
  }
  return out;
}

inline std::vector<CheckReport> check_clifford(int eps5) {
  std::vector<CheckReport> out;
  const CliffordReport rep = verify_clifford(build_majorana_rep(eps5));
  for (const auto& r : rep.relations) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) nonzero += r.residual(i, j).is_zero() ? 0 : 1;
    out.push_back(exact_report("clifford.relation", "Clifford relations in the Majorana representation",
                               Json{{"eps5", eps5}, {"a", r.a}, {"b", r.b}, {"kind", r.square ? "square" : "anticommutator"}},
                               nonzero));
  }
  out.push_back(exact_report("clifford.gamma5_product", "gamma^5 = i gamma^0 gamma^1 gamma^2 gamma^3", Json{{"eps5", eps5}},
                             rep.gamma5_product_ok ? 0 : 1));
  out.push_back(exact_report("clifford.gamma4_convention", "gamma^4 in terms of gamma^5", Json{{"eps5", eps5}},
                             rep.gamma4_convention_ok ? 0 : 1));
  out.push_back(exact_report("clifford.imaginary", "Majorana representation: gamma^0..gamma^3 purely imaginary",
                             Json{{"eps5", eps5}}, rep.imaginary_ok ? 0 : 1));
  return out;
}

inline constexpr double kLemmaTolerance = 1e-8;

inline std::vector<CheckReport> check_planewave(int eps5, unsigned order) {
  std::vector<CheckReport> out;
  const PlaneWaveReport rep = UEAEngine(eps5).verify_plane_wave_relations(order);
  for (const auto& id : rep.identities) {
    Json d{{"remainder_is_zero", id.remainder.is_zero()},
           {"min_ell_degree", id.min_ell_degree ? Json(*id.min_ell_degree) : Json(nullptr)},
           {"required_min_ell_degree", order + 1}};
    out.push_back(exact_report("planewave.identity", "plane-wave exponent identities in the enveloping algebra",
                               Json{{"eps5", eps5}, {"order", order}, {"identity", id.name}}, id.ok ? 0 : 1, d));
  }
  out.push_back(tolerance_report("planewave.lemma", "truncated exponential spot check at ell = 1/10, k = (1,0,0,0)",
                                 Json{{"eps5", eps5}, {"order", order}}, rep.lemma.max_residual, kLemmaTolerance,
                                 Json{{"max_power", rep.lemma.max_power}}));
  return out;
}

// ---------------------------------------------------------------------------
// Modes

inline BoostParameters random_boost(std::mt19937_64& rng, double bound = 2.0) {
  std::uniform_real_distribution<double> u(-bound, bound);
  BoostParameters w = BoostParameters::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      w(a, b) = u(rng);
      w(b, a) = -w(a, b);
    }
  return w;
}

inline constexpr double kBoostTolerance = 1e-10;

inline Json basis_json(const std::vector<ExactVector>& basis) {
  Json out = Json::array();
  for (const auto& v : basis) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(x.str());
    out.push_back(row);
  }
  return out;
}

/// Expected heavy-branch bases: (1,0,+-i,0), (0,1,0,+-i) for eps5 = -1 and
/// (1,+-1,0,0), (0,0,1,-+1) for eps5 = +1, signs following the frame.
inline std::vector<ExactVector> expected_heavy_basis(int eps5, int energy_sign) {
  const ExactScalar o(1), z(0);
  if (eps5 == -1) {
    const ExactScalar ia = ExactScalar(energy_sign) * ExactScalar::i();
    return {{o, z, ia, z}, {z, o, z, ia}};
  }
  const ExactScalar s(energy_sign);
  return {{o, s, z, z}, {z, z, o, -s}};
}

inline CheckReport check_heavy_solution(int eps5, const Rational& ell, int energy_sign) {
  const SpinorSolution s = reference_solutions(ell, eps5, Branch::Heavy, energy_sign);
  const RealityClass want = eps5 == -1 ? RealityClass::Dirac : RealityClass::Majorana;
  std::size_t bad = 0;
  bad += s.basis.size() == 2 ? 0 : 1;
  bad += s.reality == want ? 0 : 1;
  const bool form = s.basis == expected_heavy_basis(eps5, energy_sign);
  bad += form ? 0 : 1;
  for (const auto& v : s.basis) bad += residual_is_zero(s.k, v, ell, eps5) ? 0 : 1;
  return exact_report("modes.heavy_solution", "heavy-branch spinors in the reference frame",
                      Json{{"eps5", eps5}, {"ell", ell.get_str()}, {"energy_sign", energy_sign}}, bad,
                      Json{{"k", {s.k[0].get_str(), s.k[1].get_str(), s.k[2].get_str(), s.k[3].get_str()}},
                           {"k2", json_exact(s.k2)},
                           {"nullspace_dimension", s.basis.size()},
                           {"class", reality_name(s.reality)},
                           {"block_form_matches", form},
                           {"basis", basis_json(s.basis)}});
}

inline CheckReport check_dispersion(int eps5, const Rational& ell) {
  const auto roots = dispersion_roots(ell, eps5);
  std::vector<Rational> want{0, Rational(-eps5 * 4 / (ell * ell))};
  std::sort(want.begin(), want.end());
  Json r = Json::array();
  for (const auto& x : roots) r.push_back(json_exact(x));
  return exact_report("modes.dispersion", "dispersion branches of the squared extended Dirac operator",
                      Json{{"eps5", eps5}, {"ell", ell.get_str()}}, roots == want ? 0 : 1, Json{{"roots_k2", r}});
}

inline CheckReport check_squared_identity(int eps5) {
  const PolyMatrix r = squared_operator_residual(eps5);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) nonzero += r(i, j).is_zero() ? 0 : 1;
  return exact_report("modes.squared_identity", "D(k)^2 = (k^2 + eps5 ell^2 (k^2)^2 / 4) I, symbolic", Json{{"eps5", eps5}},
                      nonzero);
}

inline CheckReport check_boosts(int eps5, const Rational& ell, std::uint64_t seed, int samples = 100) {
  std::mt19937_64 rng(seed);
  double worst_residual = 0.0, worst_k2 = 0.0;
  for (int sign : {1, -1}) {
    const SpinorSolution s = reference_solutions(ell, eps5, Branch::Heavy, sign);
    for (int n = 0; n < samples / 2; ++n) {
      const BoostedSolution b = boost_solution(s, random_boost(rng), std::numeric_limits<double>::infinity());
      worst_residual = std::max(worst_residual, b.max_residual);
      worst_k2 = std::max(worst_k2, std::abs(b.k2 - s.k2.get_d()) / std::abs(s.k2.get_d()));
    }
  }
  return tolerance_report("modes.boost", "boost covariance of heavy-branch solutions",
                          Json{{"eps5", eps5}, {"ell", ell.get_str()}, {"samples", samples}, {"seed", seed}},
                          std::max(worst_residual, worst_k2), kBoostTolerance,
                          Json{{"max_spinor_residual", json_number(worst_residual)},
                               {"max_relative_k2_change", json_number(worst_k2)},
                               {"max_abs_omega", 2}});
}

inline std::vector<CheckReport> check_modes(int eps5, const Rational& ell, std::uint64_t seed) {
  std::vector<CheckReport> out;
  out.push_back(check_dispersion(eps5, ell));
  out.push_back(check_squared_identity(eps5));
  for (int sign : {1, -1}) out.push_back(check_heavy_solution(eps5, ell, sign));
  const SpinorSolution m = reference_solutions(ell, eps5, Branch::Massless);
  std::size_t bad = m.basis.size() == 2 ? 0 : 1;
  for (const auto& v : m.basis) bad += residual_is_zero(m.k, v, ell, eps5) ? 0 : 1;
  out.push_back(exact_report("modes.massless_solution", "massless-branch spinors", Json{{"eps5", eps5}, {"ell", ell.get_str()}},
                             bad,
                             Json{{"nullspace_dimension", m.basis.size()}, {"class", reality_name(m.reality)},
                                  {"basis", basis_json(m.basis)}}));
  out.push_back(check_boosts(eps5, ell, seed));
  return out;
}

// ---------------------------------------------------------------------------
// Seesaw

inline Json coupling_params(const CouplingConfig& c) {
  return Json{{"eps5", c.eps5}, {"ell", c.ell.get_str()}, {"g", c.g.str()}, {"vev", c.vev.get_str()}};
}

/// Scaling-law bound on the relative light-mass deviation: 2 (mu / M)^2.
inline double deviation_bound(const CouplingConfig& c) {
  const Rational ratio2 = c.coupling_squared() / (c.heavy_scale() * c.heavy_scale());
  return Rational(2 * ratio2).get_d();
}

inline Json branch_json(const ModeBranch& b) {
  return Json{{"k2", b.k2_exact ? json_exact(*b.k2_exact) : Json{{"value", json_number(b.k2)}}},
              {"frame_parameter", json_number(b.t.value())},
              {"exact_root", b.t.exact},
              {"nullspace_dimension", b.nullity},
              {"class", reality_name(b.reality)}};
}

inline std::vector<CheckReport> check_seesaw(const CouplingConfig& c) {
  std::vector<CheckReport> out;
  const Json params = coupling_params(c);
  const LeadingMass lead = light_mass_leading(c);
  const Json lead_json{{"mass", json_exact(lead.mass)}, {"k2", json_exact(lead.k2)}, {"class", reality_name(lead.reality)}};

  try {
    const ModeSpectrum s = exact_mode_spectrum(c);
    Json roots = Json::array();
    for (const auto& r : s.roots) roots.push_back(r.exact ? Json(r.lo.get_str()) : json_number(r.value()));
    out.push_back(tolerance_report("seesaw.spectrum", "seesaw: exact light mass against the leading-order mass", params,
                                   s.deviation, deviation_bound(c),
                                   Json{{"leading", lead_json},
                                        {"light", branch_json(s.light)},
                                        {"heavy", branch_json(s.heavy)},
                                        {"frame_roots", roots},
                                        {"roots_symmetric", s.symmetric},
                                        {"deviation", json_number(s.deviation)}}));
    out.push_back(exact_report("seesaw.light_class", "seesaw: light-mode reality class", params,
                               s.light.reality == lead.reality ? 0 : 1,
                               Json{{"found", reality_name(s.light.reality)}, {"expected", reality_name(lead.reality)}}));
    const NumericSpectrum o = numeric_mode_spectrum(NumericCoupling::from(c));
    const double rel = o.light_k2 == 0.0 ? std::abs(s.light.k2) : std::abs(s.light.k2 / o.light_k2 - 1.0);
    out.push_back(tolerance_report("seesaw.oracle", "seesaw: exact roots against the eigenvalue oracle", params, rel, 1e-6,
                                   Json{{"oracle_light_k2", json_number(o.light_k2)},
                                        {"oracle_heavy_k2", json_number(o.heavy_k2)}}));
  } catch (const std::exception& e) {
    CheckReport r = exact_report("seesaw.spectrum", "seesaw: exact light mass against the leading-order mass", params, 1,
                                 Json{{"leading", lead_json}, {"error", e.what()}});
    r.residual.reset();
    out.push_back(r);
  }

  const EffectiveEquationCheck eff = verify_effective_equation(c);
  out.push_back(exact_report("seesaw.effective_equation", "seesaw: leading-order elimination reproduces the effective operator",
                             Json{{"eps5", c.eps5}}, eff.ok() ? 0 : 1,
                             Json{{"heavy_equation", eff.heavy_residual.is_zero()},
                                  {"elimination", eff.elimination_residual.is_zero()},
                                  {"effective_operator", eff.operator_residual.is_zero()},
                                  {"instance", eff.instance_ok}}));
  return out;
}

// ---------------------------------------------------------------------------
// Scan

enum class ScanParam { ell, g, vev };

inline ScanParam parse_scan_param(const std::string& s) {
  if (s == "ell") return ScanParam::ell;
  if (s == "g") return ScanParam::g;
  if (s == "vev") return ScanParam::vev;
  throw ConfigError("scan parameter must be ell, g or vev");
}

inline const std::vector<std::string>& scan_columns() {
  static const std::vector<std::string> cols = {
      "param",     "value",          "ell",         "g",          "vev",          "heavy_k2", "heavy_k2_value",
      "light_k2",  "coupled_heavy_k2", "leading_mass", "deviation", "light_class", "status",   "error"};
  return cols;
}

/// values[i] = from + i (to - from) / (steps - 1), exact.
inline std::vector<Rational> scan_values(const Rational& from, const Rational& to, int steps) {
  if (steps < 1) throw ConfigError("steps must be at least 1");
  std::vector<Rational> out;
  for (int i = 0; i < steps; ++i) out.push_back(steps == 1 ? from : Rational(from + i * (to - from) / (steps - 1)));
  return out;
}

inline Json scan_row(RunConfig cfg, ScanParam p, const Rational& value) {
  const char* names[] = {"ell", "g", "vev"};
  Json row{{"param", names[static_cast<int>(p)]}, {"value", value.get_str()}};
  switch (p) {
    case ScanParam::ell: cfg.ell = value; break;
    case ScanParam::g: cfg.g = value; break;
    case ScanParam::vev: cfg.vev = value; break;
  }
  row["ell"] = cfg.ell.get_str();
  row["g"] = cfg.g.get_str();
  row["vev"] = cfg.vev.get_str();
  try {
    cfg.validate();
    const CouplingConfig c = cfg.coupling();
    const Rational heavy = dispersion_roots(cfg.ell, cfg.eps5)[cfg.eps5 == -1 ? 1 : 0];
    row["heavy_k2"] = heavy.get_str();
    row["heavy_k2_value"] = json_number(heavy.get_d());
    const LeadingMass lead = light_mass_leading(c);
    row["leading_mass"] = json_number(lead.mass.get_d());
    const ModeSpectrum s = exact_mode_spectrum(c);
    row["light_k2"] = json_number(s.light.k2);
    row["coupled_heavy_k2"] = json_number(s.heavy.k2);
    row["deviation"] = json_number(s.deviation);
    row["light_class"] = reality_name(s.light.reality);
    row["status"] = s.deviation <= deviation_bound(c) ? "pass" : "fail";
  } catch (const std::exception& e) {
    row["status"] = "fail";
    row["error"] = e.what();
  }
  return row;
}

inline std::vector<Json> run_scan(const RunConfig& cfg, ScanParam p, const Rational& from, const Rational& to, int steps) {
  std::vector<Json> rows;
  for (const auto& v : scan_values(from, to, steps)) rows.push_back(scan_row(cfg, p, v));
  return rows;
}

// ---------------------------------------------------------------------------
// Acceptance suite

inline void tag_criterion(std::vector<CheckReport>& reports, int n) {
  for (auto& r : reports) r.params["criterion"] = n;
}

inline std::vector<CheckReport> check_all(std::uint64_t seed, bool timings = false) {
  std::vector<CheckReport> out;
  auto add = [&](int criterion, const std::function<std::vector<CheckReport>()>& f) {
    auto r = detail::timed(timings, f);
    tag_criterion(r, criterion);
    detail::append(out, std::move(r));
  };
  const std::array<std::pair<int, int>, 4> signs = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  const std::array<Rational, 3> ells = {make_rational(1, 2), make_rational(1), make_rational(2)};

  add(1, [&] {
    std::vector<CheckReport> r;
    for (auto [e4, e5] : signs) r.push_back(jacobi_check(build_deformed_algebra(e4, e5), detail::sign_params(e4, e5)));
    return r;
  });
  add(2, [&] {
    std::vector<CheckReport> r;
    for (auto [e4, e5] : signs) r.push_back(isomorphism_check(build_deformed_algebra(e4, e5), detail::sign_params(e4, e5)));
    return r;
  });
  add(3, [&] {
    std::vector<CheckReport> r;
    for (int e5 : {1, -1}) detail::append(r, check_rep(e5));
    return r;
  });
  add(4, [&] {
    std::vector<CheckReport> r;
    for (int e5 : {1, -1}) detail::append(r, check_clifford(e5));
    return r;
  });
  add(5, [&] {
    std::vector<CheckReport> r;
    for (int e5 : {1, -1}) detail::append(r, check_planewave(e5, 4));
    return r;
  });
  add(6, [&] {
    std::vector<CheckReport> r;
    for (int e5 : {1, -1}) {
      for (const auto& ell : ells) r.push_back(check_dispersion(e5, ell));
      r.push_back(check_squared_identity(e5));
    }
    return r;
  });
  add(7, [&] {
    std::vector<CheckReport> r;
    for (int e5 : {1, -1})
      for (int sign : {1, -1}) r.push_back(check_heavy_solution(e5, Rational(1), sign));
    return r;
  });
  add(8, [&] {
    std::vector<CheckReport> r;
    for (int e5 : {1, -1}) r.push_back(check_boosts(e5, Rational(1), seed));
    return r;
  });
  add(9, [&] {
    std::vector<CheckReport> r;
    // Leading-order formula on fixed instances.
    struct Example {
      CouplingConfig c;
      Rational k2;
    };
    const std::vector<Example> examples = {
        {{-1, Rational(2), ExactScalar(1), Rational(1)}, Rational(1)},
        {{1, make_rational(1, 100), ExactScalar(2), Rational(3)}, make_rational(-324, 10000)},
        {{1, Rational(1), ExactScalar(0), Rational(5)}, Rational(0)}};
    for (const auto& ex : examples) {
      const LeadingMass m = light_mass_leading(ex.c);
      const RealityClass want = ex.c.eps5 == -1 ? RealityClass::Dirac : RealityClass::Majorana;
      const bool ok = m.k2 == ex.k2 && m.reality == want && m.mass == ex.c.coupling_squared() * ex.c.ell / 2;
      r.push_back(exact_report("seesaw.leading", "seesaw: leading-order light mass and class", coupling_params(ex.c),
                               ok ? 0 : 1, Json{{"k2", json_exact(m.k2)}, {"class", reality_name(m.reality)}}));
    }
    // g v ell / 2 = 1/100 and 1/1000.
    for (int e5 : {1, -1}) {
      for (auto [n, tol] : {std::pair{100L, 1e-3}, std::pair{1000L, 1e-5}}) {
        const CouplingConfig c{e5, Rational(1), ExactScalar(1), make_rational(2, n)};
        const ModeSpectrum s = exact_mode_spectrum(c);
        r.push_back(tolerance_report("seesaw.deviation", "seesaw: exact spectrum against leading order",
                                     coupling_params(c), s.deviation, tol,
                                     Json{{"light", branch_json(s.light)}, {"leading_mass", json_exact(s.leading.mass)}}));
        const double M = c.heavy_scale().get_d();
        r.push_back(tolerance_report("seesaw.heavy_limit", "seesaw: heavy root approaches 2/ell",
                                     coupling_params(c), std::abs(s.heavy.t.value() - M) / M, deviation_bound(c),
                                     Json{{"heavy", branch_json(s.heavy)}}));
      }
      const CouplingConfig free{e5, Rational(1), ExactScalar(0), Rational(1)};
      const ModeSpectrum s = exact_mode_spectrum(free);
      const bool exact_heavy = s.heavy.t.exact && s.heavy.t.lo == free.heavy_scale();
      r.push_back(exact_report("seesaw.heavy_limit", "seesaw: heavy root approaches 2/ell", coupling_params(free),
                               exact_heavy ? 0 : 1, Json{{"heavy", branch_json(s.heavy)}}));
    }
    return r;
  });
  add(10, [&] {
    std::vector<CheckReport> r;
    for (int e5 : {1, -1}) {
      const EffectiveEquationCheck eff = verify_effective_equation({e5, Rational(1), ExactScalar(1), Rational(1)});
      r.push_back(exact_report("seesaw.effective_equation",
                               "seesaw: leading-order elimination reproduces the effective operator", Json{{"eps5", e5}},
                               eff.ok() ? 0 : 1));
    }
    return r;
  });
  return out;
}

}  // namespace ncdirac
