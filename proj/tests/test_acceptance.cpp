// Acceptance criteria 1-11, one PASS/FAIL line each.

#include "ncdirac/clifford.hpp"
#include "ncdirac/dirac_modes.hpp"
#include "ncdirac/lie_algebra.hpp"
#include "ncdirac/seesaw.hpp"
#include "ncdirac/uea.hpp"
#include "ncdirac/weyl.hpp"

#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace ncdirac;

namespace {

const std::array<std::pair<int, int>, 4> kSigns = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

Rational q(long n, long d = 1) { return make_rational(n, d); }

bool report(int n, bool ok, const std::string& what) {
  std::cout << "CRITERION " << n << ": " << (ok ? "PASS" : "FAIL") << "  " << what << std::endl;
  return ok;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Acceptance, C01_JacobiAllSignPairs) {
  bool ok = true;
  std::size_t triples = 0;
  for (auto [e4, e5] : kSigns) {
    const JacobiReport r = jacobi_residual(build_deformed_algebra(e4, e5));
    ok = ok && r.ok() && r.triples_checked == 455;
    triples += r.triples_checked;
  }
  EXPECT_TRUE(report(1, ok, "Jacobi residual exactly zero on " + std::to_string(triples) + " triples (455 per sign pair)"));
}

TEST(Acceptance, C02_IsomorphismToPseudoOrthogonal) {
  bool ok = true;
  for (auto [e4, e5] : kSigns) {
    try {
      const IsomorphismScalings s = solve_isomorphism_scalings(e4, e5);
      const IsomorphismReport r = verify_linear_isomorphism(build_deformed_algebra(e4, e5),
                                                            build_orthogonal_algebra(Metric6(e4, e5)),
                                                            ansatz_map(s.alpha, s.beta, s.gamma));
      ok = ok && r.ok();
    } catch (const NoSolutionInAnsatz&) {
      ok = false;
    }
  }
  EXPECT_TRUE(report(2, ok, "scaling map solved in the ansatz family and verified exactly for all four sign pairs"));
}

TEST(Acceptance, C03_RepresentationClosure) {
  bool ok = true;
  std::size_t families = 0;
  for (int e5 : {1, -1}) {
    for (const auto& f : verify_rep_closure(e5)) {
      ok = ok && f.ok() && f.pairs_checked > 0;
      ++families;
    }
  }
  EXPECT_TRUE(report(3, ok && families == 16, "8 bracket families closed exactly in the Weyl algebra, both eps5"));
}

TEST(Acceptance, C04_CliffordRelations) {
  bool ok = true;
  for (int e5 : {1, -1}) {
    const CliffordReport r = verify_clifford(build_majorana_rep(e5));
    std::size_t squares = 0;
    for (const auto& rel : r.relations) squares += rel.square ? 1 : 0;
    ok = ok && r.ok() && r.relations.size() == 20 && squares == 5 && r.gamma5_product_ok && r.imaginary_ok;
  }
  EXPECT_TRUE(report(4, ok, "15 anticommutators + 5 squares exact, gamma^5 product exact, gamma^0..3 imaginary"));
}

TEST(Acceptance, C05_PlaneWaveIdentities) {
  bool ok = true;
  double worst = 0.0;
  for (int e5 : {1, -1}) {
    const PlaneWaveReport r = UEAEngine(e5).verify_plane_wave_relations(4);
    for (const auto& id : r.identities) {
      const bool deg_ok = id.remainder.is_zero() || (id.min_ell_degree && *id.min_ell_degree >= 5);
      ok = ok && deg_ok;
    }
    ok = ok && r.lemma.max_residual < 1e-8;
    worst = std::max(worst, r.lemma.max_residual);
  }
  std::ostringstream what;
  what << "N=4 remainders have min ell-degree >= 5 (identically zero); spot check residual " << worst << " < 1e-8";
  EXPECT_TRUE(report(5, ok, what.str()));
}

TEST(Acceptance, C06_DispersionBranches) {
  bool ok = true;
  for (const Rational& ell : {q(1, 2), q(1), q(2)}) {
    ok = ok && dispersion_roots(ell, -1) == std::vector<Rational>{0, 4 / (ell * ell)};
    ok = ok && dispersion_roots(ell, 1) == std::vector<Rational>{-4 / (ell * ell), 0};
  }
  for (int e5 : {1, -1}) {
    const PolyMatrix r = squared_operator_residual(e5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) ok = ok && r(i, j).is_zero();
  }
  EXPECT_TRUE(report(6, ok, "roots {0, -eps5 4/ell^2} exact at ell in {1/2, 1, 2}; squared identity symbolic"));
}

TEST(Acceptance, C07_SpinorSolutions) {
  const ExactScalar o(1), z(0), i = ExactScalar::i();
  bool ok = true;
  for (int sign : {1, -1}) {
    const SpinorSolution d = reference_solutions(q(1), -1, Branch::Heavy, sign);
    const ExactScalar ia = ExactScalar(sign) * i;
    ok = ok && d.basis.size() == 2 && d.reality == RealityClass::Dirac &&
         d.basis == std::vector<ExactVector>{{o, z, ia, z}, {z, o, z, ia}};
  }
  const SpinorSolution m = reference_solutions(q(1), 1, Branch::Heavy);
  ok = ok && m.basis.size() == 2 && m.reality == RealityClass::Majorana &&
       m.basis == std::vector<ExactVector>{{o, o, z, z}, {z, z, o, -o}};
  EXPECT_TRUE(report(7, ok, "heavy nullspaces 2-dim; eps5=-1 Dirac (a, +-ia); eps5=+1 Majorana real basis"));
}

TEST(Acceptance, C08_BoostCovariance) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst_r = 0.0, worst_k2 = 0.0;
  for (int e5 : {1, -1}) {
    const SpinorSolution s = reference_solutions(q(1), e5, Branch::Heavy);
    for (int n = 0; n < 100; ++n) {
      BoostParameters w = BoostParameters::Zero();
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          w(a, b) = u(rng);
          w(b, a) = -w(a, b);
        }
      const BoostedSolution b = boost_solution(s, w, std::numeric_limits<double>::infinity());
      worst_r = std::max(worst_r, b.max_residual);
      worst_k2 = std::max(worst_k2, std::abs(b.k2 - s.k2.get_d()) / std::abs(s.k2.get_d()));
    }
  }
  std::ostringstream what;
  what << "100 seeded boosts per eps5: max residual " << worst_r << ", max relative k^2 change " << worst_k2 << " (< 1e-10)";
  EXPECT_TRUE(report(8, worst_r < 1e-10 && worst_k2 < 1e-10, what.str()));
}

TEST(Acceptance, C09_SeesawLeadingOrder) {
  bool ok = true;
  // class and value of the leading-order formula
  for (int e5 : {1, -1}) {
    const CouplingConfig c{e5, q(2, 7), ExactScalar(q(3, 5), q(4, 5)), q(5, 2)};
    const LeadingMass m = light_mass_leading(c);
    const Rational mass = c.g.norm2() * c.vev * c.vev * c.ell / 2;
    ok = ok && m.mass == mass && m.k2 == -e5 * mass * mass &&
         m.reality == (e5 == -1 ? RealityClass::Dirac : RealityClass::Majorana);
  }
  double dev2 = 0.0, dev3 = 0.0;
  for (int e5 : {1, -1}) {
    // g v ell / 2 = 10^-2 and 10^-3
    const ModeSpectrum s2 = exact_mode_spectrum({e5, q(1), ExactScalar(1), q(2, 100)});
    const ModeSpectrum s3 = exact_mode_spectrum({e5, q(1), ExactScalar(1), q(2, 1000)});
    dev2 = std::max(dev2, s2.deviation);
    dev3 = std::max(dev3, s3.deviation);
    ok = ok && s2.light.reality == s2.leading.reality && s3.light.reality == s3.leading.reality;
    // heavy root shifts by O((g v ell)^2) and is exactly 2/ell at g = 0
    ok = ok && std::abs(s3.heavy.t.value() - 2.0) < std::abs(s2.heavy.t.value() - 2.0);
    const ModeSpectrum free = exact_mode_spectrum({e5, q(1), ExactScalar(0), q(1)});
    ok = ok && free.heavy.t.exact && free.heavy.t.lo == 2;
  }
  ok = ok && dev2 < 1e-3 && dev3 < 1e-5;
  std::ostringstream what;
  what << "leading formula exact; deviation " << dev2 << " < 1e-3 at 1e-2, " << dev3
       << " < 1e-5 at 1e-3; heavy root -> 2/ell, exact at g=0";
  EXPECT_TRUE(report(9, ok, what.str()));
}

TEST(Acceptance, C10_EffectiveEquationIdentity) {
  bool ok = true;
  for (int e5 : {1, -1}) ok = ok && verify_effective_equation({e5, q(3, 4), ExactScalar(q(1, 3), q(2)), q(7)}).ok();
  EXPECT_TRUE(report(10, ok, "elimination substituted back reproduces both effective operators symbolically"));
}

TEST(Acceptance, C11_Determinism) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("ncdirac_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = NCDIRAC_CLI_PATH;
  bool ok = true;
  for (int run : {1, 2}) {
    const std::string cmd =
        "\"" + cli + "\" check all --seed 42 --out \"" + (dir / ("run" + std::to_string(run) + ".json")).string() + "\"";
    ok = ok && std::system(cmd.c_str()) == 0;
  }
  const std::string a = slurp(dir / "run1.json"), b = slurp(dir / "run2.json");
  ok = ok && !a.empty() && a == b;
  fs::remove_all(dir);
  EXPECT_TRUE(report(11, ok, "'check all --seed 42' byte-identical across two runs (" + std::to_string(a.size()) + " bytes)"));
}
