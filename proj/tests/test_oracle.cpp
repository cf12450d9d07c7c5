#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pdmorse/analytic.hpp"
#include "pdmorse/catalog.hpp"
#include "pdmorse/errors.hpp"
#include "pdmorse/oracle.hpp"

using pdm::AmbiguityOrdering;

namespace {

const pdm::MoleculeSpec& h2() {
  static const auto m = pdm::find_molecule("H2");
  return m;
}

}  // namespace

TEST(Ueff, OrderingTermVanishesAtConstantMass) {
  const auto mm = pdm::mass_model(h2(), 0.0);
  for (double x : {-0.5, 0.0, 2.0}) {
    EXPECT_EQ(pdm::u_ordering(mm, AmbiguityOrdering::weyl(), h2().hbar2(), x), 0.0);
    EXPECT_EQ(pdm::u_ordering(mm, AmbiguityOrdering::li_kuhn(), h2().hbar2(), x), 0.0);
    EXPECT_EQ(pdm::u_eff(mm, AmbiguityOrdering::weyl(), h2(), x), pdm::potential_value(h2(), x));
  }
}

TEST(Ueff, OrderingTermAtOriginByHand) {
  const double eta = 0.2, b = h2().beta(), m0 = h2().m0, hb = h2().hbar2();
  // m = m0 u^-2 with u = 1 - eta e^{-bx}; at x = 0: u = 1 - eta, u' = eta b, u'' = -eta b^2
  const double u = 1 - eta, du = eta * b, d2u = -eta * b * b;
  const double m = m0 / (u * u);
  const double dm = -2 * m0 * du / (u * u * u);
  const double d2m = 6 * m0 * du * du / std::pow(u, 4) - 2 * m0 * d2u / std::pow(u, 3);
  // Weyl: a = 1, alpha = gamma = 0
  const double weyl = -hb / (8 * m * m * m) * (-m * d2m + 2 * dm * dm);
  const auto mm = pdm::mass_model(h2(), eta);
  EXPECT_NEAR(pdm::u_ordering(mm, AmbiguityOrdering::weyl(), hb, 0.0), weyl, 1e-13 * std::abs(weyl));
  // Li-Kuhn: a = alpha = 0, gamma = -1/2
  const double lk = -hb / (4 * m * m * m) * (-0.5 * m * d2m + 2 * 0.5 * dm * dm);
  EXPECT_NEAR(pdm::u_ordering(mm, AmbiguityOrdering::li_kuhn(), hb, 0.0), lk, 1e-13 * std::abs(lk));
  // the two presets agree pointwise, not only in the spectrum
  for (double x : {-0.5, 0.0, 0.4, 3.0}) {
    EXPECT_NEAR(pdm::u_ordering(mm, AmbiguityOrdering::weyl(), hb, x),
                pdm::u_ordering(mm, AmbiguityOrdering::li_kuhn(), hb, x), 1e-14);
  }
}

TEST(Ueff, KineticTermMatchesDifferencedMass) {
  const auto mm = pdm::mass_model(h2(), 0.2);
  const double hb = h2().hbar2();
  const double h = 1e-3;
  auto m = [&](double x) { return pdm::mass_value(mm, x); };
  // fourth-order differences of m(x)
  const double x = 0.0;
  const double dm = (m(x - 2 * h) - 8 * m(x - h) + 8 * m(x + h) - m(x + 2 * h)) / (12 * h);
  const double d2m =
      (-m(x - 2 * h) + 16 * m(x - h) - 30 * m(x) + 16 * m(x + h) - m(x + 2 * h)) / (12 * h * h);
  const double mv = m(x);
  const double ord = -hb / (8 * mv * mv * mv) * (-mv * d2m + 2 * dm * dm);
  const double kin = hb / (4 * mv * mv) * (1.5 * dm * dm / mv - d2m);
  const double ref = ord + pdm::potential_value(h2(), x) + kin;
  const double got = pdm::u_eff(mm, AmbiguityOrdering::weyl(), h2(), x);
  EXPECT_NEAR(got, ref, 1e-8 * std::abs(got));
}

TEST(Ueff, DecaysToZero) {
  const auto mm = pdm::mass_model(h2(), 0.2);
  EXPECT_NEAR(pdm::u_eff(mm, AmbiguityOrdering::weyl(), h2(), 30.0), 0.0, 1e-20);
}

TEST(Shooting, ParticleInABox) {
  const double L = 2.0, m0 = 0.7, hb = 4.18e-3;
  const pdm::GridSpec grid{0.0, L, 4001};
  const auto prob = pdm::make_problem(
      grid, [&](double) { return m0; }, [](double) { return 0.0; }, hb, 1.0);
  for (int n = 0; n <= 5; ++n) {
    const double exact = hb * std::numbers::pi * std::numbers::pi * (n + 1) * (n + 1) / (2 * m0 * L * L);
    EXPECT_NEAR(pdm::solve_state(prob, n).E, exact, 1e-6 * exact) << n;
  }
}

TEST(Shooting, NodesMonotoneInEnergy) {
  const auto mm = pdm::mass_model(h2(), 0.2);
  const auto prob = pdm::make_problem(mm, AmbiguityOrdering::weyl(), h2(), pdm::default_grid(h2(), 0.2));
  int prev = 0;
  for (double E = -4.7; E < 0.0; E += 0.01) {
    const int nodes = pdm::shoot(prob, E).nodes;
    ASSERT_GE(nodes, prev) << E;
    prev = nodes;
  }
  EXPECT_GE(prev, 15);
}

TEST(Shooting, ConstantMassMatchesClosedForm) {
  const std::vector<int> ns{0, 1, 2, 3, 4};
  for (const auto& mol : pdm::builtin_catalog()) {
    const auto sys = pdm::reduce(mol, 0.0, AmbiguityOrdering::weyl());
    const auto grid = mol.name == "H2" ? pdm::GridSpec{-0.7, 10.0, 8001} : pdm::default_grid(mol, 0.0);
    const auto states = pdm::solve_states(pdm::mass_model(mol, 0.0), AmbiguityOrdering::weyl(), mol, grid, ns);
    for (const auto& st : states) {
      EXPECT_NEAR(st.E, pdm::energy_eV(sys, st.n), 2e-3) << mol.name << ' ' << st.n;
    }
  }
  const auto sys = pdm::reduce(h2(), 0.0, AmbiguityOrdering::weyl());
  EXPECT_NEAR(pdm::solve_states(pdm::mass_model(h2(), 0.0), AmbiguityOrdering::weyl(), h2(),
                                {-0.7, 10.0, 8001}, std::vector<int>{0})[0].E,
              -4.476, 2e-3);
  (void)sys;
}

TEST(Shooting, GridConvergence) {
  const auto mm = pdm::mass_model(h2(), 0.2);
  auto grid = pdm::default_grid(h2(), 0.2, 8001);
  const auto coarse = pdm::solve_state(pdm::make_problem(mm, AmbiguityOrdering::weyl(), h2(), grid), 3);
  grid.points = 16001;
  const auto fine = pdm::solve_state(pdm::make_problem(mm, AmbiguityOrdering::weyl(), h2(), grid), 3);
  EXPECT_LT(std::abs(coarse.E - fine.E), 4e-6);
}

TEST(Shooting, DeepWellInsensitiveToLeftEnd) {
  const auto mm = pdm::mass_model(h2(), 0.0);
  const double xmax = 25.0 / h2().beta();
  const auto a = pdm::solve_state(
      pdm::make_problem(mm, AmbiguityOrdering::weyl(), h2(), {-0.7 * h2().r0, xmax, 8001}), 0);
  const auto b = pdm::solve_state(
      pdm::make_problem(mm, AmbiguityOrdering::weyl(), h2(), {-0.95 * h2().r0, xmax, 8001}), 0);
  EXPECT_LT(std::abs(a.E - b.E), 1e-4);
}

TEST(Shooting, PdmStateMatchesSelfConsistentRoot) {
  const auto sys = pdm::reduce(h2(), 0.2, AmbiguityOrdering::weyl());
  const auto mm = pdm::mass_model(h2(), 0.2);
  const auto prob = pdm::make_problem(mm, AmbiguityOrdering::weyl(), h2(), pdm::default_grid(h2(), 0.2));
  for (int n : {0, 1, 2}) {
    const double sc = pdm::energy_eV(sys, n, pdm::QuantizationRule::SelfConsistent);
    EXPECT_NEAR(pdm::solve_state(prob, n).E, sc, 1e-5) << n;
  }
}

TEST(Shooting, Errors) {
  const auto mm = pdm::mass_model(h2(), 0.2);
  const auto prob = pdm::make_problem(mm, AmbiguityOrdering::weyl(), h2(), pdm::default_grid(h2(), 0.2));
  EXPECT_THROW(pdm::solve_state(prob, 200), pdm::Error);
  try {
    pdm::solve_state(prob, 200);
  } catch (const pdm::Error& e) {
    EXPECT_EQ(e.kind(), pdm::ErrorKind::NoBracket);
  }
  EXPECT_THROW(pdm::validate(pdm::GridSpec{-2.0, 10.0, 8001}, mm), pdm::Error);
  EXPECT_THROW(pdm::validate(pdm::GridSpec{0.0, 10.0, 100}, mm), pdm::Error);
}

TEST(PhysicalPsi, ScalesBySqrtMass) {
  const auto flat = pdm::mass_model(h2(), 0.0);
  const std::vector<double> x{0.0, 1.0}, phi{0.3, -0.2};
  const auto psi0 = pdm::physical_psi(flat, x, phi);
  EXPECT_DOUBLE_EQ(psi0[0], std::sqrt(h2().m0) * 0.3);
  const auto half = pdm::mass_model(h2(), 0.5);
  const auto psi1 = pdm::physical_psi(half, x, phi);
  EXPECT_NEAR(psi1[0], 2.0 * std::sqrt(h2().m0) * 0.3, 1e-14);
}

TEST(PhysicalPsi, OracleStateIsNormalizable) {
  const auto mm = pdm::mass_model(h2(), 0.2);
  const auto grid = pdm::default_grid(h2(), 0.2);
  const auto prob = pdm::make_problem(mm, AmbiguityOrdering::weyl(), h2(), grid);
  const double E = pdm::solve_state(prob, 1).E;
  const auto phi = pdm::eigenfunction(prob, E);
  std::vector<double> x(phi.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = grid.x(static_cast<int>(i));
  const auto psi = pdm::physical_psi(mm, x, phi);
  double norm_phi = 0.0, norm_psi = 0.0;
  int sign_changes = 0;
  for (std::size_t i = 0; i + 1 < psi.size(); ++i) {
    norm_phi += 0.5 * (phi[i] * phi[i] + phi[i + 1] * phi[i + 1]) * grid.h();
    norm_psi += 0.5 * (psi[i] * psi[i] + psi[i + 1] * psi[i + 1]) * grid.h();
    if (phi[i] * phi[i + 1] < 0.0) ++sign_changes;
  }
  EXPECT_NEAR(norm_phi, 1.0, 1e-12);
  EXPECT_TRUE(std::isfinite(norm_psi));
  EXPECT_GT(norm_psi, 0.0);
  EXPECT_EQ(sign_changes, 1);
}

TEST(Shooting, StiffLeftEndOnCoarseGrid) {
  // starts 0.05 A right of the singularity, where h^2 f / 12 is far above 1 at 2001 points
  const auto mm = pdm::mass_model(h2(), 0.2);
  const double xmax = 25.0 / h2().beta();
  const pdm::GridSpec coarse{mm.singularity() + 0.05, xmax, 2001};
  pdm::GridSpec fine = coarse;
  fine.points = 16001;
  for (int n : {0, 2}) {
    const double a = pdm::solve_state(pdm::make_problem(mm, AmbiguityOrdering::weyl(), h2(), coarse), n).E;
    const double b = pdm::solve_state(pdm::make_problem(mm, AmbiguityOrdering::weyl(), h2(), fine), n).E;
    EXPECT_NEAR(a, b, 1e-6) << n;
  }
}
