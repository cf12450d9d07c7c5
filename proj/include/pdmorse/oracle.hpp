#pragma once

// Shooting eigensolver for -(hbar^2 / 2m(x)) phi'' + U_eff(x) phi = E phi
// with Dirichlet ends. Independent of the closed-form spectrum.

#include <functional>
#include <span>
#include <vector>

#include "pdmorse/model.hpp"

namespace pdm {

struct GridSpec {
  double x_min = 0.0;  // Angstrom
  double x_max = 0.0;
  int points = 0;

  double h() const { return (x_max - x_min) / (points - 1); }
  double x(int i) const { return x_min + i * h(); }
};

/// Throws Validation unless points >= 501, x_max > x_min, and x_min lies at
/// least `margin` to the right of the mass singularity.
void validate(const GridSpec& grid, const MassModel& mm, double margin = 1e-3);

/// Left end max(-0.95 r0, singularity + 0.05), right end 25/beta.
GridSpec default_grid(const MoleculeSpec& mol, double eta, int points = 8001);

struct ShootingResult {
  double E = 0.0;
  int nodes = 0;
  double mismatch = 0.0;  // Casoratian of the two shots, scaled to [-1, 1]
};

/// phi'' = (g - E w) phi sampled on a grid. For the molecular problem
/// w = 2m/hbar^2 and g = w U_eff.
struct ShootingProblem {
  GridSpec grid;
  std::vector<double> g;
  std::vector<double> w;
  std::size_t match = 0;  // index of the potential minimum
  double e_max = 0.0;     // highest energy searched; above it no bracket exists
};

/// Generic problem from mass and potential callables (units of hbar2).
ShootingProblem make_problem(const GridSpec& grid,
                             const std::function<double(double)>& mass,
                             const std::function<double(double)>& potential,
                             double hbar2, double e_max);

ShootingProblem make_problem(const MassModel& mm, const AmbiguityOrdering& ord,
                             const MoleculeSpec& mol, const GridSpec& grid);

/// Ordering term of the effective potential, eV.
double u_ordering(const MassModel& mm, const AmbiguityOrdering& ord, double hbar2,
                  double x);

/// U_ordering + V + (hbar^2/4m^2)(3 m'^2/(2m) - m''), eV.
double u_eff(const MassModel& mm, const AmbiguityOrdering& ord,
             const MoleculeSpec& mol, double x);

/// Count of sign changes of the left shot and the matching defect at E.
ShootingResult shoot(const ShootingProblem& prob, double E);

struct OracleState {
  int n = 0;
  double E = 0.0;
  int iterations = 0;
};

/// Eigenvalue with exactly n nodes. Throws NoBracket when fewer than n+1
/// states lie below e_max, NonConvergence after 200 bisection steps.
OracleState solve_state(const ShootingProblem& prob, int n, double tol_eV = 1e-10);

std::vector<OracleState> solve_states(const MassModel& mm, const AmbiguityOrdering& ord,
                                      const MoleculeSpec& mol, const GridSpec& grid,
                                      std::span<const int> n_list);

/// Stitched eigenfunction at E, scaled so that the integral of phi^2 dx is 1.
std::vector<double> eigenfunction(const ShootingProblem& prob, double E);

/// psi(x) = sqrt(m(x)) phi(x).
std::vector<double> physical_psi(const MassModel& mm, std::span<const double> x,
                                 std::span<const double> phi);

}  // namespace pdm
