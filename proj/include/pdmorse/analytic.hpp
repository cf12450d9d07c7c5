#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "pdmorse/model.hpp"

namespace pdm {

/// Which closed form produces eps_nl for a quantum number n.
///
/// PrintedFormula is the closed-form eigenvalue formula; it is what the
/// reference table was computed with. SelfConsistent is the exact root of
/// lambda(eps) = lambda_n built from the same NU quantities; only at that
/// root does the assembled eigenfunction solve the transformed equation.
enum class QuantizationRule { PrintedFormula, SelfConsistent };

std::string_view to_string(QuantizationRule rule);

struct BoundState {
  int n = 0;
  double eps_nl = 0.0;
  double E = 0.0;  // eV, E = -e_scale * eps_nl
  double A = 0.0;
  std::optional<double> A_tilde;  // undefined at eta = 0
  std::optional<double> norm_const;
  double signed_root = 0.0;  // sqrt(eps_nl) with the sign the formula produces
  QuantizationRule rule = QuantizationRule::PrintedFormula;
};

/// Intermediate Nikiforov-Uvarov quantities for one eps. The selected branch
/// is the one with tau' < 0.
struct NuInternals {
  double A = 0.0;
  double k1 = 0.0;  // -eps2 - 2 eta eps - sqrt(eps) A
  double k2 = 0.0;  // -eps2 - 2 eta eps + sqrt(eps) A
  double selected_k = 0.0;
  double pi_slope = 0.0;
  double pi_const = 0.0;
  double tau_const = 0.0;
  double tau_slope = 0.0;
  double lambda = 0.0;
  double lambda_n = 0.0;
};

enum class KRoot { Minus, Plus };

/// One of the four (k root, sign of the square root) combinations for pi(z).
struct NuBranch {
  KRoot root = KRoot::Minus;
  int sign = 1;
  double k = 0.0;
  double pi_slope = 0.0;
  double pi_const = 0.0;
  double tau_slope = 0.0;
  double lambda = 0.0;
  double lambda_n = 0.0;
};

/// Both sides of the reality inequality,
/// m0 V1/(beta hbar)^2 > eta^2 [(a - 2 alpha gamma - alpha - gamma)/(1+a) - 1/4].
struct RealityInequality {
  double lhs = 0.0;
  double rhs = 0.0;
};

RealityInequality reality_inequality(const ReducedSystem& sys);

/// True iff eps1 - eta^2/2 > 0; equivalent to reality_inequality lhs > rhs.
bool reality_check(const ReducedSystem& sys);

/// Closed-form eigenvalue formula (squared ratio).
double epsilon_nl(const ReducedSystem& sys, int n);

/// The ratio of the closed-form formula before squaring, sign flipped so that
/// it is positive for states with a decaying tail.
double printed_signed_root(const ReducedSystem& sys, int n);

/// Constant-mass spectrum, (1/4)[2n + 1 + eps2/sqrt(eps1)]^2. Requires eta = 0.
double constant_mass_epsilon(const ReducedSystem& sys, int n);

/// Signed sqrt(eps) solving lambda(eps) = lambda_n exactly.
double self_consistent_root(const ReducedSystem& sys, int n);
double self_consistent_epsilon(const ReducedSystem& sys, int n);

double epsilon_for(const ReducedSystem& sys, int n, QuantizationRule rule);

/// A = sqrt(4 eta^2 eps + 4 eta eps2 + eta^2 + 4 eps1).
double discriminant_root(const ReducedSystem& sys, double eps);

/// A~ = sqrt(1 + 4 eps + (4/eta)(eps2 + eps1/eta)); eta must be positive.
double a_tilde(const ReducedSystem& sys, double eps);

BoundState make_state(const ReducedSystem& sys, int n,
                      QuantizationRule rule = QuantizationRule::PrintedFormula);

/// Bound states n = 0, 1, ... in increasing energy.
std::vector<BoundState> spectrum(
    const ReducedSystem& sys,
    QuantizationRule rule = QuantizationRule::PrintedFormula);

NuInternals nu_internals(const ReducedSystem& sys, double eps, int n);

/// |lambda - lambda_n| / |lambda|. At n = 0 lambda_n vanishes, so that ratio
/// is 1 for any nonzero lambda; there the defect is measured against |k|.
double relative_closure_defect(const NuInternals& nu, int n);

/// All four branch combinations. Exploration only; the public path uses
/// nu_internals.
std::array<NuBranch, 4> nu_branches(const ReducedSystem& sys, double eps,
                                    int n);

double energy_eV(const ReducedSystem& sys, int n,
                 QuantizationRule rule = QuantizationRule::PrintedFormula);

}  // namespace pdm
