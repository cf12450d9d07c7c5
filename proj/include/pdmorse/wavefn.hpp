#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pdmorse/analytic.hpp"
#include "pdmorse/model.hpp"

namespace pdm {

/// Sign of the z exponent in the eigenfunction. PaperPrinted uses
/// z^{-sqrt(eps)} with Jacobi parameter q = -2 sqrt(eps) in its literal form;
/// Normalizable uses z^{+sqrt(eps)} with q = +2 sqrt(eps), which is the
/// branch generated by the selected pi(z).
enum class SignConvention { PaperPrinted, Normalizable };

std::string_view to_string(SignConvention c);

struct EigenfunctionParams {
  int n = 0;
  double sqrt_eps = 0.0;
  double A_tilde = 0.0;  // unused at eta = 0
  double jacobi_p = 0.0;
  double jacobi_q = 0.0;
  double eta = 0.0;
  double kappa = 0.0;  // 2 sqrt(eps1): decay rate of the eta = 0 limit
  SignConvention convention = SignConvention::Normalizable;
};

EigenfunctionParams eigenfunction_params(const ReducedSystem& sys,
                                         const BoundState& state,
                                         SignConvention convention);

/// Right end of the variable range the Jacobi substitution covers: 1/eta,
/// or +inf for constant mass. Physical x >= 0 is only the part z <= 1.
double natural_z_max(double eta);

double weight_rho(const ReducedSystem& sys, double eps, double z,
                  SignConvention convention);

struct XiValue {
  double value = 0.0;
  bool divergent_tail = false;  // z-power is negative: not normalizable at z -> 0
};

XiValue xi_part(const ReducedSystem& sys, double eps, double z,
                SignConvention convention);

/// Rodrigues form (1/rho) d^n/dz^n [sigma^n rho] without the b_n constant.
/// Only n <= 3; used as an independent route to the Jacobi factor.
double rodrigues_psi(const ReducedSystem& sys, double eps, int n, double z,
                     SignConvention convention);

/// Normalization b'_n with integral of phi^2 over (0, natural_z_max) equal
/// to one, evaluated in the log-Gamma domain from the Jacobi norm identity.
/// Throws DomainUnsupported when p <= -1 or q <= -1.
double norm_const(const EigenfunctionParams& params);
double norm_const(const ReducedSystem& sys, const BoundState& state,
                  SignConvention convention);

/// The literal closed-form normalization, kept for comparison reports.
double norm_const_printed(const EigenfunctionParams& params);

/// Unnormalized eigenfunction value and its logarithmic form.
double phi_unnormalized(const EigenfunctionParams& params, double z);

/// b'_n xi(z) P_n(2 eta z - 1). Uses state.norm_const when present.
double phi(const ReducedSystem& sys, const BoundState& state, double z,
           SignConvention convention);

/// Interior points of a uniform grid on (lo, hi), both ends excluded.
std::vector<double> open_grid(double lo, double hi, int points);

/// Max |LHS| of the transformed equation over max term magnitude, using
/// fourth-order differences. The grid must be uniform with at least 64
/// points. eps_in_equation replaces eps_nl in the equation only.
double ode_residual(const ReducedSystem& sys, const BoundState& state,
                    std::span<const double> z_grid, SignConvention convention,
                    std::optional<double> eps_in_equation = std::nullopt);

/// Sign changes of phi sampled at `samples` points on (0, natural_z_max).
int count_nodes(const ReducedSystem& sys, const BoundState& state,
                SignConvention convention, int samples = 10000);

struct ConventionReport {
  SignConvention convention = SignConvention::Normalizable;
  bool bounded = false;
  double residual = 0.0;
  bool passes() const { return bounded && residual < 1e-6; }
};

struct ConventionSelection {
  SignConvention selected = SignConvention::Normalizable;
  bool unique = false;  // exactly one convention passed both checks
  ConventionReport printed;
  ConventionReport normalizable;
};

/// Runs the boundedness and residual checks on both conventions.
ConventionSelection select_convention(const ReducedSystem& sys,
                                      const BoundState& state,
                                      int grid_points = 2048);

}  // namespace pdm
