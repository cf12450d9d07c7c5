#include "pdmorse/wavefn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pdmorse/errors.hpp"
#include "pdmorse/kernels.hpp"
#include "pdmorse/special.hpp"

namespace pdm {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double z_sign(SignConvention c) {
  return c == SignConvention::Normalizable ? 1.0 : -1.0;
}

void require_z(double z, double eta) {
  if (!(z > 0.0 && z < natural_z_max(eta))) {
    std::ostringstream os;
    os << "z=" << z << " outside (0, " << natural_z_max(eta) << ")";
    raise(ErrorKind::ContractViolation, os.str());
  }
}

// log of the non-polynomial factor of phi
double log_prefactor(const EigenfunctionParams& p, double z) {
  const double lz = 0.5 * p.jacobi_q * std::log(z);
  if (p.eta == 0.0) return lz - 0.5 * p.kappa * z;
  return lz + 0.5 * (1.0 + p.jacobi_p) * std::log1p(-p.eta * z);
}

double poly(const EigenfunctionParams& p, double z) {
  if (p.eta == 0.0) return laguerre(p.n, p.jacobi_q, p.kappa * z);
  return jacobi(p.n, p.jacobi_p, p.jacobi_q, 2.0 * p.eta * z - 1.0);
}

// Polynomial factor on a whole grid; the batch kernel covers eta > 0.
std::vector<double> poly_grid(const EigenfunctionParams& p, std::span<const double> z) {
  std::vector<double> out(z.size());
  if (p.eta == 0.0) {
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = poly(p, z[i]);
    return out;
  }
  std::vector<double> x(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) x[i] = 2.0 * p.eta * z[i] - 1.0;
  kernels::jacobi_batch(kernels::jacobi_recurrence(p.n, p.jacobi_p, p.jacobi_q), x, out);
  return out;
}

double falling(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x - i;
  return r;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::string_view to_string(SignConvention c) {
  return c == SignConvention::Normalizable ? "normalizable" : "paper-printed";
}

double natural_z_max(double eta) {
  return eta > 0.0 ? 1.0 / eta : std::numeric_limits<double>::infinity();
}

EigenfunctionParams eigenfunction_params(const ReducedSystem& sys,
                                         const BoundState& state,
                                         SignConvention convention) {
  EigenfunctionParams p;
  p.n = state.n;
  p.sqrt_eps = std::sqrt(state.eps_nl);
  p.eta = sys.eta;
  p.convention = convention;
  p.jacobi_q = 2.0 * z_sign(convention) * p.sqrt_eps;
  if (sys.eta > 0.0) {
    p.A_tilde = state.A_tilde ? *state.A_tilde : a_tilde(sys, state.eps_nl);
    p.jacobi_p = p.A_tilde;
  } else {
    if (!(sys.eps1 > 0.0)) raise(ErrorKind::RealityViolation, "eps1 must be positive");
    p.kappa = 2.0 * std::sqrt(sys.eps1);
  }
  return p;
}

double weight_rho(const ReducedSystem& sys, double eps, double z,
                  SignConvention convention) {
  require_z(z, sys.eta);
  const double s = std::sqrt(eps);
  const double lz = 2.0 * z_sign(convention) * s * std::log(z);
  if (sys.eta == 0.0) return std::exp(lz - 2.0 * std::sqrt(sys.eps1) * z);
  return std::exp(lz + a_tilde(sys, eps) * std::log1p(-sys.eta * z));
}

XiValue xi_part(const ReducedSystem& sys, double eps, double z,
                SignConvention convention) {
  require_z(z, sys.eta);
  const double s = z_sign(convention) * std::sqrt(eps);
  double l = s * std::log(z);
  if (sys.eta == 0.0) {
    l -= std::sqrt(sys.eps1) * z;
  } else {
    l += 0.5 * (1.0 + a_tilde(sys, eps)) * std::log1p(-sys.eta * z);
  }
  return {std::exp(l), s < 0.0};
}

double rodrigues_psi(const ReducedSystem& sys, double eps, int n, double z,
                     SignConvention convention) {
  if (n < 0 || n > 3) raise(ErrorKind::ContractViolation, "rodrigues_psi supports 0 <= n <= 3");
  if (!(sys.eta > 0.0)) raise(ErrorKind::ContractViolation, "rodrigues_psi needs eta > 0");
  require_z(z, sys.eta);
  const double a = 2.0 * z_sign(convention) * std::sqrt(eps);
  const double b = a_tilde(sys, eps);
  const double eta = sys.eta;
  const double u = 1.0 - eta * z;
  // Leibniz rule on z^{a+n} (1 - eta z)^{b+n}, then divide by rho.
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += binom(n, k) * falling(a + n, k) * falling(b + n, n - k) *
           std::pow(-eta * z, n - k) * std::pow(u, k);
  }
  return sum;
}

double norm_const(const EigenfunctionParams& prm) {
  const double p = prm.jacobi_p;
  const double q = prm.jacobi_q;
  const int n = prm.n;
  const double nn = static_cast<double>(n);
  if (!(q > -1.0) || (prm.eta > 0.0 && !(p > -1.0))) {
    std::ostringstream os;
    os << "normalization needs Jacobi parameters > -1 (p=" << p << ", q=" << q << ")";
    raise(ErrorKind::DomainUnsupported, os.str());
  }
  if (prm.eta == 0.0) {
    // integral of z^q e^{-kz} L_n^{(q)}(kz)^2 = k^{-q-1} Gamma(n+q+1)/n!
    const double log_b2 = (q + 1.0) * std::log(prm.kappa) + std::lgamma(nn + 1.0) -
                          std::lgamma(nn + q + 1.0);
    return std::exp(0.5 * log_b2);
  }
  // Over (0, 1/eta) with x = 2 eta z - 1 the integral of phi^2 is
  // (2 eta)^{-q-1} 2^{-1-p} times int (1-x)^{p+1} (1+x)^q P_n^2 dx, and
  // (1 - x) = 2 - (1 + x) reduces that to h_n (1 - B_n).
  const double c = p + q;
  double log_h;
  double one_minus_b;
  if (n == 0) {
    log_h = (c + 1.0) * kLn2 + std::lgamma(p + 1.0) + std::lgamma(q + 1.0) - std::lgamma(c + 2.0);
    one_minus_b = 1.0 - (q - p) / (c + 2.0);
  } else {
    log_h = (c + 1.0) * kLn2 + std::lgamma(nn + p + 1.0) + std::lgamma(nn + q + 1.0) -
            std::log(2.0 * nn + c + 1.0) - std::lgamma(nn + 1.0) - std::lgamma(nn + c + 1.0);
    one_minus_b = 1.0 - (q - p) * (q + p) / ((2.0 * nn + c) * (2.0 * nn + c + 2.0));
  }
  if (!(one_minus_b > 0.0)) raise(ErrorKind::DomainUnsupported, "non-positive norm integral");
  const double log_i = log_h + std::log(one_minus_b);
  const double log_b2 = (q + 1.0) * std::log(2.0 * prm.eta) + (1.0 + p) * kLn2 - log_i;
  return std::exp(0.5 * log_b2);
}

double norm_const(const ReducedSystem& sys, const BoundState& state,
                  SignConvention convention) {
  return norm_const(eigenfunction_params(sys, state, convention));
}

double norm_const_printed(const EigenfunctionParams& prm) {
  const double at = prm.A_tilde;
  const double s = prm.sqrt_eps;
  const double nn = static_cast<double>(prm.n);
  const double g1 = at + nn + 1.0;
  const double g2 = -2.0 * s + nn + 1.0;
  const double g3 = at - 2.0 * s + nn + 1.0;
  if (!(g1 > 0.0 && g2 > 0.0 && g3 > 0.0)) {
    std::ostringstream os;
    os << "Gamma argument <= 0 (" << g1 << ", " << g2 << ", " << g3 << ")";
    raise(ErrorKind::DomainUnsupported, os.str());
  }
  const double ratio = (2.0 * (at - s) * (1.0 - s + 2.0 * nn) + 4.0 * nn * (1.0 + nn)) /
                       ((at - 2.0 * s + 2.0 * nn + 2.0) * (at - 2.0 * s + 2.0 * nn));
  const double pre = (2.0 * at - 4.0 * s + 1.0) * kLn2 - std::log(at - 2.0 * s + 2.0 * nn + 1.0);
  const double log_b2 = pre + std::log(ratio) + std::lgamma(g1) + std::lgamma(g2) -
                        std::lgamma(nn + 1.0) - std::lgamma(g3);
  return std::exp(0.5 * log_b2);
}

double phi_unnormalized(const EigenfunctionParams& params, double z) {
  require_z(z, params.eta);
  return std::exp(log_prefactor(params, z)) * poly(params, z);
}

double phi(const ReducedSystem& sys, const BoundState& state, double z,
           SignConvention convention) {
  require_z(z, sys.eta);
  const EigenfunctionParams p = eigenfunction_params(sys, state, convention);
  const double b = (convention == SignConvention::Normalizable && state.norm_const)
                       ? *state.norm_const
                       : norm_const(p);
  const double P = poly(p, z);
  if (P == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(b) + log_prefactor(p, z) + std::log(std::abs(P))), P);
}

std::vector<double> open_grid(double lo, double hi, int points) {
  if (points < 1 || !(hi > lo)) raise(ErrorKind::ContractViolation, "bad grid request");
  std::vector<double> z(static_cast<std::size_t>(points));
  const double h = (hi - lo) / (points + 1);
  for (int i = 0; i < points; ++i) z[static_cast<std::size_t>(i)] = lo + (i + 1) * h;
  return z;
}

double ode_residual(const ReducedSystem& sys, const BoundState& state,
                    std::span<const double> z_grid, SignConvention convention,
                    std::optional<double> eps_in_equation) {
  const std::size_t n = z_grid.size();
  if (n < 64) raise(ErrorKind::ContractViolation, "residual grid needs at least 64 points");
  const double h = (z_grid[n - 1] - z_grid[0]) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    require_z(z_grid[i], sys.eta);
    if (i > 0 && std::abs(z_grid[i] - z_grid[i - 1] - h) > 1e-9 * h) {
      raise(ErrorKind::ContractViolation, "residual grid must be uniform");
    }
  }
  const EigenfunctionParams p = eigenfunction_params(sys, state, convention);
  const std::vector<double> P = poly_grid(p, z_grid);
  // Scale out the largest magnitude so neither tail over- or underflows; the
  // residual ratio is scale free.
  std::vector<double> lg(n);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    lg[i] = log_prefactor(p, z_grid[i]) + std::log(std::abs(P[i]));
    if (std::isfinite(lg[i])) top = std::max(top, lg[i]);
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = P[i] == 0.0 ? 0.0 : std::copysign(std::exp(lg[i] - top), P[i]);
  }
  const kernels::ResidualCoeffs c{sys.eps1, sys.eps2, eps_in_equation.value_or(state.eps_nl),
                                  sys.eta};
  const kernels::ResidualTerms t = kernels::fd_residual(z_grid, values, h, c);
  if (!(t.max_term > 0.0)) raise(ErrorKind::ContractViolation, "eigenfunction vanishes on grid");
  return t.max_lhs / t.max_term;
}

int count_nodes(const ReducedSystem& sys, const BoundState& state,
                SignConvention convention, int samples) {
  const EigenfunctionParams p = eigenfunction_params(sys, state, convention);
  // Laguerre zeros lie below 4n + 2q + 2 in the scaled variable.
  const double z_hi = sys.eta > 0.0
                          ? natural_z_max(sys.eta)
                          : (4.0 * p.n + 2.0 * std::abs(p.jacobi_q) + 4.0) / p.kappa;
  const std::vector<double> z = open_grid(0.0, z_hi, samples);
  // the prefactor is positive, so the sign pattern is the polynomial's
  const std::vector<double> P = poly_grid(p, z);
  int nodes = 0;
  double last = 0.0;
  for (double v : P) {
    if (v == 0.0) continue;
    if (last != 0.0 && (v > 0.0) != (last > 0.0)) ++nodes;
    last = v;
  }
  return nodes;
}

ConventionSelection select_convention(const ReducedSystem& sys, const BoundState& state,
                                      int grid_points) {
  const double hi = std::min(1.0, natural_z_max(sys.eta));
  const std::vector<double> grid = open_grid(0.0, hi, grid_points);
  auto check = [&](SignConvention c) {
    ConventionReport r;
    r.convention = c;
    const EigenfunctionParams p = eigenfunction_params(sys, state, c);
    // z^{q/2} stays bounded at the origin only for a non-negative power
    r.bounded = p.jacobi_q >= 0.0;
    r.residual = ode_residual(sys, state, grid, c);
    return r;
  };
  ConventionSelection sel;
  sel.printed = check(SignConvention::PaperPrinted);
  sel.normalizable = check(SignConvention::Normalizable);
  const bool a = sel.printed.passes();
  const bool b = sel.normalizable.passes();
  sel.unique = a != b;
  sel.selected = (a && !b) ? SignConvention::PaperPrinted : SignConvention::Normalizable;
  return sel;
}

}  // namespace pdm
