#include "pdmorse/analytic.hpp"

#include <cmath>
#include <sstream>

#include "pdmorse/errors.hpp"

namespace pdm {

namespace {

constexpr double kDenominatorTol = 1e-12;
constexpr int kMaxStates = 100000;

void require_n(int n) {
  if (n < 0) raise(ErrorKind::ContractViolation, "quantum number n must be >= 0");
}

std::string describe(const char* what, int n, double value) {
  std::ostringstream os;
  os << what << " for n=" << n << " (value " << value << ")";
  return os.str();
}

}  // namespace

std::string_view to_string(QuantizationRule rule) {
  return rule == QuantizationRule::PrintedFormula ? "printed" : "self-consistent";
}

RealityInequality reality_inequality(const ReducedSystem& sys) {
  // m0 V1/(beta hbar)^2 = v1/2 and (a - 2 alpha gamma - alpha - gamma)/(1+a) = 2 c_ord.
  return {0.5 * sys.v1, sys.eta * sys.eta * (2.0 * sys.c_ord - 0.25)};
}

bool reality_check(const ReducedSystem& sys) {
  // eps1 - eta^2/2 = v1 - 4 eta^2 (c_ord - 1/4) - eta^2/2
  //                = v1 - eta^2 (4 c_ord - 1/2)
  //                = 2 [v1/2 - eta^2 (2 c_ord - 1/4)] = 2 (lhs - rhs),
  // so the sign test below is reality_inequality up to a factor 2.
  return sys.eps1 - 0.5 * sys.eta * sys.eta > 0.0;
}

double printed_signed_root(const ReducedSystem& sys, int n) {
  require_n(n);
  if (!reality_check(sys)) {
    raise(ErrorKind::RealityViolation,
          "reality condition eps1 - eta^2/2 > 0 violated");
  }
  const double eta = sys.eta;
  const double nn = static_cast<double>(n);
  const double root = std::sqrt(sys.eps1 - 0.5 * eta * eta);
  const double num = (nn * nn + nn - 0.5) * eta - sys.eps2 - 2.0 * (nn + 0.5) * root;
  const double den = (2.0 * nn + 1.0) * eta - 2.0 * root;
  if (std::abs(den) < kDenominatorTol) {
    raise(ErrorKind::DegenerateDenominator, describe("eigenvalue denominator vanishes", n, den));
  }
  return -num / den;
}

double epsilon_nl(const ReducedSystem& sys, int n) {
  const double r = printed_signed_root(sys, n);
  return r * r;
}

double constant_mass_epsilon(const ReducedSystem& sys, int n) {
  require_n(n);
  if (sys.eta != 0.0) {
    raise(ErrorKind::ContractViolation, "constant-mass spectrum requires eta = 0");
  }
  if (!(sys.eps1 > 0.0)) raise(ErrorKind::RealityViolation, "eps1 must be positive");
  const double b = 2.0 * n + 1.0 + sys.eps2 / std::sqrt(sys.eps1);
  return 0.25 * b * b;
}

// Eliminating A between lambda = lambda_n and A^2 = 4 eta^2 s^2 + 4 eta eps2
// + eta^2 + 4 eps1 (s = sqrt(eps)) leaves a quadratic in s once the quartic
// and cubic terms cancel. Its two roots factor through
// 2 sqrt(eps1) -/+ (2n+1) eta; the one below reduces to the constant-mass
// spectrum at eta = 0.
double self_consistent_root(const ReducedSystem& sys, int n) {
  require_n(n);
  if (!(sys.eps1 > 0.0)) raise(ErrorKind::RealityViolation, "eps1 must be positive");
  const double eta = sys.eta;
  const double nn = static_cast<double>(n);
  const double w = std::sqrt(sys.eps1);
  const double den = 2.0 * w - (2.0 * nn + 1.0) * eta;
  if (std::abs(den) < kDenominatorTol) {
    raise(ErrorKind::DegenerateDenominator, describe("self-consistent denominator vanishes", n, den));
  }
  return ((nn * nn + nn) * eta - sys.eps2 - (2.0 * nn + 1.0) * w) / den;
}

namespace {

// A solved from lambda = lambda_n, which is linear in A.
double implied_discriminant_root(const ReducedSystem& sys, int n, double s) {
  const double eta = sys.eta;
  const double nn = static_cast<double>(n);
  const double num = -sys.eps2 - 2.0 * eta * s * s - eta * s * (2.0 * nn + 1.0) -
                     eta * (nn * nn + nn + 0.5);
  return num / (nn + s + 0.5);
}

}  // namespace

double self_consistent_epsilon(const ReducedSystem& sys, int n) {
  const double s = self_consistent_root(sys, n);
  return s * s;
}

double epsilon_for(const ReducedSystem& sys, int n, QuantizationRule rule) {
  if (rule == QuantizationRule::SelfConsistent) return self_consistent_epsilon(sys, n);
  if (sys.eta == 0.0) return constant_mass_epsilon(sys, n);
  return epsilon_nl(sys, n);
}

double discriminant_root(const ReducedSystem& sys, double eps) {
  // the terms cancel to a few parts in 1e5 for deep wells; extended precision
  // keeps the root accurate to ~1e-14
  const long double eta = sys.eta;
  const long double rad =
      4.0L * eta * eta * eps + 4.0L * eta * sys.eps2 + eta * eta + 4.0L * sys.eps1;
  if (rad < 0.0) {
    std::ostringstream os;
    os << "negative radicand for A (" << static_cast<double>(rad) << ") at eps=" << eps;
    raise(ErrorKind::ComplexBranch, os.str());
  }
  return static_cast<double>(std::sqrt(rad));
}

double a_tilde(const ReducedSystem& sys, double eps) {
  if (!(sys.eta > 0.0)) raise(ErrorKind::ContractViolation, "A~ needs eta > 0");
  const long double eta = sys.eta;
  const long double rad = 1.0L + 4.0L * eps + 4.0L / eta * (sys.eps2 + sys.eps1 / eta);
  if (rad < 0.0) {
    std::ostringstream os;
    os << "negative radicand for A~ (" << static_cast<double>(rad) << ") at eps=" << eps;
    raise(ErrorKind::ComplexBranch, os.str());
  }
  return static_cast<double>(std::sqrt(rad));
}

BoundState make_state(const ReducedSystem& sys, int n, QuantizationRule rule) {
  BoundState st;
  st.n = n;
  st.rule = rule;
  if (rule == QuantizationRule::SelfConsistent) {
    st.signed_root = self_consistent_root(sys, n);
    st.eps_nl = st.signed_root * st.signed_root;
  } else if (sys.eta == 0.0) {
    st.eps_nl = constant_mass_epsilon(sys, n);
    st.signed_root = 0.5 * (-sys.eps2 / std::sqrt(sys.eps1) - (2.0 * n + 1.0));
  } else {
    st.signed_root = printed_signed_root(sys, n);
    st.eps_nl = st.signed_root * st.signed_root;
  }
  st.E = -sys.e_scale * st.eps_nl;
  st.A = discriminant_root(sys, st.eps_nl);
  if (sys.eta > 0.0) st.A_tilde = a_tilde(sys, st.eps_nl);
  return st;
}

std::vector<BoundState> spectrum(const ReducedSystem& sys, QuantizationRule rule) {
  if (rule == QuantizationRule::PrintedFormula && !reality_check(sys)) {
    raise(ErrorKind::RealityViolation, "reality condition eps1 - eta^2/2 > 0 violated");
  }
  if (!(sys.eps1 > 0.0)) raise(ErrorKind::RealityViolation, "eps1 must be positive");

  std::vector<BoundState> out;
  const double well = -sys.eps2 / std::sqrt(sys.eps1);
  for (int n = 0; n < kMaxStates; ++n) {
    if (sys.eta == 0.0) {
      // tail decays only while the bracket of the constant-mass formula is negative
      if (!(2.0 * n + 1.0 < well)) break;
    } else if (rule == QuantizationRule::SelfConsistent) {
      const double r = self_consistent_root(sys, n);
      if (!(r > 0.0)) break;
      // squaring admits roots that close only with A < 0; those are not states
      if (!(implied_discriminant_root(sys, n, r) > 0.0)) break;
    }
    const double eps = epsilon_for(sys, n, rule);
    const double E = -sys.e_scale * eps;
    if (!(E < 0.0)) break;
    if (!out.empty() && !(E > out.back().E)) break;
    out.push_back(make_state(sys, n, rule));
  }
  return out;
}

NuInternals nu_internals(const ReducedSystem& sys, double eps, int n) {
  require_n(n);
  if (eps < 0.0) raise(ErrorKind::ContractViolation, "eps must be non-negative");
  const double eta = sys.eta;
  const double s = std::sqrt(eps);
  NuInternals nu;
  nu.A = discriminant_root(sys, eps);
  const double base = -sys.eps2 - 2.0 * eta * eps;
  nu.k1 = base - s * nu.A;
  nu.k2 = base + s * nu.A;
  // k1 makes the radicand ((A/2 + eta s) z - s)^2; taking the minus sign
  // in front of the root gives the only tau with a negative slope for s > 0.
  nu.selected_k = nu.k1;
  nu.pi_slope = -0.5 * eta - (0.5 * nu.A + eta * s);
  nu.pi_const = s;
  nu.tau_const = 1.0 + 2.0 * s;
  nu.tau_slope = -eta + 2.0 * nu.pi_slope;
  nu.lambda = nu.selected_k + nu.pi_slope;
  const double nn = static_cast<double>(n);
  // sigma'' = -2 eta
  nu.lambda_n = -nn * nu.tau_slope + eta * nn * (nn - 1.0);
  return nu;
}

double relative_closure_defect(const NuInternals& nu, int n) {
  const double scale = n == 0 ? std::abs(nu.selected_k) : std::abs(nu.lambda);
  return std::abs(nu.lambda - nu.lambda_n) / scale;
}

std::array<NuBranch, 4> nu_branches(const ReducedSystem& sys, double eps, int n) {
  require_n(n);
  const double eta = sys.eta;
  const double s = std::sqrt(eps);
  const double A = discriminant_root(sys, eps);
  const double base = -sys.eps2 - 2.0 * eta * eps;
  const double nn = static_cast<double>(n);

  std::array<NuBranch, 4> out;
  int i = 0;
  for (KRoot root : {KRoot::Minus, KRoot::Plus}) {
    for (int sign : {+1, -1}) {
      NuBranch b;
      b.root = root;
      b.sign = sign;
      double lin_slope = 0.0;
      double lin_const = 0.0;
      if (root == KRoot::Minus) {
        b.k = base - s * A;
        lin_slope = 0.5 * A + eta * s;
        lin_const = -s;
      } else {
        b.k = base + s * A;
        lin_slope = 0.5 * A - eta * s;
        lin_const = s;
      }
      b.pi_slope = -0.5 * eta + sign * lin_slope;
      b.pi_const = sign * lin_const;
      b.tau_slope = -eta + 2.0 * b.pi_slope;
      b.lambda = b.k + b.pi_slope;
      b.lambda_n = -nn * b.tau_slope + eta * nn * (nn - 1.0);
      out[i++] = b;
    }
  }
  return out;
}

double energy_eV(const ReducedSystem& sys, int n, QuantizationRule rule) {
  return -sys.e_scale * epsilon_for(sys, n, rule);
}

}  // namespace pdm
