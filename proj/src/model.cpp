#include "pdmorse/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pdmorse/errors.hpp"

namespace pdm {

namespace {

constexpr double kHbar = 1.054571817e-34;    // J s
constexpr double kAmu = 1.66053906660e-27;   // kg
constexpr double kElectronVolt = 1.602176634e-19;  // J
constexpr double kAngstrom = 1e-10;          // m

// |1 - eta e^{-beta x}| below this is treated as the singular point.
constexpr double kSingularTol = 1e-12;

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << field << " must be positive and finite (got " << value << ")";
    raise(ErrorKind::Validation, os.str());
  }
}

void require_eta(double eta) {
  if (!(eta >= 0.0 && eta < 1.0)) raise(ErrorKind::Validation, "eta out of range");
}

}  // namespace

double hbar2_codata_eV_amu_A2() {
  return kHbar * kHbar / (kAmu * kAngstrom * kAngstrom) / kElectronVolt;
}

double computed_E0(const MoleculeSpec& mol) {
  return hbar2_codata_eV_amu_A2() / (mol.m0 * mol.r0 * mol.r0);
}

void validate(const MoleculeSpec& mol) {
  require_positive(mol.D, "D_eV");
  require_positive(mol.r0, "r0_angstrom");
  require_positive(mol.m0, "m0_amu");
  require_positive(mol.alpha_prime, "alpha_prime");
  require_positive(mol.E0, "E0_eV");
  if (mol.V1) require_positive(*mol.V1, "V1_eV");
  if (mol.V2) require_positive(*mol.V2, "V2_eV");
  const double expected = computed_E0(mol);
  const double rel = std::abs(mol.E0 - expected) / expected;
  if (rel > 5e-3) {
    std::ostringstream os;
    os << "E0_eV=" << mol.E0 << " disagrees with hbar^2/(m0 r0^2)=" << expected
       << " (relative " << rel << ")";
    raise(ErrorKind::Validation, os.str());
  }
}

AmbiguityOrdering AmbiguityOrdering::weyl() { return {1.0, 0.0, 0.0, "weyl"}; }

AmbiguityOrdering AmbiguityOrdering::li_kuhn() {
  return {0.0, 0.0, -0.5, "likuhn"};
}

AmbiguityOrdering AmbiguityOrdering::custom(double a, double alpha,
                                            double gamma) {
  std::ostringstream os;
  os << a << ',' << alpha << ',' << gamma;
  return {a, alpha, gamma, os.str()};
}

double AmbiguityOrdering::c_ord() const {
  return (a - 2.0 * alpha * gamma - alpha - gamma) / (2.0 * (1.0 + a));
}

double AmbiguityOrdering::c2_ord() const {
  return (alpha + gamma + 1.0) / (1.0 + a);
}

double AmbiguityOrdering::A1() const {
  return (a - alpha * gamma - alpha - gamma) / (1.0 + a) - 0.75;
}

double AmbiguityOrdering::A2() const {
  return (alpha + gamma - a) / (2.0 * (1.0 + a)) + 0.5;
}

void validate(const AmbiguityOrdering& ord) {
  if (!std::isfinite(ord.a) || !std::isfinite(ord.alpha) ||
      !std::isfinite(ord.gamma)) {
    raise(ErrorKind::Validation, "ordering parameters must be finite");
  }
  if (ord.a == -1.0) raise(ErrorKind::Validation, "ordering parameter a = -1");
  const double sum = ord.alpha + ord.beta_order() + ord.gamma;
  if (std::abs(sum + 1.0) > 1e-12 * (1.0 + std::abs(ord.alpha) + std::abs(ord.gamma))) {
    raise(ErrorKind::Validation, "ordering constraint alpha+beta+gamma=-1 broken");
  }
}

double MassModel::singularity() const {
  if (eta <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(eta) / beta;
}

MassModel mass_model(const MoleculeSpec& mol, double eta) {
  require_eta(eta);
  return {mol.m0, eta, mol.beta()};
}

MassDerivatives mass_derivatives(const MassModel& mm, double x) {
  const double e = std::exp(-mm.beta * x);
  const double u = 1.0 - mm.eta * e;
  if (std::abs(u) < kSingularTol) {
    std::ostringstream os;
    os << "mass singularity at x=" << x << " (1 - eta exp(-beta x) = 0)";
    raise(ErrorKind::SingularMass, os.str());
  }
  // u' = eta beta e, u'' = -eta beta^2 e
  const double du = mm.eta * mm.beta * e;
  const double d2u = -mm.beta * du;
  const double inv = 1.0 / u;
  const double m = mm.m0 * inv * inv;
  const double dm = -2.0 * m * du * inv;
  const double d2m = 6.0 * m * du * du * inv * inv - 2.0 * m * d2u * inv;
  return {m, dm, d2m};
}

double mass_value(const MassModel& mm, double x) {
  return mass_derivatives(mm, x).m;
}

double potential_value(const MoleculeSpec& mol, double x) {
  const double e = std::exp(-mol.beta() * x);
  return mol.v1_eV() * e * e - mol.v2_eV() * e;
}

ReducedSystem reduce_dimensionless(double v1, double v2, double eta,
                                   const AmbiguityOrdering& ord,
                                   double e_scale) {
  require_eta(eta);
  validate(ord);
  require_positive(v1, "v1");
  require_positive(v2, "v2");
  require_positive(e_scale, "e_scale");

  ReducedSystem sys;
  sys.v1 = v1;
  sys.v2 = v2;
  sys.eta = eta;
  sys.c_ord = ord.c_ord();
  sys.c2_ord = ord.c2_ord();
  sys.A1 = ord.A1();
  sys.A2 = ord.A2();
  sys.eps1 = v1 - 4.0 * eta * eta * (sys.c_ord - 0.25);
  sys.eps2 = -eta * sys.c2_ord - v2;
  sys.e_scale = e_scale;
  sys.ordering = ord;
  return sys;
}

ReducedSystem reduce(const MoleculeSpec& mol, double eta,
                     const AmbiguityOrdering& ord) {
  validate(mol);
  // 2 m0 / (beta hbar)^2 = 2 / (alpha'^2 E0) because beta = alpha'/r0.
  const double inv_scale = 2.0 / (mol.alpha_prime * mol.alpha_prime * mol.E0);
  const double e_scale = 0.5 * mol.alpha_prime * mol.alpha_prime * mol.E0;
  return reduce_dimensionless(inv_scale * mol.v1_eV(), inv_scale * mol.v2_eV(),
                              eta, ord, e_scale);
}

}  // namespace pdm
