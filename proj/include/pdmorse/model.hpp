#pragma once

#include <optional>
#include <string>

namespace pdm {

/// CODATA 2018 value of hbar^2 / (1 amu * 1 Angstrom^2), in eV. Used only
/// for the E0 consistency check and when a config omits E0.
double hbar2_codata_eV_amu_A2();

/// Physical parameters of a diatomic molecule. Energies in eV, lengths in
/// Angstrom, masses in amu. E0 = hbar^2/(m0 r0^2) is stored as given.
struct MoleculeSpec {
  std::string name;
  double D = 0.0;
  double r0 = 0.0;
  double m0 = 0.0;
  double alpha_prime = 0.0;
  double E0 = 0.0;
  // Well-strength overrides for synthetic wells; default V1 = D, V2 = 2D.
  std::optional<double> V1;
  std::optional<double> V2;

  double v1_eV() const { return V1.value_or(D); }
  double v2_eV() const { return V2.value_or(2.0 * D); }
  double beta() const { return alpha_prime / r0; }
  /// hbar^2 in eV amu A^2 implied by the stored E0.
  double hbar2() const { return E0 * m0 * r0 * r0; }
};

/// E0 recomputed from physical constants.
double computed_E0(const MoleculeSpec& mol);

/// Throws Error(Validation) when a field is out of range or E0 disagrees
/// with hbar^2/(m0 r0^2) by more than 0.5 %.
void validate(const MoleculeSpec& mol);

/// von Roos ambiguity parameters. The ordering beta is derived so that
/// alpha + beta + gamma = -1 always holds.
struct AmbiguityOrdering {
  double a = 1.0;
  double alpha = 0.0;
  double gamma = 0.0;
  std::string label = "weyl";

  static AmbiguityOrdering weyl();
  static AmbiguityOrdering li_kuhn();
  static AmbiguityOrdering custom(double a, double alpha, double gamma);

  double beta_order() const { return -1.0 - alpha - gamma; }

  /// (a - 2 alpha gamma - alpha - gamma) / (2 (1 + a))
  double c_ord() const;
  /// (alpha + gamma + 1) / (1 + a)
  double c2_ord() const;
  /// (a - alpha gamma - alpha - gamma)/(1 + a) - 3/4
  double A1() const;
  /// (alpha + gamma - a)/(2 (1 + a)) + 1/2
  double A2() const;
};

void validate(const AmbiguityOrdering& ord);

/// m(x) = m0 / (1 - eta exp(-beta x))^2
struct MassModel {
  double m0 = 0.0;
  double eta = 0.0;
  double beta = 0.0;

  /// Position of the mass singularity, ln(eta)/beta; -inf for eta = 0.
  double singularity() const;
};

MassModel mass_model(const MoleculeSpec& mol, double eta);

struct MassDerivatives {
  double m = 0.0;
  double dm = 0.0;
  double d2m = 0.0;
};

double mass_value(const MassModel& mm, double x);
MassDerivatives mass_derivatives(const MassModel& mm, double x);

/// V(x) = V1 exp(-2 beta x) - V2 exp(-beta x), x = r - r0 in Angstrom.
double potential_value(const MoleculeSpec& mol, double x);

/// Dimensionless problem obtained from the physical one. All spectral math
/// works on this; eV appear again only through e_scale.
struct ReducedSystem {
  double v1 = 0.0;
  double v2 = 0.0;
  double eta = 0.0;
  double c_ord = 0.0;
  double c2_ord = 0.0;
  double A1 = 0.0;
  double A2 = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double e_scale = 0.0;  // beta^2 hbar^2 / (2 m0), eV
  AmbiguityOrdering ordering;
};

ReducedSystem reduce(const MoleculeSpec& mol, double eta,
                     const AmbiguityOrdering& ord);

/// Builds a reduced system directly from v1 = 2 m0 V1/(beta hbar)^2 and
/// v2 = 2 m0 V2/(beta hbar)^2. For synthetic wells in tests and studies.
ReducedSystem reduce_dimensionless(double v1, double v2, double eta,
                                   const AmbiguityOrdering& ord,
                                   double e_scale = 1.0);

}  // namespace pdm
