#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdmorse/analytic.hpp"
#include "pdmorse/model.hpp"
#include "pdmorse/wavefn.hpp"

namespace pdm {

inline constexpr const char* kVersion = "1.0.0";

/// Run metadata written as comment lines; the only non-data part of output.
struct Provenance {
  std::string version = kVersion;
  QuantizationRule rule = QuantizationRule::PrintedFormula;
  SignConvention convention = SignConvention::Normalizable;
  double tolerance_eV = 0.005;

  bool operator==(const Provenance&) const = default;
};

struct SpectrumRow {
  int n = 0;
  double eps_nl = 0.0;
  double E_eV = 0.0;
  std::optional<double> E_paper_eV;
  std::optional<double> delta_eV;

  bool operator==(const SpectrumRow&) const = default;
};

struct SpectrumReport {
  std::string molecule;
  double eta = 0.0;
  std::string ordering;
  std::vector<SpectrumRow> rows;  // sorted by n
  Provenance provenance;

  bool operator==(const SpectrumReport&) const = default;
};

/// All bound states of the molecule, joined against the reference table.
/// Tabulated n beyond the enumerated spectrum are appended so that every
/// reference cell has a row.
SpectrumReport spectrum_report(const MoleculeSpec& mol, double eta,
                               const AmbiguityOrdering& ord,
                               QuantizationRule rule = QuantizationRule::PrintedFormula);

struct Table1Summary {
  std::vector<SpectrumReport> reports;
  double tolerance_eV = 0.0;
  int cells = 0;
  int failures = 0;
  double max_abs_delta = 0.0;
  std::vector<std::string> failed;  // "molecule eta=.. n=.."
  bool passed() const { return failures == 0; }
};

/// Weyl-ordering reproduction of every reference cell.
Table1Summary table1_report(double tolerance_eV);

/// Fixed 17-significant-digit rendering shared by all writers.
std::string format_double(double v);

void write_csv(std::ostream& out, const SpectrumReport& r, bool provenance = true);
void write_json(std::ostream& out, const SpectrumReport& r, bool provenance = true);
SpectrumReport read_csv(std::istream& in);

void write_table1(std::ostream& out, const Table1Summary& s);

struct OracleRow {
  std::string molecule;
  double eta = 0.0;
  std::string ordering;
  int n = 0;
  double E_analytic_eV = 0.0;
  double E_oracle_eV = 0.0;
  double delta_eV = 0.0;
  std::string domain;
  int grid_points = 0;
};

struct DomainChoice {
  std::string label;
  double x_min = 0.0;
  double x_max = 0.0;
};

/// Domains compared when none is given: x >= 0, the natural
/// left end next to the mass singularity (eta > 0), and the default grid.
std::vector<DomainChoice> study_domains(const MoleculeSpec& mol, double eta);

std::vector<OracleRow> oracle_compare(const MoleculeSpec& mol, double eta,
                                      const AmbiguityOrdering& ord, int n_max,
                                      int grid_points,
                                      const std::vector<DomainChoice>& domains);

void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows,
                      bool provenance = true);
void write_oracle_json(std::ostream& out, const std::vector<OracleRow>& rows,
                       bool provenance = true);

struct WavefunctionSample {
  double z = 0.0;
  double x_angstrom = 0.0;
  double phi = 0.0;
  double psi_physical = 0.0;
};

struct WavefunctionExport {
  std::string molecule;
  double eta = 0.0;
  std::string ordering;
  BoundState state;
  SignConvention convention = SignConvention::Normalizable;
  std::vector<WavefunctionSample> samples;
};

/// Samples on (0, z_hi) with z_hi the smaller of the natural range and
/// exp(alpha') (x >= -r0). Uses the self-consistent root unless told otherwise.
WavefunctionExport wavefunction_export(const MoleculeSpec& mol, double eta,
                                       const AmbiguityOrdering& ord, int n, int samples,
                                       SignConvention convention,
                                       QuantizationRule rule = QuantizationRule::SelfConsistent);

void write_wavefunction_csv(std::ostream& out, const WavefunctionExport& w,
                            bool provenance = true);
void write_wavefunction_json(std::ostream& out, const WavefunctionExport& w,
                             bool provenance = true);

}  // namespace pdm
