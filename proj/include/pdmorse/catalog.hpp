#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdmorse/model.hpp"

namespace pdm {

/// One tabulated energy of the reference table.
struct PaperCell {
  std::string molecule;
  double eta = 0.0;
  int n = 0;
  double E_eV = 0.0;
};

/// How a decimal-comma constant in the reference table caption was read.
struct DecimalCommaFix {
  std::string_view printed;
  double value;
};

/// The reference table: molecule constants and every tabulated E_n.
/// `cells` are the closed-form column; `literature_cells` the comparison
/// column quoted alongside it at eta = 0.
struct PaperTable {
  std::vector<MoleculeSpec> molecules;
  std::vector<PaperCell> cells;
  std::vector<PaperCell> literature_cells;

  std::optional<double> lookup(std::string_view molecule, double eta, int n) const;
  std::vector<double> etas() const;
};

const PaperTable& paper_table();
std::span<const DecimalCommaFix> decimal_comma_normalization();

std::vector<MoleculeSpec> builtin_catalog();

/// Case-insensitive catalog lookup; throws Validation for unknown names.
MoleculeSpec find_molecule(std::string_view name);

/// key=value config; '#' starts a comment. Keys: name, D_eV, r0_angstrom,
/// m0_amu, alpha_prime, E0_eV (optional), V1_eV, V2_eV (optional).
/// The result is validated.
MoleculeSpec parse_config(std::istream& in);
MoleculeSpec load_config(const std::string& path);

/// Catalog name or, failing that, a config path.
MoleculeSpec resolve_molecule(const std::string& name_or_path);

/// "weyl", "likuhn" / "li-kuhn", or "a,alpha,gamma".
AmbiguityOrdering parse_ordering(std::string_view text);

}  // namespace pdm
