#include "pdmorse/cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pdmorse/catalog.hpp"
#include "pdmorse/errors.hpp"
#include "pdmorse/oracle.hpp"
#include "pdmorse/report.hpp"

namespace pdm {

namespace {

struct Options {
  bool no_provenance = false;
  std::string molecule;
  double eta = 0.0;
  std::string ordering = "weyl";
  std::string format = "csv";
  std::string rule;
  double tolerance = 0.005;
  int n = 0;
  int samples = 200;
  std::string convention = "normalizable";
  int n_max = 2;
  int grid = 8001;
  std::vector<double> domain;
  std::string config;
};

QuantizationRule rule_from(const std::string& s, QuantizationRule fallback) {
  if (s.empty()) return fallback;
  return s == "printed" ? QuantizationRule::PrintedFormula : QuantizationRule::SelfConsistent;
}

void add_molecule_options(CLI::App* sub, Options& o) {
  sub->add_option("--molecule", o.molecule, "catalog name (H2, LiH) or config path")->required();
  sub->add_option("--eta", o.eta, "mass deformation, 0 <= eta < 1")->required();
  sub->add_option("--ordering", o.ordering, "weyl, likuhn or a,alpha,gamma");
  sub->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states of the generalized Morse potential with position-dependent mass",
               "pdmorse"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_flag("--no-provenance", o.no_provenance, "omit run metadata comment lines");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "closed-form bound-state spectrum");
  add_molecule_options(spectrum_cmd, o);
  spectrum_cmd->add_option("--rule", o.rule, "printed or self-consistent")
      ->check(CLI::IsMember({"printed", "self-consistent"}));

  auto* table_cmd = app.add_subcommand("table1", "reproduce the reference table");
  table_cmd->add_option("--tolerance", o.tolerance, "eV")->check(CLI::PositiveNumber);

  auto* wave_cmd = app.add_subcommand("wavefunction", "sample the analytic eigenfunction");
  add_molecule_options(wave_cmd, o);
  wave_cmd->add_option("--n", o.n)->required()->check(CLI::NonNegativeNumber);
  wave_cmd->add_option("--samples", o.samples)->check(CLI::Range(2, 10000000));
  wave_cmd->add_option("--convention", o.convention)
      ->check(CLI::IsMember({"printed", "normalizable"}));
  wave_cmd->add_option("--rule", o.rule, "printed or self-consistent")
      ->check(CLI::IsMember({"printed", "self-consistent"}));

  auto* oracle_cmd = app.add_subcommand("oracle-compare", "shooting eigenvalues vs closed form");
  add_molecule_options(oracle_cmd, o);
  oracle_cmd->add_option("--n-max", o.n_max)->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--grid", o.grid)->check(CLI::Range(501, 100000000));
  oracle_cmd->add_option("--domain", o.domain, "x_min,x_max in Angstrom")
      ->delimiter(',')
      ->expected(2);

  auto* validate_cmd = app.add_subcommand("validate", "check a molecule config file");
  validate_cmd->add_option("config", o.config)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const bool prov = !o.no_provenance;
  const bool json = o.format == "json";
  try {
    if (*spectrum_cmd) {
      const MoleculeSpec mol = resolve_molecule(o.molecule);
      const SpectrumReport r = spectrum_report(mol, o.eta, parse_ordering(o.ordering),
                                               rule_from(o.rule, QuantizationRule::PrintedFormula));
      json ? write_json(out, r, prov) : write_csv(out, r, prov);
    } else if (*table_cmd) {
      const Table1Summary s = table1_report(o.tolerance);
      write_table1(out, s);
      return s.passed() ? 0 : 1;
    } else if (*wave_cmd) {
      const MoleculeSpec mol = resolve_molecule(o.molecule);
      const SignConvention c =
          o.convention == "printed" ? SignConvention::PaperPrinted : SignConvention::Normalizable;
      const WavefunctionExport w =
          wavefunction_export(mol, o.eta, parse_ordering(o.ordering), o.n, o.samples, c,
                              rule_from(o.rule, QuantizationRule::SelfConsistent));
      json ? write_wavefunction_json(out, w, prov) : write_wavefunction_csv(out, w, prov);
    } else if (*oracle_cmd) {
      const MoleculeSpec mol = resolve_molecule(o.molecule);
      std::vector<DomainChoice> domains;
      if (o.domain.empty()) {
        domains = study_domains(mol, o.eta);
      } else {
        domains.push_back({"custom", o.domain[0], o.domain[1]});
      }
      const auto rows =
          oracle_compare(mol, o.eta, parse_ordering(o.ordering), o.n_max, o.grid, domains);
      if (json) {
        write_oracle_json(out, rows, prov);
      } else {
        write_oracle_csv(out, rows, prov);
      }
    } else if (*validate_cmd) {
      const MoleculeSpec mol = load_config(o.config);
      out << "ok name=" << mol.name << " E0_eV=" << format_double(mol.E0)
          << " E0_computed_eV=" << format_double(computed_E0(mol)) << '\n';
    }
  } catch (const Error& e) {
    err << "error: kind=" << to_string(e.kind()) << " message=\"" << e.what() << "\"\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: kind=internal message=\"" << e.what() << "\"\n";
    return 1;
  }
  return 0;
}

}  // namespace pdm
