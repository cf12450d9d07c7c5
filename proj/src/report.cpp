#include "pdmorse/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pdmorse/catalog.hpp"
#include "pdmorse/errors.hpp"
#include "pdmorse/oracle.hpp"

namespace pdm {

namespace {

using nlohmann::json;

constexpr const char* kSpectrumHeader = "n,eps_nl,E_eV,E_paper_eV,delta_eV";

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// JSON has no NaN; failed oracle rows carry null like absent reference values.
json num_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    raise(ErrorKind::Validation, "malformed number '" + std::string(s) + "' in CSV");
  }
  return v;
}

std::optional<double> parse_opt(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void write_provenance(std::ostream& out, const Provenance& p) {
  out << "# version=" << p.version << '\n'
      << "# rule=" << to_string(p.rule) << '\n'
      << "# sign_convention=" << to_string(p.convention) << '\n'
      << "# tolerance_eV=" << format_double(p.tolerance_eV) << '\n';
}

json provenance_json(const Provenance& p) {
  return {{"version", p.version},
          {"rule", std::string(to_string(p.rule))},
          {"sign_convention", std::string(to_string(p.convention))},
          {"tolerance_eV", p.tolerance_eV}};
}

QuantizationRule parse_rule(std::string_view s) {
  if (s == to_string(QuantizationRule::PrintedFormula)) return QuantizationRule::PrintedFormula;
  if (s == to_string(QuantizationRule::SelfConsistent)) return QuantizationRule::SelfConsistent;
  raise(ErrorKind::Validation, "unknown rule '" + std::string(s) + "'");
}

SignConvention parse_convention(std::string_view s) {
  if (s == to_string(SignConvention::PaperPrinted)) return SignConvention::PaperPrinted;
  if (s == to_string(SignConvention::Normalizable)) return SignConvention::Normalizable;
  raise(ErrorKind::Validation, "unknown sign convention '" + std::string(s) + "'");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

SpectrumReport spectrum_report(const MoleculeSpec& mol, double eta,
                               const AmbiguityOrdering& ord, QuantizationRule rule) {
  const ReducedSystem sys = reduce(mol, eta, ord);
  SpectrumReport r;
  r.molecule = mol.name;
  r.eta = eta;
  r.ordering = ord.label;
  r.provenance.rule = rule;
  const PaperTable& table = paper_table();
  const bool tabulated = ord.label == "weyl";
  auto add = [&](int n, double eps) {
    SpectrumRow row;
    row.n = n;
    row.eps_nl = eps;
    row.E_eV = -sys.e_scale * eps;
    if (tabulated) row.E_paper_eV = table.lookup(mol.name, eta, n);
    if (row.E_paper_eV) row.delta_eV = row.E_eV - *row.E_paper_eV;
    r.rows.push_back(row);
  };
  for (const BoundState& st : spectrum(sys, rule)) add(st.n, st.eps_nl);
  if (tabulated) {
    for (const PaperCell& c : table.cells) {
      if (c.molecule != mol.name || c.eta != eta) continue;
      const bool present = std::any_of(r.rows.begin(), r.rows.end(),
                                       [&](const SpectrumRow& row) { return row.n == c.n; });
      if (!present) add(c.n, epsilon_for(sys, c.n, rule));
    }
  }
  std::sort(r.rows.begin(), r.rows.end(),
            [](const SpectrumRow& a, const SpectrumRow& b) { return a.n < b.n; });
  return r;
}

Table1Summary table1_report(double tolerance_eV) {
  if (!(tolerance_eV > 0.0)) raise(ErrorKind::Validation, "tolerance must be positive");
  Table1Summary s;
  s.tolerance_eV = tolerance_eV;
  const PaperTable& table = paper_table();
  for (const MoleculeSpec& mol : table.molecules) {
    for (double eta : table.etas()) {
      SpectrumReport r = spectrum_report(mol, eta, AmbiguityOrdering::weyl());
      r.provenance.tolerance_eV = tolerance_eV;
      for (const SpectrumRow& row : r.rows) {
        if (!row.delta_eV) continue;
        ++s.cells;
        const double d = std::abs(*row.delta_eV);
        s.max_abs_delta = std::max(s.max_abs_delta, d);
        if (!(d <= tolerance_eV)) {
          ++s.failures;
          std::ostringstream os;
          os << mol.name << " eta=" << eta << " n=" << row.n;
          s.failed.push_back(os.str());
        }
      }
      s.reports.push_back(std::move(r));
    }
  }
  return s;
}

void write_csv(std::ostream& out, const SpectrumReport& r, bool provenance) {
  out << "# pdmorse spectrum\n"
      << "# molecule=" << r.molecule << '\n'
      << "# eta=" << format_double(r.eta) << '\n'
      << "# ordering=" << r.ordering << '\n';
  if (provenance) write_provenance(out, r.provenance);
  out << kSpectrumHeader << '\n';
  for (const SpectrumRow& row : r.rows) {
    out << row.n << ',' << format_double(row.eps_nl) << ',' << format_double(row.E_eV) << ','
        << opt(row.E_paper_eV) << ',' << opt(row.delta_eV) << '\n';
  }
}

void write_json(std::ostream& out, const SpectrumReport& r, bool provenance) {
  json j;
  j["molecule"] = r.molecule;
  j["eta"] = r.eta;
  j["ordering"] = r.ordering;
  if (provenance) j["provenance"] = provenance_json(r.provenance);
  json rows = json::array();
  for (const SpectrumRow& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"eps_nl", row.eps_nl},
                    {"E_eV", row.E_eV},
                    {"E_paper_eV", opt_json(row.E_paper_eV)},
                    {"delta_eV", opt_json(row.delta_eV)}});
  }
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

SpectrumReport read_csv(std::istream& in) {
  SpectrumReport r;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "molecule") r.molecule = value;
      else if (key == "eta") r.eta = parse_double(value);
      else if (key == "ordering") r.ordering = value;
      else if (key == "version") r.provenance.version = value;
      else if (key == "rule") r.provenance.rule = parse_rule(value);
      else if (key == "sign_convention") r.provenance.convention = parse_convention(value);
      else if (key == "tolerance_eV") r.provenance.tolerance_eV = parse_double(value);
      continue;
    }
    if (!header) {
      if (line != kSpectrumHeader) raise(ErrorKind::Validation, "unexpected spectrum CSV header");
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 5) raise(ErrorKind::Validation, "spectrum CSV row needs 5 fields");
    SpectrumRow row;
    row.n = static_cast<int>(parse_double(f[0]));
    row.eps_nl = parse_double(f[1]);
    row.E_eV = parse_double(f[2]);
    row.E_paper_eV = parse_opt(f[3]);
    row.delta_eV = parse_opt(f[4]);
    r.rows.push_back(row);
  }
  if (!header) raise(ErrorKind::Validation, "spectrum CSV has no header");
  return r;
}

void write_table1(std::ostream& out, const Table1Summary& s) {
  out << "molecule,eta,n,E_eV,E_paper_eV,delta_eV,status\n";
  for (const SpectrumReport& r : s.reports) {
    for (const SpectrumRow& row : r.rows) {
      out << r.molecule << ',' << format_double(r.eta) << ',' << row.n << ','
          << format_double(row.E_eV) << ',';
      if (row.delta_eV) {
        out << format_double(*row.E_paper_eV) << ',' << format_double(*row.delta_eV) << ','
            << (std::abs(*row.delta_eV) <= s.tolerance_eV ? "pass" : "FAIL");
      } else {
        out << ",,paper: absent";
      }
      out << '\n';
    }
  }
  out << "# cells=" << s.cells << " failures=" << s.failures
      << " max_abs_delta_eV=" << format_double(s.max_abs_delta)
      << " tolerance_eV=" << format_double(s.tolerance_eV) << ' '
      << (s.passed() ? "PASS" : "FAIL") << '\n';
}

std::vector<DomainChoice> study_domains(const MoleculeSpec& mol, double eta) {
  const GridSpec def = default_grid(mol, eta, 501);
  std::vector<DomainChoice> d;
  d.push_back({"paper", 0.0, def.x_max});
  if (eta > 0.0) {
    d.push_back({"near-singularity", mass_model(mol, eta).singularity() + 0.05, def.x_max});
  }
  d.push_back({"physical", def.x_min, def.x_max});
  return d;
}

std::vector<OracleRow> oracle_compare(const MoleculeSpec& mol, double eta,
                                      const AmbiguityOrdering& ord, int n_max,
                                      int grid_points,
                                      const std::vector<DomainChoice>& domains) {
  if (n_max < 0) raise(ErrorKind::Validation, "n-max must be >= 0");
  const ReducedSystem sys = reduce(mol, eta, ord);
  const MassModel mm = mass_model(mol, eta);
  std::vector<OracleRow> rows;
  for (const DomainChoice& dom : domains) {
    const GridSpec grid{dom.x_min, dom.x_max, grid_points};
    const ShootingProblem prob = make_problem(mm, ord, mol, grid);
    for (int n = 0; n <= n_max; ++n) {
      OracleRow row;
      row.molecule = mol.name;
      row.eta = eta;
      row.ordering = ord.label;
      row.n = n;
      row.E_analytic_eV = energy_eV(sys, n);
      try {
        row.E_oracle_eV = solve_state(prob, n).E;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoBracket && e.kind() != ErrorKind::NonConvergence) throw;
        row.E_oracle_eV = std::numeric_limits<double>::quiet_NaN();
      }
      row.delta_eV = row.E_oracle_eV - row.E_analytic_eV;
      row.domain = dom.label;
      row.grid_points = grid_points;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows, bool provenance) {
  out << "# pdmorse oracle-compare\n";
  if (provenance) {
    out << "# version=" << kVersion << '\n'
        << "# analytic_rule=" << to_string(QuantizationRule::PrintedFormula) << '\n'
        << "# oracle=numerov shooting, dirichlet ends\n";
  }
  out << "molecule,eta,ordering,n,E_analytic_eV,E_oracle_eV,delta_eV,domain,grid_points\n";
  for (const OracleRow& r : rows) {
    out << r.molecule << ',' << format_double(r.eta) << ',' << r.ordering << ',' << r.n << ','
        << format_double(r.E_analytic_eV) << ',' << format_double(r.E_oracle_eV) << ','
        << format_double(r.delta_eV) << ',' << r.domain << ',' << r.grid_points << '\n';
  }
}

void write_oracle_json(std::ostream& out, const std::vector<OracleRow>& rows, bool provenance) {
  json j;
  if (provenance) {
    j["provenance"] = {{"version", kVersion},
                       {"analytic_rule", std::string(to_string(QuantizationRule::PrintedFormula))},
                       {"oracle", "numerov shooting, dirichlet ends"}};
  }
  json arr = json::array();
  for (const OracleRow& r : rows) {
    arr.push_back({{"molecule", r.molecule},
                   {"eta", r.eta},
                   {"ordering", r.ordering},
                   {"n", r.n},
                   {"E_analytic_eV", r.E_analytic_eV},
                   {"E_oracle_eV", num_json(r.E_oracle_eV)},
                   {"delta_eV", num_json(r.delta_eV)},
                   {"domain", r.domain},
                   {"grid_points", r.grid_points}});
  }
  j["rows"] = arr;
  out << j.dump(2) << '\n';
}

WavefunctionExport wavefunction_export(const MoleculeSpec& mol, double eta,
                                       const AmbiguityOrdering& ord, int n, int samples,
                                       SignConvention convention, QuantizationRule rule) {
  if (samples < 2) raise(ErrorKind::Validation, "samples must be >= 2");
  const ReducedSystem sys = reduce(mol, eta, ord);
  const MassModel mm = mass_model(mol, eta);
  WavefunctionExport w;
  w.molecule = mol.name;
  w.eta = eta;
  w.ordering = ord.label;
  w.convention = convention;
  w.state = make_state(sys, n, rule);
  const EigenfunctionParams params = eigenfunction_params(sys, w.state, convention);
  try {
    w.state.norm_const = norm_const(params);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DomainUnsupported) throw;
  }
  const double z_hi = std::min(natural_z_max(eta), std::exp(mol.alpha_prime));
  const double beta = mol.beta();
  for (double z : open_grid(0.0, z_hi, samples)) {
    WavefunctionSample s;
    s.z = z;
    s.x_angstrom = -std::log(z) / beta;
    s.phi = phi_unnormalized(params, z) * w.state.norm_const.value_or(1.0);
    s.psi_physical = std::sqrt(mass_value(mm, s.x_angstrom)) * s.phi;
    w.samples.push_back(s);
  }
  return w;
}

void write_wavefunction_csv(std::ostream& out, const WavefunctionExport& w, bool provenance) {
  out << "# pdmorse wavefunction\n"
      << "# molecule=" << w.molecule << '\n'
      << "# eta=" << format_double(w.eta) << '\n'
      << "# ordering=" << w.ordering << '\n'
      << "# n=" << w.state.n << '\n'
      << "# eps_nl=" << format_double(w.state.eps_nl) << '\n'
      << "# E_eV=" << format_double(w.state.E) << '\n'
      << "# sign_convention=" << to_string(w.convention) << '\n'
      << "# norm_const=" << (w.state.norm_const ? format_double(*w.state.norm_const) : "unnormalized")
      << '\n';
  if (provenance) {
    out << "# version=" << kVersion << '\n' << "# rule=" << to_string(w.state.rule) << '\n';
  }
  out << "z,x_angstrom,phi,psi_physical\n";
  for (const WavefunctionSample& s : w.samples) {
    out << format_double(s.z) << ',' << format_double(s.x_angstrom) << ','
        << format_double(s.phi) << ',' << format_double(s.psi_physical) << '\n';
  }
}

void write_wavefunction_json(std::ostream& out, const WavefunctionExport& w, bool provenance) {
  json j;
  j["molecule"] = w.molecule;
  j["eta"] = w.eta;
  j["ordering"] = w.ordering;
  j["n"] = w.state.n;
  j["eps_nl"] = w.state.eps_nl;
  j["E_eV"] = w.state.E;
  j["sign_convention"] = std::string(to_string(w.convention));
  j["norm_const"] = w.state.norm_const ? json(*w.state.norm_const) : json("unnormalized");
  if (provenance) {
    j["provenance"] = {{"version", kVersion}, {"rule", std::string(to_string(w.state.rule))}};
  }
  json arr = json::array();
  for (const WavefunctionSample& s : w.samples) {
    arr.push_back({{"z", s.z},
                   {"x_angstrom", s.x_angstrom},
                   {"phi", num_json(s.phi)},
                   {"psi_physical", num_json(s.psi_physical)}});
  }
  j["samples"] = arr;
  out << j.dump(2) << '\n';
}

}  // namespace pdm
