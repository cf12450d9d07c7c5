#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "pdmorse/catalog.hpp"
#include "pdmorse/errors.hpp"
#include "pdmorse/report.hpp"

using pdm::AmbiguityOrdering;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

pdm::MoleculeSpec parse(const std::string& text) {
  std::istringstream in(text);
  return pdm::parse_config(in);
}

pdm::ErrorKind parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const pdm::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "config accepted: " << text;
  return pdm::ErrorKind::ContractViolation;
}

const char* kH2Config =
    "# hydrogen\n"
    "name = H2custom\n"
    "D_eV=4.7446\n"
    "r0_angstrom=0.7416\n"
    "m0_amu=0.50391\n"
    "alpha_prime=1.440558\n"
    "E0_eV=1.508343932e-2\n";

}  // namespace

TEST(Catalog, TwoMolecules) {
  const auto cat = pdm::builtin_catalog();
  ASSERT_EQ(cat.size(), 2u);
  EXPECT_EQ(pdm::find_molecule("H2").D, 4.7446);
  EXPECT_EQ(pdm::find_molecule("lih").r0, 1.5956);
  EXPECT_THROW(pdm::find_molecule("N2"), pdm::Error);
}

TEST(Catalog, DecimalCommaNormalization) {
  const auto fixes = pdm::decimal_comma_normalization();
  ASSERT_EQ(fixes.size(), 10u);
  for (const auto& f : fixes) {
    std::string s(f.printed);
    s.erase(s.find(", "), 2);
    s.insert(s.begin() + static_cast<long>(s.find_first_of("0123456789") + 1), '.');
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    EXPECT_EQ(v, f.value) << f.printed;
  }
  const auto h2 = pdm::find_molecule("H2");
  EXPECT_EQ(h2.E0, 1.508343932e-2);
  EXPECT_EQ(pdm::find_molecule("LiH").E0, 1.865528199e-3);
}

TEST(Catalog, ReferenceTableShape) {
  const auto& t = pdm::paper_table();
  EXPECT_EQ(t.cells.size(), 52u);
  int eta0 = 0;
  for (const auto& c : t.cells) eta0 += c.eta == 0.0;
  EXPECT_EQ(eta0, 11);
  EXPECT_EQ(*t.lookup("H2", 0.4, 10), -1.818);
  EXPECT_EQ(*t.lookup("LiH", 0.6, 20), -1.486);
  EXPECT_FALSE(t.lookup("H2", 0.6, 20).has_value());
  EXPECT_FALSE(t.lookup("H2", 0.0, 20).has_value());
}

TEST(Config, ParsesAndValidates) {
  const auto m = parse(kH2Config);
  EXPECT_EQ(m.name, "H2custom");
  EXPECT_EQ(m.D, 4.7446);
  EXPECT_FALSE(m.V1.has_value());
}

TEST(Config, ComputesMissingE0) {
  const auto m = parse("name=x\nD_eV=1\nr0_angstrom=1.2\nm0_amu=2\nalpha_prime=1.5\nV1_eV=0.5\n");
  EXPECT_NEAR(m.E0, pdm::hbar2_codata_eV_amu_A2() / (2 * 1.44), 1e-15);
  EXPECT_EQ(*m.V1, 0.5);
}

TEST(Config, Rejections) {
  EXPECT_EQ(parse_error(std::string(kH2Config) + "colour=red\n"), pdm::ErrorKind::Validation);
  EXPECT_EQ(parse_error("name=x\nD_eV=abc\nr0_angstrom=1\nm0_amu=1\nalpha_prime=1\n"),
            pdm::ErrorKind::Validation);
  EXPECT_EQ(parse_error("name=x\nD_eV=1\n"), pdm::ErrorKind::Validation);
  EXPECT_EQ(parse_error(std::string(kH2Config) + "D_eV=2\n"), pdm::ErrorKind::Validation);
  EXPECT_EQ(parse_error("name=x\nD_eV 1\n"), pdm::ErrorKind::Validation);
  // E0 off by 5 %
  std::string off = kH2Config;
  off.replace(off.find("1.508343932e-2"), 14, "1.58e-2");
  EXPECT_EQ(parse_error(off), pdm::ErrorKind::Validation);
}

TEST(Config, Ordering) {
  EXPECT_EQ(pdm::parse_ordering("weyl").a, 1.0);
  EXPECT_EQ(pdm::parse_ordering("LiKuhn").gamma, -0.5);
  const auto c = pdm::parse_ordering("0,-0.25,-0.25");
  EXPECT_EQ(c.alpha, -0.25);
  EXPECT_THROW(pdm::parse_ordering("-1,0,0"), pdm::Error);
  EXPECT_THROW(pdm::parse_ordering("1,2"), pdm::Error);
  EXPECT_THROW(pdm::parse_ordering("bogus"), pdm::Error);
}

TEST(Report, RowsSortedWithDeltaOnlyForTabulatedCells) {
  const auto r = pdm::spectrum_report(pdm::find_molecule("H2"), 0.2, AmbiguityOrdering::weyl());
  ASSERT_GE(r.rows.size(), 21u);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (i > 0) EXPECT_LT(r.rows[i - 1].n, r.rows[i].n);
    EXPECT_EQ(r.rows[i].delta_eV.has_value(), r.rows[i].E_paper_eV.has_value());
  }
  EXPECT_NEAR(r.rows[0].E_eV, -4.528, 5e-4);
  EXPECT_TRUE(r.rows[0].delta_eV.has_value());
  EXPECT_FALSE(r.rows[1].delta_eV.has_value());
}

TEST(Report, Table1) {
  const auto pass = pdm::table1_report(0.005);
  EXPECT_EQ(pass.cells, 52);
  EXPECT_EQ(pass.failures, 0);
  EXPECT_LT(pass.max_abs_delta, 1e-3);
  const auto strict = pdm::table1_report(1e-9);
  EXPECT_GT(strict.failures, 0);
  EXPECT_FALSE(strict.passed());
}

TEST(Report, CsvRoundTrip) {
  for (double eta : {0.0, 0.4}) {
    auto r = pdm::spectrum_report(pdm::find_molecule("LiH"), eta, AmbiguityOrdering::weyl());
    for (bool prov : {true, false}) {
      std::ostringstream out;
      pdm::write_csv(out, r, prov);
      std::istringstream in(out.str());
      const auto back = pdm::read_csv(in);
      if (prov) {
        EXPECT_EQ(back, r);
      } else {
        EXPECT_EQ(back.rows, r.rows);
        EXPECT_EQ(back.molecule, r.molecule);
        EXPECT_EQ(back.eta, r.eta);
      }
    }
  }
}

TEST(Report, JsonMirrorsCsv) {
  const auto r = pdm::spectrum_report(pdm::find_molecule("H2"), 0.6, AmbiguityOrdering::weyl());
  std::ostringstream js;
  pdm::write_json(js, r);
  const auto j = nlohmann::json::parse(js.str());
  EXPECT_EQ(j["molecule"], "H2");
  EXPECT_EQ(j["provenance"]["sign_convention"], "normalizable");
  ASSERT_EQ(j["rows"].size(), r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = j["rows"][i];
    EXPECT_EQ(row.size(), 5u);
    EXPECT_EQ(row["n"].get<int>(), r.rows[i].n);
    EXPECT_EQ(row["E_eV"].get<double>(), r.rows[i].E_eV);
    EXPECT_EQ(row["E_paper_eV"].is_null(), !r.rows[i].E_paper_eV.has_value());
  }
}

TEST(Report, DeterministicOutput) {
  auto render = [] {
    std::ostringstream out;
    pdm::write_csv(out, pdm::spectrum_report(pdm::find_molecule("H2"), 0.2, AmbiguityOrdering::weyl()));
    return out.str();
  };
  EXPECT_EQ(render(), render());
}

TEST(Report, GoldenSpectrum) {
  std::ostringstream out;
  pdm::write_csv(out, pdm::spectrum_report(pdm::find_molecule("H2"), 0.2, AmbiguityOrdering::weyl()),
                 false);
  EXPECT_EQ(out.str(), slurp(std::string(PDMORSE_GOLDEN_DIR) + "/spectrum_H2_eta0.2.csv"));
}

TEST(Report, FormatDoubleRoundTrips) {
  for (double v : {-4.528183507498737, 1e-300, 0.1, 1.0 / 3.0, -0.0}) {
    const std::string s = pdm::format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
}

TEST(Report, WavefunctionExport) {
  const auto h2 = pdm::find_molecule("H2");
  const auto w = pdm::wavefunction_export(h2, 0.2, AmbiguityOrdering::weyl(), 1, 50,
                                          pdm::SignConvention::Normalizable);
  ASSERT_EQ(w.samples.size(), 50u);
  ASSERT_TRUE(w.state.norm_const.has_value());
  const auto mm = pdm::mass_model(h2, 0.2);
  for (const auto& s : w.samples) {
    EXPECT_NEAR(s.x_angstrom, -std::log(s.z) / h2.beta(), 1e-12);
    EXPECT_NEAR(s.psi_physical, std::sqrt(pdm::mass_value(mm, s.x_angstrom)) * s.phi,
                1e-12 * std::abs(s.psi_physical) + 1e-300);
  }
  std::ostringstream out;
  pdm::write_wavefunction_csv(out, w);
  EXPECT_NE(out.str().find("# sign_convention=normalizable"), std::string::npos);
  EXPECT_NE(out.str().find("z,x_angstrom,phi,psi_physical\n"), std::string::npos);
  const auto printed = pdm::wavefunction_export(h2, 0.2, AmbiguityOrdering::weyl(), 0, 10,
                                                pdm::SignConvention::PaperPrinted);
  EXPECT_FALSE(printed.state.norm_const.has_value());
}

TEST(Report, OracleComparisonSchema) {
  const auto h2 = pdm::find_molecule("H2");
  const auto domains = pdm::study_domains(h2, 0.2);
  ASSERT_EQ(domains.size(), 3u);
  const auto rows = pdm::oracle_compare(h2, 0.2, AmbiguityOrdering::weyl(), 1, 2001, domains);
  EXPECT_EQ(rows.size(), 6u);
  std::ostringstream out;
  pdm::write_oracle_csv(out, rows, false);
  EXPECT_NE(out.str().find("molecule,eta,ordering,n,E_analytic_eV,E_oracle_eV,delta_eV,domain,grid_points\n"),
            std::string::npos);
  for (const auto& r : rows) EXPECT_TRUE(std::isfinite(r.E_oracle_eV));
}
