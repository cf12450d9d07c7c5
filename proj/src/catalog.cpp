#include "pdmorse/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "pdmorse/errors.hpp"

namespace pdm {

namespace {

// Constants written with decimal commas and the value embedded.
constexpr std::array<DecimalCommaFix, 10> kCommaFixes{{
    {"4, 7446", 4.7446},
    {"0, 7416", 0.7416},
    {"0, 50391", 0.50391},
    {"1, 440558", 1.440558},
    {"1, 508343932", 1.508343932},
    {"2, 515287", 2.515287},
    {"1, 5956", 1.5956},
    {"0, 8801221", 0.8801221},
    {"1, 7998368", 1.7998368},
    {"1, 865528199", 1.865528199},
}};

MoleculeSpec h2() {
  MoleculeSpec m;
  m.name = "H2";
  m.D = 4.7446;
  m.r0 = 0.7416;
  m.m0 = 0.50391;
  m.alpha_prime = 1.440558;
  m.E0 = 1.508343932e-2;
  return m;
}

MoleculeSpec lih() {
  MoleculeSpec m;
  m.name = "LiH";
  m.D = 2.515287;
  m.r0 = 1.5956;
  m.m0 = 0.8801221;
  m.alpha_prime = 1.7998368;
  m.E0 = 1.865528199e-3;
  return m;
}

struct Column {
  const char* molecule;
  double eta;
  std::vector<std::pair<int, double>> values;
};

PaperTable build_table() {
  PaperTable t;
  t.molecules = {h2(), lih()};
  const std::vector<Column> ours = {
      {"H2", 0.0, {{0, -4.476}, {2, -3.480}, {4, -2.609}, {10, -0.748}, {15, -0.057}}},
      {"LiH", 0.0,
       {{0, -2.429}, {2, -2.098}, {4, -1.792}, {10, -1.018}, {15, -0.539}, {20, -0.211}}},
      {"H2", 0.2,
       {{0, -4.528}, {2, -3.706}, {4, -2.953}, {6, -2.274}, {10, -1.152}, {15, -0.251},
        {20, -0.012}}},
      {"H2", 0.4,
       {{0, -4.582}, {2, -3.955}, {4, -3.363}, {6, -2.809}, {10, -1.818}, {15, -0.824},
        {20, -0.169}}},
      {"H2", 0.6,
       {{0, -4.637}, {2, -4.228}, {4, -3.856}, {6, -3.522}, {10, -2.985}, {15, -2.644}}},
      {"LiH", 0.2,
       {{0, -2.446}, {2, -2.176}, {4, -1.920}, {6, -1.677}, {10, -1.233}, {15, -0.763},
        {20, -0.395}}},
      {"LiH", 0.4,
       {{0, -2.463}, {2, -2.259}, {4, -2.062}, {6, -1.872}, {10, -1.512}, {15, -1.105},
        {20, -0.748}}},
      {"LiH", 0.6,
       {{0, -2.481}, {2, -2.346}, {4, -2.219}, {6, -2.099}, {10, -1.880}, {15, -1.653},
        {20, -1.486}}},
  };
  const std::vector<Column> literature = {
      {"H2", 0.0, {{0, -4.476}, {2, -3.480}, {4, -2.609}, {10, -0.748}}},
      {"LiH", 0.0, {{0, -2.429}, {2, -2.098}, {4, -1.792}, {10, -1.018}, {20, -0.211}}},
  };
  for (const Column& c : ours) {
    for (const auto& [n, E] : c.values) t.cells.push_back({c.molecule, c.eta, n, E});
  }
  for (const Column& c : literature) {
    for (const auto& [n, E] : c.values) t.literature_cells.push_back({c.molecule, c.eta, n, E});
  }
  return t;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    raise(ErrorKind::Validation, "malformed number for " + what + ": '" + text + "'");
  }
  return v;
}

}  // namespace

std::optional<double> PaperTable::lookup(std::string_view molecule, double eta, int n) const {
  for (const PaperCell& c : cells) {
    if (c.molecule == molecule && c.eta == eta && c.n == n) return c.E_eV;
  }
  return std::nullopt;
}

std::vector<double> PaperTable::etas() const { return {0.0, 0.2, 0.4, 0.6}; }

const PaperTable& paper_table() {
  static const PaperTable table = build_table();
  return table;
}

std::span<const DecimalCommaFix> decimal_comma_normalization() { return kCommaFixes; }

std::vector<MoleculeSpec> builtin_catalog() { return paper_table().molecules; }

MoleculeSpec find_molecule(std::string_view name) {
  for (const MoleculeSpec& m : paper_table().molecules) {
    if (lower(m.name) == lower(name)) return m;
  }
  raise(ErrorKind::Validation, "unknown molecule '" + std::string(name) + "'");
}

MoleculeSpec parse_config(std::istream& in) {
  static const std::array<std::string_view, 8> kKeys = {
      "name", "D_eV", "r0_angstrom", "m0_amu", "alpha_prime", "E0_eV", "V1_eV", "V2_eV"};
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      raise(ErrorKind::Validation, "config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      raise(ErrorKind::Validation, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (!kv.emplace(key, value).second) {
      raise(ErrorKind::Validation, "config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  for (const char* required : {"name", "D_eV", "r0_angstrom", "m0_amu", "alpha_prime"}) {
    if (!kv.count(required)) raise(ErrorKind::Validation, std::string("config missing key '") + required + "'");
  }
  MoleculeSpec m;
  m.name = kv["name"];
  if (m.name.empty()) raise(ErrorKind::Validation, "config name is empty");
  m.D = parse_number(kv["D_eV"], "D_eV");
  m.r0 = parse_number(kv["r0_angstrom"], "r0_angstrom");
  m.m0 = parse_number(kv["m0_amu"], "m0_amu");
  m.alpha_prime = parse_number(kv["alpha_prime"], "alpha_prime");
  if (kv.count("V1_eV")) m.V1 = parse_number(kv["V1_eV"], "V1_eV");
  if (kv.count("V2_eV")) m.V2 = parse_number(kv["V2_eV"], "V2_eV");
  if (kv.count("E0_eV")) {
    m.E0 = parse_number(kv["E0_eV"], "E0_eV");
  } else if (m.m0 > 0.0 && m.r0 > 0.0) {
    m.E0 = computed_E0(m);
  }
  validate(m);
  return m;
}

MoleculeSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Validation, "cannot open config '" + path + "'");
  return parse_config(in);
}

MoleculeSpec resolve_molecule(const std::string& name_or_path) {
  for (const MoleculeSpec& m : paper_table().molecules) {
    if (lower(m.name) == lower(name_or_path)) return m;
  }
  if (std::ifstream(name_or_path).good()) return load_config(name_or_path);
  raise(ErrorKind::Validation, "unknown molecule '" + name_or_path + "'");
}

AmbiguityOrdering parse_ordering(std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "weyl") return AmbiguityOrdering::weyl();
  if (t == "likuhn" || t == "li-kuhn") return AmbiguityOrdering::li_kuhn();
  std::array<double, 3> v{};
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const auto comma = t.find(',', start);
    if ((i < 2) == (comma == std::string::npos)) {
      raise(ErrorKind::Validation, "ordering must be weyl, likuhn or a,alpha,gamma");
    }
    const std::string part = trim(std::string_view(t).substr(start, comma - start));
    v[static_cast<std::size_t>(i)] = parse_number(part, "ordering");
    start = comma + 1;
  }
  AmbiguityOrdering ord = AmbiguityOrdering::custom(v[0], v[1], v[2]);
  validate(ord);
  return ord;
}

}  // namespace pdm
