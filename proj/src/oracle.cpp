#include "pdmorse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdmorse/errors.hpp"
#include "pdmorse/kernels.hpp"

namespace pdm {

namespace {

constexpr int kMaxBisections = 200;
constexpr double kRescale = 1e200;
constexpr double kSeed = 1e-30;
constexpr double kStiffLimit = 0.5;

struct Shot {
  int nodes = 0;
  double at_m = 0.0;
  double at_m1 = 0.0;
};

void coefficients(const ShootingProblem& prob, double E, std::vector<double>& lhs,
                  std::vector<double>& mid) {
  lhs.resize(prob.g.size());
  mid.resize(prob.g.size());
  kernels::numerov_coeffs(prob.g, prob.w, E, prob.grid.h(), lhs, mid);
}

// Left shot over the whole grid; nodes counted up to and including x_max.
// When `store` is given it receives the trajectory up to index m+1.
Shot left_shot(const ShootingProblem& prob, const std::vector<double>& lhs,
               const std::vector<double>& mid, std::vector<double>* store) {
  const std::size_t N = prob.g.size();
  const std::size_t m = prob.match;
  // Close to a mass singularity h^2 f / 12 can exceed 1 and the recurrence
  // oscillates spuriously. The solution there is negligible, so the wall
  // moves to the last such sample left of the matching point.
  std::size_t start = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (lhs[i] < kStiffLimit) start = i;
  }
  Shot s;
  double prev = 0.0;
  double cur = kSeed;
  if (store) {
    store->assign(start + 1, 0.0);
    store->push_back(cur);
  }
  for (std::size_t i = start + 1; i + 1 < N; ++i) {
    double next = (mid[i] * cur - lhs[i - 1] * prev) / lhs[i + 1];
    if ((next < 0.0 && cur > 0.0) || (next > 0.0 && cur < 0.0)) ++s.nodes;
    prev = cur;
    cur = next;
    if (store && i + 1 <= m + 1) store->push_back(cur);
    if (i + 1 == m + 1) {
      s.at_m = prev;
      s.at_m1 = cur;
    }
    if (std::abs(cur) > kRescale) {
      prev /= kRescale;
      cur /= kRescale;
      if (store && i + 1 <= m + 1) {
        for (double& v : *store) v /= kRescale;
      }
    }
  }
  return s;
}

Shot right_shot(const ShootingProblem& prob, const std::vector<double>& lhs,
                const std::vector<double>& mid, std::vector<double>* store) {
  const std::size_t N = prob.g.size();
  const std::size_t m = prob.match;
  Shot s;
  double prev = 0.0;  // index i+1
  double cur = kSeed;  // index i
  if (store) {
    store->assign(N, 0.0);
    (*store)[N - 2] = cur;
  }
  for (std::size_t i = N - 2; i > m; --i) {
    const double next = (mid[i] * cur - lhs[i + 1] * prev) / lhs[i - 1];
    prev = cur;
    cur = next;
    if (store) (*store)[i - 1] = cur;
    if (std::abs(cur) > kRescale) {
      prev /= kRescale;
      cur /= kRescale;
      if (store) {
        for (std::size_t j = i - 1; j < N; ++j) (*store)[j] /= kRescale;
      }
    }
  }
  s.at_m = cur;
  s.at_m1 = prev;
  return s;
}

}  // namespace

void validate(const GridSpec& grid, const MassModel& mm, double margin) {
  std::ostringstream os;
  if (grid.points < 501) {
    os << "grid needs at least 501 points, got " << grid.points;
  } else if (!(grid.x_max > grid.x_min)) {
    os << "grid x_max must exceed x_min";
  } else if (mm.eta > 0.0 && !(grid.x_min > mm.singularity() + margin)) {
    os << "grid x_min=" << grid.x_min << " not right of mass singularity " << mm.singularity();
  } else {
    return;
  }
  raise(ErrorKind::Validation, os.str());
}

GridSpec default_grid(const MoleculeSpec& mol, double eta, int points) {
  const MassModel mm = mass_model(mol, eta);
  GridSpec g;
  g.x_min = -0.95 * mol.r0;
  if (eta > 0.0) g.x_min = std::max(g.x_min, mm.singularity() + 0.05);
  g.x_max = 25.0 / mol.beta();
  g.points = points;
  return g;
}

double u_ordering(const MassModel& mm, const AmbiguityOrdering& ord, double hbar2,
                  double x) {
  validate(ord);
  const MassDerivatives d = mass_derivatives(mm, x);
  const double a = ord.a;
  const double al = ord.alpha;
  const double ga = ord.gamma;
  return -hbar2 / (4.0 * d.m * d.m * d.m * (a + 1.0)) *
         ((al + ga - a) * d.m * d.d2m + 2.0 * (a - al * ga - al - ga) * d.dm * d.dm);
}

double u_eff(const MassModel& mm, const AmbiguityOrdering& ord, const MoleculeSpec& mol,
             double x) {
  const double hbar2 = mol.hbar2();
  const MassDerivatives d = mass_derivatives(mm, x);
  const double kinetic = hbar2 / (4.0 * d.m * d.m) * (1.5 * d.dm * d.dm / d.m - d.d2m);
  return u_ordering(mm, ord, hbar2, x) + potential_value(mol, x) + kinetic;
}

ShootingProblem make_problem(const GridSpec& grid,
                             const std::function<double(double)>& mass,
                             const std::function<double(double)>& potential,
                             double hbar2, double e_max) {
  if (grid.points < 5 || !(grid.x_max > grid.x_min)) {
    raise(ErrorKind::Validation, "shooting grid needs x_max > x_min and 5+ points");
  }
  ShootingProblem p;
  p.grid = grid;
  p.e_max = e_max;
  const auto N = static_cast<std::size_t>(grid.points);
  p.g.resize(N);
  p.w.resize(N);
  std::vector<double> u(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double x = grid.x(static_cast<int>(i));
    u[i] = potential(x);
    p.w[i] = 2.0 * mass(x) / hbar2;
    p.g[i] = p.w[i] * u[i];
  }
  const auto lo = u.begin() + 2;
  const auto hi = u.end() - 3;
  p.match = static_cast<std::size_t>(std::min_element(lo, hi) - u.begin());
  return p;
}

ShootingProblem make_problem(const MassModel& mm, const AmbiguityOrdering& ord,
                             const MoleculeSpec& mol, const GridSpec& grid) {
  validate(grid, mm);
  return make_problem(
      grid, [&](double x) { return mass_value(mm, x); },
      [&](double x) { return u_eff(mm, ord, mol, x); }, mol.hbar2(), 0.0);
}

ShootingResult shoot(const ShootingProblem& prob, double E) {
  std::vector<double> lhs;
  std::vector<double> mid;
  coefficients(prob, E, lhs, mid);
  const Shot L = left_shot(prob, lhs, mid, nullptr);
  const Shot R = right_shot(prob, lhs, mid, nullptr);
  const double a = L.at_m * R.at_m1;
  const double b = L.at_m1 * R.at_m;
  const double scale = std::abs(a) + std::abs(b);
  return {E, L.nodes, scale > 0.0 ? (a - b) / scale : 0.0};
}

OracleState solve_state(const ShootingProblem& prob, int n, double tol_eV) {
  if (n < 0) raise(ErrorKind::ContractViolation, "n must be >= 0");
  double lo = prob.g[0] / prob.w[0];
  for (std::size_t i = 0; i < prob.g.size(); ++i) lo = std::min(lo, prob.g[i] / prob.w[i]);
  double hi = prob.e_max;
  ShootingResult r_hi = shoot(prob, hi);
  if (r_hi.nodes <= n) {
    std::ostringstream os;
    os << "no state with " << n << " nodes below E=" << hi << " eV on this grid";
    raise(ErrorKind::NoBracket, os.str());
  }
  ShootingResult r_lo = shoot(prob, lo);
  OracleState out;
  out.n = n;
  // narrow until exactly one eigenvalue sits in (lo, hi]
  while (!(r_lo.nodes == n && r_hi.nodes == n + 1)) {
    if (++out.iterations > kMaxBisections) {
      raise(ErrorKind::NonConvergence, "node-count bracketing did not converge");
    }
    const ShootingResult r = shoot(prob, 0.5 * (lo + hi));
    if (r.nodes <= n) {
      lo = r.E;
      r_lo = r;
    } else {
      hi = r.E;
      r_hi = r;
    }
  }
  const bool lo_positive = r_lo.mismatch > 0.0;
  while (hi - lo > tol_eV + 4e-16 * std::abs(hi)) {
    if (++out.iterations > kMaxBisections) {
      raise(ErrorKind::NonConvergence, "matching bisection did not converge");
    }
    const ShootingResult r = shoot(prob, 0.5 * (lo + hi));
    if ((r.mismatch > 0.0) == lo_positive) {
      lo = r.E;
    } else {
      hi = r.E;
    }
  }
  out.E = 0.5 * (lo + hi);
  return out;
}

std::vector<OracleState> solve_states(const MassModel& mm, const AmbiguityOrdering& ord,
                                      const MoleculeSpec& mol, const GridSpec& grid,
                                      std::span<const int> n_list) {
  const ShootingProblem prob = make_problem(mm, ord, mol, grid);
  std::vector<OracleState> out;
  out.reserve(n_list.size());
  for (int n : n_list) out.push_back(solve_state(prob, n));
  return out;
}

std::vector<double> eigenfunction(const ShootingProblem& prob, double E) {
  std::vector<double> lhs;
  std::vector<double> mid;
  coefficients(prob, E, lhs, mid);
  std::vector<double> left;
  std::vector<double> right;
  left_shot(prob, lhs, mid, &left);
  right_shot(prob, lhs, mid, &right);
  const std::size_t m = prob.match;
  // join on whichever of the two matching samples is larger
  const std::size_t j = std::abs(left[m]) > std::abs(left[m + 1]) ? m : m + 1;
  const double ratio = right[j] != 0.0 ? left[j] / right[j] : 0.0;
  std::vector<double> phi(right.size());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = i <= m ? left[i] : ratio * right[i];
  double norm = 0.0;
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
    norm += 0.5 * (phi[i] * phi[i] + phi[i + 1] * phi[i + 1]);
  }
  norm = std::sqrt(norm * prob.grid.h());
  if (norm > 0.0) {
    for (double& v : phi) v /= norm;
  }
  return phi;
}

std::vector<double> physical_psi(const MassModel& mm, std::span<const double> x,
                                 std::span<const double> phi) {
  if (x.size() != phi.size()) raise(ErrorKind::ContractViolation, "x and phi sizes differ");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::sqrt(mass_value(mm, x[i])) * phi[i];
  return out;
}

}  // namespace pdm
