#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and an AVX2
// variant; the dispatching overloads pick the best one the CPU supports.

#include <span>
#include <string_view>
#include <vector>

namespace pdm::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
bool isa_supported(Isa isa);
Isa active_isa();

/// Per-step coefficients of the Jacobi three-term recurrence,
/// P_{k+1} = (c0[k] + cx[k] x) P_k - cm[k] P_{k-1}, for k = 1 .. n-1.
struct JacobiRecurrence {
  int n = 0;
  double p = 0.0;
  double q = 0.0;
  std::vector<double> c0;
  std::vector<double> cx;
  std::vector<double> cm;
};

JacobiRecurrence jacobi_recurrence(int n, double p, double q);

void jacobi_batch(const JacobiRecurrence& rec, std::span<const double> x,
                  std::span<double> out);
void jacobi_batch(Isa isa, const JacobiRecurrence& rec,
                  std::span<const double> x, std::span<double> out);

/// Coefficients of phi'' + phi'/z + (-eps1 z^2 - eps2 z - eps)/(z(1-eta z))^2 phi.
struct ResidualCoeffs {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps = 0.0;
  double eta = 0.0;
};

struct ResidualTerms {
  double max_lhs = 0.0;
  double max_term = 0.0;
};

/// Fourth-order central differences on a uniform grid of spacing h; only
/// points with two neighbours on each side contribute.
ResidualTerms fd_residual(std::span<const double> z, std::span<const double> phi,
                          double h, const ResidualCoeffs& c);
ResidualTerms fd_residual(Isa isa, std::span<const double> z,
                          std::span<const double> phi, double h,
                          const ResidualCoeffs& c);

/// Numerov coefficients for phi'' = f phi with f = g - E w:
/// lhs[i] = 1 - h^2 f_i / 12, mid[i] = 2 (1 + 5 h^2 f_i / 12).
void numerov_coeffs(std::span<const double> g, std::span<const double> w,
                    double E, double h, std::span<double> lhs,
                    std::span<double> mid);
void numerov_coeffs(Isa isa, std::span<const double> g,
                    std::span<const double> w, double E, double h,
                    std::span<double> lhs, std::span<double> mid);

namespace detail {
void jacobi_batch_scalar(const JacobiRecurrence& rec, const double* x,
                         double* out, std::size_t count);
ResidualTerms fd_residual_scalar(const double* z, const double* phi,
                                 std::size_t count, double h,
                                 const ResidualCoeffs& c);
void numerov_coeffs_scalar(const double* g, const double* w, double E,
                           double h, double* lhs, double* mid,
                           std::size_t count);
#if defined(PDMORSE_HAVE_AVX2)
void jacobi_batch_avx2(const JacobiRecurrence& rec, const double* x,
                       double* out, std::size_t count);
ResidualTerms fd_residual_avx2(const double* z, const double* phi,
                               std::size_t count, double h,
                               const ResidualCoeffs& c);
void numerov_coeffs_avx2(const double* g, const double* w, double E, double h,
                         double* lhs, double* mid, std::size_t count);
#endif
}  // namespace detail

}  // namespace pdm::kernels
