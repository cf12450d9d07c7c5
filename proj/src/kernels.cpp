#include "pdmorse/kernels.hpp"

#include <stdexcept>

#include "pdmorse/errors.hpp"

namespace pdm::kernels {

std::string_view to_string(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool isa_supported(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(PDMORSE_HAVE_AVX2)
  static const bool avx2 = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return avx2;
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

JacobiRecurrence jacobi_recurrence(int n, double p, double q) {
  if (n < 0) raise(ErrorKind::ContractViolation, "Jacobi degree must be >= 0");
  JacobiRecurrence rec;
  rec.n = n;
  rec.p = p;
  rec.q = q;
  const int steps = n > 1 ? n - 1 : 0;
  rec.c0.resize(steps);
  rec.cx.resize(steps);
  rec.cm.resize(steps);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + p + q;
    const double a1 = 2.0 * (k + 1) * (k + p + q + 1.0) * s;
    if (a1 == 0.0) {
      raise(ErrorKind::DomainUnsupported, "degenerate Jacobi parameters (p + q is a negative integer)");
    }
    const double a2 = (s + 1.0) * (p * p - q * q);
    const double a3 = s * (s + 1.0) * (s + 2.0);
    const double a4 = 2.0 * (k + p) * (k + q) * (s + 2.0);
    rec.c0[k - 1] = a2 / a1;
    rec.cx[k - 1] = a3 / a1;
    rec.cm[k - 1] = a4 / a1;
  }
  return rec;
}

namespace {

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel input and output sizes differ");
}

Isa usable(Isa isa) { return isa_supported(isa) ? isa : Isa::Scalar; }

}  // namespace

void jacobi_batch(Isa isa, const JacobiRecurrence& rec,
                  std::span<const double> x, std::span<double> out) {
  check_sizes(x.size(), out.size());
#if defined(PDMORSE_HAVE_AVX2)
  if (usable(isa) == Isa::Avx2) {
    detail::jacobi_batch_avx2(rec, x.data(), out.data(), x.size());
    return;
  }
#endif
  (void)isa;
  detail::jacobi_batch_scalar(rec, x.data(), out.data(), x.size());
}

void jacobi_batch(const JacobiRecurrence& rec, std::span<const double> x,
                  std::span<double> out) {
  jacobi_batch(active_isa(), rec, x, out);
}

ResidualTerms fd_residual(Isa isa, std::span<const double> z,
                          std::span<const double> phi, double h,
                          const ResidualCoeffs& c) {
  check_sizes(z.size(), phi.size());
#if defined(PDMORSE_HAVE_AVX2)
  if (usable(isa) == Isa::Avx2) {
    return detail::fd_residual_avx2(z.data(), phi.data(), z.size(), h, c);
  }
#endif
  (void)isa;
  return detail::fd_residual_scalar(z.data(), phi.data(), z.size(), h, c);
}

ResidualTerms fd_residual(std::span<const double> z, std::span<const double> phi,
                          double h, const ResidualCoeffs& c) {
  return fd_residual(active_isa(), z, phi, h, c);
}

void numerov_coeffs(Isa isa, std::span<const double> g,
                    std::span<const double> w, double E, double h,
                    std::span<double> lhs, std::span<double> mid) {
  check_sizes(g.size(), w.size());
  check_sizes(g.size(), lhs.size());
  check_sizes(g.size(), mid.size());
#if defined(PDMORSE_HAVE_AVX2)
  if (usable(isa) == Isa::Avx2) {
    detail::numerov_coeffs_avx2(g.data(), w.data(), E, h, lhs.data(), mid.data(), g.size());
    return;
  }
#endif
  (void)isa;
  detail::numerov_coeffs_scalar(g.data(), w.data(), E, h, lhs.data(), mid.data(), g.size());
}

void numerov_coeffs(std::span<const double> g, std::span<const double> w,
                    double E, double h, std::span<double> lhs,
                    std::span<double> mid) {
  numerov_coeffs(active_isa(), g, w, E, h, lhs, mid);
}

}  // namespace pdm::kernels
