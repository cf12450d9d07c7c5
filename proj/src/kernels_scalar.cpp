// Reference kernels. Built with -ffp-contract=off so results do not depend
// on whether the compiler fuses multiply-adds.

#include <algorithm>
#include <cmath>

#include "pdmorse/kernels.hpp"

namespace pdm::kernels::detail {

void jacobi_batch_scalar(const JacobiRecurrence& rec, const double* x,
                         double* out, std::size_t count) {
  const double half_sum = 0.5 * (rec.p + rec.q + 2.0);
  const double half_diff = 0.5 * (rec.p - rec.q);
  for (std::size_t i = 0; i < count; ++i) {
    if (rec.n == 0) {
      out[i] = 1.0;
      continue;
    }
    double prev = 1.0;
    double cur = half_sum * x[i] + half_diff;
    for (int k = 0; k + 1 < rec.n; ++k) {
      const double next = (rec.c0[k] + rec.cx[k] * x[i]) * cur - rec.cm[k] * prev;
      prev = cur;
      cur = next;
    }
    out[i] = cur;
  }
}

ResidualTerms fd_residual_scalar(const double* z, const double* phi,
                                 std::size_t count, double h,
                                 const ResidualCoeffs& c) {
  ResidualTerms r;
  if (count < 5) return r;
  const double inv12h = 1.0 / (12.0 * h);
  const double inv12h2 = 1.0 / (12.0 * h * h);
  for (std::size_t i = 2; i + 2 < count; ++i) {
    const double d1 = (-phi[i + 2] + 8.0 * phi[i + 1] - 8.0 * phi[i - 1] + phi[i - 2]) * inv12h;
    const double d2 = (-phi[i + 2] + 16.0 * phi[i + 1] - 30.0 * phi[i] +
                       16.0 * phi[i - 1] - phi[i - 2]) * inv12h2;
    const double zi = z[i];
    const double sig = zi * (1.0 - c.eta * zi);
    const double t1 = d2;
    const double t2 = d1 / zi;
    const double t3 = (-c.eps1 * zi * zi - c.eps2 * zi - c.eps) / (sig * sig) * phi[i];
    r.max_lhs = std::max(r.max_lhs, std::abs(t1 + t2 + t3));
    r.max_term = std::max({r.max_term, std::abs(t1), std::abs(t2), std::abs(t3)});
  }
  return r;
}

void numerov_coeffs_scalar(const double* g, const double* w, double E,
                           double h, double* lhs, double* mid,
                           std::size_t count) {
  const double h2 = h * h / 12.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double f = g[i] - E * w[i];
    lhs[i] = 1.0 - h2 * f;
    mid[i] = 2.0 * (1.0 + 5.0 * h2 * f);
  }
}

}  // namespace pdm::kernels::detail
