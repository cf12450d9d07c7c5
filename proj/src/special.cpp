#include "pdmorse/special.hpp"

#include <cmath>
#include <span>
#include <sstream>

#include "pdmorse/errors.hpp"
#include "pdmorse/kernels.hpp"

namespace pdm {

double jacobi(int n, double p, double q, double x) {
  const auto rec = kernels::jacobi_recurrence(n, p, q);
  double out = 0.0;
  kernels::detail::jacobi_batch_scalar(rec, &x, &out, 1);
  if (!std::isfinite(out)) {
    std::ostringstream os;
    os << "Jacobi polynomial overflow (n=" << n << ", p=" << p << ", q=" << q << ")";
    throw std::overflow_error(os.str());
  }
  return out;
}

double laguerre(int n, double alpha, double x) {
  if (n < 0) raise(ErrorKind::ContractViolation, "Laguerre degree must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace pdm
