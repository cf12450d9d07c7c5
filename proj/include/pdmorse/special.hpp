#pragma once

namespace pdm {

/// Jacobi polynomial P_n^{(p,q)}(x) by the three-term recurrence. p and q
/// need not satisfy the orthogonality constraints p, q > -1.
double jacobi(int n, double p, double q, double x);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x) by recurrence.
double laguerre(int n, double alpha, double x);

}  // namespace pdm
