#pragma once

#include "kissbound/polynomial.hpp"

namespace kissbound {

/// Problem shape shared by the matrix builders: Y_k and S_k have size d - k + 1.
struct SdpShape {
  int n = 3;
  int d = 1;
  Rational cos_theta{1, 2};

  void validate() const;
};

/// Jacobi polynomial of degree k with parameters ((n-3)/2, (n-3)/2),
/// normalized to 1 at u = 1. Univariate in u. Requires n >= 3.
Polynomial jacobi(int k, int n);

/// Same family but also accepting n = 2, the Chebyshev limit (-1/2, -1/2)
/// reached by the kernel Q_k^{n-1} when n = 3.
Polynomial jacobi_extended(int k, int n);

/// Q_k^{n-1}(u, v, t) = ((1-u^2)(1-v^2))^{k/2} P_k^{n-1}((t - uv) / sqrt((1-u^2)(1-v^2))),
/// expanded into an honest polynomial. Requires n >= 3.
Polynomial q_kernel(int k, int n);

/// (Y_k^n)_{ij} = P_i^{n+2k}(u) P_j^{n+2k}(v) Q_k^{n-1}(u, v, t), 0 <= i, j <= d - k.
PolyMatrix y_matrix(int k, const SdpShape& shape);

/// S_3-symmetrization of y_matrix(k, shape).
PolyMatrix s_matrix(int k, const SdpShape& shape);

}  // namespace kissbound
