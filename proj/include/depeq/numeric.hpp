#pragma once

#include <complex>
#include <vector>

#include "depeq/poly.hpp"
#include "depeq/rational.hpp"

namespace depeq {

std::complex<double> eval_complex(const MultiPoly& p,
                                  const std::vector<std::complex<double>>& pt);

// |p(pt)| relative to the sum of absolute term values; a backward-error
// style residual that is scale free in both p and pt.
double rel_residual(const MultiPoly& p,
                    const std::vector<std::complex<double>>& pt);

struct RatKernel {
  int rank = 0;
  std::vector<std::vector<Rat>> basis;
};

// Exact kernel of an m x n rational matrix via Gaussian elimination.
RatKernel rat_kernel(const std::vector<std::vector<Rat>>& m);

// Complex roots of c[0] + c[1] t + ... + c[d] t^d via the companion matrix.
// Leading coefficients below rel_trim * max|c| are trimmed first.
std::vector<std::complex<double>> poly_roots(
    const std::vector<std::complex<double>>& coeffs, double rel_trim = 1e-12);

// Rank with singular values below rel_tol * largest entry treated as zero.
int numeric_rank(const std::vector<std::vector<std::complex<double>>>& m,
                 double rel_tol = 1e-10);

struct DoubleKernel {
  int rank = 0;
  std::vector<std::vector<double>> basis;
  double threshold = 0;
};

DoubleKernel kernel_double(const std::vector<std::vector<double>>& m,
                           double rel_tol = 1e-10);

}  // namespace depeq
