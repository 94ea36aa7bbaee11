#include "depeq/numeric.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace depeq {

std::complex<double> eval_complex(const MultiPoly& p,
                                  const std::vector<std::complex<double>>& pt) {
  std::complex<double> acc = 0;
  for (const auto& [m, c] : p.terms()) {
    std::complex<double> t = rat_double(c);
    for (size_t v = 0; v < pt.size(); ++v)
      for (int k = 0; k < m.e[v]; ++k) t *= pt[v];
    acc += t;
  }
  return acc;
}

double rel_residual(const MultiPoly& p,
                    const std::vector<std::complex<double>>& pt) {
  std::complex<double> acc = 0;
  double mag = 0;
  for (const auto& [m, c] : p.terms()) {
    std::complex<double> t = rat_double(c);
    for (size_t v = 0; v < pt.size(); ++v)
      for (int k = 0; k < m.e[v]; ++k) t *= pt[v];
    acc += t;
    mag += std::abs(t);
  }
  if (mag == 0) return 0;
  return std::abs(acc) / mag;
}

RatKernel rat_kernel(const std::vector<std::vector<Rat>>& m) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  for (const auto& r : m)
    if (r.size() != cols) throw std::invalid_argument("rat_kernel: ragged matrix");
  std::vector<std::vector<Rat>> a = m;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    Rat inv = a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] /= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  RatKernel out;
  out.rank = static_cast<int>(r);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[c] = Rat(1);
    for (size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = -a[i][c];
    out.basis.push_back(std::move(v));
  }
  return out;
}

std::vector<std::complex<double>> poly_roots(
    const std::vector<std::complex<double>>& coeffs, double rel_trim) {
  double scale = 0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0) throw std::invalid_argument("poly_roots: zero polynomial");
  size_t deg = coeffs.size() - 1;
  while (deg > 0 && std::abs(coeffs[deg]) <= rel_trim * scale) --deg;
  if (deg == 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (size_t i = 0; i + 1 < deg; ++i) comp(i + 1, i) = 1.0;
  for (size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    roots.push_back(es.eigenvalues()[i]);
  return roots;
}

namespace {
Eigen::MatrixXcd to_eigen(const std::vector<std::vector<std::complex<double>>>& m) {
  Eigen::MatrixXcd a(m.size(), m.empty() ? 0 : m[0].size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) a(i, j) = m[i][j];
  return a;
}
}  // namespace

int numeric_rank(const std::vector<std::vector<std::complex<double>>>& m,
                 double rel_tol) {
  Eigen::MatrixXcd a = to_eigen(m);
  if (a.rows() == 0 || a.cols() == 0) return 0;
  double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rel_tol * scale) ++rank;
  return rank;
}

DoubleKernel kernel_double(const std::vector<std::vector<double>>& m,
                           double rel_tol) {
  Eigen::MatrixXd a(m.size(), m.empty() ? 0 : m[0].size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) a(i, j) = m[i][j];
  DoubleKernel out;
  if (a.cols() == 0) return out;
  double scale = a.rows() ? a.cwiseAbs().maxCoeff() : 0.0;
  out.threshold = rel_tol * (scale > 0 ? scale : 1.0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > out.threshold) ++r;
  out.rank = static_cast<int>(r);
  for (Eigen::Index j = r; j < a.cols(); ++j) {
    std::vector<double> v(a.cols());
    for (Eigen::Index i = 0; i < a.cols(); ++i) v[i] = svd.matrixV()(i, j);
    out.basis.push_back(std::move(v));
  }
  return out;
}

}  // namespace depeq
