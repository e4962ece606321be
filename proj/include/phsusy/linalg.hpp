#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace phsusy {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2d;
using Mat2c = Eigen::Matrix2cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline double max_abs(const Eigen::Ref<const MatX>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const MatX& m) {
  return max_abs(MatX(m - m.adjoint()));
}

// sinh(t)/t, stable through t = 0.
inline double sinhc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 + t2 / 6.0 * (1.0 + t2 / 20.0);
  }
  return std::sinh(t) / t;
}

inline MatX kron(const MatX& a, const MatX& b) {
  MatX out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Matrix exponential of an anti-Hermitian matrix via the spectral form of iM;
// the result is unitary to rounding regardless of the norm of M.
inline MatX expm_antihermitian(const MatX& m) {
  Eigen::SelfAdjointEigenSolver<MatX> es(MatX(cplx(0.0, 1.0) * m));
  VecX phases = (cplx(0.0, -1.0) * es.eigenvalues().array().cast<cplx>()).exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Terminating Taylor series; exact (no truncation) for nilpotent matrices such
// as the hard-cutoff ladder operators, where the series stops by itself.
inline MatX expm_nilpotent(const MatX& m) {
  MatX acc = MatX::Identity(m.rows(), m.cols());
  MatX term = acc;
  for (int k = 1; k <= m.rows() + 2; ++k) {
    term = MatX(term * m) / double(k);
    if (max_abs(term) == 0.0) break;
    acc += term;
  }
  return acc;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

// Fixed-shape pairwise reduction: the association tree depends only on the
// index range, so accumulated sums are bit-identical however work is split.
template <typename T>
T pairwise_reduce(std::size_t lo, std::size_t hi, const std::function<T(std::size_t)>& leaf,
                  const std::function<T(const T&, const T&)>& join) {
  if (hi - lo == 1) return leaf(lo);
  const std::size_t mid = lo + (hi - lo) / 2;
  T left = pairwise_reduce<T>(lo, mid, leaf, join);
  T right = pairwise_reduce<T>(mid, hi, leaf, join);
  return join(left, right);
}

}  // namespace phsusy
