#pragma once

#include <cmath>
#include <string>

#include "phsusy/errors.hpp"
#include "phsusy/linalg.hpp"
#include "phsusy/model.hpp"

namespace phsusy {

// Argument of the arctanh in the metric relation: (alpha-beta)*sqrt(1+z^2) / (alpha+beta-omega*z).
inline double metric_arg(const ModelParams& p, double z) {
  const double den = p.alpha + p.beta - p.omega * z;
  if (den == 0.0)
    throw DegenerateError("alpha + beta - omega*z vanishes at z = " + std::to_string(z));
  return (p.alpha - p.beta) * std::sqrt(1.0 + z * z) / den;
}

inline double epsilon_of(const ModelParams& p, double z) {
  require_valid(p);
  const double g = metric_arg(p, z);
  if (std::abs(g) >= 1.0)
    throw DomainError("no real metric at z = " + std::to_string(z) +
                      ": arctanh argument = " + std::to_string(g));
  return std::atanh(g) / (2.0 * std::sqrt(1.0 + z * z));
}

struct MetricData {
  double z = 0.0;
  double epsilon = 0.0;
  double theta = 0.0;
  Mat2 rho = Mat2::Identity();
  Mat2 rho_inv = Mat2::Identity();
  Mat2 eta() const { return rho * rho; }
  Mat2 eta_inv() const { return rho_inv * rho_inv; }
};

namespace detail {

// cosh(theta)*I + eps*sinhc(theta)*[[1,z],[z,-1]]; eps -> -eps gives the exact
// group inverse, so rho_inv never goes through a numerical matrix inversion.
inline Mat2 rho_series(double eps, double z) {
  if (eps == 0.0) return Mat2::Identity();
  const double theta = eps * std::sqrt(1.0 + z * z);
  const double c = std::cosh(theta);
  const double s = eps * sinhc(theta);
  return (Mat2() << c + s, s * z, s * z, c - s).finished();
}

}  // namespace detail

inline MetricData build_rho(const ModelParams& p, double z) {
  MetricData m;
  m.z = z;
  m.epsilon = epsilon_of(p, z);
  m.theta = m.epsilon * std::sqrt(1.0 + z * z);
  m.rho = detail::rho_series(m.epsilon, z);
  m.rho_inv = detail::rho_series(-m.epsilon, z);
  return m;
}

// Independent power form: rho = K^{M / (4*sqrt(1+z^2))} with M = 2*J3 + z*(J- + J+)
// and K = (1+g)/(1-g), evaluated through a symmetric eigensolve rather than
// cosh/sinh, so it cross-checks the series form through a different pipeline.
inline Mat2 build_rho_power(const ModelParams& p, double z) {
  require_valid(p);
  const double g = metric_arg(p, z);
  if (std::abs(g) >= 1.0)
    throw DomainError("no real metric at z = " + std::to_string(z) +
                      ": arctanh argument = " + std::to_string(g));
  if (g == 0.0) return Mat2::Identity();
  const double k = (1.0 + g) / (1.0 - g);
  const double c = std::log(k) / (4.0 * std::sqrt(1.0 + z * z));
  Mat2 m;
  m << 1.0, z, z, -1.0;
  Eigen::SelfAdjointEigenSolver<Mat2> es(m);
  Eigen::Vector2d ev = (c * es.eigenvalues().array()).exp();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

inline double rho_min_eigenvalue(const Mat2& rho) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(rho);
  return es.eigenvalues().minCoeff();
}

}  // namespace phsusy
