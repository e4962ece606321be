#pragma once

#include <cmath>
#include <string>

#include "phsusy/errors.hpp"
#include "phsusy/linalg.hpp"
#include "phsusy/metric.hpp"
#include "phsusy/model.hpp"

namespace phsusy {

struct DerivedScalars {
  double Omega = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  double tau = 0.0;
};

// Closed-form (delta, lambda). The radicand uses the principal square root and
// the denominator keeps its sign; any branch defect is caught by the
// similarity cross-check in build_h rather than patched here.
inline DerivedScalars derived_scalars(const ModelParams& p, double z) {
  DerivedScalars d;
  d.Omega = omega_cap(p);
  const double g = metric_arg(p, z);
  if (std::abs(g) >= 1.0)
    throw DomainError("no real metric at z = " + std::to_string(z) +
                      ": arctanh argument = " + std::to_string(g));
  const double den = p.alpha + p.beta - p.omega * z;
  const double s = std::sqrt(1.0 - g * g);
  const double z2 = 1.0 + z * z;
  d.delta = (p.omega + (p.alpha + p.beta) * z - z * den * s) / z2;
  d.lambda = (p.omega * z + (p.alpha + p.beta) * z * z + den * s) / (2.0 * z2);
  d.tau = (p.omega + (p.alpha + p.beta) * z) / d.Omega;
  return d;
}

inline Mat2 h_from_scalars(const DerivedScalars& d) {
  return (Mat2() << 0.5 * d.delta, d.lambda, d.lambda, -0.5 * d.delta).finished();
}

inline Mat2 h_by_similarity(const ModelParams& p, const MetricData& m) {
  const Mat2 H = build_H(p);
  return Mat2(m.rho * H * m.rho_inv);
}

struct HermitianEquivalent {
  Mat2 h = Mat2::Zero();
  DerivedScalars scalars;
};

// Builds h both ways and insists they agree; the closed (delta, lambda) form
// is returned, the similarity product is the ground truth for the check.
inline HermitianEquivalent build_h(const ModelParams& p, double z, double tol = 1e-10) {
  HermitianEquivalent out;
  out.scalars = derived_scalars(p, z);
  out.h = h_from_scalars(out.scalars);
  const MetricData m = build_rho(p, z);
  const Mat2 hs = h_by_similarity(p, m);
  const double diff = (out.h - hs).cwiseAbs().maxCoeff();
  if (diff > tol)
    throw ConsistencyError("closed-form h disagrees with rho*H*rho^-1 by " +
                           std::to_string(diff));
  return out;
}

}  // namespace phsusy
