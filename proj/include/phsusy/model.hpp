#pragma once

#include <cmath>
#include <string>

#include "phsusy/errors.hpp"
#include "phsusy/linalg.hpp"

namespace phsusy {

// Model triple (omega, alpha, beta). alpha == beta is Hermitian and only
// permitted when explicitly requested via hermitian_limit.
struct ModelParams {
  double omega = 2.0;
  double alpha = 1.0;
  double beta = 0.5;
  bool hermitian_limit = false;
};

inline double spectrum_discriminant(const ModelParams& p) {
  return p.omega * p.omega + 4.0 * p.alpha * p.beta;
}

inline bool is_valid(const ModelParams& p) {
  if (p.alpha == p.beta && !p.hermitian_limit) return false;
  return spectrum_discriminant(p) > 0.0;
}

inline void require_valid(const ModelParams& p) {
  if (p.alpha == p.beta && !p.hermitian_limit)
    throw ValidityError("alpha == beta is the Hermitian limit; set hermitian_limit to allow it");
  if (spectrum_discriminant(p) <= 0.0)
    throw ValidityError("real-spectrum condition violated: omega^2 + 4*alpha*beta = " +
                        std::to_string(spectrum_discriminant(p)) + " <= 0");
}

inline Mat2 su2_j_plus() { return (Mat2() << 0, 1, 0, 0).finished(); }
inline Mat2 su2_j_minus() { return (Mat2() << 0, 0, 1, 0).finished(); }
inline Mat2 su2_j3() { return (Mat2() << 0.5, 0, 0, -0.5).finished(); }

// H = omega*J3 + alpha*J- + beta*J+ = [[omega/2, beta], [alpha, -omega/2]]
inline Mat2 build_H(const ModelParams& p) {
  require_valid(p);
  return (Mat2() << 0.5 * p.omega, p.beta, p.alpha, -0.5 * p.omega).finished();
}

inline double omega_cap(const ModelParams& p) {
  require_valid(p);
  return std::sqrt(spectrum_discriminant(p));
}

}  // namespace phsusy
