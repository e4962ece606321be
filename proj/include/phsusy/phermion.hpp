#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "phsusy/errors.hpp"
#include "phsusy/hermitian.hpp"
#include "phsusy/linalg.hpp"
#include "phsusy/metric.hpp"
#include "phsusy/model.hpp"

namespace phsusy {

// Real traceless 2x2 ladder matrix [[p, q], [r, -p]].
struct Traceless {
  double p = 0.0, q = 0.0, r = 0.0;
  Mat2 mat() const { return (Mat2() << p, q, r, -p).finished(); }
  Mat2 mat_transposed() const { return (Mat2() << p, r, q, -p).finished(); }
};

namespace detail {

inline double step_ulps(double x, int k) {
  double y = x;
  const double dir = k > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
  for (int i = 0; i < std::abs(k); ++i) y = std::nextafter(y, dir);
  return y;
}

// Search for a nearby representative with fl(p'*p') == -fl(q'*r') so that the
// matrix square vanishes identically under plain IEEE products. Only the
// smaller off-diagonal entry is moved (dividing by the larger keeps the
// correction at rounding level); the diagonal may shift by a few ulps to make
// the rounding of the product land exactly.
inline std::optional<Traceless> snap_direction(double p, double q, double r, bool adjust_q) {
  const double big = adjust_q ? r : q;
  if (big == 0.0) return std::nullopt;
  for (int ap = 0; ap <= 4; ++ap) {
    for (int spi = 0; spi < (ap == 0 ? 1 : 2); ++spi) {
      const int sp = spi == 0 ? ap : -ap;
      const double pp = step_ulps(p, sp);
      const double t = pp * pp;
      const double x0 = -t / big;
      for (int ax = 0; ax <= 16; ++ax) {
        for (int sxi = 0; sxi < (ax == 0 ? 1 : 2); ++sxi) {
          const int sx = sxi == 0 ? ax : -ax;
          const double xx = step_ulps(x0, sx);
          if (xx * big == -t) {
            return adjust_q ? Traceless{pp, xx, r} : Traceless{pp, q, xx};
          }
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<Traceless> snap_nilpotent(double p, double q, double r) {
  const bool prefer_q = std::abs(r) >= std::abs(q);
  auto hit = snap_direction(p, q, r, prefer_q);
  if (!hit) hit = snap_direction(p, q, r, !prefer_q);
  return hit;
}

// Snap + guard: the adjusted entries must stay within snap_budget of the raw
// values (relative to the matrix scale), else the inputs themselves were
// inconsistent and we refuse to gloss over it.
inline Traceless snapped_or_throw(double p, double q, double r, const char* label) {
  constexpr double snap_budget = 1e-13;
  if (p == 0.0 && q * r == 0.0) return Traceless{p, q, r};  // already exactly nilpotent
  auto hit = snap_nilpotent(p, q, r);
  const double scale = std::max({std::abs(p), std::abs(q), std::abs(r)});
  if (!hit)
    throw ConsistencyError(std::string(label) +
                           ": no exactly-nilpotent representative near the closed form");
  const double moved =
      std::max({std::abs(hit->p - p), std::abs(hit->q - q), std::abs(hit->r - r)});
  if (moved > snap_budget * scale)
    throw ConsistencyError(std::string(label) + ": closed-form entries are inconsistent (moved " +
                           std::to_string(moved) + " at scale " + std::to_string(scale) + ")");
  return *hit;
}

}  // namespace detail

// Fermion pair of the Hermitian equivalent:
//   b = (delta+Omega)/(2 Omega) J- + (delta-Omega)/(2 Omega) J+ - (2 lambda/Omega) J3.
// The off-diagonal entry that suffers cancellation (delta close to +-Omega when
// lambda is small) is rebuilt from p^2 = -q*r, which the displayed coefficients
// satisfy identically; the other one is taken verbatim.
struct LadderPair {
  Traceless lower_t;
  Mat2 lower = Mat2::Zero();
  Mat2 raiser = Mat2::Zero();
};

inline LadderPair build_b(const ModelParams& p, double z) {
  const DerivedScalars d = derived_scalars(p, z);
  const double pd = -d.lambda / d.Omega;
  double q, r;
  if (d.delta >= 0.0) {
    r = (d.delta + d.Omega) / (2.0 * d.Omega);
    q = -(pd * pd) / r;
  } else {
    q = (d.delta - d.Omega) / (2.0 * d.Omega);
    r = -(pd * pd) / q;
  }
  LadderPair out;
  out.lower_t = detail::snapped_or_throw(pd, q, r, "b");
  out.lower = out.lower_t.mat();
  out.raiser = out.lower_t.mat_transposed();  // real matrix: adjoint == transpose
  return out;
}

// Phermion pair B = rho^-1 b rho, B# = rho^-1 b† rho, each snapped to an
// exactly nilpotent representative. In the Hermitian limit (epsilon == 0) the
// matrices are copied bit-for-bit from b so that B == b holds exactly.
struct PhermionSet {
  LadderPair b;
  Mat2 B = Mat2::Zero();
  Mat2 B_sharp = Mat2::Zero();
  Mat2 B_tilde = Mat2::Zero();
  Mat2 B_dag_dual = Mat2::Zero();
};

namespace detail {

inline Mat2 snap_conjugated(const Mat2& left, const Mat2& m, const Mat2& right, const char* label) {
  const Mat2 raw = left * m * right;
  const Traceless t = snapped_or_throw(raw(0, 0), raw(0, 1), raw(1, 0), label);
  return t.mat();
}

}  // namespace detail

inline PhermionSet build_phermion(const ModelParams& p, double z) {
  PhermionSet set;
  set.b = build_b(p, z);
  const MetricData m = build_rho(p, z);
  if (m.epsilon == 0.0) {
    set.B = set.b.lower;
    set.B_sharp = set.b.raiser;
    set.B_tilde = set.b.lower;
    set.B_dag_dual = set.b.raiser;
    return set;
  }
  set.B = detail::snap_conjugated(m.rho_inv, set.b.lower, m.rho, "B");
  set.B_sharp = detail::snap_conjugated(m.rho_inv, set.b.raiser, m.rho, "B#");
  set.B_tilde = detail::snap_conjugated(m.rho, set.b.lower, m.rho_inv, "B~");
  set.B_dag_dual = detail::snap_conjugated(m.rho, set.b.raiser, m.rho_inv, "B†");
  return set;
}

// Decomposition M = c_minus J- + c_plus J+ + 2 c3 J3 of a traceless matrix.
struct Su2Coefficients {
  double c_minus = 0.0, c_plus = 0.0, c3 = 0.0;
};

inline Su2Coefficients coefficients_of(const Mat2& m, double trace_tol = 1e-12) {
  const double tr = m(0, 0) + m(1, 1);
  if (std::abs(tr) > trace_tol)
    throw ConsistencyError("matrix is not traceless: trace = " + std::to_string(tr));
  return Su2Coefficients{m(1, 0), m(0, 1), m(0, 0)};
}

// Displayed coefficient sextet for B (mu) and B# (nu), plus tau.
struct CoefficientSet {
  double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0;
  double nu1 = 0.0, nu2 = 0.0, nu3 = 0.0;
  double tau = 0.0;
};

inline CoefficientSet mu_nu(const ModelParams& p, double z, double tol = 1e-10) {
  const DerivedScalars d = derived_scalars(p, z);
  const MetricData m = build_rho(p, z);
  const double S = m.epsilon == 0.0 ? 0.0 : m.epsilon * sinhc(m.theta);
  const double C = std::cosh(m.theta);
  const double t = d.tau;
  const double z2 = z * z;
  CoefficientSet c;
  c.tau = t;
  c.mu1 = (d.delta + d.Omega) / (2.0 * d.Omega) + ((1.0 + t + z2) * S + (1.0 + t) * C) * S;
  c.mu2 = (d.delta - d.Omega) / (2.0 * d.Omega) - ((1.0 - t + z2) * S - (1.0 - t) * C) * S;
  c.mu3 = -d.lambda / d.Omega - (t * S + C) * z * S;
  c.nu1 = (d.delta - d.Omega) / (2.0 * d.Omega) - ((1.0 - t + z2) * S + (1.0 - t) * C) * S;
  c.nu2 = (d.delta + d.Omega) / (2.0 * d.Omega) + ((1.0 + t + z2) * S - (1.0 + t) * C) * S;
  c.nu3 = -d.lambda / d.Omega - (t * S - C) * z * S;

  // The displayed formulas are a transcription hazard; reconstruction against
  // the similarity route is the gate.
  const PhermionSet set = build_phermion(p, z);
  const Su2Coefficients bm = coefficients_of(set.B);
  const Su2Coefficients bs = coefficients_of(set.B_sharp);
  const double worst = std::max({std::abs(c.mu1 - bm.c_minus), std::abs(c.mu2 - bm.c_plus),
                                 std::abs(c.mu3 - bm.c3), std::abs(c.nu1 - bs.c_minus),
                                 std::abs(c.nu2 - bs.c_plus), std::abs(c.nu3 - bs.c3)});
  if (worst > tol)
    throw ConsistencyError("mu/nu reconstruction off by " + std::to_string(worst));
  return c;
}

}  // namespace phsusy
