#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "phsusy/errors.hpp"
#include "phsusy/fock.hpp"
#include "phsusy/grassmann.hpp"
#include "phsusy/linalg.hpp"

namespace phsusy {

// Truncated boson coherent column: c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
inline VecX coherent_boson(cplx alpha, int n_max) {
  VecX c(n_max);
  cplx t = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < n_max; ++n) {
    c(n) = t;
    t *= alpha / std::sqrt(double(n + 1));
  }
  return c;
}

// Poisson upper tail sum_{k >= n} e^{-lam} lam^k / k!  — the coherent weight
// falling outside an n-level truncation at intensity lam = |alpha|^2.
inline double coherent_tail_mass(double lam, int n) {
  if (lam <= 0.0) return 0.0;
  double term = std::exp(-lam + n * std::log(lam) - std::lgamma(double(n) + 1.0));
  double sum = 0.0;
  for (int k = n; k < n + 200000; ++k) {
    sum += term;
    term *= lam / double(k + 1);
    if (term < 1e-18 * (sum + 1e-300) && k > int(lam)) break;
  }
  return sum;
}

// Poisson lower tail sum_{k <= n} e^{-lam} lam^k / k!, summed upward so tiny
// results keep full relative accuracy (no 1 - (1 - small) cancellation).
inline double poisson_lower_cdf(double lam, int n) {
  if (lam <= 0.0) return 1.0;
  double term = std::exp(-lam);
  double sum = 0.0;
  for (int k = 0;; ++k) {
    sum += term;
    if (k == n) break;
    term *= lam / double(k + 1);
  }
  return sum;
}

// Amplitudes whose coherent weight does not fit the truncation are rejected:
// every downstream residual would then measure the cutoff, not the algebra.
inline void require_representable(cplx alpha, int n_max, double tol = 1e-14) {
  const double tail = coherent_tail_mass(std::norm(alpha), n_max);
  if (tail >= tol)
    throw DomainError("amplitude |alpha| = " + std::to_string(std::abs(alpha)) +
                      " is not representable at N_max = " + std::to_string(n_max) +
                      ": truncated coherent weight " + std::to_string(tail));
}

enum class Family { primary, dual };

// Closed-form supercoherent pair. With u_eps(alpha) the coherent combination
// of the eps-sector eigenstates, both families read
//   u0 * 1 + u1 * xi + (1/2) u0 * xi xi*
// built over psi states (primary, annihilated-by-B family) or phi states
// (dual family).
struct SuperCoherent {
  cplx alpha{0.0, 0.0};
  GrassmannElement<VecX> ket;
  GrassmannElement<VecX> dual_ket;
};

inline GrassmannElement<VecX> closed_form_family(const SuperSpace& s, cplx alpha, Family fam) {
  const VecX coh = coherent_boson(alpha, s.N_max);
  const Mat2& rho_side = fam == Family::primary ? s.metric.rho_inv : s.metric.rho;
  const Eigen::Vector2d f0 = rho_side * s.U.col(0);
  const Eigen::Vector2d f1 = rho_side * s.U.col(1);
  const VecX u0 = kron(MatX(coh), MatX(f0.cast<cplx>()));
  const VecX u1 = kron(MatX(coh), MatX(f1.cast<cplx>()));
  GrassmannElement<VecX> e;
  e.c[m_one] = u0;
  e.c[m_xi] = u1;
  e.c[m_xixistar] = VecX(0.5 * u0);
  return e;
}

inline SuperCoherent closed_form_scs(const SuperSpace& s, cplx alpha) {
  SuperCoherent c;
  c.alpha = alpha;
  c.ket = closed_form_family(s, alpha, Family::primary);
  c.dual_ket = closed_form_family(s, alpha, Family::dual);
  return c;
}

// Displacement operator in factored product form:
//   e^{-|alpha|^2/2} (1 + xi xi*/2) e^{alpha a^dag} (1 + R xi) e^{-alpha* a} (1 + L xi*)
// where R raises and L lowers the fermion sector of the chosen family.
inline GrassmannElement<GradedOp> displacement_factored(const SuperSpace& s, cplx alpha,
                                                        Family fam = Family::primary) {
  const Eigen::Index d = s.dim();
  const MatX ident = MatX::Identity(d, d);
  const MatX& raiser = fam == Family::primary ? s.B_sharp : s.B_dag_dual;
  const MatX& lower = fam == Family::primary ? s.B : s.B_tilde;

  GrassmannElement<GradedOp> pre;
  const double p0 = std::exp(-0.5 * std::norm(alpha));
  pre.c[m_one] = GradedOp{MatX(p0 * ident), 0};
  pre.c[m_xixistar] = GradedOp{MatX(0.5 * p0 * ident), 0};

  const auto e_up = gone(GradedOp{expm_nilpotent(MatX(alpha * s.a_dag)), 0});
  const auto e_dn = gone(GradedOp{expm_nilpotent(MatX(-std::conj(alpha) * s.a)), 0});

  GrassmannElement<GradedOp> f_up = gone(GradedOp{ident, 0});
  f_up.c[m_xi] = GradedOp{raiser, 1};
  GrassmannElement<GradedOp> f_dn = gone(GradedOp{ident, 0});
  f_dn.c[m_xistar] = GradedOp{lower, 1};

  return gmul(gmul(gmul(gmul(pre, e_up), f_up), e_dn), f_dn);
}

// Displacement generator X = (alpha a^dag - alpha* a) * 1 + R xi + L xi*;
// sign = -1 yields the inverse exponential directly (X is anti-self-adjoint
// under the metric-twisted conjugation, so e^{-X} is the twisted adjoint).
inline GrassmannElement<GradedOp> displacement_generator(const SuperSpace& s, cplx alpha,
                                                         Family fam = Family::primary,
                                                         int sign = 1) {
  const MatX& raiser = fam == Family::primary ? s.B_sharp : s.B_dag_dual;
  const MatX& lower = fam == Family::primary ? s.B : s.B_tilde;
  const double sg = double(sign);
  GrassmannElement<GradedOp> x;
  x.c[m_one] = GradedOp{MatX(sg * (alpha * s.a_dag - std::conj(alpha) * s.a)), 0};
  x.c[m_xi] = GradedOp{MatX(sg * raiser), 1};
  x.c[m_xistar] = GradedOp{MatX(sg * lower), 1};
  return gexp_even(x);
}

// Orbit state: displacement applied to the (n=0, eps=0) reference state of the
// matching family.
inline GrassmannElement<VecX> orbit_family(const SuperSpace& s, cplx alpha, Family fam) {
  const auto d = displacement_factored(s, alpha, fam);
  const VecX& ref = fam == Family::primary ? s.psi[0] : s.phi[0];
  return gmul(d, gone(ref));
}

inline double gdiff(const GrassmannElement<VecX>& a, const GrassmannElement<VecX>& b) {
  return gmax_abs(a - b);
}

// Difference excluding the top boson level. The boson lowering relation holds
// identically on the retained levels below the cutoff edge; the edge component
// itself differs by the amplitude times the top retained coefficient no matter
// how fine the truncation is, so including it would measure the cutoff, not
// the algebra.
inline double gdiff_bulk(const GrassmannElement<VecX>& a, const GrassmannElement<VecX>& b) {
  const auto d = a - b;
  double worst = 0.0;
  for (int m = 0; m < 4; ++m) {
    if (!d.has(m)) continue;
    const VecX& v = d.at(m);
    if (v.size() <= 2) continue;
    worst = std::max(worst, max_abs(MatX(v.head(v.size() - 2))));
  }
  return worst;
}

// Closed form with the displacement-orbit cross-check.
inline SuperCoherent build_scs(const SuperSpace& s, cplx alpha, double tol = 1e-10) {
  require_representable(alpha, s.N_max);
  SuperCoherent c = closed_form_scs(s, alpha);
  const double d1 = gdiff(c.ket, orbit_family(s, alpha, Family::primary));
  const double d2 = gdiff(c.dual_ket, orbit_family(s, alpha, Family::dual));
  if (d1 > tol || d2 > tol)
    throw ConsistencyError("supercoherent closed form disagrees with displacement orbit: " +
                           std::to_string(std::max(d1, d2)));
  return c;
}

// The four defining eigenrelations, as max-abs residuals.
inline std::map<std::string, double> eigenrelation_residuals(const SuperSpace& s,
                                                             const SuperCoherent& c) {
  auto apply = [](const MatX& op, int parity, const GrassmannElement<VecX>& v) {
    return gmul(gone(GradedOp{op, parity}), v);
  };
  const auto xi = gmono(m_xi, cplx(1.0));
  const auto al = gone(c.alpha);
  std::map<std::string, double> r;
  r["a_eigen_primary"] = gdiff_bulk(apply(s.a, 0, c.ket), gmul(al, c.ket));
  r["B_eigen_primary"] = gdiff(apply(s.B, 1, c.ket), gmul(xi, c.ket));
  r["a_eigen_dual"] = gdiff_bulk(apply(s.a, 0, c.dual_ket), gmul(al, c.dual_ket));
  r["Btilde_eigen_dual"] = gdiff(apply(s.B_tilde, 1, c.dual_ket), gmul(xi, c.dual_ket));
  return r;
}

// Graded overlap of the dual bra with the primary ket; equals the unit element
// exactly when the two families are biorthonormally matched.
inline GrassmannElement<cplx> bi_normalization(const SuperCoherent& c) {
  return gmul(gadjoint(c.dual_ket), c.ket);
}

inline double bi_normalization_residual(const SuperCoherent& c) {
  return gmax_abs(bi_normalization(c) - gone(cplx(1.0)));
}

// Deviation of an operator-valued element from the unit element, optionally
// compressed to the leading boson levels (rows and columns).
inline double gunit_defect(const GrassmannElement<GradedOp>& x, int n_levels = -1) {
  if (!x.has(m_one)) throw ConsistencyError("gunit_defect: element has no monomial-1 part");
  const Eigen::Index d = x.at(m_one).mat.rows();
  const Eigen::Index k = n_levels < 0 ? d : std::min<Eigen::Index>(d, 2 * n_levels);
  double worst = 0.0;
  for (int m = 0; m < 4; ++m) {
    if (!x.has(m)) continue;
    MatX blk = x.at(m).mat.topLeftCorner(k, k);
    if (m == m_one) blk -= MatX::Identity(k, k);
    worst = std::max(worst, max_abs(blk));
  }
  return worst;
}

// Max-abs difference of two operator elements on the block spanned by the
// leading boson levels (rows and columns). Away from the cutoff edge both
// displacement constructions approximate the same untruncated operator, so
// the block difference isolates genuine disagreement from edge effects.
inline double gblock_diff(const GrassmannElement<GradedOp>& x, const GrassmannElement<GradedOp>& y,
                          int n_levels = -1) {
  Eigen::Index d = 0;
  for (int m = 0; m < 4; ++m) {
    if (x.has(m)) d = x.at(m).mat.rows();
    if (y.has(m)) d = y.at(m).mat.rows();
  }
  const Eigen::Index k = n_levels < 0 ? d : std::min<Eigen::Index>(d, 2 * n_levels);
  double worst = 0.0;
  for (int m = 0; m < 4; ++m) {
    MatX a = x.has(m) ? MatX(x.at(m).mat.topLeftCorner(k, k)) : MatX(MatX::Zero(k, k));
    MatX b = y.has(m) ? MatX(y.at(m).mat.topLeftCorner(k, k)) : MatX(MatX::Zero(k, k));
    worst = std::max(worst, max_abs(MatX(a - b)));
  }
  return worst;
}

// Largest level count L (at least 2) such that the truncated factored
// displacement is trustworthy on the leading L-level block. The tower cut off
// above the block feeds back with weight roughly x^g / (g!)^2, where
// g = n_max - L is the guard band and x = (L-1)|alpha|^2 the series argument
// at the block edge; L is chosen so that this weight stays below `bound`.
inline int factored_safe_levels(int n_max, cplx alpha, double bound = 1e-16) {
  const double a2 = std::norm(alpha);
  const double log_bound = std::log(bound);
  for (int levels = n_max - 1; levels >= 2; --levels) {
    const int g = n_max - levels;
    const double x = (levels - 1) * a2;
    if (x == 0.0) return levels;
    const double log_defect = g * std::log(x) - 2.0 * std::lgamma(double(g) + 1.0);
    if (log_defect <= log_bound) return levels;
  }
  return 2;
}

struct QuadratureSpec {
  double radius = 6.0;
  int n_radial = 80;
  int n_angular = 64;
};

inline QuadratureSpec doubled(const QuadratureSpec& q) {
  return QuadratureSpec{q.radius, 2 * q.n_radial, 2 * q.n_angular};
}

// Phase-space quadrature of the Berezin-integrated outer product
// |alpha, xi><bra(alpha, xi)| over |alpha| < radius. Polar grid:
// Gauss-Legendre radially, uniform angles (exact for the e^{i(n-m)theta}
// dependence whenever |n - m| < n_angular). Accumulation uses the fixed
// pairwise tree, so results are byte-reproducible.
inline MatX resolution_quadrature(const SuperSpace& s, const QuadratureSpec& q, Family bra_fam) {
  if (q.n_radial < 2 || q.n_angular < 2 || q.radius <= 0.0)
    throw ConfigError("quadrature settings require radius > 0 and at least 2 nodes per direction");
  std::vector<double> xs, ws;
  gauss_legendre(q.n_radial, xs, ws);
  const std::size_t m = std::size_t(q.n_angular);
  const double radius = q.radius;

  std::function<MatX(std::size_t)> leaf = [&](std::size_t idx) -> MatX {
    const std::size_t j = idx / m, k = idx % m;
    const double r = 0.5 * radius * (xs[j] + 1.0);
    const double th = 2.0 * M_PI * double(k) / double(m);
    const cplx alpha = std::polar(r, th);
    const double w = radius * ws[j] * r / double(m);
    const auto ket = closed_form_family(s, alpha, Family::primary);
    const auto bra = gadjoint(closed_form_family(s, alpha, bra_fam));
    const auto vol = berezin(gmul(ket, bra));
    if (!vol) throw ConsistencyError("resolution integrand lost its Grassmann volume component");
    return MatX(w * vol->mat);
  };
  std::function<MatX(const MatX&, const MatX&)> join = [](const MatX& a, const MatX& b) {
    return MatX(a + b);
  };
  return pairwise_reduce<MatX>(0, std::size_t(q.n_radial) * m, leaf, join);
}

struct ResolutionReport {
  double residual_cross = 0.0;    // dual-paired integral vs identity
  double residual_same = 0.0;     // same-family integral vs identity
  double top_level_deficit = 0.0; // analytic radial-truncation deficit at level N_max-1
};

inline ResolutionReport resolve_identity(const SuperSpace& s, const QuadratureSpec& q) {
  const MatX ident = MatX::Identity(s.dim(), s.dim());
  ResolutionReport r;
  r.residual_cross = max_abs(MatX(resolution_quadrature(s, q, Family::dual) - ident));
  r.residual_same = max_abs(MatX(resolution_quadrature(s, q, Family::primary) - ident));
  r.top_level_deficit = poisson_lower_cdf(q.radius * q.radius, s.N_max - 1);
  return r;
}

}  // namespace phsusy
