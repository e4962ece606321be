#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "phsusy/errors.hpp"
#include "phsusy/grassmann.hpp"
#include "phsusy/hermitian.hpp"
#include "phsusy/linalg.hpp"
#include "phsusy/metric.hpp"
#include "phsusy/model.hpp"
#include "phsusy/phermion.hpp"

namespace phsusy {

// Basis layout: index = 2n + eps, boson-major; n < N_max, eps in {0,1}.
struct SuperBasisIndex {
  int n = 0;
  int eps = 0;
  int flat() const { return 2 * n + eps; }
};

// Operator kept in tensor-factored form scale * (bos x fer). Squaring stays
// factored, so a nilpotent fermion factor forces an identically-zero square —
// the dense 2Nx2N product would leave rounding dust instead.
struct KronOp {
  cplx scale{1.0, 0.0};
  MatX bos;
  Mat2c fer;
  int parity = 0;

  MatX dense() const { return kron(MatX(scale * bos), MatX(fer)); }

  KronOp squared() const {
    return KronOp{scale * scale, MatX(bos * bos), Mat2c(fer * fer), 0};
  }
};

// Orthonormal fermion eigenbasis of h: columns u0 (energy -Omega/2) and
// u1 (+Omega/2). The two branch forms avoid the cancelling combination
// Omega - |delta|; each pair is orthogonal by construction. Signs are pinned
// so the ladder pair built from the same scalars acts as b u1 = +u0 and
// b^dag u0 = +u1 on either branch (eigenvectors alone are sign-ambiguous).
inline Mat2 fermion_eigenbasis(const DerivedScalars& d) {
  Eigen::Vector2d u0, u1;
  if (d.delta >= 0.0) {
    const double w = 0.5 * (d.Omega + d.delta);
    u0 << -d.lambda, w;
    u1 << w, d.lambda;
  } else {
    const double w = 0.5 * (d.Omega - d.delta);
    u0 << w, -d.lambda;
    u1 << -d.lambda, -w;
  }
  u0.normalize();
  u1.normalize();
  Mat2 u;
  u.col(0) = u0;
  u.col(1) = u1;
  return u;
}

struct SuperSpace {
  int N_max = 8;
  ModelParams params;
  double z = 0.0;
  DerivedScalars scalars;
  MetricData metric;
  PhermionSet ph;
  Mat2 U = Mat2::Identity();  // columns u0, u1

  MatX a, a_dag, number_op;
  MatX B, B_sharp, B_tilde, B_dag_dual;
  MatX eta_s, eta_s_inv;
  MatX H_s, h_s;
  MatX Q, Q_sharp;
  KronOp Q_f, Q_sharp_f;

  std::vector<VecX> psi, phi;  // flat index 2n + eps

  int dim() const { return 2 * N_max; }

  GradedOp lifted(const MatX& m, int parity) const { return GradedOp{m, parity}; }
};

namespace detail {

inline MatX boson_lower(int n_max) {
  MatX a = MatX::Zero(n_max, n_max);
  for (int n = 1; n < n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

}  // namespace detail

inline SuperSpace build_superspace(const ModelParams& p, double z, int n_max) {
  if (n_max < 2) throw ValidityError("N_max must be at least 2");
  if (n_max > 4096) throw ValidityError("N_max too large for dense construction");
  SuperSpace s;
  s.N_max = n_max;
  s.params = p;
  s.z = z;
  s.scalars = derived_scalars(p, z);
  s.metric = build_rho(p, z);
  s.ph = build_phermion(p, z);
  s.U = fermion_eigenbasis(s.scalars);

  const MatX a_b = detail::boson_lower(n_max);
  const MatX i_b = MatX::Identity(n_max, n_max);
  const Mat2c i_f = Mat2c::Identity();

  s.a = kron(a_b, MatX(i_f));
  s.a_dag = kron(MatX(a_b.adjoint()), MatX(i_f));
  MatX num_b = MatX::Zero(n_max, n_max);
  for (int n = 0; n < n_max; ++n) num_b(n, n) = double(n);
  s.number_op = kron(num_b, MatX(i_f));

  s.B = kron(i_b, MatX(s.ph.B.cast<cplx>()));
  s.B_sharp = kron(i_b, MatX(s.ph.B_sharp.cast<cplx>()));
  s.B_tilde = kron(i_b, MatX(s.ph.B_tilde.cast<cplx>()));
  s.B_dag_dual = kron(i_b, MatX(s.ph.B_dag_dual.cast<cplx>()));
  s.eta_s = kron(i_b, MatX(s.metric.eta().cast<cplx>()));
  s.eta_s_inv = kron(i_b, MatX(s.metric.eta_inv().cast<cplx>()));

  const double om = s.scalars.Omega;
  const Mat2c bsb = (s.ph.B_sharp * s.ph.B).cast<cplx>();
  s.H_s = om * (kron(num_b, MatX(i_f)) + kron(i_b, MatX(bsb)));
  const MatX rho_l = kron(i_b, MatX(s.metric.rho.cast<cplx>()));
  const MatX rho_li = kron(i_b, MatX(s.metric.rho_inv.cast<cplx>()));
  s.h_s = rho_l * s.H_s * rho_li;

  const double amp = std::sqrt(2.0 * om);
  s.Q_f = KronOp{amp, MatX(a_b.adjoint()), s.ph.B.cast<cplx>(), 1};
  s.Q_sharp_f = KronOp{amp, a_b, s.ph.B_sharp.cast<cplx>(), 1};
  s.Q = s.Q_f.dense();
  s.Q_sharp = s.Q_sharp_f.dense();

  const Eigen::Vector2d ru0 = s.metric.rho_inv * s.U.col(0);
  const Eigen::Vector2d ru1 = s.metric.rho_inv * s.U.col(1);
  const Eigen::Vector2d su0 = s.metric.rho * s.U.col(0);
  const Eigen::Vector2d su1 = s.metric.rho * s.U.col(1);
  s.psi.resize(2 * n_max, VecX::Zero(2 * n_max));
  s.phi.resize(2 * n_max, VecX::Zero(2 * n_max));
  for (int n = 0; n < n_max; ++n) {
    for (int eps = 0; eps < 2; ++eps) {
      VecX v = VecX::Zero(2 * n_max);
      VecX w = VecX::Zero(2 * n_max);
      const Eigen::Vector2d& fv = eps == 0 ? ru0 : ru1;
      const Eigen::Vector2d& fw = eps == 0 ? su0 : su1;
      v(2 * n) = fv(0);
      v(2 * n + 1) = fv(1);
      w(2 * n) = fw(0);
      w(2 * n + 1) = fw(1);
      s.psi[2 * n + eps] = v;
      s.phi[2 * n + eps] = w;
    }
  }
  return s;
}

// Biorthonormality <phi_i | psi_j> = delta_ij and the two completeness sums.
struct BiBasisReport {
  double gram_defect = 0.0;
  double completeness_psi_phi = 0.0;
  double completeness_phi_psi = 0.0;
};

inline BiBasisReport check_bi_basis(const SuperSpace& s) {
  const int d = s.dim();
  MatX gram(d, d), sum1 = MatX::Zero(d, d), sum2 = MatX::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = (s.phi[i].adjoint() * s.psi[j])(0);
  for (int i = 0; i < d; ++i) {
    sum1 += s.psi[i] * s.phi[i].adjoint();
    sum2 += s.phi[i] * s.psi[i].adjoint();
  }
  BiBasisReport r;
  r.gram_defect = max_abs(MatX(gram - MatX::Identity(d, d)));
  r.completeness_psi_phi = max_abs(MatX(sum1 - MatX::Identity(d, d)));
  r.completeness_phi_psi = max_abs(MatX(sum2 - MatX::Identity(d, d)));
  return r;
}

// Every displayed ladder action, as max residual per relation. Relations that
// raise the boson level are checked for n < N_max-1 only (hard cutoff).
inline std::map<std::string, double> check_ladder_actions(const SuperSpace& s) {
  std::map<std::string, double> r;
  auto upd = [&r](const std::string& key, double v) {
    auto it = r.find(key);
    if (it == r.end() || it->second < v) r[key] = v;
  };
  const double om = s.scalars.Omega;
  for (int n = 0; n < s.N_max; ++n) {
    for (int eps = 0; eps < 2; ++eps) {
      const int i = 2 * n + eps;
      const VecX& v = s.psi[i];
      if (n > 0)
        upd("a_lowers_psi", max_abs(MatX(s.a * v - std::sqrt(double(n)) * s.psi[i - 2])));
      else
        upd("a_kills_ground", max_abs(MatX(s.a * v)));
      if (n < s.N_max - 1)
        upd("adag_raises_psi",
            max_abs(MatX(s.a_dag * v - std::sqrt(double(n + 1)) * s.psi[i + 2])));
      if (eps == 0) {
        upd("B_kills_eps0", max_abs(MatX(s.B * v)));
        upd("Bsharp_raises_eps0", max_abs(MatX(s.B_sharp * v - s.psi[i + 1])));
      } else {
        upd("B_lowers_eps1", max_abs(MatX(s.B * v - s.psi[i - 1])));
        upd("Bsharp_kills_eps1", max_abs(MatX(s.B_sharp * v)));
      }
      const VecX& w = s.phi[i];
      if (eps == 0) {
        upd("Btilde_kills_eps0", max_abs(MatX(s.B_tilde * w)));
        upd("Bdag_raises_eps0", max_abs(MatX(s.B_dag_dual * w - s.phi[i + 1])));
      } else {
        upd("Btilde_lowers_eps1", max_abs(MatX(s.B_tilde * w - s.phi[i - 1])));
        upd("Bdag_kills_eps1", max_abs(MatX(s.B_dag_dual * w)));
      }
      // supercharge amplitudes follow from Q = sqrt(2 Omega) a†B and the
      // actions above: Q psi_(n,1) = sqrt(2 Omega (n+1)) psi_(n+1,0),
      // Q# psi_(n,0) = sqrt(2 Omega n) psi_(n-1,1)
      if (eps == 1 && n < s.N_max - 1)
        upd("Q_raises", max_abs(MatX(s.Q * v - std::sqrt(2.0 * om * (n + 1)) * s.psi[i + 1])));
      if (eps == 0) {
        if (n > 0)
          upd("Qsharp_lowers",
              max_abs(MatX(s.Q_sharp * v - std::sqrt(2.0 * om * n) * s.psi[i - 1])));
        else
          upd("Qsharp_kills_ground", max_abs(MatX(s.Q_sharp * v)));
      }
      if (n == 0 && eps == 0) upd("Q_kills_ground", max_abs(MatX(s.Q * v)));
    }
  }
  return r;
}

// Supersymmetry algebra residuals. The anticommutator identity holds on the
// subspace n < N_max-1; the truncation corner is excluded by projection.
struct SusyAlgebraReport {
  double q_squared_factored = 0.0;       // exact: evaluated in tensor-factored form
  double qsharp_squared_factored = 0.0;  // exact likewise
  double q_squared_dense = 0.0;          // rounding-level cross-check on the dense route
  double anticommutator = 0.0;
  double commutator_H = 0.0;
  double pseudo_hermiticity = 0.0;
};

inline SusyAlgebraReport check_susy_algebra(const SuperSpace& s) {
  SusyAlgebraReport r;
  r.q_squared_factored = max_abs(s.Q_f.squared().dense());
  r.qsharp_squared_factored = max_abs(s.Q_sharp_f.squared().dense());
  r.q_squared_dense = std::max(max_abs(MatX(s.Q * s.Q)), max_abs(MatX(s.Q_sharp * s.Q_sharp)));
  const int d = s.dim();
  MatX anti = s.Q * s.Q_sharp + s.Q_sharp * s.Q - 2.0 * s.H_s;
  const int guard = 2 * (s.N_max - 1);  // rows/cols with n < N_max-1
  r.anticommutator = max_abs(MatX(anti.topLeftCorner(guard, guard)));
  r.commutator_H = max_abs(MatX(s.Q * s.H_s - s.H_s * s.Q));
  r.pseudo_hermiticity = max_abs(MatX(s.H_s.adjoint() * s.eta_s - s.eta_s * s.H_s));
  (void)d;
  return r;
}

// Spectrum of H_s must be {Omega k} with multiplicities 1, 2, 2, ..., 2, 1
// (the lone top level is the truncation artifact at k = N_max).
inline double spectrum_pattern_defect(const SuperSpace& s) {
  Eigen::ComplexEigenSolver<MatX> es(s.H_s);
  std::vector<double> ev(s.dim());
  double worst_imag = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    ev[i] = es.eigenvalues()(i).real();
    worst_imag = std::max(worst_imag, std::abs(es.eigenvalues()(i).imag()));
  }
  std::sort(ev.begin(), ev.end());
  std::vector<double> expected;
  expected.push_back(0.0);
  for (int k = 1; k <= s.N_max - 1; ++k) {
    expected.push_back(s.scalars.Omega * k);
    expected.push_back(s.scalars.Omega * k);
  }
  expected.push_back(s.scalars.Omega * s.N_max);
  double worst = worst_imag;
  for (int i = 0; i < s.dim(); ++i) worst = std::max(worst, std::abs(ev[i] - expected[i]));
  return worst;
}

inline double eigenvalue_action_defect(const SuperSpace& s) {
  double worst = 0.0;
  for (int n = 0; n < s.N_max; ++n)
    for (int eps = 0; eps < 2; ++eps) {
      const int i = 2 * n + eps;
      const double e = s.scalars.Omega * (n + eps);
      worst = std::max(worst, max_abs(MatX(s.H_s * s.psi[i] - e * s.psi[i])));
      worst = std::max(worst, max_abs(MatX(s.H_s.adjoint() * s.phi[i] - e * s.phi[i])));
    }
  return worst;
}

}  // namespace phsusy
