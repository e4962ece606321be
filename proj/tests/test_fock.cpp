#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "phsusy/phsusy.hpp"

using namespace phsusy;
using Catch::Matchers::WithinAbs;

namespace {
SuperSpace ref_space(int n_max = 8) {
  const RunConfig cfg;
  return build_superspace(cfg.params(), cfg.z, n_max);
}
}  // namespace

TEST_CASE("composite index interleaves boson level and fermion occupation", "[fock]") {
  REQUIRE(SuperBasisIndex{0, 0}.flat() == 0);
  REQUIRE(SuperBasisIndex{0, 1}.flat() == 1);
  REQUIRE(SuperBasisIndex{3, 0}.flat() == 6);
  REQUIRE(SuperBasisIndex{3, 1}.flat() == 7);
}

TEST_CASE("boson ladder matrices carry exact square-root amplitudes", "[fock]") {
  const SuperSpace s = ref_space(6);
  // a e_{n,eps} = sqrt(n) e_{n-1,eps} in flat coordinates
  for (int n = 1; n < 6; ++n)
    for (int eps = 0; eps < 2; ++eps) {
      REQUIRE(s.a(2 * (n - 1) + eps, 2 * n + eps) == cplx(std::sqrt(double(n))));
      REQUIRE(s.a_dag(2 * n + eps, 2 * (n - 1) + eps) == cplx(std::sqrt(double(n))));
    }
  // the number operator is stored as the exact literal diagonal
  for (int n = 0; n < 6; ++n)
    for (int eps = 0; eps < 2; ++eps)
      REQUIRE(s.number_op(2 * n + eps, 2 * n + eps) == cplx(double(n)));
}

TEST_CASE("boson and fermion sectors commute exactly", "[fock]") {
  const SuperSpace s = ref_space();
  for (const MatX* op : {&s.B, &s.B_sharp, &s.B_tilde, &s.B_dag_dual, &s.eta_s}) {
    REQUIRE(max_abs(MatX(s.a * *op - *op * s.a)) == 0.0);
    REQUIRE(max_abs(MatX(s.a_dag * *op - *op * s.a_dag)) == 0.0);
  }
}

TEST_CASE("supercharges square to zero", "[fock]") {
  const SuperSpace s = ref_space();
  // factored route: the square collapses onto the squared fermion factor
  REQUIRE(max_abs(s.Q_f.squared().dense()) == 0.0);
  REQUIRE(max_abs(s.Q_sharp_f.squared().dense()) == 0.0);
  // dense route
  REQUIRE(max_abs(MatX(s.Q * s.Q)) <= 1e-12);
  REQUIRE(max_abs(MatX(s.Q_sharp * s.Q_sharp)) <= 1e-12);
}

TEST_CASE("supercharge anticommutator reproduces the graded Hamiltonian below the cutoff",
          "[fock]") {
  const SuperSpace s = ref_space();
  const SusyAlgebraReport alg = check_susy_algebra(s);
  REQUIRE(alg.anticommutator <= 1e-10);
  REQUIRE(alg.commutator_H <= 1e-10);
  REQUIRE(alg.pseudo_hermiticity <= 1e-12);

  // the full-space anticommutator must expose the cutoff edge honestly: at the
  // top boson level a^dag a is truncated and the defect is of order 2 Omega N
  const MatX anti = s.Q * s.Q_sharp + s.Q_sharp * s.Q - 2.0 * s.H_s;
  REQUIRE(max_abs(anti) > 1.0);
}

TEST_CASE("graded Hamiltonian matches the similarity-transformed oscillator form", "[fock]") {
  const SuperSpace s = ref_space();
  const Mat2c btb = (s.ph.b.raiser * s.ph.b.lower).cast<cplx>();
  const MatX hs_ref =
      s.scalars.Omega *
      (s.number_op + kron(MatX(MatX::Identity(s.N_max, s.N_max)), MatX(btb)));
  REQUIRE(max_abs(MatX(s.h_s - hs_ref)) <= 1e-10);
}

TEST_CASE("tower spectrum is harmonic with paired interior levels", "[fock]") {
  const SuperSpace s = ref_space();
  REQUIRE(spectrum_pattern_defect(s) <= 1e-10);
  REQUIRE(eigenvalue_action_defect(s) <= 1e-12);
}

TEST_CASE("dual bases are biorthonormal and complete", "[fock]") {
  const SuperSpace s = ref_space();
  const BiBasisReport bi = check_bi_basis(s);
  REQUIRE(bi.gram_defect <= 1e-12);
  REQUIRE(bi.completeness_psi_phi <= 1e-12);
  REQUIRE(bi.completeness_phi_psi <= 1e-12);
}

TEST_CASE("ladder and supercharge actions on the eigenbasis", "[fock]") {
  const SuperSpace s = ref_space();
  for (const auto& [name, residual] : check_ladder_actions(s)) {
    INFO(name << " residual " << residual);
    REQUIRE(residual <= 1e-10);
  }
}

TEST_CASE("supercharge raises with the amplitude sqrt(2 Omega (n+1))", "[fock]") {
  const SuperSpace s = ref_space();
  const double om = s.scalars.Omega;
  for (int n = 0; n + 1 < s.N_max; ++n) {
    const VecX lhs = s.Q * s.psi[2 * n + 1];
    const VecX rhs = std::sqrt(2.0 * om * (n + 1)) * s.psi[2 * (n + 1)];
    REQUIRE(max_abs(MatX(lhs - rhs)) <= 1e-10);
  }
  // and annihilates both ground partners
  REQUIRE(max_abs(MatX(s.Q * s.psi[0])) <= 1e-12);
  REQUIRE(max_abs(MatX(s.Q_sharp * s.psi[0])) <= 1e-12);
  REQUIRE(max_abs(MatX(s.Q_sharp * s.psi[1])) <= 1e-12);
}

TEST_CASE("cutoff bounds are enforced", "[fock]") {
  const RunConfig cfg;
  REQUIRE_THROWS_AS(build_superspace(cfg.params(), cfg.z, 1), ValidityError);
  REQUIRE_THROWS_AS(build_superspace(cfg.params(), cfg.z, 5000), ValidityError);
}

TEST_CASE("graded Hamiltonian is metric pseudo-Hermitian at shifted parameters", "[fock]") {
  const ModelParams p{3.0, 1.5, 0.25, false};
  const SuperSpace s = build_superspace(p, -0.4, 6);
  REQUIRE(max_abs(MatX(s.H_s.adjoint() * s.eta_s - s.eta_s * s.H_s)) <= 1e-12);
  REQUIRE(max_abs(s.Q_f.squared().dense()) == 0.0);
  REQUIRE(spectrum_pattern_defect(s) <= 1e-10);
}

TEST_CASE("ladder actions survive the negative-splitting branch", "[fock]") {
  const ModelParams p{0.7, -0.1, -1.3, false};
  REQUIRE(derived_scalars(p, 1.9).delta < 0.0);
  for (const auto& [key, value] : susy_residuals(p, 1.9, 6)) {
    INFO(key);
    REQUIRE(value <= check_specs().at(key).tol);
  }
}

TEST_CASE("sampled graded-algebra battery stays within tolerance", "[fock]") {
  ParamSampler sampler(555);
  for (int i = 0; i < 40; ++i) {
    const ParamPoint pt = sampler.draw();
    for (const auto& [key, value] : susy_residuals(pt.p, pt.z, 6)) {
      INFO(key << " at omega=" << pt.p.omega << " alpha=" << pt.p.alpha
               << " beta=" << pt.p.beta << " z=" << pt.z);
      REQUIRE(value <= check_specs().at(key).tol);
    }
  }
}
