#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "phsusy/phsusy.hpp"

using namespace phsusy;
using Catch::Matchers::WithinAbs;

namespace {
const ModelParams kRef{};  // omega = 2, alpha = 1, beta = 0.5
constexpr double kLn2 = 0.6931471805599453;
}  // namespace

TEST_CASE("su(2) generators satisfy the ladder algebra exactly", "[core]") {
  const Mat2 jp = su2_j_plus(), jm = su2_j_minus(), j3 = su2_j3();
  REQUIRE(max_abs(Eigen::MatrixXd(jp * jm - jm * jp - 2.0 * j3)) == 0.0);
  REQUIRE(max_abs(Eigen::MatrixXd(j3 * jp - jp * j3 - jp)) == 0.0);
  REQUIRE(max_abs(Eigen::MatrixXd(j3 * jm - jm * j3 + jm)) == 0.0);
}

TEST_CASE("Hamiltonian matrix entries and real eigenvalue pair", "[core]") {
  const Mat2 H = build_H(kRef);
  REQUIRE(H(0, 0) == 1.0);
  REQUIRE(H(0, 1) == 0.5);
  REQUIRE(H(1, 0) == 1.0);
  REQUIRE(H(1, 1) == -1.0);
  REQUIRE_THAT(omega_cap(kRef), WithinAbs(std::sqrt(6.0), 1e-15));
  REQUIRE(eigenvalue_residual(kRef) <= 1e-14);
}

TEST_CASE("frequency scale in closed form on simple inputs", "[core]") {
  REQUIRE(omega_cap(ModelParams{1.0, 0.0, 0.0, true}) == 1.0);
  REQUIRE(omega_cap(ModelParams{0.0, 1.0, 1.0, true}) == 2.0);
}

TEST_CASE("parameter validity is enforced", "[core]") {
  REQUIRE_THROWS_AS(require_valid(ModelParams{1.0, 1.0, -1.0, false}), ValidityError);
  REQUIRE_THROWS_AS(require_valid(ModelParams{2.0, 1.0, 1.0, false}), ValidityError);
  REQUIRE_NOTHROW(require_valid(ModelParams{2.0, 1.0, 1.0, true}));
  REQUIRE_NOTHROW(require_valid(kRef));
}

TEST_CASE("metric scalars at the reference point", "[core]") {
  REQUIRE_THAT(metric_arg(kRef, 0.0), WithinAbs(1.0 / 3.0, 1e-16));
  const MetricData m = build_rho(kRef, 0.0);
  REQUIRE_THAT(m.epsilon, WithinAbs(kLn2 / 4.0, 1e-16));
  REQUIRE_THAT(m.theta, WithinAbs(kLn2 / 4.0, 1e-16));
  // at z = 0 the metric root is diag(2^{1/4}, 2^{-1/4})
  REQUIRE_THAT(m.rho(0, 0), WithinAbs(1.189207115002721, 1e-15));
  REQUIRE_THAT(m.rho(1, 1), WithinAbs(0.8408964152537145, 1e-15));
  REQUIRE(m.rho(0, 1) == 0.0);
  REQUIRE(m.rho(1, 0) == 0.0);
  REQUIRE(max_abs(Eigen::MatrixXd(m.rho * m.rho_inv - Mat2::Identity())) <= 1e-15);
}

TEST_CASE("metric domain boundaries at the reference couplings", "[core]") {
  REQUIRE_THROWS_AS(build_rho(kRef, 0.6), DomainError);
  REQUIRE_THROWS_AS(build_rho(kRef, 0.75), DegenerateError);
  REQUIRE_THROWS_AS(build_rho(kRef, 0.48), DomainError);
  REQUIRE_THROWS_AS(build_rho(kRef, 1.0), DomainError);
  REQUIRE_NOTHROW(build_rho(kRef, 0.47));
  REQUIRE_NOTHROW(build_rho(kRef, 1.2));
  REQUIRE_NOTHROW(build_rho(kRef, -3.0));
}

TEST_CASE("metric stays positive definite wherever it exists", "[core]") {
  int decided = 0;
  for (int i = 0; i <= 100; ++i) {
    const double z = -5.0 + 0.1 * i;
    try {
      const MetricData m = build_rho(kRef, z);
      REQUIRE(rho_min_eigenvalue(m.eta()) > 0.0);
      ++decided;
    } catch (const DomainError&) {
    } catch (const DegenerateError&) {
    }
  }
  REQUIRE(decided >= 60);
}

TEST_CASE("metric root power route agrees with series route", "[core]") {
  for (double z : {-2.0, -0.5, 0.0, 0.3, 1.5, 2.5}) {
    const MetricData m = build_rho(kRef, z);
    REQUIRE(max_abs(Eigen::MatrixXd(m.rho - build_rho_power(kRef, z))) <= 1e-12);
  }
}

TEST_CASE("similarity transform is Hermitian with the closed scalar form", "[core]") {
  const DerivedScalars d = derived_scalars(kRef, 0.0);
  REQUIRE_THAT(d.delta, WithinAbs(2.0, 1e-14));
  REQUIRE_THAT(d.lambda, WithinAbs(std::sqrt(2.0) / 2.0, 1e-14));
  REQUIRE_THAT(d.Omega, WithinAbs(std::sqrt(6.0), 1e-14));
  REQUIRE_THAT(d.delta * d.delta + 4.0 * d.lambda * d.lambda, WithinAbs(6.0, 1e-13));

  const HermitianEquivalent he = build_h(kRef, 0.0);
  REQUIRE(max_abs(Eigen::MatrixXd(he.h - he.h.transpose())) == 0.0);
  Eigen::SelfAdjointEigenSolver<Mat2> es(he.h);
  REQUIRE_THAT(es.eigenvalues()(0), WithinAbs(-0.5 * d.Omega, 1e-13));
  REQUIRE_THAT(es.eigenvalues()(1), WithinAbs(0.5 * d.Omega, 1e-13));
}

TEST_CASE("equal couplings make the transform trivial", "[core]") {
  const ModelParams p{2.0, 1.0, 1.0, true};
  const MetricData m = build_rho(p, 0.0);
  REQUIRE(m.epsilon == 0.0);
  REQUIRE(max_abs(Eigen::MatrixXd(m.rho - Mat2::Identity())) == 0.0);
  const DerivedScalars d = derived_scalars(p, 0.0);
  REQUIRE_THAT(d.delta, WithinAbs(2.0, 1e-14));
  REQUIRE_THAT(d.lambda, WithinAbs(1.0, 1e-14));
  REQUIRE(max_abs(Eigen::MatrixXd(build_h(p, 0.0).h - build_H(p))) <= 1e-14);
}

TEST_CASE("derived scalars are rejected outside the metric domain", "[core]") {
  REQUIRE_THROWS_AS(derived_scalars(kRef, 0.6), DomainError);
}

TEST_CASE("metric intertwines the Hamiltonian with its adjoint", "[core]") {
  for (double z : {-1.0, 0.0, 0.3, 2.0}) {
    const MetricData m = build_rho(kRef, z);
    const Mat2 H = build_H(kRef), eta = m.eta();
    REQUIRE(max_abs(Eigen::MatrixXd(H.transpose() * eta - eta * H)) <= 1e-12);
  }
}

TEST_CASE("sampled core residual battery stays within tolerance", "[core]") {
  ParamSampler sampler(2024);
  for (int i = 0; i < 200; ++i) {
    const ParamPoint pt = sampler.draw();
    for (const auto& [key, value] : core_residuals(pt.p, pt.z)) {
      INFO(key << " at omega=" << pt.p.omega << " alpha=" << pt.p.alpha
               << " beta=" << pt.p.beta << " z=" << pt.z);
      REQUIRE(value <= check_specs().at(key).tol);
    }
  }
}

TEST_CASE("two derivation routes for the equivalent scalars agree", "[core]") {
  ParamSampler sampler(7);
  for (int i = 0; i < 100; ++i) {
    const ParamPoint pt = sampler.draw();
    REQUIRE_NOTHROW(build_h(pt.p, pt.z));
  }
}
