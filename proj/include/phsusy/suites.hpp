#pragma once

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "phsusy/config.hpp"
#include "phsusy/errors.hpp"
#include "phsusy/fock.hpp"
#include "phsusy/grassmann.hpp"
#include "phsusy/hermitian.hpp"
#include "phsusy/metric.hpp"
#include "phsusy/model.hpp"
#include "phsusy/phermion.hpp"
#include "phsusy/report.hpp"
#include "phsusy/scs.hpp"

namespace phsusy {

// ---------------------------------------------------------------------------
// Parameter sampling
// ---------------------------------------------------------------------------

struct ParamPoint {
  ModelParams p;
  double z = 0.0;
};

// Uniform draws over omega in [0.5, 4], alpha/beta in [-2, 2], z in [-3, 3],
// rejected unless the spectrum is real, the metric exists at z, and the
// arctanh argument stays at most 0.99 in magnitude (the metric's conditioning
// blows up as |g| -> 1, which would test the floating point format rather
// than the algebra).
struct ParamSampler {
  std::mt19937_64 rng;

  explicit ParamSampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
  }

  ParamPoint draw() {
    for (int tries = 0; tries < 100000; ++tries) {
      ModelParams p{uniform(0.5, 4.0), uniform(-2.0, 2.0), uniform(-2.0, 2.0), false};
      const double z = uniform(-3.0, 3.0);
      if (!is_valid(p)) continue;
      double g = 0.0;
      try {
        g = metric_arg(p, z);
      } catch (const DegenerateError&) {
        continue;
      }
      if (std::abs(g) > 0.99) continue;
      return ParamPoint{p, z};
    }
    throw ConsistencyError("parameter sampler found no admissible point");
  }
};

// ---------------------------------------------------------------------------
// Residual kernels (shared by the point suites, the sampled battery, and the
// acceptance gate)
// ---------------------------------------------------------------------------

using ResidualMap = std::map<std::string, double>;

inline double eigenvalue_residual(const ModelParams& p) {
  const double half = 0.5 * omega_cap(p);
  Eigen::EigenSolver<Mat2> es(build_H(p));
  cplx e0 = es.eigenvalues()(0), e1 = es.eigenvalues()(1);
  if (e0.real() > e1.real()) std::swap(e0, e1);
  return std::max(std::abs(e0 - cplx(-half)), std::abs(e1 - cplx(half)));
}

inline ResidualMap core_residuals(const ModelParams& p, double z) {
  ResidualMap r;
  const Mat2 jp = su2_j_plus(), jm = su2_j_minus(), j3 = su2_j3();
  r["su2_commutation"] = std::max({max_abs(Eigen::MatrixXd(jp * jm - jm * jp - 2.0 * j3)),
                                   max_abs(Eigen::MatrixXd(j3 * jp - jp * j3 - jp)),
                                   max_abs(Eigen::MatrixXd(j3 * jm - jm * j3 + jm))});
  r["eigenvalues_pm_omega_half"] = eigenvalue_residual(p);

  const MetricData m = build_rho(p, z);
  const double min_eig = rho_min_eigenvalue(m.eta());
  r["metric_positivity"] = min_eig > 0.0 ? 0.0 : std::abs(min_eig) + 1.0;
  r["rho_inverse"] = max_abs(Eigen::MatrixXd(m.rho * m.rho_inv - Mat2::Identity()));
  r["rho_power_route"] = max_abs(Eigen::MatrixXd(m.rho - build_rho_power(p, z)));

  const Mat2 H = build_H(p);
  const Mat2 hs = h_by_similarity(p, m);
  r["similarity_hermitian"] = max_abs(Eigen::MatrixXd(hs - hs.transpose()));
  const Mat2 eta = m.eta();
  r["eta_intertwines_H"] = max_abs(Eigen::MatrixXd(H.transpose() * eta - eta * H));

  const DerivedScalars d = derived_scalars(p, z);
  r["h_two_route"] = max_abs(Eigen::MatrixXd(h_from_scalars(d) - hs));
  r["delta_lambda_identity"] =
      std::abs(d.delta * d.delta + 4.0 * d.lambda * d.lambda - d.Omega * d.Omega);
  return r;
}

inline ResidualMap phermion_residuals(const ModelParams& p, double z) {
  ResidualMap r;
  const DerivedScalars d = derived_scalars(p, z);
  const MetricData m = build_rho(p, z);
  const PhermionSet set = build_phermion(p, z);
  const Mat2 b = set.b.lower, bd = set.b.raiser;
  const Mat2 ident = Mat2::Identity();

  r["b_nilpotency"] = std::max(max_abs(Eigen::MatrixXd(b * b)), max_abs(Eigen::MatrixXd(bd * bd)));
  r["b_anticommutator"] = max_abs(Eigen::MatrixXd(b * bd + bd * b - ident));

  const Mat2 u = fermion_eigenbasis(d);
  const Eigen::Vector2d u0 = u.col(0), u1 = u.col(1);
  r["b_transitions"] =
      std::max({(b * u0).cwiseAbs().maxCoeff(), (b * u1 - u0).cwiseAbs().maxCoeff(),
                (bd * u1).cwiseAbs().maxCoeff(), (bd * u0 - u1).cwiseAbs().maxCoeff()});

  r["h_factorization"] =
      max_abs(Eigen::MatrixXd(h_from_scalars(d) - d.Omega * (bd * b - 0.5 * ident)));

  r["B_similarity"] = max_abs(Eigen::MatrixXd(set.B - m.rho_inv * b * m.rho));
  r["B_pseudo_conjugation"] =
      max_abs(Eigen::MatrixXd(set.B_sharp - m.eta_inv() * set.B.transpose() * m.eta()));

  r["phermion_nilpotency"] = std::max(
      {max_abs(Eigen::MatrixXd(set.B * set.B)), max_abs(Eigen::MatrixXd(set.B_sharp * set.B_sharp)),
       max_abs(Eigen::MatrixXd(set.B_tilde * set.B_tilde)),
       max_abs(Eigen::MatrixXd(set.B_dag_dual * set.B_dag_dual))});
  r["phermion_anticommutator"] =
      max_abs(Eigen::MatrixXd(set.B * set.B_sharp + set.B_sharp * set.B - ident));
  r["H_factorization"] =
      max_abs(Eigen::MatrixXd(build_H(p) - d.Omega * (set.B_sharp * set.B - 0.5 * ident)));

  const CoefficientSet c = mu_nu(p, z);
  const Su2Coefficients bm = coefficients_of(set.B);
  const Su2Coefficients bs = coefficients_of(set.B_sharp);
  r["mu_nu_representation"] = std::max({std::abs(c.mu1 - bm.c_minus), std::abs(c.mu2 - bm.c_plus),
                                        std::abs(c.mu3 - bm.c3), std::abs(c.nu1 - bs.c_minus),
                                        std::abs(c.nu2 - bs.c_plus), std::abs(c.nu3 - bs.c3)});

  r["dual_anticommutator"] = max_abs(
      Eigen::MatrixXd(set.B_tilde * set.B_dag_dual + set.B_dag_dual * set.B_tilde - ident));
  r["dual_adjoint_pair"] =
      max_abs(Eigen::MatrixXd(set.B_tilde - set.B_sharp.transpose()));
  r["dual_nilpotency"] = r["phermion_nilpotency"];  // aggregated above over all four
  return r;
}

inline ResidualMap susy_residuals(const ModelParams& p, double z, int n_max) {
  ResidualMap r;
  const SuperSpace s = build_superspace(p, z, n_max);
  const SusyAlgebraReport alg = check_susy_algebra(s);
  r["q_nilpotency_factored"] = std::max(alg.q_squared_factored, alg.qsharp_squared_factored);
  r["q_nilpotency_dense"] = alg.q_squared_dense;
  r["susy_anticommutator"] = alg.anticommutator;
  r["supercharge_commutes"] = alg.commutator_H;
  r["hs_pseudo_hermitian"] = alg.pseudo_hermiticity;

  const Mat2c btb = (s.ph.b.raiser * s.ph.b.lower).cast<cplx>();
  const MatX num_b = s.number_op;  // already N x 2N lifted boson number
  const MatX hs_ref = s.scalars.Omega * (num_b + kron(MatX(MatX::Identity(s.N_max, s.N_max)),
                                                      MatX(btb)));
  r["hs_oscillator_form"] = max_abs(MatX(s.h_s - hs_ref));

  double comm = 0.0;
  for (const MatX* op : {&s.B, &s.B_sharp, &s.eta_s}) {
    comm = std::max(comm, max_abs(MatX(s.a * *op - *op * s.a)));
    comm = std::max(comm, max_abs(MatX(s.a_dag * *op - *op * s.a_dag)));
  }
  r["boson_phermion_commute"] = comm;

  const BiBasisReport bi = check_bi_basis(s);
  r["biorthonormality"] = bi.gram_defect;
  r["completeness"] = std::max(bi.completeness_psi_phi, bi.completeness_phi_psi);
  r["spectrum_pattern"] = spectrum_pattern_defect(s);
  r["eigenvalue_actions"] = eigenvalue_action_defect(s);

  const auto acts = check_ladder_actions(s);
  auto pick = [&acts](std::initializer_list<const char*> keys) {
    double worst = 0.0;
    for (const char* k : keys) {
      auto it = acts.find(k);
      if (it != acts.end()) worst = std::max(worst, it->second);
    }
    return worst;
  };
  r["boson_ladder_actions"] = pick({"a_lowers_psi", "a_kills_ground", "adag_raises_psi"});
  r["phermion_ladder_actions"] =
      pick({"B_kills_eps0", "Bsharp_raises_eps0", "B_lowers_eps1", "Bsharp_kills_eps1"});
  r["dual_ladder_actions"] =
      pick({"Btilde_kills_eps0", "Bdag_raises_eps0", "Btilde_lowers_eps1", "Bdag_kills_eps1"});
  r["supercharge_actions"] = pick({"Q_raises", "Qsharp_lowers"});
  r["ground_annihilation"] =
      pick({"a_kills_ground", "Q_kills_ground", "Qsharp_kills_ground"});
  return r;
}

// Anchor id and tolerance for every named residual.
struct CheckSpec {
  const char* anchor;
  double tol;
};

inline const std::map<std::string, CheckSpec>& check_specs() {
  static const std::map<std::string, CheckSpec> specs = {
      // core
      {"su2_commutation", {"Eq-H2", 0.0}},
      {"eigenvalues_pm_omega_half", {"Eq-0214", 1e-12}},
      {"metric_positivity", {"Eq-rho1", 0.0}},
      {"rho_inverse", {"Eq-rho2", 1e-12}},
      {"rho_power_route", {"Eq-rho3", 1e-12}},
      {"similarity_hermitian", {"Eq-h1", 1e-12}},
      {"eta_intertwines_H", {"Eq-h1", 1e-12}},
      {"h_two_route", {"Eq-h2", 1e-10}},
      {"delta_lambda_identity", {"Eq-0214", 1e-10}},
      // phermion
      {"b_nilpotency", {"Eq-h3", 0.0}},
      {"b_anticommutator", {"Eq-h3", 1e-12}},
      {"b_transitions", {"Eq-h3", 1e-12}},
      {"h_factorization", {"Eq-h3", 1e-10}},
      {"B_similarity", {"Eq-0217", 1e-12}},
      {"B_pseudo_conjugation", {"Eq-0217", 1e-12}},
      {"phermion_nilpotency", {"Eq-0333", 0.0}},
      {"phermion_anticommutator", {"Eq-0333", 1e-12}},
      {"H_factorization", {"Eq-H3", 1e-10}},
      {"mu_nu_representation", {"Eq-0217", 1e-10}},
      {"dual_nilpotency", {"Eq-3.40", 0.0}},
      {"dual_anticommutator", {"Eq-3.40", 1e-12}},
      {"dual_adjoint_pair", {"Eq-3.40", 1e-12}},
      // susy
      {"q_nilpotency_factored", {"Eq-025", 0.0}},
      {"q_nilpotency_dense", {"Eq-025", 1e-12}},
      {"susy_anticommutator", {"Eq-025", 1e-10}},
      {"supercharge_commutes", {"Eq-437", 1e-10}},
      {"hs_pseudo_hermitian", {"Eq-025", 1e-12}},
      {"hs_oscillator_form", {"Eq-437", 1e-10}},
      {"boson_phermion_commute", {"Eq-029", 0.0}},
      {"biorthonormality", {"Eq-437", 1e-12}},
      {"completeness", {"Eq-437", 1e-12}},
      {"spectrum_pattern", {"Eq-437", 1e-10}},
      {"eigenvalue_actions", {"Eq-437", 1e-10}},
      {"boson_ladder_actions", {"Eq-314", 1e-10}},
      {"phermion_ladder_actions", {"Eq-314", 1e-10}},
      {"dual_ladder_actions", {"Eq-3.40", 1e-10}},
      {"supercharge_actions", {"Eq-314", 1e-10}},
      {"ground_annihilation", {"Eq-314", 1e-12}},
      // grassmann
      {"xi_nilpotency", {"Eq-3.20", 0.0}},
      {"berezin_rules", {"Eq-3.21", 0.0}},
      {"xi_phermion_anticommutators", {"Eq-3.22", 0.0}},
      {"pseudo_conjugation_reversal", {"Eq-3.23", 1e-12}},
      {"associativity_exhaustive", {"Eq-3.20", 0.0}},
      // scs
      {"orbit_closed_form", {"Eq-3.27", 1e-10}},
      {"dual_orbit_closed_form", {"Eq-344", 1e-10}},
      {"glauber_component", {"Eq-3.28", 1e-10}},
      {"eigen_a_primary", {"Eq-3.27", 1e-10}},
      {"eigen_B_primary", {"Eq-3.27", 1e-10}},
      {"eigen_a_dual", {"Eq-344", 1e-10}},
      {"eigen_Btilde_dual", {"Eq-344", 1e-10}},
      {"pseudo_unitarity_generator", {"Eq-3.24", 1e-10}},
      {"pseudo_unitarity_factored_low", {"Eq-3.24", 1e-10}},
      {"displacement_bch_low", {"Eq-3.24", 1e-10}},
      {"bi_normalization", {"Eq-344", 1e-8}},
      // identity-suite quadrature
      {"resolution_cross", {"Eq-3.49", 1e-6}},
      {"resolution_node_doubling", {"Eq-3.49", 0.1}},
      {"resolution_same_family_gap", {"Eq-3.49", 0.0}},
  };
  return specs;
}

inline CheckResult named_check(const std::string& suite, const std::string& key,
                               const std::string& check_id, double residual) {
  const auto it = check_specs().find(key);
  if (it == check_specs().end()) throw ConsistencyError("no check spec for '" + key + "'");
  return make_check(suite, check_id, it->second.anchor, residual, it->second.tol);
}

inline void emit_map(std::vector<CheckResult>& out, const std::string& suite,
                     const ResidualMap& residuals) {
  for (const auto& [key, value] : residuals) out.push_back(named_check(suite, key, key, value));
}

// ---------------------------------------------------------------------------
// Suite runners
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> run_core_suite(const RunConfig& cfg) {
  std::vector<CheckResult> out;
  emit_map(out, "core", core_residuals(cfg.params(), cfg.z));
  return out;
}

inline std::vector<CheckResult> run_phermion_suite(const RunConfig& cfg) {
  std::vector<CheckResult> out;
  emit_map(out, "phermion", phermion_residuals(cfg.params(), cfg.z));
  return out;
}

inline std::vector<CheckResult> run_susy_suite(const RunConfig& cfg) {
  std::vector<CheckResult> out;
  emit_map(out, "susy", susy_residuals(cfg.params(), cfg.z, cfg.n_max));
  return out;
}

inline std::vector<CheckResult> run_grassmann_suite(const RunConfig& cfg) {
  std::vector<CheckResult> out;
  const auto xi = gmono(m_xi, cplx(1.0));
  const auto xis = gmono(m_xistar, cplx(1.0));

  double nil = std::max(gmax_abs(gmul(xi, xi)), gmax_abs(gmul(xis, xis)));
  nil = std::max(nil, gmax_abs(gmul(xi, xis) + gmul(xis, xi)));
  out.push_back(named_check("grassmann", "xi_nilpotency", "xi_nilpotency", nil));

  double ber = std::abs(berezin_scalar(gmono(m_xixistar, cplx(1.0))) - cplx(1.0));
  for (int m : {m_one, m_xi, m_xistar})
    ber = std::max(ber, std::abs(berezin_scalar(gmono(m, cplx(1.0)))));
  out.push_back(named_check("grassmann", "berezin_rules", "berezin_rules", ber));

  const PhermionSet set = build_phermion(cfg.params(), cfg.z);
  const MetricData m = build_rho(cfg.params(), cfg.z);
  auto lift = [](const Mat2& a) { return GradedOp{a.cast<cplx>(), 1}; };
  double anti = 0.0;
  for (const Mat2* op : {&set.B, &set.B_sharp}) {
    for (int mono : {m_xi, m_xistar}) {
      const auto xel = gmono(mono, GradedOp{MatX(Mat2c::Identity()), 0});
      const auto oel = gone(lift(*op));
      anti = std::max(anti, gmax_abs(gmul(xel, oel) + gmul(oel, xel)));
    }
  }
  out.push_back(
      named_check("grassmann", "xi_phermion_anticommutators", "xi_phermion_anticommutators", anti));

  // (B# xi + xi* B) in coefficient-left storage: xi* B = -B xi*
  GrassmannElement<GradedOp> fpart;
  fpart.c[m_xi] = lift(set.B_sharp);
  fpart.c[m_xistar] = coef_negate(lift(set.B));
  const MatX eta = m.eta().cast<cplx>(), eta_inv = m.eta_inv().cast<cplx>();
  const double rev = gmax_abs(pseudo_adjoint(fpart, eta, eta_inv) - fpart);
  out.push_back(named_check("grassmann", "pseudo_conjugation_reversal",
                            "pseudo_conjugation_reversal", rev));

  // exhaustive associativity over monomial triples, structural 0/1 coefficient
  // matrices (their products are exact), and both parities
  const Mat2c sf = (Mat2c() << 0, 0, 1, 0).finished();
  const std::vector<MatX> mats = {MatX(Mat2c::Identity()), MatX(sf), MatX(sf.adjoint())};
  double assoc = 0.0;
  for (int ma = 0; ma < 4; ++ma)
    for (int mb = 0; mb < 4; ++mb)
      for (int mc = 0; mc < 4; ++mc)
        for (const auto& ca : mats)
          for (const auto& cb : mats)
            for (const auto& cc : mats)
              for (int pa : {0, 1})
                for (int pb : {0, 1})
                  for (int pc : {0, 1}) {
                    const auto x = gmono(ma, GradedOp{ca, pa});
                    const auto y = gmono(mb, GradedOp{cb, pb});
                    const auto w = gmono(mc, GradedOp{cc, pc});
                    assoc = std::max(
                        assoc, gmax_abs(gmul(gmul(x, y), w) - gmul(x, gmul(y, w))));
                  }
  out.push_back(
      named_check("grassmann", "associativity_exhaustive", "associativity_exhaustive", assoc));
  return out;
}

inline std::vector<CheckResult> run_scs_suite(const RunConfig& cfg) {
  std::vector<CheckResult> out;
  const SuperSpace s = build_superspace(cfg.params(), cfg.z, cfg.n_max);
  const MatX eta = s.eta_s, eta_inv = s.eta_s_inv;

  for (std::size_t i = 0; i < cfg.amplitudes.size(); ++i) {
    const cplx a = cfg.amplitudes[i];
    require_representable(a, cfg.n_max);
    const std::string tag = ".a" + std::to_string(i);
    auto emit = [&](const std::string& key, double residual) {
      out.push_back(named_check("scs", key, key + tag, residual));
    };

    const SuperCoherent c = closed_form_scs(s, a);
    emit("orbit_closed_form", gdiff(c.ket, orbit_family(s, a, Family::primary)));
    emit("dual_orbit_closed_form", gdiff(c.dual_ket, orbit_family(s, a, Family::dual)));

    // xi = 0 projection of the displacement orbit against the independent
    // coherent-sum construction
    const auto orbit = orbit_family(s, a, Family::primary);
    const VecX glauber = kron(MatX(coherent_boson(a, s.N_max)),
                              MatX((s.metric.rho_inv * s.U.col(0)).cast<cplx>()));
    emit("glauber_component", max_abs(MatX(orbit.at(m_one) - glauber)));

    const auto eig = eigenrelation_residuals(s, c);
    emit("eigen_a_primary", eig.at("a_eigen_primary"));
    emit("eigen_B_primary", eig.at("B_eigen_primary"));
    emit("eigen_a_dual", eig.at("a_eigen_dual"));
    emit("eigen_Btilde_dual", eig.at("Btilde_eigen_dual"));

    const auto d_gen = displacement_generator(s, a, Family::primary, +1);
    const auto d_gen_inv = displacement_generator(s, a, Family::primary, -1);
    emit("pseudo_unitarity_generator", gunit_defect(gmul(d_gen_inv, d_gen)));

    const int low = factored_safe_levels(cfg.n_max, a);
    const auto d_fac = displacement_factored(s, a, Family::primary);
    const auto d_fac_sharp = pseudo_adjoint(d_fac, eta, eta_inv);
    emit("pseudo_unitarity_factored_low", gunit_defect(gmul(d_fac_sharp, d_fac), low));
    emit("displacement_bch_low", gblock_diff(d_fac, d_gen, low));

    emit("bi_normalization", bi_normalization_residual(c));
  }
  return out;
}

inline std::vector<CheckResult> run_identity_suite(const RunConfig& cfg) {
  std::vector<CheckResult> out;
  ParamSampler sampler(cfg.seed);
  ResidualMap worst;
  auto fold = [&worst](const ResidualMap& r) {
    for (const auto& [k, v] : r) {
      auto it = worst.find(k);
      if (it == worst.end() || it->second < v) worst[k] = v;
    }
  };
  for (int i = 0; i < cfg.samples; ++i) {
    const ParamPoint pt = sampler.draw();
    fold(core_residuals(pt.p, pt.z));
    fold(phermion_residuals(pt.p, pt.z));
    fold(susy_residuals(pt.p, pt.z, cfg.n_max));
  }
  for (const auto& [key, value] : worst)
    out.push_back(named_check("identity", key, "sampled_" + key, value));

  const SuperSpace s = build_superspace(cfg.params(), cfg.z, cfg.n_max);
  const ResolutionReport res = resolve_identity(s, cfg.quadrature);
  out.push_back(
      named_check("identity", "resolution_cross", "resolution_cross", res.residual_cross));
  const MatX ident = MatX::Identity(s.dim(), s.dim());
  const double res2 =
      max_abs(MatX(resolution_quadrature(s, doubled(cfg.quadrature), Family::dual) - ident));
  const double shift = std::abs(res2 - res.residual_cross) /
                       std::max(res.residual_cross, 1e-300);
  out.push_back(
      named_check("identity", "resolution_node_doubling", "resolution_node_doubling", shift));
  // the same-family integral must stay far from the identity; the residual is
  // the shortfall below the 0.01 separation floor
  const double gap = std::max(0.0, 0.01 - res.residual_same);
  out.push_back(named_check("identity", "resolution_same_family_gap",
                            "resolution_same_family_gap", gap));
  return out;
}

inline Report run_suites(const RunConfig& cfg) {
  validate_config(cfg);
  Report rep;
  rep.config["omega"] = cfg.omega;
  rep.config["alpha"] = cfg.alpha;
  rep.config["beta"] = cfg.beta;
  rep.config["z"] = cfg.z;
  rep.config["hermitian_limit"] = cfg.hermitian_limit;
  rep.config["n_max"] = cfg.n_max;
  ordered_json amps = ordered_json::array();
  for (const auto& a : cfg.amplitudes) amps.push_back({a.real(), a.imag()});
  rep.config["amplitudes"] = std::move(amps);
  rep.config["quadrature"] = {{"radius", cfg.quadrature.radius},
                              {"n_radial", cfg.quadrature.n_radial},
                              {"n_angular", cfg.quadrature.n_angular}};
  rep.config["seed"] = cfg.seed;
  rep.config["samples"] = cfg.samples;
  rep.config["suites"] = cfg.suites;

  for (const auto& suite : cfg.suites) {
    if (suite == "core")
      rep.add_all(run_core_suite(cfg));
    else if (suite == "phermion")
      rep.add_all(run_phermion_suite(cfg));
    else if (suite == "susy")
      rep.add_all(run_susy_suite(cfg));
    else if (suite == "grassmann")
      rep.add_all(run_grassmann_suite(cfg));
    else if (suite == "scs")
      rep.add_all(run_scs_suite(cfg));
    else if (suite == "identity")
      rep.add_all(run_identity_suite(cfg));
  }
  rep.sort_checks();
  return rep;
}

// ---------------------------------------------------------------------------
// Sweep and spectrum outputs
// ---------------------------------------------------------------------------

struct SweepSpec {
  std::string param = "z";
  double from = -1.0;
  double to = 1.0;
  int steps = 81;
};

// One CSV row per grid point; rows that fall outside the validity or metric
// domain are kept and flagged in `status` with their numeric fields left
// empty from the first failing quantity onward.
inline std::string sweep_csv(const RunConfig& base, const SweepSpec& sweep) {
  if (sweep.steps < 1) throw ConfigError("sweep needs at least one step");
  const bool known = sweep.param == "z" || sweep.param == "omega" || sweep.param == "alpha" ||
                     sweep.param == "beta";
  if (!known) throw ConfigError("unknown sweep parameter '" + sweep.param + "'");

  std::string out = csv_row({"value", "epsilon", "theta", "omega_cap", "delta", "lambda",
                             "rho_min_eig", "phermion_unit_residual", "status"});
  for (int i = 0; i < sweep.steps; ++i) {
    const double v = sweep.steps == 1
                         ? sweep.from
                         : sweep.from + (sweep.to - sweep.from) * double(i) / (sweep.steps - 1);
    RunConfig cfg = base;
    if (sweep.param == "z")
      cfg.z = v;
    else if (sweep.param == "omega")
      cfg.omega = v;
    else if (sweep.param == "alpha")
      cfg.alpha = v;
    else
      cfg.beta = v;

    std::vector<std::string> row(9);
    row[0] = number_repr(v);
    std::string status = "ok";
    try {
      const ModelParams p = cfg.params();
      require_valid(p);
      row[3] = number_repr(omega_cap(p));
      const MetricData m = build_rho(p, cfg.z);
      row[1] = number_repr(m.epsilon);
      row[2] = number_repr(m.theta);
      row[6] = number_repr(rho_min_eigenvalue(m.rho));
      const DerivedScalars d = derived_scalars(p, cfg.z);
      row[4] = number_repr(d.delta);
      row[5] = number_repr(d.lambda);
      const PhermionSet set = build_phermion(p, cfg.z);
      row[7] = number_repr(max_abs(Eigen::MatrixXd(set.B * set.B_sharp + set.B_sharp * set.B -
                                                   Mat2::Identity())));
    } catch (const ValidityError&) {
      status = "invalid";
    } catch (const DegenerateError&) {
      status = "degenerate";
    } catch (const DomainError&) {
      status = "domain";
    } catch (const ConsistencyError&) {
      status = "inconsistent";
    }
    row[8] = status;
    out += csv_row(row);
  }
  return out;
}

// Spectral summary at the configured point: the 2x2 eigenvalues, the derived
// oscillator scalars, and the supersymmetric tower at the configured cutoff.
inline ordered_json spectrum_json(const RunConfig& cfg) {
  const ModelParams p = cfg.params();
  require_valid(p);
  ordered_json out = ordered_json::object();
  out["omega_cap"] = omega_cap(p);

  Eigen::EigenSolver<Mat2> es(build_H(p));
  cplx e0 = es.eigenvalues()(0), e1 = es.eigenvalues()(1);
  if (e0.real() > e1.real()) std::swap(e0, e1);
  out["H_eigenvalues"] = {{e0.real(), e0.imag()}, {e1.real(), e1.imag()}};

  const MetricData m = build_rho(p, cfg.z);
  out["epsilon"] = m.epsilon;
  out["theta"] = m.theta;
  const DerivedScalars d = derived_scalars(p, cfg.z);
  out["delta"] = d.delta;
  out["lambda"] = d.lambda;
  out["tau"] = d.tau;
  out["h_eigenvalues"] = {-0.5 * d.Omega, 0.5 * d.Omega};

  const SuperSpace s = build_superspace(p, cfg.z, cfg.n_max);
  Eigen::ComplexEigenSolver<MatX> ses(s.H_s);
  std::vector<double> levels(s.dim());
  for (int i = 0; i < s.dim(); ++i) levels[i] = ses.eigenvalues()(i).real();
  std::sort(levels.begin(), levels.end());
  out["Hs_levels"] = levels;
  out["n_max"] = cfg.n_max;
  return out;
}

}  // namespace phsusy
