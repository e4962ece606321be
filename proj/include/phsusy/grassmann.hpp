#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "phsusy/errors.hpp"
#include "phsusy/linalg.hpp"

namespace phsusy {

// Two-generator Grassmann algebra over the canonical monomial basis
// {1, xi, xi*, xi xi*}. xi*xi inputs are normalized to -xi xi* on entry.
enum Monomial : int { m_one = 0, m_xi = 1, m_xistar = 2, m_xixistar = 3 };

constexpr int monomial_parity(int m) { return (m == m_xi || m == m_xistar) ? 1 : 0; }

// product table: (sign, monomial) or absent when the product vanishes
struct MonoProduct {
  int sign = 0;
  int mono = -1;
  bool nonzero() const { return mono >= 0; }
};

constexpr MonoProduct mono_mul(int a, int b) {
  if (a == m_one) return {1, b};
  if (b == m_one) return {1, a};
  if (a == m_xi && b == m_xistar) return {1, m_xixistar};
  if (a == m_xistar && b == m_xi) return {-1, m_xixistar};
  return {0, -1};  // xi*xi squared, or anything touching xi xi* twice
}

// Fock operators carry fermion parity (B-type odd, boson/diagonal even),
// assigned structurally at lift time. Scalars and vectors are even.
struct GradedOp {
  MatX mat;
  int parity = 0;
};

inline int coef_parity(const GradedOp& c) { return c.parity; }
inline int coef_parity(const cplx&) { return 0; }
inline int coef_parity(const VecX&) { return 0; }
inline int coef_parity(const Eigen::RowVectorXcd&) { return 0; }

inline bool coef_is_zero(const GradedOp& c) { return max_abs(c.mat) == 0.0; }
inline bool coef_is_zero(const cplx& c) { return c == 0.0; }
inline bool coef_is_zero(const VecX& c) { return max_abs(MatX(c)) == 0.0; }
inline bool coef_is_zero(const Eigen::RowVectorXcd& c) { return max_abs(MatX(c)) == 0.0; }

inline double coef_max_abs(const GradedOp& c) { return max_abs(c.mat); }
inline double coef_max_abs(const cplx& c) { return std::abs(c); }
inline double coef_max_abs(const VecX& c) { return max_abs(MatX(c)); }
inline double coef_max_abs(const Eigen::RowVectorXcd& c) { return max_abs(MatX(c)); }

// coefficient products, with result type deduced per combination
inline cplx coef_mul(const cplx& a, const cplx& b) { return a * b; }
inline VecX coef_mul(const cplx& a, const VecX& b) { return a * b; }
inline VecX coef_mul(const VecX& a, const cplx& b) { return a * b; }
inline GradedOp coef_mul(const GradedOp& a, const GradedOp& b) {
  return GradedOp{MatX(a.mat * b.mat), (a.parity + b.parity) & 1};
}
inline GradedOp coef_mul(const cplx& a, const GradedOp& b) { return GradedOp{MatX(a * b.mat), b.parity}; }
inline GradedOp coef_mul(const GradedOp& a, const cplx& b) { return GradedOp{MatX(a.mat * b), a.parity}; }
inline VecX coef_mul(const GradedOp& a, const VecX& b) { return VecX(a.mat * b); }
inline Eigen::RowVectorXcd coef_mul(const Eigen::RowVectorXcd& a, const GradedOp& b) {
  return Eigen::RowVectorXcd(a * b.mat);
}
inline cplx coef_mul(const Eigen::RowVectorXcd& a, const VecX& b) { return (a * b)(0); }
inline GradedOp coef_mul(const VecX& a, const Eigen::RowVectorXcd& b) {
  return GradedOp{MatX(a * b), 0};
}
inline Eigen::RowVectorXcd coef_mul(const cplx& a, const Eigen::RowVectorXcd& b) {
  return Eigen::RowVectorXcd(a * b);
}
inline Eigen::RowVectorXcd coef_mul(const Eigen::RowVectorXcd& a, const cplx& b) {
  return Eigen::RowVectorXcd(a * b);
}

inline cplx coef_add(const cplx& a, const cplx& b) { return a + b; }
inline VecX coef_add(const VecX& a, const VecX& b) { return a + b; }
inline Eigen::RowVectorXcd coef_add(const Eigen::RowVectorXcd& a, const Eigen::RowVectorXcd& b) {
  return a + b;
}
inline GradedOp coef_add(const GradedOp& a, const GradedOp& b) {
  if (coef_is_zero(a)) return b;
  if (coef_is_zero(b)) return GradedOp{MatX(a.mat + b.mat), a.parity};
  if (a.parity != b.parity)
    throw ConsistencyError("sum of operators with opposite fermion parity is not homogeneous");
  return GradedOp{MatX(a.mat + b.mat), a.parity};
}

inline cplx coef_negate(const cplx& a) { return -a; }
inline VecX coef_negate(const VecX& a) { return -a; }
inline Eigen::RowVectorXcd coef_negate(const Eigen::RowVectorXcd& a) { return -a; }
inline GradedOp coef_negate(const GradedOp& a) { return GradedOp{MatX(-a.mat), a.parity}; }

template <typename T>
struct GrassmannElement {
  std::array<std::optional<T>, 4> c;  // indexed by Monomial

  bool has(int m) const { return c[m].has_value(); }
  const T& at(int m) const { return *c[m]; }

  void accumulate(int m, const T& v) {
    if (!c[m])
      c[m] = v;
    else
      c[m] = coef_add(*c[m], v);
  }

  GrassmannElement& operator+=(const GrassmannElement& o) {
    for (int m = 0; m < 4; ++m)
      if (o.c[m]) accumulate(m, *o.c[m]);
    return *this;
  }

  GrassmannElement operator-() const {
    GrassmannElement out;
    for (int m = 0; m < 4; ++m)
      if (c[m]) out.c[m] = coef_negate(*c[m]);
    return out;
  }

  GrassmannElement operator+(const GrassmannElement& o) const {
    GrassmannElement out = *this;
    out += o;
    return out;
  }

  GrassmannElement operator-(const GrassmannElement& o) const { return *this + (-o); }
};

template <typename T>
GrassmannElement<T> gmono(int m, const T& coeff) {
  GrassmannElement<T> e;
  e.c[m] = coeff;
  return e;
}

template <typename T>
GrassmannElement<T> gone(const T& coeff) {
  return gmono(m_one, coeff);
}

template <typename T>
double gmax_abs(const GrassmannElement<T>& x) {
  double worst = 0.0;
  for (int m = 0; m < 4; ++m)
    if (x.has(m)) worst = std::max(worst, coef_max_abs(x.at(m)));
  return worst;
}

// Graded product. Moving monomial `ma` across the right coefficient costs
// (-1)^{parity(ma)*parity(coef_b)} (Koszul), then the monomials compose.
template <typename A, typename B>
auto gmul(const GrassmannElement<A>& x, const GrassmannElement<B>& y)
    -> GrassmannElement<decltype(coef_mul(std::declval<A>(), std::declval<B>()))> {
  using R = decltype(coef_mul(std::declval<A>(), std::declval<B>()));
  GrassmannElement<R> out;
  for (int ma = 0; ma < 4; ++ma) {
    if (!x.has(ma)) continue;
    for (int mb = 0; mb < 4; ++mb) {
      if (!y.has(mb)) continue;
      const MonoProduct mp = mono_mul(ma, mb);
      if (!mp.nonzero()) continue;
      const int sign = mp.sign * ((monomial_parity(ma) & coef_parity(y.at(mb))) ? -1 : 1);
      R term = coef_mul(x.at(ma), y.at(mb));
      out.accumulate(mp.mono, sign < 0 ? coef_negate(term) : term);
    }
  }
  return out;
}

// Berezin integral: the xi xi* coefficient (normalization: integral of xi xi* is 1).
template <typename T>
std::optional<T> berezin(const GrassmannElement<T>& x) {
  if (x.has(m_xixistar)) return x.at(m_xixistar);
  return std::nullopt;
}

inline cplx berezin_scalar(const GrassmannElement<cplx>& x) {
  return x.has(m_xixistar) ? x.at(m_xixistar) : cplx(0.0);
}

// Hermitian adjoint of a scalar-valued element: coefficients conjugate and the
// monomials reverse-conjugate (xi <-> xi*, xi xi* fixed since (xi xi*)^dag =
// xi xi*). Scalar coefficients commute, so no reordering signs appear.
inline GrassmannElement<cplx> gadjoint(const GrassmannElement<cplx>& x) {
  constexpr int dag[4] = {m_one, m_xistar, m_xi, m_xixistar};
  GrassmannElement<cplx> out;
  for (int m = 0; m < 4; ++m)
    if (x.has(m)) out.accumulate(dag[m], std::conj(x.at(m)));
  return out;
}

// Hermitian adjoint of a ket-valued element: monomials conjugate (xi <-> xi*,
// xi xi* stays after order reversal), coefficients become bra rows. States are
// even, so no reordering signs appear.
inline GrassmannElement<Eigen::RowVectorXcd> gadjoint(const GrassmannElement<VecX>& x) {
  constexpr int dag[4] = {m_one, m_xistar, m_xi, m_xixistar};
  GrassmannElement<Eigen::RowVectorXcd> out;
  for (int m = 0; m < 4; ++m)
    if (x.has(m)) out.accumulate(dag[m], x.at(m).adjoint());
  return out;
}

// Pseudo-Hermitian adjoint of an operator-valued element: reverses all
// fermionic factors. Per monomial: coefficient maps through eta^-1 (.)† eta,
// the monomial conjugates, and restoring coefficient-left order costs
// (-1)^{parity(m)*parity(c)}.
inline GrassmannElement<GradedOp> pseudo_adjoint(const GrassmannElement<GradedOp>& x,
                                                 const MatX& eta, const MatX& eta_inv) {
  constexpr int dag[4] = {m_one, m_xistar, m_xi, m_xixistar};
  GrassmannElement<GradedOp> out;
  for (int m = 0; m < 4; ++m) {
    if (!x.has(m)) continue;
    const GradedOp& c = x.at(m);
    GradedOp cs{MatX(eta_inv * c.mat.adjoint() * eta), c.parity};
    const bool flip = (monomial_parity(m) & c.parity) != 0;
    out.accumulate(dag[m], flip ? coef_negate(cs) : cs);
  }
  return out;
}

// exp of an even element: matrix exponential of the monomial-1 part times the
// terminating series in the nilpotent Grassmann directions. Requires the two
// parts to commute (they do for every displacement generator here, where the
// boson part lives in the other tensor factor).
inline GrassmannElement<GradedOp> gexp_even(const GrassmannElement<GradedOp>& x,
                                            double commute_tol = 1e-10) {
  for (int m = 0; m < 4; ++m) {
    if (!x.has(m) || coef_is_zero(x.at(m))) continue;
    if ((monomial_parity(m) + coef_parity(x.at(m))) & 1)
      throw ConsistencyError("gexp_even requires an even element (odd monomials need odd operators)");
  }
  Eigen::Index dim = 0;
  for (int m = 0; m < 4; ++m)
    if (x.has(m)) dim = x.at(m).mat.rows();
  if (dim == 0) return gone(GradedOp{MatX::Identity(1, 1), 0});

  MatX a = x.has(m_one) ? x.at(m_one).mat : MatX(MatX::Zero(dim, dim));
  GrassmannElement<GradedOp> nilp;
  for (int m : {m_xi, m_xistar, m_xixistar})
    if (x.has(m)) nilp.c[m] = x.at(m);

  for (int m : {m_xi, m_xistar, m_xixistar}) {
    if (!nilp.has(m)) continue;
    const double comm = max_abs(MatX(a * nilp.at(m).mat - nilp.at(m).mat * a));
    const double scale = std::max(1.0, max_abs(a) * coef_max_abs(nilp.at(m)));
    if (comm > commute_tol * scale)
      throw ConsistencyError("gexp_even: monomial-1 part does not commute with a Grassmann direction");
  }

  MatX ea;
  if (max_abs(a) == 0.0)
    ea = MatX::Identity(dim, dim);
  else if (max_abs(MatX(a + a.adjoint())) <= 1e-12 * std::max(1.0, max_abs(a)))
    ea = expm_antihermitian(a);
  else
    ea = a.exp();

  GrassmannElement<GradedOp> series = gone(GradedOp{MatX::Identity(dim, dim), 0});
  series += nilp;
  GrassmannElement<GradedOp> n2 = gmul(nilp, nilp);
  for (int m = 0; m < 4; ++m)
    if (n2.has(m)) series.accumulate(m, coef_mul(cplx(0.5), n2.at(m)));

  return gmul(gone(GradedOp{ea, 0}), series);
}

// exp of a scalar element c0*1 + c3*xi xi* (the Gaussian Grassmann weight).
inline GrassmannElement<cplx> gexp_scalar(const GrassmannElement<cplx>& x) {
  if (x.has(m_xi) || x.has(m_xistar))
    throw ConsistencyError("gexp_scalar requires an even scalar element");
  const cplx c0 = x.has(m_one) ? x.at(m_one) : cplx(0.0);
  const cplx c3 = x.has(m_xixistar) ? x.at(m_xixistar) : cplx(0.0);
  GrassmannElement<cplx> out;
  out.c[m_one] = std::exp(c0);
  if (c3 != 0.0) out.c[m_xixistar] = std::exp(c0) * c3;
  return out;
}

}  // namespace phsusy
