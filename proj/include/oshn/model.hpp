#pragma once

#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "oshn/series.hpp"

namespace oshn {

// Input data: psi(y) = sum_k c_k y^k and y(z) = sum_k s_k z^k, both with zero
// constant term, given as finite truncated coefficient lists (psi[0] = c_1).
struct ModelSpec {
  std::vector<Rational> psi;
  std::vector<Rational> y;

  Rational psi_coeff(int k) const;  // c_k, 0 beyond the list
  Rational y_coeff(int k) const;   // s_k, 0 beyond the list
};

// Coefficients of S(u) = (e^{u/2} - e^{-u/2})/u = sum u^{2k}/(2^{2k}(2k+1)!),
// of 1/S and of 1/S^2, up to degree cap inclusive.
std::vector<Rational> s_series_coeffs(int cap);
std::vector<Rational> inv_s_coeffs(int cap);
std::vector<Rational> inv_s2_coeffs(int cap);

// Dense one-variable series helpers over exact rationals (index = degree).
std::vector<Rational> uv_mul(const std::vector<Rational>& a, const std::vector<Rational>& b, int cap);
std::vector<Rational> uv_inv(const std::vector<Rational>& a, int cap);
std::vector<Rational> uv_exp(const std::vector<Rational>& a, int cap);  // a[0] == 0

// Coefficients of X(z) = z e^{-psi(y(z))} to the given order inclusive.
std::vector<Rational> x_series_coeffs(const ModelSpec& spec, int order);

// The (y, hbar, v) working ring for vertex weight series; axis 0 is y.
ContextPtr make_y_ring(int y_order, int h_high, int v_cap);

// psi as a polynomial in the ring's y axis.
LaurentSeries psi_poly(const ModelSpec& spec, const ContextPtr& yring);

// phi_m(y, hbar) = exp(sum_{i=1..m} psi(y + (2i-m-1)/2 hbar)) for m > 0,
// phi_0 = 1, phi_{-m} = 1/phi_m.
LaurentSeries phi_m(const ModelSpec& spec, int m, const ContextPtr& yring);

// L_r(v, y, hbar) for r = 0..rmax:
//   L_0 = exp(v (S(v hbar d/dy)/S(hbar d/dy) - 1) psi(y)),
//   L_{r+1} = (d/dy + v psi'(y)) L_r,
// computed with d/dy acting on the formal y axis before any substitution.
std::vector<LaurentSeries> l_series_table(const ModelSpec& spec, int rmax, const ContextPtr& yring);

// gamma^{[k]}_{i,j} for k >= -1: the sector expansion of
//   gamma_{i,j} = z_i z_j/(z_i - z_j)^2   (k = 0)
// acted on by (z_i d/dz_i)^k; gamma^{[-1]}_{i,j} expands z_i/(z_j - z_i).
LaurentSeries gamma_series(const ContextPtr& ctx, int i, int j, int k);

// Precomputed per-variable series over a fixed main context. Built once,
// then read-only and safe to share across threads.
class ModelCache {
 public:
  // rmax bounds the L_r table, kmax the cached derivative orders.
  ModelCache(ModelSpec spec, ContextPtr ctx, int rmax, int kmax);

  const ModelSpec& spec() const { return spec_; }
  const ContextPtr& context() const { return ctx_; }
  int rmax() const { return rmax_; }

  const LaurentSeries& y_series(int i) const { return y_[i]; }
  const LaurentSeries& y_zdz(int i, int k) const;    // (z d/dz)^k y(z_i), k >= 0
  const LaurentSeries& psi_at(int i, int k) const;   // psi^{(k)}(y(z_i)), k >= 0
  const LaurentSeries& X(int i) const { return x_[i]; }
  const LaurentSeries& X_pow(int i, int m) const;    // X(z_i)^m, m >= 0
  const std::vector<Rational>& x_coeffs() const { return x_coeffs_; }
  const LaurentSeries& Q(int i) const { return q_[i]; }
  const LaurentSeries& invQ(int i) const { return invq_[i]; }

  LaurentSeries apply_D(const LaurentSeries& f, int i) const;          // (1/Q_i) z_i d/dz_i
  LaurentSeries apply_D_inverse(const LaurentSeries& f, int i) const;  // (z_i d/dz_i)^{-1} Q_i .
  LaurentSeries apply_S_of_QD(const LaurentSeries& f, int i) const;    // S(u_i hbar z_i d/dz_i)

  // [v^j] L_r(v, y(z_i), hbar) as a v-free series in the main ring;
  // zero for j > l_vdeg(i, r).
  const LaurentSeries& lv(int i, int r, int j) const;
  int l_vdeg(int i, int r) const;

  Rational psi_der0(int k);  // psi^{(k)}(0) = k! c_k; warns past the list

  std::vector<std::string> drain_warnings();

 private:
  ModelSpec spec_;
  ContextPtr ctx_;
  int rmax_;
  LaurentSeries zero_;
  std::vector<LaurentSeries> y_, x_, q_, invq_;
  std::vector<std::vector<LaurentSeries>> y_zdz_;    // [i][k]
  std::vector<std::vector<LaurentSeries>> psi_at_;   // [i][k]
  mutable std::vector<std::vector<LaurentSeries>> x_pow_;  // [i][m], grown lazily
  std::vector<Rational> x_coeffs_;
  std::vector<std::vector<std::vector<LaurentSeries>>> lv_;  // [i][r][j]
  std::vector<Rational> s_coeffs_;
  std::vector<std::string> warnings_;
  mutable std::mutex mu_;
};

}  // namespace oshn
