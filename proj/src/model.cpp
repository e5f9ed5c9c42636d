#include "oshn/model.hpp"

#include <algorithm>
#include <sstream>

namespace oshn {

Rational ModelSpec::psi_coeff(int k) const {
  return (k >= 1 && k <= static_cast<int>(psi.size())) ? psi[k - 1] : Rational(0);
}

Rational ModelSpec::y_coeff(int k) const {
  return (k >= 1 && k <= static_cast<int>(y.size())) ? y[k - 1] : Rational(0);
}

std::vector<Rational> uv_mul(const std::vector<Rational>& a, const std::vector<Rational>& b, int cap) {
  std::vector<Rational> r(cap + 1, Rational(0));
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= cap; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= cap; ++j)
      r[i + j] += a[i] * b[j];
  }
  return r;
}

std::vector<Rational> uv_inv(const std::vector<Rational>& a, int cap) {
  if (a.empty() || a[0] == 0) throw std::invalid_argument("uv_inv: zero constant term");
  std::vector<Rational> r(cap + 1, Rational(0));
  r[0] = Rational(1) / a[0];
  for (int m = 1; m <= cap; ++m) {
    Rational acc(0);
    for (int k = 1; k <= m && k < static_cast<int>(a.size()); ++k) acc += a[k] * r[m - k];
    r[m] = -acc / a[0];
  }
  return r;
}

std::vector<Rational> uv_exp(const std::vector<Rational>& a, int cap) {
  if (!a.empty() && a[0] != 0) throw std::invalid_argument("uv_exp: nonzero constant term");
  // g' = a' g termwise: m g_m = sum_{k<=m} k a_k g_{m-k}
  std::vector<Rational> g(cap + 1, Rational(0));
  g[0] = 1;
  for (int m = 1; m <= cap; ++m) {
    Rational acc(0);
    for (int k = 1; k <= m && k < static_cast<int>(a.size()); ++k)
      acc += Rational(k) * a[k] * g[m - k];
    g[m] = acc / m;
  }
  return g;
}

std::vector<Rational> x_series_coeffs(const ModelSpec& spec, int order) {
  if (order < 1) throw std::invalid_argument("x_series_coeffs: order >= 1 required");
  std::vector<Rational> y(order, Rational(0));  // y(z) to degree order-1 suffices
  for (int k = 1; k < order && k <= static_cast<int>(spec.y.size()); ++k) y[k] = spec.y[k - 1];
  // psi(y(z)) by Horner
  std::vector<Rational> p(order, Rational(0));
  for (int k = static_cast<int>(spec.psi.size()); k >= 1; --k) {
    p = uv_mul(p, y, order - 1);
    p[0] += spec.psi[k - 1];
  }
  p = uv_mul(p, y, order - 1);
  for (auto& c : p) c = -c;
  auto e = uv_exp(p, order - 1);
  std::vector<Rational> x(order + 1, Rational(0));
  for (int k = 0; k < static_cast<int>(e.size()); ++k) x[k + 1] = e[k];
  return x;
}

std::vector<Rational> s_series_coeffs(int cap) {
  std::vector<Rational> s(cap + 1, Rational(0));
  for (int k = 0; 2 * k <= cap; ++k)
    s[2 * k] = Rational(1) / (int_pow(2, 2 * k) * factorial(2 * k + 1));
  return s;
}

std::vector<Rational> inv_s_coeffs(int cap) { return uv_inv(s_series_coeffs(cap), cap); }

std::vector<Rational> inv_s2_coeffs(int cap) {
  auto i1 = inv_s_coeffs(cap);
  return uv_mul(i1, i1, cap);
}

ContextPtr make_y_ring(int y_order, int h_high, int v_cap) {
  SeriesContext c;
  c.n_z = 1;
  c.z_low = {0};
  c.z_order = y_order;
  c.h_low = 0;
  c.h_high = h_high;
  c.n_u = 0;
  c.v_cap = v_cap;
  return make_context(c);
}

LaurentSeries psi_poly(const ModelSpec& spec, const ContextPtr& yring) {
  LaurentSeries p(yring);
  Exps e(yring->dims(), 0);
  for (int k = 1; k <= static_cast<int>(spec.psi.size()); ++k) {
    e[0] = static_cast<int16_t>(k);
    p.add_term(e, spec.psi[k - 1]);
  }
  return p;
}

namespace {

// psi evaluated at a zero-constant-term argument, by Horner.
LaurentSeries psi_of(const ModelSpec& spec, const LaurentSeries& arg) {
  LaurentSeries r(arg.context());
  for (int k = static_cast<int>(spec.psi.size()); k >= 1; --k) {
    r = r * arg;
    LaurentSeries c = LaurentSeries::constant(arg.context(), spec.psi[k - 1]);
    r += c;
  }
  return r * arg;
}

}  // namespace

LaurentSeries phi_m(const ModelSpec& spec, int m, const ContextPtr& yring) {
  if (m == 0) return LaurentSeries::constant(yring, Rational(1));
  if (m < 0) return invert_unit(phi_m(spec, -m, yring));
  LaurentSeries y = LaurentSeries::variable(yring, 0);
  LaurentSeries h = LaurentSeries::variable(yring, yring->h_axis());
  LaurentSeries sum(yring);
  for (int i = 1; i <= m; ++i) {
    LaurentSeries arg = y + h * Rational(2 * i - m - 1, 2);
    sum += psi_of(spec, arg);
  }
  return exp_series(sum);
}

std::vector<LaurentSeries> l_series_table(const ModelSpec& spec, int rmax, const ContextPtr& yring) {
  int hcap = yring->h_high;
  auto s = s_series_coeffs(hcap);
  auto si = inv_s_coeffs(hcap);

  LaurentSeries psi = psi_poly(spec, yring);
  std::vector<LaurentSeries> psider{psi};
  for (int k = 1; k <= std::max(hcap, 1); ++k) psider.push_back(deriv(psider.back(), 0));

  // v * ([t^{2k}] S(v t)/S(t)) = sum_a s_{2a} si_{2(k-a)} v^{2a+1}
  LaurentSeries arg(yring);
  int va = yring->v_axis();
  for (int k = 1; 2 * k <= hcap; ++k) {
    LaurentSeries rho(yring);
    Exps e(yring->dims(), 0);
    e[yring->h_axis()] = static_cast<int16_t>(2 * k);
    for (int a = 0; a <= k; ++a) {
      e[va] = static_cast<int16_t>(2 * a + 1);
      rho.add_term(e, s[2 * a] * si[2 * (k - a)]);
    }
    arg += rho * psider[2 * k];
  }
  std::vector<LaurentSeries> L{exp_series(arg)};
  LaurentSeries vpsi1 = LaurentSeries::variable(yring, va) * psider[1];
  for (int r = 1; r <= rmax; ++r) L.push_back(deriv(L.back(), 0) + vpsi1 * L.back());
  return L;
}

LaurentSeries gamma_series(const ContextPtr& ctx, int i, int j, int k) {
  if (i == j) throw std::invalid_argument("gamma_series: i == j");
  if (k < -1) throw std::invalid_argument("gamma_series: k < -1");
  int small = std::min(i, j), large = std::max(i, j);
  int mmax = -ctx->z_low[large];
  LaurentSeries r(ctx);
  Exps e(ctx->dims(), 0);
  if (i < j) {
    // sum_m m^{k+1} (z_i/z_j)^m
    for (int m = 1; m <= mmax; ++m) {
      e[small] = static_cast<int16_t>(m);
      e[large] = static_cast<int16_t>(-m);
      r.add_term(e, int_pow(m, k + 1));
    }
  } else if (k >= 0) {
    // gamma^{[k]}_{i,j} = (-1)^k gamma^{[k]}_{j,i}
    Rational sign = (k % 2) ? Rational(-1) : Rational(1);
    for (int m = 1; m <= mmax; ++m) {
      e[small] = static_cast<int16_t>(m);
      e[large] = static_cast<int16_t>(-m);
      r.add_term(e, sign * int_pow(m, k + 1));
    }
  } else {
    // gamma^{[-1]}_{i,j} = -1 - gamma^{[-1]}_{j,i}
    r.add_term(e, Rational(-1));
    for (int m = 1; m <= mmax; ++m) {
      e[small] = static_cast<int16_t>(m);
      e[large] = static_cast<int16_t>(-m);
      r.add_term(e, Rational(-1));
    }
  }
  return r;
}

ModelCache::ModelCache(ModelSpec spec, ContextPtr ctx, int rmax, int kmax)
    : spec_(std::move(spec)), ctx_(std::move(ctx)), rmax_(rmax), zero_(ctx_) {
  int n = ctx_->n_z;
  s_coeffs_ = s_series_coeffs(std::max(0, ctx_->u_cap + ctx_->h_high + 2));

  y_.reserve(n);
  for (int i = 0; i < n; ++i) {
    LaurentSeries y(ctx_);
    Exps e(ctx_->dims(), 0);
    for (int k = 1; k <= static_cast<int>(spec_.y.size()); ++k) {
      e[i] = static_cast<int16_t>(k);
      y.add_term(e, spec_.y[k - 1]);
    }
    y_.push_back(std::move(y));
  }

  y_zdz_.resize(n);
  for (int i = 0; i < n; ++i) {
    y_zdz_[i].push_back(y_[i]);
    for (int k = 1; k <= kmax; ++k) y_zdz_[i].push_back(zdz(y_zdz_[i].back(), i));
  }

  // psi^{(k)}(y(z_i)) by differentiating the psi polynomial k times, then
  // substituting; Horner over powers of y(z_i).
  psi_at_.resize(n);
  int kc = static_cast<int>(spec_.psi.size());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= kmax; ++k) {
      LaurentSeries r(ctx_);
      for (int d = kc - k; d >= 0; --d) {
        r = r * y_[i];
        Rational a = spec_.psi_coeff(k + d) * factorial(k + d) / factorial(d);
        if (a != 0) r += LaurentSeries::constant(ctx_, a);
      }
      psi_at_[i].push_back(std::move(r));
    }
  }

  for (int i = 0; i < n; ++i) {
    x_.push_back(LaurentSeries::variable(ctx_, i) * exp_series(-psi_at_[i][0]));
    q_.push_back(LaurentSeries::constant(ctx_, Rational(1)) - psi_at_[i][1] * y_zdz_[i][1]);
    invq_.push_back(invert_unit(q_.back()));
  }
  x_pow_.resize(n);

  // one extra order so divided differences stay exact to the window
  x_coeffs_ = x_series_coeffs(spec_, ctx_->z_order + 1);

  // L_r tables, substituted per vertex and sliced by powers of v. Each
  // d/dy shrinks the reliable y-window by one, so the working ring carries
  // rmax + hcap degrees of headroom above the z-order.
  if (rmax_ >= 0) {
    int hcap = std::max(0, ctx_->h_high);
    ContextPtr yring = make_y_ring(ctx_->z_order + rmax_ + hcap, hcap, 3 * hcap + rmax_ + 2);
    auto labs = l_series_table(spec_, rmax_, yring);
    lv_.resize(n);
    for (int i = 0; i < n; ++i) {
      lv_[i].resize(rmax_ + 1);
      for (int r = 0; r <= rmax_; ++r) {
        int vdeg = max_exp(labs[r], yring->v_axis(), 0);
        for (int j = 0; j <= vdeg; ++j) {
          LaurentSeries slice = coeff(labs[r], yring->v_axis(), j);
          // map (y^a hbar^b) -> y(z_i)^a hbar^b by Horner over a
          std::map<int, LaurentSeries> by_y;
          for (const auto& [e, c] : slice.terms()) {
            Exps em(ctx_->dims(), 0);
            em[ctx_->h_axis()] = e[yring->h_axis()];
            auto [it, fresh] = by_y.emplace(e[0], LaurentSeries(ctx_));
            it->second.add_term(em, c);
          }
          LaurentSeries acc(ctx_);
          if (!by_y.empty()) {
            int top = by_y.rbegin()->first;
            for (int a = top; a >= 0; --a) {
              acc = acc * y_[i];
              auto it = by_y.find(a);
              if (it != by_y.end()) acc += it->second;
            }
          }
          lv_[i][r].push_back(std::move(acc));
        }
        while (!lv_[i][r].empty() && lv_[i][r].back().is_zero()) lv_[i][r].pop_back();
      }
    }
  }
}

const LaurentSeries& ModelCache::y_zdz(int i, int k) const {
  if (k >= static_cast<int>(y_zdz_[i].size()))
    throw std::out_of_range("ModelCache: y_zdz order beyond kmax");
  return y_zdz_[i][k];
}

const LaurentSeries& ModelCache::psi_at(int i, int k) const {
  if (k >= static_cast<int>(psi_at_[i].size()))
    throw std::out_of_range("ModelCache: psi derivative order beyond kmax");
  return psi_at_[i][k];
}

const LaurentSeries& ModelCache::X_pow(int i, int m) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& pw = x_pow_[i];
  if (pw.empty()) pw.push_back(LaurentSeries::constant(ctx_, Rational(1)));
  while (static_cast<int>(pw.size()) <= m) pw.push_back(pw.back() * x_[i]);
  return pw[m];
}

LaurentSeries ModelCache::apply_D(const LaurentSeries& f, int i) const {
  return invq_[i] * zdz(f, i);
}

LaurentSeries ModelCache::apply_D_inverse(const LaurentSeries& f, int i) const {
  return zdz_inverse(q_[i] * f, i);
}

LaurentSeries ModelCache::apply_S_of_QD(const LaurentSeries& f, int i) const {
  // S(u_i hbar Q_i D_i) = S(u_i hbar z_i d/dz_i): only even powers act.
  LaurentSeries r(ctx_);
  LaurentSeries g = f;
  Exps e(ctx_->dims(), 0);
  for (int k = 0;; ++k) {
    e[ctx_->u_axis(i)] = static_cast<int16_t>(2 * k);
    e[ctx_->h_axis()] = static_cast<int16_t>(2 * k);
    LaurentSeries mono = LaurentSeries::monomial(ctx_, e, s_coeffs_[2 * k]);
    if (mono.is_zero()) break;
    if (k > 0) g = zdz(zdz(g, i), i);
    r += mono * g;
    if (2 * (k + 1) >= static_cast<int>(s_coeffs_.size())) break;
  }
  return r;
}

const LaurentSeries& ModelCache::lv(int i, int r, int j) const {
  if (r > rmax_) throw std::out_of_range("ModelCache: L_r order beyond rmax");
  const auto& t = lv_[i][r];
  if (j < 0 || j >= static_cast<int>(t.size())) return zero_;
  return t[j];
}

int ModelCache::l_vdeg(int i, int r) const {
  if (r > rmax_) throw std::out_of_range("ModelCache: L_r order beyond rmax");
  return static_cast<int>(lv_[i][r].size()) - 1;
}

Rational ModelCache::psi_der0(int k) {
  if (k < 0) throw std::invalid_argument("psi_der0: negative order");
  if (k == 0) return Rational(0);
  if (k > static_cast<int>(spec_.psi.size())) {
    std::lock_guard<std::mutex> lock(mu_);
    std::ostringstream os;
    os << "psi^(" << k << ")(0) requested beyond the supplied coefficient list; treated as 0";
    warnings_.push_back(os.str());
    return Rational(0);
  }
  return factorial(k) * spec_.psi[k - 1];
}

std::vector<std::string> ModelCache::drain_warnings() {
  std::lock_guard<std::mutex> lock(mu_);
  auto w = std::move(warnings_);
  warnings_.clear();
  return w;
}

}  // namespace oshn
