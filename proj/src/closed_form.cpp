#include "oshn/closed_form.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace oshn {

namespace {

int hbar_power(const TaskSpec& t) { return 2 * t.g - 2 + t.n; }

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

ContextPtr make_task_context(const TaskSpec& t, const TaskLimits& lim) {
  require(t.g >= 0 && t.n >= 1 && t.order >= 1, "task: g >= 0, n >= 1, order >= 1 required");
  int hcap = std::max(0, hbar_power(t));
  SeriesContext c;
  c.n_z = t.n;
  c.z_order = t.order;
  c.z_low.assign(t.n, 0);
  long m_prev_sum = 0;  // sum of (order + M_i) over i < j
  for (int j = 1; j < t.n; ++j) {
    m_prev_sum += t.order - c.z_low[j - 1];
    long mj = m_prev_sum * lim.window_scale;
    if (mj > 4000) throw std::invalid_argument("task: window budget too large for this order/n");
    c.z_low[j] = static_cast<int>(-mj);
  }
  c.h_low = -(t.n + 1) - lim.h_slack;
  c.h_high = hcap + t.n + 1 + lim.h_slack;
  c.n_u = t.n;
  // A term of hbar-degree H carries u-degree at most (3/2)H: every u comes
  // with an hbar except in the odd vertex-bracket factors, each of which
  // brings two more hbar's along.
  c.u_cap = (3 * (hcap + t.n + 1)) / 2 + 2 + lim.r_extra;
  return make_context(c);
}

Rational constant_c(int g, int n, ModelCache& cache) {
  require(2 * g - 2 + n >= 1, "constant_c: 2g-2+n >= 1 required");
  Rational sign = (n % 2) ? Rational(-1) : Rational(1);
  return sign * cache.psi_der0(2 * g - 2 + n) * inv_s2_coeffs(2 * g)[2 * g];
}

NPointComputer::NPointComputer(const ModelSpec& spec, const TaskSpec& task, const TaskLimits& lim)
    : task_(task), ctx_(make_task_context(task, lim)) {
  int rmax = ctx_->u_cap;
  int kmax = std::max(ctx_->u_cap + 2, 2 * task.g + 6);
  cache_ = std::make_unique<ModelCache>(spec, ctx_, rmax, kmax);
  inv_s_ = inv_s_coeffs(2 * task.g + 2);
  inv_s2_ = inv_s2_coeffs(2 * task.g + 2);
  bracket_.resize(task.n);
}

const LaurentSeries& NPointComputer::vertex_bracket(int i) {
  if (!bracket_[i]) {
    // exp(sum_{k>=1} S_{2k} u_i^{2k+1} hbar^{2k} (z d/dz)^{2k} y_i) / S(u_i hbar)
    auto s = s_series_coeffs(ctx_->u_cap + 1);
    auto si = inv_s_coeffs(ctx_->u_cap + 1);
    LaurentSeries earg(ctx_);
    LaurentSeries inv_s(ctx_);
    Exps e(ctx_->dims(), 0);
    for (int k = 0; 2 * k <= ctx_->u_cap; ++k) {
      e[ctx_->u_axis(i)] = static_cast<int16_t>(2 * k);
      e[ctx_->h_axis()] = static_cast<int16_t>(2 * k);
      inv_s.add_term(e, si[2 * k]);
      if (k >= 1 && 2 * k + 1 <= ctx_->u_cap && 2 * k <= ctx_->h_high) {
        e[ctx_->u_axis(i)] = static_cast<int16_t>(2 * k + 1);
        LaurentSeries mono = LaurentSeries::monomial(ctx_, e, s[2 * k]);
        earg += mono * cache_->y_zdz(i, 2 * k);
        e[ctx_->u_axis(i)] = static_cast<int16_t>(2 * k);
      }
    }
    bracket_[i] = exp_series(earg) * inv_s;
  }
  return *bracket_[i];
}

const LaurentSeries& NPointComputer::edge_weight(int i, int j) {
  require(i != j, "edge_weight: i == j");
  auto key = std::minmax(i, j);
  auto it = edge_cache_.find(key);
  if (it != edge_cache_.end()) return it->second;
  LaurentSeries ssg = cache_->apply_S_of_QD(
      cache_->apply_S_of_QD(gamma_series(ctx_, key.first, key.second, 0), key.first), key.second);
  Exps e(ctx_->dims(), 0);
  e[ctx_->h_axis()] = 2;
  e[ctx_->u_axis(key.first)] = 1;
  e[ctx_->u_axis(key.second)] = 1;
  LaurentSeries arg = LaurentSeries::monomial(ctx_, e, Rational(1)) * ssg;
  LaurentSeries w = exp_series(arg);
  w -= LaurentSeries::constant(ctx_, Rational(1));
  return edge_cache_.emplace(key, std::move(w)).first->second;
}

const LaurentSeries& NPointComputer::leaf_term(int leaf, int k) {
  require(leaf != k, "leaf_term: leaf == k");
  auto key = std::make_pair(leaf, k);
  auto it = leaf_cache_.find(key);
  if (it != leaf_cache_.end()) return it->second;
  // hbar u_k S(u_k hbar z_k d/dz_k) gamma^{[-1]}_{leaf,k}
  auto s = s_series_coeffs(ctx_->u_cap + 1);
  LaurentSeries cur = gamma_series(ctx_, leaf, k, -1);
  LaurentSeries res(ctx_);
  Exps e(ctx_->dims(), 0);
  for (int a = 0;; ++a) {
    if (2 * a + 1 > ctx_->u_cap || 2 * a + 1 > ctx_->h_high) break;
    e[ctx_->u_axis(k)] = static_cast<int16_t>(2 * a + 1);
    e[ctx_->h_axis()] = static_cast<int16_t>(2 * a + 1);
    if (a > 0) cur = zdz(zdz(cur, k), k);
    res += LaurentSeries::monomial(ctx_, e, s[2 * a]) * cur;
  }
  return leaf_cache_.emplace(key, std::move(res)).first->second;
}

LaurentSeries NPointComputer::u_bar_apply(const LaurentSeries& f, int i, int h_top) {
  int ua = ctx_->u_axis(i);
  int ha = ctx_->h_axis();
  for (const auto& [e, c] : f.terms())
    if (e[ua] < 1) throw std::invalid_argument("u_bar_apply: operand not divisible by u_i");
  LaurentSeries p = mul_pruned(vertex_bracket(i), shift_exp(f, ua, -1), ha,
                               h_top >= (1 << 19) ? 1 << 20 : h_top + 1);
  p = shift_exp(p, ha, -1);
  LaurentSeries res(ctx_);
  int rtop = std::min(max_exp(p, ua, 0), cache_->rmax());
  for (int r = 0; r <= rtop; ++r) {
    LaurentSeries pr = coeff(p, ua, r);
    if (pr.is_zero()) continue;
    pr = mul_pruned(pr, cache_->invQ(i), ha, h_top);
    for (int j = 1; j <= cache_->l_vdeg(i, r); ++j) {
      LaurentSeries term = mul_pruned(cache_->lv(i, r, j), pr, ha, h_top);
      for (int d = 0; d < j - 1; ++d) term = cache_->apply_D(term, i);
      res += term;
    }
  }
  return res;
}

LaurentSeries NPointComputer::u_full_apply(const LaurentSeries& f, int i, int h_top) {
  int ua = ctx_->u_axis(i);
  int ha = ctx_->h_axis();
  for (const auto& [e, c] : f.terms())
    if (e[ua] < 1) throw std::invalid_argument("u_full_apply: operand not divisible by u_i");
  LaurentSeries p = mul_pruned(vertex_bracket(i), shift_exp(f, ua, -1), ha,
                               h_top >= (1 << 19) ? 1 << 20 : h_top + 1);
  p = shift_exp(p, ha, -1);
  LaurentSeries res(ctx_);
  int rtop = std::min(max_exp(p, ua, 0), cache_->rmax());
  for (int r = 0; r <= rtop; ++r) {
    LaurentSeries pr = coeff(p, ua, r);
    if (pr.is_zero()) continue;
    pr = mul_pruned(pr, cache_->invQ(i), ha, h_top);
    for (int j = 0; j <= cache_->l_vdeg(i, r); ++j) {
      LaurentSeries term = mul_pruned(cache_->lv(i, r, j), pr, ha, h_top);
      for (int d = 0; d < j; ++d) term = cache_->apply_D(term, i);
      res += term;
    }
  }
  return res;
}

LaurentSeries NPointComputer::graph_contribution(const LabeledGraph& g) {
  GraphParts parts = classify(g);
  int hcap = hbar_power(task_);
  // each pending vertex elimination lowers hbar by at most one, so terms
  // above hcap + pending can never reach the extracted slice
  int pending = static_cast<int>(parts.internal.size());
  int ha = ctx_->h_axis();
  // once every edge at a vertex has been multiplied in, each of its terms
  // carries u_v >= 1 for all v still pending, and Sum u <= hbar termwise,
  // so a single u exponent beyond hcap+1 can no longer contribute
  std::vector<int> edges_left(task_.n, 0);
  for (auto [i, j] : g.edges()) {
    ++edges_left[i];
    ++edges_left[j];
  }
  auto note_edge = [&](LaurentSeries& prod, int i, int j) {
    for (int v : {i, j})
      if (--edges_left[v] == 0) prod = truncate_axis_above(prod, ctx_->u_axis(v), hcap + 1);
  };
  LaurentSeries prod = LaurentSeries::constant(ctx_, Rational(1));
  for (auto [leaf, k] : parts.leaf_edges) {
    LaurentSeries term;
    auto key = std::make_pair(leaf, k);
    auto it = ubar_leaf_cache_.find(key);
    if (it != ubar_leaf_cache_.end()) {
      term = it->second;
    } else {
      term = u_bar_apply(edge_weight(leaf, k), leaf, hcap + task_.n) + leaf_term(leaf, k);
      ubar_leaf_cache_.emplace(key, term);
    }
    prod = mul_pruned(prod, term, ha, hcap + pending);
    note_edge(prod, leaf, k);
  }
  for (auto [i, j] : parts.inner_edges) {
    prod = mul_pruned(prod, edge_weight(i, j), ha, hcap + pending);
    note_edge(prod, i, j);
  }
  for (int v : parts.internal) {
    --pending;
    prod = u_bar_apply(prod, v, hcap + pending);
  }
  return prod;
}

LaurentSeries NPointComputer::graph_dh_contribution(const LabeledGraph& g) {
  int hcap = hbar_power(task_);
  int pending = task_.n;
  int ha = ctx_->h_axis();
  std::vector<int> edges_left(task_.n, 0);
  for (auto [i, j] : g.edges()) {
    ++edges_left[i];
    ++edges_left[j];
  }
  LaurentSeries prod = LaurentSeries::constant(ctx_, Rational(1));
  for (auto [i, j] : g.edges()) {
    prod = mul_pruned(prod, edge_weight(i, j), ha, hcap + pending);
    for (int v : {i, j})
      if (--edges_left[v] == 0) prod = truncate_axis_above(prod, ctx_->u_axis(v), hcap + 1);
  }
  for (int v = 0; v < task_.n; ++v) {
    --pending;
    prod = u_full_apply(prod, v, hcap + pending);
  }
  return prod;
}

LaurentSeries NPointComputer::sum_over_graphs(int threads, bool dh_route) {
  int hcap = hbar_power(task_);
  auto graphs = enumerate_connected(task_.n);
  std::vector<const LabeledGraph*> todo;
  for (const auto& g : graphs)
    if (2 * g.edge_count() - task_.n <= hcap) todo.push_back(&g);

  // Warm the shared caches before any parallel evaluation.
  for (const auto* g : todo) {
    GraphParts parts = classify(*g);
    for (auto [leaf, k] : parts.leaf_edges) {
      if (!dh_route && !ubar_leaf_cache_.count({leaf, k})) {
        ubar_leaf_cache_.emplace(
            std::make_pair(leaf, k),
            u_bar_apply(edge_weight(leaf, k), leaf, hcap + task_.n) + leaf_term(leaf, k));
      }
    }
    for (auto [i, j] : g->edges()) edge_weight(i, j);
  }
  for (int v = 0; v < task_.n; ++v) vertex_bracket(v);

  LaurentSeries total(ctx_);
  if (threads <= 1 || todo.size() <= 1) {
    for (const auto* g : todo)
      total += dh_route ? graph_dh_contribution(*g) : graph_contribution(*g);
    return total;
  }
  std::atomic<size_t> next{0};
  int workers = std::min<int>(threads, static_cast<int>(todo.size()));
  std::vector<LaurentSeries> results(todo.size(), LaurentSeries(ctx_));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t k = next.fetch_add(1);
        if (k >= todo.size()) return;
        results[k] = dh_route ? graph_dh_contribution(*todo[k]) : graph_contribution(*todo[k]);
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& r : results) total += r;  // deterministic reduction in graph order
  return total;
}

LaurentSeries NPointComputer::extract_h(const LaurentSeries& f) const {
  return coeff(f, ctx_->h_axis(), hbar_power(task_));
}

LaurentSeries NPointComputer::finalize(LaurentSeries h) const {
  // Inside the guaranteed region (sum of positive z-exponents <= order) the
  // window budgets make the computation complete, so diagonal-pole
  // cancellation is exact there: any surviving negative power signals a bug.
  // Beyond it the mixed-sign terms are truncation debris by construction;
  // the power-series part, which is all the guarantee promises, is returned.
  LaurentSeries out(ctx_);
  for (const auto& [e, c] : h.terms()) {
    if (e[ctx_->h_axis()] != 0) throw std::logic_error("assembled n-point function retains hbar");
    for (int i = 0; i < ctx_->n_u; ++i)
      if (e[ctx_->u_axis(i)] != 0) throw std::logic_error("assembled n-point function retains u");
    long pos = 0;
    bool has_negative = false;
    for (int i = 0; i < task_.n; ++i) {
      if (e[i] > 0) pos += e[i];
      if (e[i] < 0) has_negative = true;
    }
    if (has_negative) {
      if (pos <= task_.order)
        throw std::logic_error("assembled n-point function has uncancelled negative powers");
      continue;
    }
    out.add_term(e, c);
  }
  return out;
}

LaurentSeries NPointComputer::compute_H01() {
  return cache_->apply_D_inverse(cache_->y_series(0), 0);
}

LaurentSeries NPointComputer::compute_H02() {
  // -log A - psi(y_1) - psi(y_2) with A the divided difference of X: equal to
  // log((z_1^{-1}-z_2^{-1})/(X_1^{-1}-X_2^{-1})) with no diagonal division.
  LaurentSeries a = divided_difference(cache_->x_coeffs(), ctx_, 0, 1);
  return -log_series(a) - cache_->psi_at(0, 0) - cache_->psi_at(1, 0);
}

LaurentSeries NPointComputer::g1_inner_term(int j) {
  const LaurentSeries& vb = vertex_bracket(0);  // exp(E)/S(u hbar), no 1/hbar
  int ua = ctx_->u_axis(0);
  LaurentSeries inner(ctx_);
  for (int r = 1; r <= cache_->rmax(); ++r) {
    if (j > cache_->l_vdeg(0, r)) continue;
    LaurentSeries slice = coeff(vb, ua, r + 1);  // [u^r] of exp(E)/(u S(u hbar))
    if (slice.is_zero()) continue;
    inner += cache_->lv(0, r, j) * cache_->invQ(0) * slice;
  }
  if (j + 1 <= cache_->l_vdeg(0, 0))
    inner += cache_->lv(0, 0, j + 1) * cache_->apply_D(cache_->y_series(0), 0);
  return inner;
}

LaurentSeries NPointComputer::compute_g1() {
  // The n=1 bracket carries no 1/hbar, so the genus-g part sits at hbar^{2g}.
  int g = task_.g;
  LaurentSeries acc(ctx_);
  int jtop = 1;
  for (int r = 0; r <= cache_->rmax(); ++r) jtop = std::max(jtop, cache_->l_vdeg(0, r) + 1);
  for (int j = 1; j <= jtop; ++j) {
    LaurentSeries term = g1_inner_term(j);
    for (int d = 0; d < j - 1; ++d) term = cache_->apply_D(term, 0);
    acc += term;
  }
  LaurentSeries h = coeff(acc, ctx_->h_axis(), 2 * g);
  h += inv_s_[2 * g] * cache_->psi_at(0, 2 * g - 1);
  h -= LaurentSeries::constant(ctx_, inv_s2_[2 * g] * cache_->psi_der0(2 * g - 1));
  return h;
}

LaurentSeries NPointComputer::compute_gn2() {
  int hcap = 2 * task_.g;
  LaurentSeries sum = u_bar_apply(u_bar_apply(edge_weight(0, 1), 1, hcap + 1), 0, hcap);
  sum += u_bar_apply(leaf_term(1, 0), 0, hcap);
  sum += u_bar_apply(leaf_term(0, 1), 1, hcap);
  LaurentSeries h = extract_h(sum);
  h += LaurentSeries::constant(ctx_, cache_->psi_der0(2 * task_.g) * inv_s2_[2 * task_.g]);
  return h;
}

LaurentSeries NPointComputer::compute(int threads) {
  if (task_.g == 0 && task_.n == 1) return finalize(compute_H01());
  if (task_.g == 0 && task_.n == 2) return finalize(compute_H02());
  if (task_.n == 1) return finalize(compute_g1());
  if (task_.n == 2) return finalize(compute_gn2());
  LaurentSeries h = extract_h(sum_over_graphs(threads, /*dh_route=*/false));
  h += LaurentSeries::constant(ctx_, constant_c(task_.g, task_.n, *cache_));
  return finalize(h);
}

LaurentSeries NPointComputer::dh_cross_check(int threads) {
  require(task_.n >= 2, "dh_cross_check: n >= 2 required");
  require(!(task_.g == 0 && task_.n == 2), "dh_cross_check: (0,2) excluded");
  return finalize(extract_h(sum_over_graphs(threads, /*dh_route=*/true)));
}

LaurentSeries NPointComputer::dh_graph_sum_raw(int threads) {
  require(task_.n >= 2, "dh_graph_sum_raw: n >= 2 required");
  return sum_over_graphs(threads, /*dh_route=*/true);
}

LaurentSeries NPointComputer::reference_formula() {
  auto& c = *cache_;
  int g = task_.g, n = task_.n;
  Rational r24(1, 24);
  if (g == 1 && n == 1) {
    LaurentSeries t1 = c.apply_D((c.psi_at(0, 1) * c.psi_at(0, 1) * c.y_zdz(0, 2) +
                                  c.psi_at(0, 2) * c.y_zdz(0, 1)) *
                                     c.invQ(0) * r24,
                                 0);
    LaurentSeries t2 = (c.psi_at(0, 2) * c.y_zdz(0, 2) - c.psi_at(0, 1)) * c.invQ(0) * r24;
    LaurentSeries t3 = -(c.psi_at(0, 1) * r24);
    LaurentSeries t4 = LaurentSeries::constant(ctx_, c.psi_der0(1) * Rational(1, 12));
    return finalize(t1 + t2 + t3 + t4);
  }
  if (g == 0 && n == 3) {
    LaurentSeries res(ctx_);
    for (int i = 0; i < 3; ++i) {
      LaurentSeries prod = c.psi_at(i, 1) * c.invQ(i);
      for (int j = 0; j < 3; ++j)
        if (j != i) prod = prod * gamma_series(ctx_, j, i, -1);
      res += prod;
    }
    res -= LaurentSeries::constant(ctx_, c.psi_der0(1));
    return finalize(res);
  }
  if (g == 1 && n == 2) {
    LaurentSeries res(ctx_);
    for (int i = 0; i < 2; ++i) {
      int o = 1 - i;
      LaurentSeries gm1 = gamma_series(ctx_, o, i, -1);   // gamma^{[-1]}_{other,i}
      LaurentSeries gp1 = gamma_series(ctx_, o, i, 1);    // gamma^{[1]}_{other,i}
      const LaurentSeries &p1 = c.psi_at(i, 1), &p2 = c.psi_at(i, 2), &p3 = c.psi_at(i, 3);
      const LaurentSeries& y2 = c.y_zdz(i, 2);
      LaurentSeries a = gm1 * (p2 + p1 * p1 * p1 * y2) * c.invQ(i) * r24;
      a = c.apply_D(c.apply_D(a, i), i);
      LaurentSeries b =
          p1 * (p1 * (gp1 - gm1) + Rational(3) * gm1 * p2 * y2) * c.invQ(i) * r24;
      b = c.apply_D(b, i);
      LaurentSeries d =
          (p2 * (gp1 - Rational(2) * gm1) + p3 * gm1 * y2) * c.invQ(i) * r24;
      res += a + b + d;
    }
    LaurentSeries cross = gamma_series(ctx_, 0, 1, 0);
    cross = cross * cross * c.psi_at(0, 1) * c.psi_at(1, 1) * c.invQ(0) * c.invQ(1) *
            Rational(1, 2);
    res += cross;
    res -= LaurentSeries::constant(ctx_, c.psi_der0(2) * Rational(1, 12));
    return finalize(res);
  }
  if (g == 0 && n == 4) {
    LaurentSeries res(ctx_);
    for (int center = 0; center < 4; ++center) {
      LaurentSeries prod = LaurentSeries::constant(ctx_, Rational(1));
      for (int l = 0; l < 4; ++l)
        if (l != center) prod = prod * gamma_series(ctx_, l, center, -1);
      res += c.apply_D(c.psi_at(center, 1) * c.psi_at(center, 1) * prod * c.invQ(center), center);
      res += c.psi_at(center, 2) * prod * c.invQ(center);
    }
    // paths a - b - c - d: 4!/2 = 12 of them
    int perm[4] = {0, 1, 2, 3};
    std::sort(perm, perm + 4);
    do {
      int a = perm[0], b = perm[1], cc = perm[2], d = perm[3];
      if (a > d) continue;  // each undirected path once
      LaurentSeries t = c.psi_at(b, 1) * c.psi_at(cc, 1) * c.invQ(b) * c.invQ(cc);
      t = t * gamma_series(ctx_, a, b, -1) * gamma_series(ctx_, b, cc, 0) *
          gamma_series(ctx_, d, cc, -1);
      res += t;
    } while (std::next_permutation(perm, perm + 4));
    res += LaurentSeries::constant(ctx_, c.psi_der0(2));
    return finalize(res);
  }
  throw std::invalid_argument("reference_formula: unsupported (g,n)");
}

}  // namespace oshn
