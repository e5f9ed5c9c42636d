#include "oshn/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace oshn {

int Partition::weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

namespace {

void gen_partitions(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back({cur});
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int w) {
  std::vector<Partition> out;
  std::vector<int> cur;
  gen_partitions(w, w == 0 ? 1 : w, cur, out);
  return out;
}

std::vector<Partition> partitions_up_to(int w) {
  std::vector<Partition> out;
  for (int k = 0; k <= w; ++k) {
    auto pk = partitions_of(k);
    out.insert(out.end(), pk.begin(), pk.end());
  }
  return out;
}

ContextPtr make_p_ring(int max_weight, int h_low, int h_high, int copies) {
  SeriesContext c;
  c.n_z = max_weight * copies;
  c.z_low.assign(c.n_z, 0);
  c.z_weight.resize(c.n_z);
  for (int cp = 0; cp < copies; ++cp)
    for (int k = 1; k <= max_weight; ++k) c.z_weight[cp * max_weight + (k - 1)] = k;
  c.z_order = max_weight * copies;
  c.h_low = h_low;
  c.h_high = h_high;
  return make_context(c);
}

namespace {

// Complete homogeneous h_0..h_m in power sums: m h_m = sum_k p_k h_{m-k}.
// var_offset selects the p-variable copy.
std::vector<LaurentSeries> homogeneous_in_p(int mmax, const ContextPtr& ring, int var_offset) {
  std::vector<LaurentSeries> h;
  h.push_back(LaurentSeries::constant(ring, Rational(1)));
  for (int m = 1; m <= mmax; ++m) {
    LaurentSeries acc(ring);
    for (int k = 1; k <= m; ++k) {
      LaurentSeries pk = LaurentSeries::variable(ring, ring->z_axis(var_offset + (k - 1)));
      acc += pk * h[m - k];
    }
    acc *= Rational(1, m);
    h.push_back(std::move(acc));
  }
  return h;
}

}  // namespace

LaurentSeries schur_in_p(const Partition& lambda, const ContextPtr& pring, int var_offset) {
  int l = lambda.length();
  if (l == 0) return LaurentSeries::constant(pring, Rational(1));
  int hmax = lambda.parts[0] + l - 1;
  auto h = homogeneous_in_p(hmax, pring, var_offset);
  auto entry = [&](int i, int j) -> const LaurentSeries* {
    int idx = lambda.parts[i] - (i + 1) + (j + 1);
    return (idx < 0) ? nullptr : &h[idx];
  };
  // Determinant by DP over column subsets, expanding along the last row of
  // each leading minor: sign (-1)^{row + position of column within S}.
  std::vector<LaurentSeries> dp(1u << l, LaurentSeries(pring));
  dp[0] = LaurentSeries::constant(pring, Rational(1));
  for (uint32_t s = 1; s < (1u << l); ++s) {
    int row = __builtin_popcount(s) - 1;
    LaurentSeries acc(pring);
    int pos = 0;
    for (int j = 0; j < l; ++j) {
      if (!(s & (1u << j))) continue;
      const LaurentSeries* e = entry(row, j);
      if (e && !dp[s ^ (1u << j)].is_zero()) {
        LaurentSeries t = *e * dp[s ^ (1u << j)];
        if ((row + pos) % 2) t = -t;
        acc += t;
      }
      ++pos;
    }
    dp[s] = std::move(acc);
  }
  return dp[(1u << l) - 1];
}

LaurentSeries content_product(const Partition& lambda, const ModelSpec& spec,
                              const ContextPtr& pring) {
  // Power sums of cell contents j - i, then psi summed over cells as an
  // hbar polynomial, exponentiated in the ring.
  int kmax = std::min<int>(static_cast<int>(spec.psi.size()), pring->h_high);
  std::vector<Rational> cpow(kmax + 1, Rational(0));
  for (int i = 1; i <= lambda.length(); ++i) {
    for (int j = 1; j <= lambda.parts[i - 1]; ++j) {
      long c = j - i;
      Rational pw = 1;
      for (int k = 1; k <= kmax; ++k) {
        pw *= c;
        cpow[k] += pw;
      }
    }
  }
  LaurentSeries arg(pring);
  Exps e(pring->dims(), 0);
  for (int k = 1; k <= kmax; ++k) {
    e[pring->h_axis()] = static_cast<int16_t>(k);
    arg.add_term(e, spec.psi_coeff(k) * cpow[k]);
  }
  return exp_series(arg);
}

namespace {

// s_lambda evaluated at p_k = s_k / hbar, as an hbar-only series.
LaurentSeries schur_at_s_over_h(const LaurentSeries& schur, const ModelSpec& spec,
                                const ContextPtr& pring) {
  LaurentSeries r(pring);
  int w = pring->z_order;
  for (const auto& [e, c] : schur.terms()) {
    Rational val = c;
    int total = 0;
    for (int k = 1; k <= w; ++k) {
      int a = e[pring->z_axis(k - 1)];
      if (a == 0) continue;
      total += a;
      Rational sk = spec.y_coeff(k);
      for (int t = 0; t < a; ++t) val *= sk;
      if (val == 0) break;
    }
    if (val == 0) continue;
    Exps eh(pring->dims(), 0);
    eh[pring->h_axis()] = static_cast<int16_t>(e[pring->h_axis()] - total);
    r.add_term(eh, val);
  }
  return r;
}

}  // namespace

LaurentSeries partition_function(const ModelSpec& spec, const ContextPtr& pring) {
  LaurentSeries z(pring);
  for (const auto& lambda : partitions_up_to(pring->z_order)) {
    LaurentSeries s = schur_in_p(lambda, pring);
    LaurentSeries v = schur_at_s_over_h(s, spec, pring);
    if (v.is_zero()) continue;
    z += content_product(lambda, spec, pring) * v * s;
  }
  return z;
}

LaurentSeries connected_F(const LaurentSeries& z) { return log_series(z); }

Oracle::Oracle(ModelSpec spec, int max_weight, int h_top)
    : spec_(std::move(spec)),
      max_weight_(max_weight),
      ring_(make_p_ring(max_weight, -max_weight, h_top + max_weight)),
      z_(partition_function(spec_, ring_)),
      f_(connected_F(z_)) {}

Rational Oracle::hurwitz(int g, std::vector<int> mu) const {
  int n = static_cast<int>(mu.size());
  if (n == 0) throw std::invalid_argument("hurwitz: empty profile");
  int w = 0;
  for (int m : mu) {
    if (m < 1) throw std::invalid_argument("hurwitz: parts must be >= 1");
    w += m;
  }
  if (w > max_weight_) throw std::invalid_argument("hurwitz: |mu| beyond the oracle's truncation");
  int hexp = 2 * g - 2 + n;
  if (hexp > ring_->h_high - max_weight_)
    throw std::invalid_argument("hurwitz: genus beyond the oracle's hbar window");
  Exps e(ring_->dims(), 0);
  Rational mult = 1;
  std::sort(mu.begin(), mu.end());
  for (std::size_t i = 0; i < mu.size(); ++i)
    e[ring_->z_axis(mu[i] - 1)] = static_cast<int16_t>(e[ring_->z_axis(mu[i] - 1)] + 1);
  // repeated indices differentiate repeatedly: multiply by multiplicities!
  for (std::size_t i = 0; i < mu.size();) {
    std::size_t j = i;
    while (j < mu.size() && mu[j] == mu[i]) ++j;
    mult *= factorial(static_cast<unsigned>(j - i));
    i = j;
  }
  e[ring_->h_axis()] = static_cast<int16_t>(hexp);
  return f_.coefficient(e) * mult;
}

LaurentSeries Oracle::npoint(int g, int n, const ModelCache& cache, int order) const {
  if (order > max_weight_) throw std::invalid_argument("npoint: order beyond the oracle's truncation");
  const ContextPtr& ctx = cache.context();
  LaurentSeries res(ctx);
  for (const auto& lambda : partitions_up_to(order)) {
    if (lambda.length() != n) continue;
    Rational h = hurwitz(g, lambda.parts);
    if (h == 0) continue;
    std::vector<int> mu = lambda.parts;
    std::sort(mu.begin(), mu.end());
    do {
      LaurentSeries term = LaurentSeries::constant(ctx, h);
      for (int i = 0; i < n; ++i) term = term * cache.X_pow(i, mu[i]);
      res += term;
    } while (std::next_permutation(mu.begin(), mu.end()));
  }
  return res;
}

}  // namespace oshn
