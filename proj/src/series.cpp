#include "oshn/series.hpp"

#include <algorithm>
#include <sstream>

namespace oshn {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_same_context(const LaurentSeries& a, const LaurentSeries& b) {
  require(a.context() == b.context(), "series context mismatch");
}

// Upper bound on power iterations before declaring non-termination: the
// window extent along every axis, summed.
long iteration_guard(const SeriesContext& c) {
  long g = 10;
  for (int i = 0; i < c.n_z; ++i) g += c.z_order - c.z_low[i];
  g += c.h_high - c.h_low;
  g += static_cast<long>(c.n_u) * c.u_cap;
  if (c.v_cap >= 0) g += c.v_cap;
  return g;
}

}  // namespace

bool SeriesContext::in_window(const Exps& e) const {
  long ztot = 0;
  for (int i = 0; i < n_z; ++i) {
    int x = e[i];
    if (x < z_low[i]) return false;
    ztot += static_cast<long>(x) * (z_weight.empty() ? 1 : z_weight[i]);
  }
  if (ztot > z_order) return false;
  int h = e[h_axis()];
  if (h < h_low || h > h_high) return false;
  for (int i = 0; i < n_u; ++i) {
    int x = e[u_axis(i)];
    if (x < 0 || x > u_cap) return false;
  }
  if (v_cap >= 0) {
    int x = e[v_axis()];
    if (x < 0 || x > v_cap) return false;
  }
  return true;
}

ContextPtr make_context(SeriesContext c) {
  require(c.n_z >= 0 && c.n_u >= 0, "negative variable count");
  if (c.z_low.empty()) c.z_low.assign(c.n_z, 0);
  require(static_cast<int>(c.z_low.size()) == c.n_z, "z_low size mismatch");
  for (int lo : c.z_low) require(lo <= 0, "z_low must be <= 0");
  if (!c.z_weight.empty()) {
    require(static_cast<int>(c.z_weight.size()) == c.n_z, "z_weight size mismatch");
    for (int w : c.z_weight) require(w >= 1, "z_weight must be >= 1");
  }
  require(c.z_order >= 0, "z_order must be >= 0");
  require(c.h_low <= c.h_high, "bad hbar window");
  return std::make_shared<const SeriesContext>(std::move(c));
}

LaurentSeries LaurentSeries::constant(ContextPtr ctx, const Rational& c) {
  LaurentSeries s(std::move(ctx));
  s.add_term(Exps(s.ctx_->dims(), 0), c);
  return s;
}

LaurentSeries LaurentSeries::monomial(ContextPtr ctx, const Exps& e, const Rational& c) {
  LaurentSeries s(std::move(ctx));
  require(static_cast<int>(e.size()) == s.ctx_->dims(), "exponent vector size mismatch");
  s.add_term(e, c);
  return s;
}

LaurentSeries LaurentSeries::variable(ContextPtr ctx, int axis) {
  Exps e(ctx->dims(), 0);
  e[axis] = 1;
  return monomial(std::move(ctx), e, Rational(1));
}

Rational LaurentSeries::coefficient(const Exps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational LaurentSeries::constant_term() const {
  return ctx_ ? coefficient(Exps(ctx_->dims(), 0)) : Rational(0);
}

void LaurentSeries::add_term(const Exps& e, const Rational& c) {
  if (c == 0) return;
  if (!ctx_->in_window(e)) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  if (!ctx_) {
    *this = o;
    return *this;
  }
  if (o.ctx_) require_same_context(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) {
  if (!ctx_) {
    *this = -o;
    return *this;
  }
  if (o.ctx_) require_same_context(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentSeries& LaurentSeries::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  require_same_context(a, b);
  LaurentSeries r(a.context());
  if (a.is_zero() || b.is_zero()) return r;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  Exps e(a.context()->dims());
  for (const auto& [ea, ca] : small.terms()) {
    for (const auto& [eb, cb] : large.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<int16_t>(ea[i] + eb[i]);
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")*[";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << "]";
  }
  if (first) os << "0";
  return os.str();
}

LaurentSeries exp_series(const LaurentSeries& f) {
  require(f.constant_term() == 0, "exp_series: nonzero constant term");
  LaurentSeries r = LaurentSeries::constant(f.context(), Rational(1));
  LaurentSeries p = r;
  long guard = iteration_guard(*f.context());
  for (long k = 1; !p.is_zero(); ++k) {
    if (k > guard) throw std::logic_error("exp_series does not terminate under the window");
    p = p * f;
    p *= Rational(1, k);
    r += p;
  }
  return r;
}

LaurentSeries log_series(const LaurentSeries& f) {
  require(f.constant_term() == 1, "log_series: constant term must be 1");
  LaurentSeries d = f;
  d -= LaurentSeries::constant(f.context(), Rational(1));
  LaurentSeries r(f.context());
  LaurentSeries p = LaurentSeries::constant(f.context(), Rational(1));
  long guard = iteration_guard(*f.context());
  for (long k = 1; ; ++k) {
    if (k > guard) throw std::logic_error("log_series does not terminate under the window");
    p = p * d;
    if (p.is_zero()) break;
    LaurentSeries t = p;
    t *= Rational((k % 2) ? 1 : -1, k);
    r += t;
  }
  return r;
}

LaurentSeries invert_unit(const LaurentSeries& f) {
  Rational c = f.constant_term();
  require(c != 0, "invert_unit: zero constant term");
  LaurentSeries d = f;
  d *= Rational(1) / c;
  d -= LaurentSeries::constant(f.context(), Rational(1));
  LaurentSeries r = LaurentSeries::constant(f.context(), Rational(1));
  LaurentSeries p = r;
  long guard = iteration_guard(*f.context());
  for (long k = 1; ; ++k) {
    if (k > guard) throw std::logic_error("invert_unit does not terminate under the window");
    p = p * d;
    if (p.is_zero()) break;
    if (k % 2) {
      r -= p;
    } else {
      r += p;
    }
  }
  r *= Rational(1) / c;
  return r;
}

LaurentSeries substitute(const LaurentSeries& f, int axis, const LaurentSeries& g) {
  require_same_context(f, g);
  require(g.constant_term() == 0, "substitute: replacement has nonzero constant term");
  for (const auto& [e, c] : g.terms())
    require(e[axis] >= 0, "substitute: replacement has negative exponents on the axis");
  // Slice f by the axis exponent, then Horner from the top power down.
  std::map<int, LaurentSeries> slices;
  for (const auto& [e, c] : f.terms()) {
    require(e[axis] >= 0, "substitute: negative exponent of the substituted variable");
    Exps e0 = e;
    e0[axis] = 0;
    auto [it, fresh] = slices.emplace(e[axis], LaurentSeries(f.context()));
    it->second.add_term(e0, c);
  }
  LaurentSeries r(f.context());
  if (slices.empty()) return r;
  int top = slices.rbegin()->first;
  for (int k = top; k >= 0; --k) {
    r = r * g;
    auto it = slices.find(k);
    if (it != slices.end()) r += it->second;
  }
  return r;
}

LaurentSeries eval_axis(const LaurentSeries& f, int axis, const Rational& value) {
  LaurentSeries r(f.context());
  for (const auto& [e, c] : f.terms()) {
    require(e[axis] >= 0, "eval_axis: negative exponent");
    Rational pw = 1;
    for (int i = 0; i < e[axis]; ++i) pw *= value;
    Exps e0 = e;
    e0[axis] = 0;
    r.add_term(e0, c * pw);
  }
  return r;
}

LaurentSeries zdz(const LaurentSeries& f, int axis) {
  LaurentSeries r(f.context());
  for (const auto& [e, c] : f.terms())
    if (e[axis] != 0) r.add_term(e, c * e[axis]);
  return r;
}

LaurentSeries deriv(const LaurentSeries& f, int axis) {
  LaurentSeries r(f.context());
  for (const auto& [e, c] : f.terms()) {
    if (e[axis] == 0) continue;
    Exps e1 = e;
    e1[axis] = static_cast<int16_t>(e[axis] - 1);
    r.add_term(e1, c * e[axis]);
  }
  return r;
}

LaurentSeries zdz_inverse(const LaurentSeries& f, int axis) {
  LaurentSeries r(f.context());
  for (const auto& [e, c] : f.terms()) {
    if (e[axis] == 0)
      throw std::domain_error("zdz_inverse: nonzero exponent-zero slice (zero-residue hypothesis violated)");
    r.add_term(e, c / e[axis]);
  }
  return r;
}

LaurentSeries coeff(const LaurentSeries& f, int axis, int k) {
  LaurentSeries r(f.context());
  for (const auto& [e, c] : f.terms()) {
    if (e[axis] != k) continue;
    Exps e0 = e;
    e0[axis] = 0;
    r.add_term(e0, c);
  }
  return r;
}

int max_exp(const LaurentSeries& f, int axis, int fallback) {
  int m = fallback;
  bool any = false;
  for (const auto& [e, c] : f.terms()) {
    if (!any || e[axis] > m) m = e[axis];
    any = true;
  }
  return m;
}

LaurentSeries truncate_axis_above(const LaurentSeries& f, int axis, int top) {
  LaurentSeries r(f.context());
  for (const auto& [e, c] : f.terms())
    if (e[axis] <= top) r.add_term(e, c);
  return r;
}

LaurentSeries mul_pruned(const LaurentSeries& a, const LaurentSeries& b, int axis, int top) {
  require(a.context() == b.context(), "series context mismatch");
  LaurentSeries r(a.context());
  if (a.is_zero() || b.is_zero()) return r;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  // bucket the large operand by the pruning axis
  std::map<int, std::vector<const std::pair<const Exps, Rational>*>> buckets;
  for (const auto& term : large.terms()) buckets[term.first[axis]].push_back(&term);
  Exps e(a.context()->dims());
  for (const auto& [ea, ca] : small.terms()) {
    int budget = top - ea[axis];
    for (const auto& [hexp, vec] : buckets) {
      if (hexp > budget) break;
      for (const auto* term : vec) {
        const auto& [eb, cb] = *term;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<int16_t>(ea[i] + eb[i]);
        r.add_term(e, ca * cb);
      }
    }
  }
  return r;
}

LaurentSeries shift_exp(const LaurentSeries& f, int axis, int delta) {
  LaurentSeries r(f.context());
  for (const auto& [e, c] : f.terms()) {
    Exps e1 = e;
    e1[axis] = static_cast<int16_t>(e[axis] + delta);
    r.add_term(e1, c);
  }
  return r;
}

LaurentSeries divided_difference(const std::vector<Rational>& f, ContextPtr ctx,
                                 int axis_a, int axis_b) {
  require(axis_a != axis_b, "divided_difference: equal axes");
  LaurentSeries r(std::move(ctx));
  Exps e(r.context()->dims(), 0);
  for (std::size_t m = 1; m < f.size(); ++m) {
    if (f[m] == 0) continue;
    for (std::size_t a = 0; a < m; ++a) {
      e[axis_a] = static_cast<int16_t>(a);
      e[axis_b] = static_cast<int16_t>(m - 1 - a);
      r.add_term(e, f[m]);
    }
  }
  return r;
}

LaurentSeries diagonal_expand(ContextPtr ctx, int i, int j, int p) {
  require(i != j, "diagonal_expand: i == j");
  require(p == 1 || p == 2, "diagonal_expand: power must be 1 or 2");
  // Expand in the smaller variable per the fixed sector; the sign flips for
  // p = 1 when the smaller variable comes first in z_i - z_j.
  // In the sector the smaller-index variable is expanded out:
  //   p=1: sgn * sum_{m>=0} z_small^m z_large^{-m-1}
  //   p=2:       sum_{m>=0} (m+1) z_small^m z_large^{-m-2}
  // with sgn = +1 iff the smaller variable is z_j.
  int small = std::min(i, j), large = std::max(i, j);
  Rational sign = (p == 2 || small == j) ? Rational(1) : Rational(-1);
  LaurentSeries r(ctx);
  Exps e(ctx->dims(), 0);
  int mmax = -ctx->z_low[large] - p;  // floor of the large variable
  for (int m = 0; m <= mmax; ++m) {
    e[small] = static_cast<int16_t>(m);
    e[large] = static_cast<int16_t>(-m - p);
    r.add_term(e, sign * (p == 2 ? Rational(m + 1) : Rational(1)));
  }
  return r;
}

}  // namespace oshn
