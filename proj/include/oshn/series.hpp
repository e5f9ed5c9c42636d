#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "oshn/rational.hpp"

namespace oshn {

// Exponent vector over all axes of a context, in axis order.
using Exps = std::vector<int16_t>;

// A truncation window for multivariate Laurent series in z_1..z_n with an
// hbar grading and optional polynomial variables u_1..u_m and v.
//
// Axis layout: [z_1 .. z_n][hbar][u_1 .. u_m][v].
//
// Truncation semantics: a term is kept iff
//   - every z_i exponent lies in [z_low[i], z_high_i] where the implicit
//     z_high_i follows from the total cap and the other floors,
//   - the (weighted) total z-degree is <= z_order,
//   - the hbar exponent lies in [h_low, h_high],
//   - u exponents lie in [0, u_cap], the v exponent in [0, v_cap].
// Out-of-window terms are silently dropped at creation time; this is the
// documented semantics of every operation.
//
// The expansion sector is fixed once and for all to |z_1| << ... << |z_n|:
// all diagonal expansions produced under a context follow the index order.
struct SeriesContext {
  int n_z = 0;
  std::vector<int> z_low;      // per-variable exponent floor, <= 0
  std::vector<int> z_weight;   // weighted degree (empty = all ones)
  int z_order = 0;             // cap on the weighted total z-degree
  int h_low = 0;
  int h_high = 0;
  int n_u = 0;
  int u_cap = 0;
  int v_cap = -1;  // -1: no v axis

  int dims() const { return n_z + 1 + n_u + (v_cap >= 0 ? 1 : 0); }
  int z_axis(int i) const { return i; }
  int h_axis() const { return n_z; }
  int u_axis(int i) const { return n_z + 1 + i; }
  int v_axis() const { return n_z + 1 + n_u; }

  bool in_window(const Exps& e) const;
};

using ContextPtr = std::shared_ptr<const SeriesContext>;

// Validates and freezes a context.
ContextPtr make_context(SeriesContext c);

// Sparse exponent-vector map with exact rational coefficients. Immutable in
// spirit: operations return new values and never mutate their inputs, so
// series are safe to share across threads. No zero coefficient is ever
// stored, and all stored exponents are inside the context window.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  explicit LaurentSeries(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static LaurentSeries constant(ContextPtr ctx, const Rational& c);
  static LaurentSeries monomial(ContextPtr ctx, const Exps& e, const Rational& c);
  static LaurentSeries variable(ContextPtr ctx, int axis);  // exponent 1 on axis

  const ContextPtr& context() const { return ctx_; }
  const std::map<Exps, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Exps& e) const;
  Rational constant_term() const;

  // Termwise insertion with window truncation.
  void add_term(const Exps& e, const Rational& c);

  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  LaurentSeries& operator*=(const Rational& c);

  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(LaurentSeries a, const Rational& c) { return a *= c; }
  friend LaurentSeries operator*(const Rational& c, LaurentSeries a) { return a *= c; }
  LaurentSeries operator-() const;
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

  bool operator==(const LaurentSeries& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentSeries& o) const { return !(*this == o); }

  std::string to_string() const;  // debugging aid, deterministic

 private:
  ContextPtr ctx_;
  std::map<Exps, Rational> terms_;
};

// sum f^k/k!; requires zero constant term.
LaurentSeries exp_series(const LaurentSeries& f);

// sum (-1)^{k+1} (f-1)^k / k; requires constant term 1.
LaurentSeries log_series(const LaurentSeries& f);

// g with f*g = 1 up to truncation; requires nonzero constant term.
LaurentSeries invert_unit(const LaurentSeries& f);

// f with the given axis replaced by g; f must have only nonnegative
// exponents on the axis, g must have zero constant term and only
// nonnegative exponents.
LaurentSeries substitute(const LaurentSeries& f, int axis, const LaurentSeries& g);

// Evaluates an axis at an exact scalar: x^k -> value^k.
LaurentSeries eval_axis(const LaurentSeries& f, int axis, const Rational& value);

// Euler operator x d/dx on the axis: multiplies each term by its exponent.
LaurentSeries zdz(const LaurentSeries& f, int axis);

// True derivative d/dx on the axis (used for the formal y variable).
LaurentSeries deriv(const LaurentSeries& f, int axis);

// Termwise division by the axis exponent; requires the exponent-zero slice
// to vanish identically (a nonzero slice signals a violated zero-residue
// hypothesis upstream).
LaurentSeries zdz_inverse(const LaurentSeries& f, int axis);

// Coefficient of axis^k, as a series in the remaining variables (the axis
// slot of every resulting exponent vector is zero).
LaurentSeries coeff(const LaurentSeries& f, int axis, int k);

// Largest axis exponent present, or fallback if f == 0.
int max_exp(const LaurentSeries& f, int axis, int fallback = 0);

// Drops every term with axis exponent above top.
LaurentSeries truncate_axis_above(const LaurentSeries& f, int axis, int top);

// a*b keeping only terms with axis exponent <= top; pairs that cannot land
// inside are never formed.
LaurentSeries mul_pruned(const LaurentSeries& a, const LaurentSeries& b, int axis, int top);

// Multiplies by axis^delta termwise (with truncation). For delta < 0 every
// term must have axis exponent >= -delta.
LaurentSeries shift_exp(const LaurentSeries& f, int axis, int delta);

// (f(z_b) - f(z_a)) / (z_b - z_a) as a bona fide power series:
// sum_m f_m sum_{a+b=m-1} z_a^a z_b^b, where f_m are the coefficients of a
// one-variable power series f.
LaurentSeries divided_difference(const std::vector<Rational>& f, ContextPtr ctx,
                                 int axis_a, int axis_b);

// Sector expansion of 1/(z_i - z_j)^p for p in {1, 2}, per the context
// ordering |z_i| << |z_j| for i < j.
LaurentSeries diagonal_expand(ContextPtr ctx, int i, int j, int p);

}  // namespace oshn
