#include <doctest.h>

#include <random>

#include "oshn/oracle.hpp"
#include "test_util.hpp"

using namespace oshn;

namespace {

ModelSpec usual_spec() { return {{Rational(1)}, {Rational(1)}}; }

ModelSpec monotone_spec(int order) {
  ModelSpec s;
  for (int k = 1; k <= order; ++k) s.psi.emplace_back(1, k);
  s.y = {Rational(1)};
  return s;
}

Rational pcoef(const LaurentSeries& f, std::initializer_list<int> pexps, int hexp) {
  // pexps lists exponents of p_1, p_2, ...
  Exps e(f.context()->dims(), 0);
  int k = 0;
  for (int x : pexps) e[k++] = static_cast<int16_t>(x);
  e[f.context()->h_axis()] = static_cast<int16_t>(hexp);
  return f.coefficient(e);
}

}  // namespace

TEST_CASE("partition enumeration") {
  CHECK(partitions_up_to(0).size() == 1);  // just the empty one
  CHECK(partitions_up_to(3).size() == 7);
  int expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  std::size_t cum = 0;
  for (int w = 0; w <= 8; ++w) {
    CHECK(partitions_of(w).size() == static_cast<std::size_t>(expected[w]));
    cum += expected[w];
  }
  CHECK(partitions_up_to(8).size() == cum);  // 67
  for (const auto& lambda : partitions_of(6))
    for (std::size_t i = 1; i < lambda.parts.size(); ++i)
      CHECK(lambda.parts[i - 1] >= lambda.parts[i]);
}

TEST_CASE("schur polynomials in power sums") {
  auto ring = make_p_ring(4, -4, 4);
  auto s1 = schur_in_p({{1}}, ring);
  CHECK(pcoef(s1, {1}, 0) == 1);
  CHECK(s1.size() == 1);
  // s_(2) = (p1^2 + p2)/2, s_(11) = (p1^2 - p2)/2
  auto s2 = schur_in_p({{2}}, ring);
  CHECK(pcoef(s2, {2, 0}, 0) == Rational(1, 2));
  CHECK(pcoef(s2, {0, 1}, 0) == Rational(1, 2));
  auto s11 = schur_in_p({{1, 1}}, ring);
  CHECK(pcoef(s11, {2, 0}, 0) == Rational(1, 2));
  CHECK(pcoef(s11, {0, 1}, 0) == Rational(-1, 2));
  // s_(2,1) = (p1^3 - p3)/3
  auto s21 = schur_in_p({{2, 1}}, ring);
  CHECK(pcoef(s21, {3, 0, 0}, 0) == Rational(1, 3));
  CHECK(pcoef(s21, {1, 1, 0}, 0) == 0);
  CHECK(pcoef(s21, {0, 0, 1}, 0) == Rational(-1, 3));
}

TEST_CASE("Cauchy identity to weight 8") {
  // sum_lambda s_lambda(p) s_lambda(q) = exp(sum_k p_k q_k / k)
  int w = 8;
  auto ring = make_p_ring(w, 0, 0, /*copies=*/2);
  LaurentSeries lhs(ring);
  for (const auto& lambda : partitions_up_to(w))
    lhs += schur_in_p(lambda, ring, 0) * schur_in_p(lambda, ring, w);
  LaurentSeries arg(ring);
  for (int k = 1; k <= w; ++k) {
    Exps e(ring->dims(), 0);
    e[ring->z_axis(k - 1)] = 1;
    e[ring->z_axis(w + k - 1)] = 1;
    arg.add_term(e, Rational(1, k));
  }
  LaurentSeries rhs = exp_series(arg);
  // compare on the balanced window both sides fill completely
  auto balanced = [&](const Exps& e) {
    int dp = 0, dq = 0;
    for (int k = 1; k <= w; ++k) {
      dp += k * e[ring->z_axis(k - 1)];
      dq += k * e[ring->z_axis(w + k - 1)];
    }
    return dp <= w && dq <= w;
  };
  LaurentSeries diff = lhs - rhs;
  for (const auto& [e, c] : diff.terms()) CHECK(!balanced(e));
  CHECK(!lhs.is_zero());
}

TEST_CASE("content products") {
  auto ring = make_p_ring(3, -3, 4);
  ModelSpec spec = usual_spec();
  auto one = LaurentSeries::constant(ring, Rational(1));
  CHECK(content_product({{}}, spec, ring) == one);
  CHECK(content_product({{1}}, spec, ring) == one);  // single cell, content 0
  // lambda = (2), psi = y: contents 0,1 -> e^{hbar}
  auto cp = content_product({{2}}, spec, ring);
  for (int k = 0; k <= 4; ++k) {
    Exps e(ring->dims(), 0);
    e[ring->h_axis()] = static_cast<int16_t>(k);
    CHECK(cp.coefficient(e) == Rational(1) / factorial(k));
  }
}

TEST_CASE("partition function slices") {
  ModelSpec spec = usual_spec();
  // content products need |lambda| extra hbar headroom above the target
  auto ring = make_p_ring(3, -3, 6);
  auto z = partition_function(spec, ring);
  // [p1] Z = 1/hbar (only lambda = (1) contributes)
  CHECK(pcoef(z, {1}, -1) == 1);
  for (int h = 0; h <= 3; ++h) CHECK(pcoef(z, {1}, h) == 0);
  // [p2] Z = (e^h - e^{-h})/(4 h^2) = 1/(2h) + h/12 + h^3/240 + ...
  CHECK(pcoef(z, {0, 1}, -1) == Rational(1, 2));
  CHECK(pcoef(z, {0, 1}, 0) == 0);
  CHECK(pcoef(z, {0, 1}, 1) == Rational(1, 12));
  CHECK(pcoef(z, {0, 1}, 3) == Rational(1, 240));

  // psi = 0: Z = exp(sum_k s_k p_k/(k hbar)) (Cauchy specialisation)
  std::mt19937 rng(61);
  ModelSpec zspec{{}, {Rational(1), Rational(1, 2), Rational(-2)}};
  auto z0 = partition_function(zspec, ring);
  LaurentSeries arg(ring);
  for (int k = 1; k <= 3; ++k) {
    Exps e(ring->dims(), 0);
    e[ring->z_axis(k - 1)] = 1;
    e[ring->h_axis()] = -1;
    arg.add_term(e, zspec.y_coeff(k) / k);
  }
  CHECK(z0 == exp_series(arg));
}

TEST_CASE("connected F") {
  ModelSpec spec = usual_spec();
  Oracle oracle(spec, 4, 2);
  // round trip
  CHECK(exp_series(oracle.F()) == oracle.Z());
  // [p1^3] F slices at hbar^{-3} and hbar^{-1} vanish (forced by g >= 0)
  CHECK(pcoef(oracle.F(), {3}, -3) == 0);
  CHECK(pcoef(oracle.F(), {3}, -1) == 0);
  CHECK(pcoef(oracle.F(), {3}, 1) != 0);

  // psi = 0: F = sum s_k p_k/(k hbar) exactly
  ModelSpec zspec{{}, {Rational(1)}};
  Oracle oz(zspec, 4, 2);
  LaurentSeries expect(oz.p_ring());
  Exps e(oz.p_ring()->dims(), 0);
  e[oz.p_ring()->z_axis(0)] = 1;
  e[oz.p_ring()->h_axis()] = -1;
  expect.add_term(e, Rational(1));
  CHECK(oz.F() == expect);
}

TEST_CASE("hand-derived Hurwitz numbers") {
  Oracle usual(usual_spec(), 6, 3);
  CHECK(usual.hurwitz(0, {1}) == 1);
  CHECK(usual.hurwitz(0, {2}) == Rational(1, 2));
  CHECK(usual.hurwitz(1, {2}) == Rational(1, 12));
  CHECK(usual.hurwitz(0, {1, 1, 1}) == 1);
  Oracle mono(monotone_spec(8), 4, 2);
  CHECK(mono.hurwitz(1, {2}) == Rational(1, 2));
}

TEST_CASE("hurwitz numbers are symmetric in the profile") {
  std::mt19937 rng(67);
  ModelSpec spec;
  for (int k = 0; k < 3; ++k) spec.psi.push_back(testutil::random_rational(rng));
  for (int k = 0; k < 3; ++k) spec.y.push_back(testutil::random_rational(rng));
  spec.psi[0] = 1;
  spec.y[0] = 1;
  Oracle oracle(spec, 6, 2);
  CHECK(oracle.hurwitz(0, {1, 2, 3}) == oracle.hurwitz(0, {3, 2, 1}));
  CHECK(oracle.hurwitz(1, {2, 1}) == oracle.hurwitz(1, {1, 2}));
}

TEST_CASE("genus grading of F") {
  // [p_mu] F carries only hbar exponents 2g-2+n with integer g >= 0.
  std::mt19937 rng(71);
  ModelSpec spec;
  for (int k = 0; k < 3; ++k) spec.psi.push_back(testutil::random_rational(rng));
  spec.y = {Rational(1), Rational(-1, 2)};
  spec.psi[0] = 1;
  Oracle oracle(spec, 5, 3);
  for (const auto& [e, c] : oracle.F().terms()) {
    int n = 0;
    for (int k = 1; k <= 5; ++k) n += e[oracle.p_ring()->z_axis(k - 1)];
    int h = e[oracle.p_ring()->h_axis()];
    if (h > 3 - 5) {  // inside the window the grading must be exact
      CHECK((h - n) % 2 == 0);
      CHECK(h >= n - 2);
    }
  }
}

TEST_CASE("inclusion-exclusion for n <= 3") {
  // f_S = derivative of F, z_S = derivative of Z at p=0, as hbar series:
  // f_12 = z_12 - f_1 f_2, f_123 = z_123 - sum f_i f_jk - f_1 f_2 f_3.
  std::mt19937 rng(73);
  ModelSpec spec;
  for (int k = 0; k < 3; ++k) spec.psi.push_back(testutil::random_rational(rng));
  for (int k = 0; k < 3; ++k) spec.y.push_back(testutil::random_rational(rng));
  spec.psi[0] = 1;
  spec.y[0] = 1;
  int mu[3] = {1, 2, 3};  // distinct parts, so derivatives are plain coefficients
  Oracle oracle(spec, 6, 3);
  const auto& ring = oracle.p_ring();
  auto dcoef = [&](const LaurentSeries& f, std::vector<int> parts) {
    Exps e(ring->dims(), 0);
    for (int m : parts) e[ring->z_axis(m - 1)] = 1;
    LaurentSeries out(ring);
    for (const auto& [te, tc] : f.terms()) {
      bool match = true;
      for (int i = 0; i < ring->n_z; ++i)
        if (te[i] != e[i]) match = false;
      if (match) {
        Exps eh(ring->dims(), 0);
        eh[ring->h_axis()] = te[ring->h_axis()];
        out.add_term(eh, tc);
      }
    }
    return out;
  };
  auto F = oracle.F(), Z = oracle.Z();
  auto f1 = dcoef(F, {mu[0]}), f2 = dcoef(F, {mu[1]}), f3 = dcoef(F, {mu[2]});
  auto f12 = dcoef(F, {mu[0], mu[1]}), f13 = dcoef(F, {mu[0], mu[2]}),
       f23 = dcoef(F, {mu[1], mu[2]});
  auto f123 = dcoef(F, {mu[0], mu[1], mu[2]});
  // exact up to the guaranteed hbar top (products of window-truncated
  // factors are reliable there)
  auto check_to_top = [&](const LaurentSeries& a, const LaurentSeries& b) {
    auto diff = a - b;
    for (const auto& [e, c] : diff.terms()) CHECK(e[ring->h_axis()] > 3);
  };
  CHECK(dcoef(Z, {mu[0]}) == f1);
  check_to_top(dcoef(Z, {mu[0], mu[1]}), f12 + f1 * f2);
  check_to_top(dcoef(Z, {mu[0], mu[1], mu[2]}),
               f123 + f1 * f23 + f2 * f13 + f3 * f12 + f1 * f2 * f3);
  CHECK(!f123.is_zero());
}

TEST_CASE("oracle guards") {
  Oracle oracle(usual_spec(), 4, 2);
  CHECK_THROWS_AS((void)oracle.hurwitz(0, {5}), std::invalid_argument);
  CHECK_THROWS_AS((void)oracle.hurwitz(0, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)oracle.hurwitz(0, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS((void)oracle.hurwitz(5, {1}), std::invalid_argument);
}
