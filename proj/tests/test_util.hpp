#pragma once

#include <random>

#include "oshn/series.hpp"

namespace oshn::testutil {

// Random series whose terms all have nonnegative total z-degree, the shape
// everything in the pipelines has (regular parts plus sector ratio terms).
inline LaurentSeries random_series(const ContextPtr& ctx, std::mt19937& rng, int nterms,
                                   bool allow_ratio_terms = true) {
  std::uniform_int_distribution<int> coef(-6, 6);
  std::uniform_int_distribution<int> zexp(0, std::min(3, ctx->z_order));
  LaurentSeries f(ctx);
  for (int t = 0; t < nterms; ++t) {
    Exps e(ctx->dims(), 0);
    for (int i = 0; i < ctx->n_z; ++i) e[i] = static_cast<int16_t>(zexp(rng));
    if (allow_ratio_terms && ctx->n_z >= 2) {
      // occasionally add a balanced ratio factor z_small^m z_large^{-m}
      std::uniform_int_distribution<int> pick(0, 2);
      if (pick(rng) == 0) {
        std::uniform_int_distribution<int> var(0, ctx->n_z - 2);
        int i = var(rng);
        int j = ctx->n_z - 1;
        int depth = -ctx->z_low[j];
        if (depth > 0) {
          std::uniform_int_distribution<int> md(1, std::min(3, depth));
          int m = md(rng);
          e[i] = static_cast<int16_t>(e[i] + m);
          e[j] = static_cast<int16_t>(e[j] - m);
        }
      }
    }
    int c = coef(rng);
    if (c != 0) f.add_term(e, Rational(c));
  }
  return f;
}

inline Rational random_rational(std::mt19937& rng, int num_range = 5, int den_range = 4) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  return Rational(num(rng), den(rng));
}

}  // namespace oshn::testutil
