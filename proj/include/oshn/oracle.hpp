#pragma once

#include "oshn/model.hpp"
#include "oshn/series.hpp"

namespace oshn {

// Young diagram as a weakly decreasing list of positive row lengths.
struct Partition {
  std::vector<int> parts;

  int weight() const;
  int length() const { return static_cast<int>(parts.size()); }
  bool operator==(const Partition& o) const { return parts == o.parts; }
};

// Partitions of weight exactly w / at most w (including the empty one),
// in a fixed deterministic order.
std::vector<Partition> partitions_of(int w);
std::vector<Partition> partitions_up_to(int w);

// The oracle's ring: polynomials in p_1..p_W (several copies if requested)
// with weighted degree deg p_k = k capped at copies*W, coefficients Laurent
// in hbar. p_k of copy c sits on z-slot c*W + (k-1).
ContextPtr make_p_ring(int max_weight, int h_low, int h_high, int copies = 1);

// s_lambda as a polynomial in the power sums, via the Jacobi-Trudi
// determinant det(h_{lambda_i - i + j}) over complete homogeneous h_m.
// var_offset selects the p-variable copy (multiples of max_weight).
LaurentSeries schur_in_p(const Partition& lambda, const ContextPtr& pring, int var_offset = 0);

// exp(sum_{(i,j) in lambda} psi(hbar (j-i))), an hbar-only series.
LaurentSeries content_product(const Partition& lambda, const ModelSpec& spec,
                              const ContextPtr& pring);

// Z = sum_lambda content_product * s_lambda(p) * s_lambda(s/hbar) over all
// |lambda| <= max_weight of the ring.
LaurentSeries partition_function(const ModelSpec& spec, const ContextPtr& pring);

// F = log Z.
LaurentSeries connected_F(const LaurentSeries& z);

// Brute-force weighted double Hurwitz numbers straight from the Schur
// expansion; ground truth for everything else.
class Oracle {
 public:
  // Exact for all h_{g,mu} with |mu| <= max_weight and 2g-2+length(mu) <= h_top.
  Oracle(ModelSpec spec, int max_weight, int h_top);

  const ModelSpec& spec() const { return spec_; }
  const ContextPtr& p_ring() const { return ring_; }
  const LaurentSeries& Z() const { return z_; }
  const LaurentSeries& F() const { return f_; }

  // [hbar^{2g-2+n}] d^n F / dp_{m_1}..dp_{m_n} at p = 0; repeated indices
  // mean repeated differentiation.
  Rational hurwitz(int g, std::vector<int> mu) const;

  // sum_{m_1..m_n >= 1} h_{g,(m)} prod_i X(z_i)^{m_i} over the cache's ring.
  LaurentSeries npoint(int g, int n, const ModelCache& cache, int order) const;

 private:
  ModelSpec spec_;
  int max_weight_;
  ContextPtr ring_;
  LaurentSeries z_, f_;
};

}  // namespace oshn
