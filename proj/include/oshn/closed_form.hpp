#pragma once

#include <map>
#include <memory>
#include <optional>

#include "oshn/graphs.hpp"
#include "oshn/model.hpp"

namespace oshn {

// One n-point computation: H_{g,n} as a z-power series to total degree
// `order`. The hbar window is sized to capture exactly [hbar^{2g-2+n}].
struct TaskSpec {
  int g = 0;
  int n = 1;
  int order = 1;
};

// Loop/window headroom knobs; the defaults are provably sufficient, the
// robustness tests re-run with enlarged values and assert equal output.
struct TaskLimits {
  int window_scale = 1;  // scales the negative-exponent budgets
  int h_slack = 0;       // widens the hbar window
  int r_extra = 0;       // extends the L_r table and u caps
};

// Window assembly for a task. Negative budgets follow the shared-budget
// recursion M_1 = 0, M_j = sum_{i<j} (order + M_i): sector expansions of an
// edge {i,j} all draw on the positive budget of the smaller variable.
ContextPtr make_task_context(const TaskSpec& t, const TaskLimits& lim = {});

Rational constant_c(int g, int n, ModelCache& cache);

// Assembles H_{g,n} from the closed graph-sum formulas over a fixed model
// cache; also hosts the D_1..D_n cross-check route and the printed small
// (g,n) reference formulas.
class NPointComputer {
 public:
  NPointComputer(const ModelSpec& spec, const TaskSpec& task, const TaskLimits& lim = {});

  const TaskSpec& task() const { return task_; }
  const ContextPtr& context() const { return ctx_; }
  ModelCache& cache() { return *cache_; }

  // w_{i,j} = exp(hbar^2 u_i u_j S_i S_j gamma_{i,j}) - 1 to the hbar window.
  const LaurentSeries& edge_weight(int i, int j);

  // The leaf-edge integral in closed form:
  // hbar u_k S(u_k hbar Q_k D_k) applied to gamma^{[-1]}_{leaf,k}.
  const LaurentSeries& leaf_term(int leaf, int k);

  // The vertex elimination operator: sum_{r>=0, j>=1} D_i^{j-1} of
  // ([v^j]L_r / Q_i) [u_i^r] (vertex bracket * f). Every term of f must
  // contain u_i. Terms above h_top cannot reach the extracted hbar slice
  // and are pruned.
  LaurentSeries u_bar_apply(const LaurentSeries& f, int i, int h_top = 1 << 20);

  // Same with the j = 0 slot included and D_i^j applied (no integration);
  // the building block of the D_1..D_n route.
  LaurentSeries u_full_apply(const LaurentSeries& f, int i, int h_top = 1 << 20);

  // H_{g,n}; throws if negative powers fail to cancel.
  LaurentSeries compute(int threads = 1);

  // D_1..D_n H_{g,n} via the graph sum with all vertex operators in the
  // derivative-only form; n >= 2 and (g,n) != (0,2).
  LaurentSeries dh_cross_check(int threads = 1);

  // The same sum with its full hbar content, for grading checks.
  LaurentSeries dh_graph_sum_raw(int threads = 1);

  // Direct evaluation of the printed small-case formulas;
  // (g,n) in {(1,1),(0,3),(1,2),(0,4)}.
  LaurentSeries reference_formula();

  LaurentSeries compute_H01();
  LaurentSeries compute_H02();

  // Per-j pieces of the n=1 pipeline (before the D^{j-1} application), at
  // full hbar resolution; exposed for the partial golden checks.
  LaurentSeries g1_inner_term(int j);

 private:
  LaurentSeries graph_contribution(const LabeledGraph& g);
  LaurentSeries graph_dh_contribution(const LabeledGraph& g);
  LaurentSeries sum_over_graphs(int threads, bool dh_route);
  LaurentSeries compute_g1();
  LaurentSeries compute_gn2();
  const LaurentSeries& vertex_bracket(int i);  // exp(E_i)/S(u_i hbar), no 1/hbar
  LaurentSeries extract_h(const LaurentSeries& f) const;
  LaurentSeries finalize(LaurentSeries h) const;

  TaskSpec task_;
  ContextPtr ctx_;
  std::unique_ptr<ModelCache> cache_;
  std::vector<Rational> inv_s_, inv_s2_;
  std::map<std::pair<int, int>, LaurentSeries> edge_cache_, leaf_cache_, ubar_leaf_cache_;
  std::vector<std::optional<LaurentSeries>> bracket_;
};

}  // namespace oshn
