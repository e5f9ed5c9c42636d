#pragma once

#include <map>
#include <string>
#include <vector>

#include "oshn/rational.hpp"

namespace oshn {

// Named weight families, expanded exactly to truncated rational coefficient
// lists for psi(y) = sum c_k y^k:
//   usual              e^psi = e^y
//   monotone           e^psi = 1/(1-y)
//   strictly-monotone  e^psi = 1+y
//   hypermaps          e^psi = (1+u y)(1+v y), params u, v
//   bms                e^psi = (1+y)^m, param m
std::vector<Rational> psi_preset(const std::string& name, int order,
                                 const std::map<std::string, Rational>& params);

// y(z) families: "simple" y = z; "orbifold" y = z^q, param q >= 1.
std::vector<Rational> y_preset(const std::string& name, int order,
                               const std::map<std::string, Rational>& params);

bool is_psi_preset(const std::string& name);

}  // namespace oshn
