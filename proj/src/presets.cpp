#include "oshn/presets.hpp"

#include <stdexcept>

namespace oshn {

namespace {

Rational param(const std::map<std::string, Rational>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument("preset: missing parameter '" + key + "'");
  return it->second;
}

}  // namespace

bool is_psi_preset(const std::string& name) {
  return name == "usual" || name == "monotone" || name == "strictly-monotone" ||
         name == "hypermaps" || name == "bms";
}

std::vector<Rational> psi_preset(const std::string& name, int order,
                                 const std::map<std::string, Rational>& params) {
  if (order < 1) throw std::invalid_argument("preset: order must be >= 1");
  std::vector<Rational> c;
  if (name == "usual") {
    c = {Rational(1)};
  } else if (name == "monotone") {
    // psi = -log(1-y)
    for (int k = 1; k <= order; ++k) c.emplace_back(1, k);
  } else if (name == "strictly-monotone") {
    // psi = log(1+y)
    for (int k = 1; k <= order; ++k) c.emplace_back(k % 2 ? 1 : -1, k);
  } else if (name == "bms") {
    Rational m = param(params, "m");
    for (int k = 1; k <= order; ++k) c.push_back(m * Rational(k % 2 ? 1 : -1, k));
  } else if (name == "hypermaps") {
    // psi = log(1+u y) + log(1+v y)
    Rational u = param(params, "u"), v = param(params, "v");
    Rational up = 1, vp = 1;
    for (int k = 1; k <= order; ++k) {
      up *= u;
      vp *= v;
      c.push_back(Rational(k % 2 ? 1 : -1, k) * (up + vp));
    }
  } else {
    throw std::invalid_argument("unknown psi preset '" + name + "'");
  }
  return c;
}

std::vector<Rational> y_preset(const std::string& name, int order,
                               const std::map<std::string, Rational>& params) {
  if (name == "simple") return {Rational(1)};
  if (name == "orbifold") {
    Rational qr = param(params, "q");
    if (denominator(qr) != 1 || qr < 1)
      throw std::invalid_argument("orbifold preset: q must be a positive integer");
    int q = static_cast<int>(numerator(qr));
    if (q > order)
      throw std::invalid_argument("orbifold preset: q exceeds the requested order");
    std::vector<Rational> s(q, Rational(0));
    s[q - 1] = 1;
    return s;
  }
  throw std::invalid_argument("unknown y preset '" + name + "'");
}

}  // namespace oshn
