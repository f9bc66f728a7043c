#pragma once

#include <map>
#include <tuple>

#include "hstar/grivaux.hpp"
#include "hstar/rng.hpp"

namespace hstar::testing {

/// E = {1}: a single complementary arc covering everything else.
inline CarlesonSet singleton_set() {
  return make_carleson_set({Arc{0.0, 1.0}}, {0}, 0, "point");
}

inline NodeFamily single_node_at_one() {
  NodeFamily f;
  f.angles = {0.0};
  f.nodes = {std::complex<double>(1.0, 0.0)};
  f.spacing = 2.0;
  f.generation = 0;
  return f;
}

/// Cached outer functions for the configurations the tests reuse.
inline const OuterFunction& cached_outer(const CarlesonSet& set, double p, int grid) {
  static std::map<std::tuple<std::string, int, double, int>, OuterFunction> cache;
  const auto key = std::make_tuple(set.tag, set.depth, p, grid);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, outer_function(boundary_weight(set, p, grid))).first;
  return it->second;
}

inline Eigen::VectorXcd random_coeffs(Rng& rng, int n) {
  Eigen::VectorXcd c(n);
  for (int j = 0; j < n; ++j) c[j] = rng.complex_gaussian();
  return c;
}

inline Eigen::VectorXcd project_h1(const NodeFamily& nodes, Eigen::VectorXcd c) {
  const int n = static_cast<int>(nodes.nodes.size());
  Eigen::VectorXcd v(n);
  for (int j = 0; j < n; ++j) v[j] = -1.0 / nodes.nodes[static_cast<std::size_t>(j)];
  const std::complex<double> val = v.transpose() * c;
  c -= v.conjugate() * (val / std::real(v.transpose() * v.conjugate()));
  return c;
}

}  // namespace hstar::testing
