#pragma once

#include <vector>

namespace gkl {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// Nodes on [-1, 1], weight 1. Cached per order; the returned reference stays
// valid for the lifetime of the program and may be shared across threads.
const GaussRule& gauss_legendre(int order);

// Nodes on R, weight exp(-z^2). Cached like gauss_legendre.
const GaussRule& gauss_hermite(int order);

}  // namespace gkl
