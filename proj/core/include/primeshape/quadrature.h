#ifndef PRIMESHAPE_QUADRATURE_H_
#define PRIMESHAPE_QUADRATURE_H_

#include <vector>

namespace primeshape {

// Gauss-Hermite rule for the weight exp(-x^2): sum_i w_i f(x_i) approximates
// the integral of exp(-x^2) f(x) over the real line. Nodes ascend.
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermite gauss_hermite(int n);

}  // namespace primeshape

#endif  // PRIMESHAPE_QUADRATURE_H_
