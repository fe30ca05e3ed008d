#pragma once

#include <vector>

namespace klab {
namespace arch {

// Gauss-Legendre rule on [-1, 1], cached per order.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Nodes/weights mapped onto [lo, hi].
void gauss_legendre_on(double lo, double hi, int n, std::vector<double>& nodes,
                       std::vector<double>& weights);

// C-infinity step: 1 for u <= 0, 0 for u >= 1.
double smooth_step(double u);

} // namespace arch
} // namespace klab
