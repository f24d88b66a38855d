#pragma once

#include <utility>
#include <vector>

namespace nodal {

// Legendre polynomial P_m(t) by the three-term recurrence.
double legendre_p(int m, double t);

// (P_m(t), P_m'(t)).
std::pair<double, double> legendre_p_with_derivative(int m, double t);

// The m roots of P_m in ascending order, Newton-refined to machine precision.
std::vector<double> legendre_roots(int m);

}  // namespace nodal
