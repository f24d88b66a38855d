#pragma once

// Test-only reference computations. Nothing here calls into the library's
// evaluation paths, so each oracle is an independent check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace nodal::oracle {

inline constexpr double kPi = std::numbers::pi;

// Legendre P_m from the explicit sum P_m(t) = 2^-m sum_k (-1)^k C(m,k) C(2m-2k,m) t^(m-2k).
inline double legendre_explicit(int m, double t) {
  double sum = 0.0;
  for (int k = 0; 2 * k <= m; ++k) {
    const double c1 = std::tgamma(m + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(m - k + 1.0));
    const double c2 = std::tgamma(2.0 * m - 2.0 * k + 1.0) / (std::tgamma(m + 1.0) * std::tgamma(m - 2.0 * k + 1.0));
    sum += (k % 2 == 0 ? 1.0 : -1.0) * c1 * c2 * std::pow(t, m - 2 * k);
  }
  return sum / std::pow(2.0, m);
}

// Roots of P_m by sign scan and bisection on the explicit sum.
inline std::vector<double> legendre_roots_bisection(int m) {
  std::vector<double> roots;
  const int grid = 4000;
  for (int i = 0; i < grid; ++i) {
    double a = -1.0 + 2.0 * i / grid, b = -1.0 + 2.0 * (i + 1) / grid;
    double fa = legendre_explicit(m, a), fb = legendre_explicit(m, b);
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if (fa * fb > 0.0 || fb == 0.0) continue;
    for (int it = 0; it < 200; ++it) {
      const double c = 0.5 * (a + b), fc = legendre_explicit(m, c);
      if ((fc < 0.0) == (fa < 0.0)) {
        a = c;
        fa = fc;
      } else {
        b = c;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  return roots;
}

// Midpoint rule in (colatitude, azimuth) for the surface integral over S^2.
inline double sphere_integral(const std::function<double(double, double, double)>& f, int n_theta = 400,
                              int n_phi = 800) {
  double sum = 0.0;
  const double dt = kPi / n_theta, dp = 2.0 * kPi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double th = (i + 0.5) * dt;
    const double s = std::sin(th), c = std::cos(th);
    for (int j = 0; j < n_phi; ++j) {
      const double ph = (j + 0.5) * dp;
      sum += f(s * std::cos(ph), s * std::sin(ph), c) * s * dt * dp;
    }
  }
  return sum;
}

// Real spherical harmonic of degree l and order k at (theta, phi) from the
// standard library's associated Legendre function (no Condon-Shortley
// phase) with Gamma-function normalization. Valid for moderate l.
inline double real_sph_harmonic(int l, int k, double theta, double phi) {
  const int ak = k < 0 ? -k : k;
  const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * std::exp(std::lgamma(l - ak + 1.0) - std::lgamma(l + ak + 1.0)));
  const double p = std::assoc_legendre(static_cast<unsigned>(l), static_cast<unsigned>(ak), std::cos(theta));
  if (k == 0) return norm * p;
  if (k > 0) return std::sqrt(2.0) * norm * p * std::cos(ak * phi);
  return std::sqrt(2.0) * norm * p * std::sin(ak * phi);
}

// Number of sign changes of g over a uniform periodic grid of n samples.
inline int periodic_sign_changes(const std::function<double(double)>& g, int n) {
  int count = 0;
  double prev = g(0.0);
  const double first = prev;
  for (int j = 1; j <= n; ++j) {
    const double cur = j == n ? first : g(2.0 * kPi * j / n);
    if ((prev < 0.0) != (cur < 0.0)) ++count;
    prev = cur;
  }
  return count;
}

// Two-sample-free Kolmogorov-Smirnov statistic of `xs` against `cdf`.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return d;
}

// CDF of the first coordinate of a uniform point on S^(N-1), by Simpson
// quadrature of the density proportional to (1 - t^2)^((N-3)/2).
inline std::function<double(double)> sphere_coordinate_cdf(int N) {
  const double e = 0.5 * (N - 3);
  auto density = [e](double t) { return std::pow(std::max(0.0, 1.0 - t * t), e); };
  auto integrate = [density](double a, double b) {
    const int n = 2000;
    const double h = (b - a) / n;
    double s = density(a) + density(b);
    for (int i = 1; i < n; ++i) s += density(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
  };
  const double total = integrate(-1.0, 1.0);
  return [=](double x) { return integrate(-1.0, std::clamp(x, -1.0, 1.0)) / total; };
}

}  // namespace nodal::oracle
