#include "nodal/harmonics.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nodal/errors.hpp"
#include "nodal/quadrature.hpp"

namespace nodal {

namespace {

void check_point(const HarmonicBasis& basis, const SpherePoint& point) {
  if (point.sphere_dim() != basis.sphere_dim()) {
    throw InvalidArgument("point lies on S^" + std::to_string(point.sphere_dim()) + " but basis is on S^" +
                          std::to_string(basis.sphere_dim()));
  }
}

}  // namespace

HarmonicBasis::HarmonicBasis(int sphere_dim, int degree)
    : sphere_dim_(sphere_dim),
      degree_(degree),
      dimension_(sphere_dim == 1 ? 2 : 2 * degree + 1),
      eigenvalue_(static_cast<double>(degree * (degree + sphere_dim - 1))),
      volume_(sphere_dim == 1 ? 2.0 * kPi : 4.0 * kPi) {}

HarmonicBasis build_basis(int sphere_dim, int degree) {
  if (sphere_dim != 1 && sphere_dim != 2) {
    throw InvalidArgument("sphere_dim must be 1 or 2, got " + std::to_string(sphere_dim));
  }
  if (degree < 1) throw InvalidArgument("degree must be >= 1 (lambda > 0), got " + std::to_string(degree));
  if (degree > kMaxDegree) {
    throw InvalidArgument("degree must be <= " + std::to_string(kMaxDegree) + ", got " + std::to_string(degree));
  }
  return HarmonicBasis(sphere_dim, degree);
}

void HarmonicBasis::evaluate(const Eigen::Vector3d& x, std::span<double> values) const {
  if (sphere_dim_ == 1) {
    evaluate_circle(x, values, nullptr);
  } else {
    evaluate_sphere(x, values, nullptr);
  }
}

void HarmonicBasis::evaluate(const Eigen::Vector3d& x, std::span<double> values,
                             Eigen::Matrix3Xd& gradients) const {
  if (sphere_dim_ == 1) {
    evaluate_circle(x, values, &gradients);
  } else {
    evaluate_sphere(x, values, &gradients);
  }
}

void HarmonicBasis::evaluate_circle(const Eigen::Vector3d& x, std::span<double> values,
                                    Eigen::Matrix3Xd* gradients) const {
  // w^k = (x + iy)^k, kept for k = m - 1 and m.
  double re = 1.0, im = 0.0, re_prev = 1.0, im_prev = 0.0;
  for (int k = 1; k <= degree_; ++k) {
    re_prev = re;
    im_prev = im;
    const double r = re * x.x() - im * x.y();
    im = re * x.y() + im * x.x();
    re = r;
  }
  const double norm = 1.0 / std::sqrt(kPi);
  values[0] = norm * re;
  values[1] = norm * im;
  if (gradients) {
    const double m = degree_;
    Eigen::Vector3d g0(m * re_prev, -m * im_prev, 0.0);
    Eigen::Vector3d g1(m * im_prev, m * re_prev, 0.0);
    const Eigen::Vector3d p(x.x(), x.y(), 0.0);
    gradients->col(0) = norm * (g0 - g0.dot(p) * p);
    gradients->col(1) = norm * (g1 - g1.dot(p) * p);
  }
}

void HarmonicBasis::evaluate_sphere(const Eigen::Vector3d& x, std::span<double> values,
                                    Eigen::Matrix3Xd* gradients) const {
  const int m = degree_;
  const double z = x.z();
  const double sqrt2 = std::sqrt(2.0);

  // Powers of w = x + iy.
  std::array<double, kMaxDegree + 1> w_re{}, w_im{};
  w_re[0] = 1.0;
  w_im[0] = 0.0;
  for (int k = 1; k <= m; ++k) {
    w_re[k] = w_re[k - 1] * x.x() - w_im[k - 1] * x.y();
    w_im[k] = w_re[k - 1] * x.y() + w_im[k - 1] * x.x();
  }

  // q_kk is the normalized sectoral seed; q_mk follows from the
  // degree recurrence at fixed order k, with its z-derivative alongside.
  double q_kk = 1.0 / std::sqrt(4.0 * kPi);
  for (int k = 0; k <= m; ++k) {
    if (k > 0) q_kk *= std::sqrt((2.0 * k + 1.0) / (2.0 * k));
    double q_lm2 = 0.0, dq_lm2 = 0.0;
    double q_lm1 = q_kk, dq_lm1 = 0.0;
    for (int l = k + 1; l <= m; ++l) {
      const double l2 = static_cast<double>(l) * l;
      const double k2 = static_cast<double>(k) * k;
      const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - k2));
      const double lm1 = l - 1.0;
      const double b = (l == k + 1) ? 0.0 : std::sqrt((lm1 * lm1 - k2) / (4.0 * lm1 * lm1 - 1.0));
      const double q = a * (z * q_lm1 - b * q_lm2);
      const double dq = a * (q_lm1 + z * dq_lm1 - b * dq_lm2);
      q_lm2 = q_lm1;
      dq_lm2 = dq_lm1;
      q_lm1 = q;
      dq_lm1 = dq;
    }
    const double q = q_lm1;
    const double dq = dq_lm1;

    if (k == 0) {
      values[static_cast<std::size_t>(m)] = q;
      if (gradients) gradients->col(m) = Eigen::Vector3d(0.0, 0.0, dq);
      continue;
    }
    const double s = sqrt2 * q;
    const auto ic = static_cast<std::size_t>(m + k);
    const auto is = static_cast<std::size_t>(m - k);
    values[ic] = s * w_re[k];
    values[is] = s * w_im[k];
    if (gradients) {
      const double sk = s * k;
      gradients->col(m + k) = Eigen::Vector3d(sk * w_re[k - 1], -sk * w_im[k - 1], sqrt2 * dq * w_re[k]);
      gradients->col(m - k) = Eigen::Vector3d(sk * w_im[k - 1], sk * w_re[k - 1], sqrt2 * dq * w_im[k]);
    }
  }
  if (gradients) {
    // Tangential projection of the ambient gradient of the extension.
    for (int i = 0; i < dimension_; ++i) {
      gradients->col(i) -= gradients->col(i).dot(x) * x;
    }
  }
}

double HarmonicBasis::value(const CoefficientVector& c, const Eigen::Vector3d& x) const {
  std::array<double, 2 * kMaxDegree + 1> buf{};
  evaluate(x, std::span<double>(buf.data(), static_cast<std::size_t>(dimension_)));
  return c.dot(Eigen::Map<const Eigen::VectorXd>(buf.data(), dimension_));
}

void check_coefficients(const HarmonicBasis& basis, const CoefficientVector& coeffs) {
  if (coeffs.size() != basis.dimension()) {
    throw InvalidArgument("coefficient vector has length " + std::to_string(coeffs.size()) +
                          ", basis dimension is " + std::to_string(basis.dimension()));
  }
}

Eigen::VectorXd eval_basis(const HarmonicBasis& basis, const SpherePoint& point) {
  check_point(basis, point);
  Eigen::VectorXd out(basis.dimension());
  basis.evaluate(point.ambient(), std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

std::vector<TangentVector> eval_gradient(const HarmonicBasis& basis, const SpherePoint& point) {
  check_point(basis, point);
  Eigen::VectorXd vals(basis.dimension());
  Eigen::Matrix3Xd grads(3, basis.dimension());
  basis.evaluate(point.ambient(), std::span<double>(vals.data(), static_cast<std::size_t>(vals.size())), grads);
  std::vector<TangentVector> out;
  out.reserve(static_cast<std::size_t>(basis.dimension()));
  for (int i = 0; i < basis.dimension(); ++i) out.emplace_back(grads.col(i));
  return out;
}

double laplacian_residual(const HarmonicBasis& basis, const CoefficientVector& coeffs, const SpherePoint& point,
                          double step) {
  check_point(basis, point);
  check_coefficients(basis, coeffs);
  const Eigen::Vector3d& x = point.ambient();
  const double u0 = basis.value(coeffs, x);
  const double h2 = step * step;
  double lap = 0.0;
  if (basis.sphere_dim() == 1) {
    const double theta = point.angle();
    const double up = basis.value(coeffs, SpherePoint::on_circle(theta + step).ambient());
    const double um = basis.value(coeffs, SpherePoint::on_circle(theta - step).ambient());
    lap = (up + um - 2.0 * u0) / h2;
  } else {
    const auto [e1, e2] = tangent_frame(x);
    for (const Eigen::Vector3d& e : {e1, e2}) {
      const double up = basis.value(coeffs, exp_map(x, step * e));
      const double um = basis.value(coeffs, exp_map(x, -step * e));
      lap += (up + um - 2.0 * u0) / h2;
    }
  }
  return std::abs(lap + basis.eigenvalue() * u0);
}

CoefficientVector zonal(const HarmonicBasis& basis, const SpherePoint& axis) {
  if (basis.sphere_dim() != 2) throw InvalidArgument("zonal harmonics are defined on S^2 only");
  check_point(basis, axis);
  // Addition theorem: sum_i f_i(a) f_i(x) = (2m+1)/(4 pi) P_m(<a, x>).
  return std::sqrt(4.0 * kPi / basis.dimension()) * eval_basis(basis, axis);
}

Eigen::MatrixXd gram_matrix(const HarmonicBasis& basis) {
  const auto quad = product_quadrature(basis.sphere_dim(), 2 * basis.degree());
  const int n = basis.dimension();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd v(n);
  for (std::size_t q = 0; q < quad.points.size(); ++q) {
    basis.evaluate(quad.points[q], std::span<double>(v.data(), static_cast<std::size_t>(n)));
    gram.noalias() += quad.weights[q] * v * v.transpose();
  }
  return gram;
}

Eigen::MatrixXd rotation_representation(const HarmonicBasis& basis, const Eigen::Matrix3d& rotation) {
  if (basis.sphere_dim() == 1 &&
      (std::abs(rotation(2, 2) - 1.0) > 1e-12 || rotation.col(2).head<2>().norm() > 1e-12)) {
    throw InvalidArgument("S^1 rotations must fix the z axis");
  }
  const auto quad = product_quadrature(basis.sphere_dim(), 2 * basis.degree());
  const int n = basis.dimension();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd fx(n), fr(n);
  for (std::size_t q = 0; q < quad.points.size(); ++q) {
    const Eigen::Vector3d& x = quad.points[q];
    basis.evaluate(x, std::span<double>(fx.data(), static_cast<std::size_t>(n)));
    basis.evaluate(rotation.transpose() * x, std::span<double>(fr.data(), static_cast<std::size_t>(n)));
    d.noalias() += quad.weights[q] * fx * fr.transpose();
  }
  return d;
}

}  // namespace nodal
