#include "nodal/embedding.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nodal/errors.hpp"
#include "oracles.hpp"

namespace nodal {
namespace {

TEST(Radius, SquaredRadiusValues) {
  EXPECT_NEAR(build_basis(2, 1).squared_radius(), 3 / (4 * kPi), 1e-15);
  EXPECT_NEAR(build_basis(2, 2).squared_radius(), 5 / (4 * kPi), 1e-15);
  EXPECT_NEAR(build_basis(1, 4).squared_radius(), 1 / kPi, 1e-15);
  std::mt19937_64 rng(1);
  for (int m = 1; m <= 10; ++m) {
    EXPECT_LE(radius_check(build_basis(2, m), 100, rng), 1e-12);
    EXPECT_LE(radius_check(build_basis(1, m), 100, rng), 1e-12);
  }
}

TEST(Dilation, Constants) {
  EXPECT_NEAR(dilation_constant(build_basis(2, 1)), 3 / (4 * kPi), 1e-15);
  EXPECT_NEAR(dilation_constant(build_basis(1, 3)), 9 / kPi, 1e-14);
}

TEST(Dilation, DegreeOneGramIsScaledIdentity) {
  std::mt19937_64 rng(2);
  const auto b = build_basis(2, 1);
  for (int i = 0; i < 20; ++i) {
    const Eigen::MatrixXd g = pullback_gram(b, random_point(2, rng));
    EXPECT_NEAR((g - 3 / (4 * kPi) * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.0, 1e-13);
  }
}

TEST(Dilation, CircleGramMatchesFiniteDifferences) {
  const auto b = build_basis(1, 3);
  for (double t : {0.0, 0.4, 2.1, 5.0}) {
    const double h = 1e-5;
    Eigen::VectorXd fp(b.dimension()), fm(b.dimension());
    fp = eval_basis(b, SpherePoint::on_circle(t + h));
    fm = eval_basis(b, SpherePoint::on_circle(t - h));
    const double speed2 = ((fp - fm) / (2 * h)).squaredNorm();
    EXPECT_NEAR(speed2, 9 / kPi, 1e-8);
    EXPECT_NEAR(pullback_gram(b, SpherePoint::on_circle(t))(0, 0), 9 / kPi, 1e-12);
  }
}

TEST(Dilation, GramTraceEqualsGradientSum) {
  std::mt19937_64 rng(3);
  for (int m = 1; m <= 10; ++m) {
    const auto b = build_basis(2, m);
    for (int i = 0; i < 10; ++i) {
      const auto x = random_point(2, rng);
      EXPECT_NEAR(pullback_gram(b, x).trace(), b.gradient_sum(), 1e-10 * b.gradient_sum());
      EXPECT_LE(dilation_check(b, x), 1e-10 * dilation_constant(b));
    }
  }
}

TEST(Covering, ParityLawOnSphere) {
  std::mt19937_64 rng(4);
  for (int m = 1; m <= 10; ++m) {
    const auto b = build_basis(2, m);
    EXPECT_EQ(covering_degree(b, 32, rng), m % 2 == 0 ? 2 : 1) << m;
    EXPECT_EQ(antipodally_identified(b, 32, rng), m % 2 == 0);
  }
}

TEST(Covering, CircleWrapsMTimes) {
  std::mt19937_64 rng(5);
  for (int m = 1; m <= 6; ++m) EXPECT_EQ(covering_degree(build_basis(1, m), 16, rng), m);
}

TEST(ImageVolume, DegreeOne) {
  const auto r = image_volume(build_basis(2, 1));
  EXPECT_NEAR(r.numeric_image_volume, 3.0, 1e-4);
  EXPECT_NEAR(r.predicted_image_volume, 3.0, 1e-12);
  EXPECT_EQ(r.covering_degree, 1);
  EXPECT_LE(r.max_gram_residual, 1e-10);
}

TEST(ImageVolume, DegreeTwoIsDoublyCovered) {
  const auto r = image_volume(build_basis(2, 2));
  EXPECT_EQ(r.covering_degree, 2);
  EXPECT_TRUE(r.antipodal_identified);
  EXPECT_NEAR(r.numeric_integral, 15.0, 0.005 * 15.0);
  EXPECT_NEAR(r.numeric_image_volume, 7.5, 0.005 * 7.5);
  EXPECT_NEAR(r.predicted_image_volume, 7.5, 1e-12);
}

TEST(ImageVolume, AgreesWithPredictionUpToTen) {
  for (int m = 1; m <= 10; ++m) {
    const auto r = image_volume(build_basis(2, m));
    EXPECT_NEAR(r.numeric_image_volume / r.predicted_image_volume, 1.0, 1e-6) << m;
  }
}

TEST(ImageVolume, CircleAgainstPolylineLength) {
  for (int m = 1; m <= 5; ++m) {
    const auto b = build_basis(1, m);
    const int n = 20000;
    Eigen::VectorXd prev(2), cur(2);
    prev = eval_basis(b, SpherePoint::on_circle(0.0));
    double length = 0.0;
    for (int j = 1; j <= n; ++j) {
      cur = eval_basis(b, SpherePoint::on_circle(2 * kPi * j / n));
      length += (cur - prev).norm();
      prev = cur;
    }
    const auto r = image_volume(b);
    EXPECT_NEAR(r.numeric_integral, length, 1e-6 * length);
    EXPECT_NEAR(r.numeric_integral, 2 * m * std::sqrt(kPi), 1e-9);
    EXPECT_NEAR(r.numeric_image_volume, 2 * std::sqrt(kPi), 1e-9);
  }
}

TEST(ImageVolume, RejectsBadDepth) {
  EXPECT_THROW(image_volume(build_basis(2, 1), -1), InvalidArgument);
  EXPECT_THROW(image_volume(build_basis(2, 1), 12), InvalidArgument);
}

}  // namespace
}  // namespace nodal
