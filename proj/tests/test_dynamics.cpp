#include "spacesplit/spacesplit.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

namespace spacesplit {
namespace {

using testing::random_interior_point;
constexpr double kPi = std::numbers::pi;

ParamVector params(double s1, double s2, double s3, double s4) {
  ParamVector s(4);
  s << s1, s2, s3, s4;
  return s;
}

Point point(double x1, double x2) {
  Point x(2);
  x << x1, x2;
  return x;
}

Vector vec(double a, double b) { return point(a, b); }

ParamVector random_params(Rng& rng, double bound) {
  ParamVector s(4);
  for (int i = 0; i < 4; ++i) s[i] = bound * (2.0 * uniform01(rng) - 1.0);
  return s;
}

TEST(BakerApply, UnperturbedExamples) {
  BakerMap m;
  const ParamVector s0 = params(0, 0, 0, 0);
  const Point a = m.apply(point(kPi / 2, kPi), s0);
  EXPECT_NEAR(a[0], kPi, 1e-15);
  EXPECT_NEAR(a[1], kPi / 2, 1e-15);
  const Point b = m.apply(point(3 * kPi / 2, 0.0), s0);
  EXPECT_NEAR(b[0], kPi, 1e-15);
  EXPECT_NEAR(b[1], kPi, 1e-15);
}

TEST(BakerApply, S1Example) {
  BakerMap m;
  const Point a = m.apply(point(kPi / 2, kPi), params(0.2, 0, 0, 0));
  EXPECT_NEAR(a[0], kPi + 0.2, 1e-14);
  EXPECT_NEAR(a[1], kPi / 2, 1e-14);
}

TEST(BakerApply, OutputStaysInDomain) {
  BakerMap m;
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const Point y = m.apply(m.sample_domain(rng), random_params(rng, 0.2));
    for (int k = 0; k < 2; ++k) {
      EXPECT_GE(y[k], 0.0);
      EXPECT_LT(y[k], 2 * kPi);
    }
  }
}

TEST(BakerApply, RejectsNonFiniteState) {
  BakerMap m;
  EXPECT_THROW(m.apply(point(std::nan(""), 1.0), params(0, 0, 0, 0)), InvalidStateError);
  EXPECT_THROW(m.apply(point(1.0, INFINITY), params(0, 0, 0, 0)), InvalidStateError);
  EXPECT_THROW(m.apply(point(1.0, 1.0), params(NAN, 0, 0, 0)), InvalidStateError);
}

TEST(BakerJacobian, UnperturbedIsDiagonal) {
  BakerMap m;
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Matrix D = m.jacobian(random_interior_point(rng), params(0, 0, 0, 0));
    EXPECT_DOUBLE_EQ(D(0, 0), 2.0);
    EXPECT_DOUBLE_EQ(D(0, 1), 0.0);
    EXPECT_DOUBLE_EQ(D(1, 0), 0.0);
    EXPECT_DOUBLE_EQ(D(1, 1), 0.5);
    EXPECT_NEAR(D(0, 0) * D(1, 1) - D(0, 1) * D(1, 0), 1.0, 1e-15);
  }
}

TEST(BakerJacobian, S1Example) {
  BakerMap m;
  const Matrix D = m.jacobian(point(kPi / 2, kPi), params(0.2, 0, 0, 0));
  EXPECT_NEAR(D(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(D(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(D(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(D(1, 1), 0.5, 1e-15);
}

TEST(BakerJacobian, MatchesFiniteDifferences) {
  BakerMap m;
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Point x = random_interior_point(rng);
    const ParamVector s = random_params(rng, 0.2);
    const Matrix fd = testing::fd_jacobian(m, x, s, 1e-6);
    EXPECT_LT((m.jacobian(x, s) - fd).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(BakerSecondDerivative, UnperturbedVanishes) {
  BakerMap m;
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Point x = random_interior_point(rng);
    const Vector d = m.second_derivative(x, params(0, 0, 0, 0), random_unit_vector(rng, 2),
                                         random_unit_vector(rng, 2));
    EXPECT_EQ(d.norm(), 0.0);
  }
}

TEST(BakerSecondDerivative, S1Example) {
  BakerMap m;
  const Vector d = m.second_derivative(point(kPi / 2, kPi), params(0.2, 0, 0, 0), vec(1, 0),
                                       vec(1, 0));
  EXPECT_NEAR(d[0], -0.2, 1e-15);
  EXPECT_NEAR(d[1], 0.0, 1e-15);
}

TEST(BakerSecondDerivative, SymmetricBilinearAndMatchesFiniteDifferences) {
  BakerMap m;
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const Point x = random_interior_point(rng);
    const ParamVector s = random_params(rng, 0.2);
    const Vector u = random_unit_vector(rng, 2);
    const Vector v = random_unit_vector(rng, 2);
    const Vector uv = m.second_derivative(x, s, u, v);
    EXPECT_LT((uv - m.second_derivative(x, s, v, u)).norm(), 1e-14);
    EXPECT_LT((m.second_derivative(x, s, 3.0 * u, v) - 3.0 * uv).norm(), 1e-13);
    EXPECT_LT((uv - testing::fd_second_derivative(m, x, s, u, v, 1e-5)).norm(), 1e-5);
  }
}

TEST(BakerParameterVelocity, Examples) {
  BakerMap m;
  const Vector a = m.parameter_velocity(point(kPi / 2, kPi), params(0.01, 0, 0, 0), 0);
  EXPECT_NEAR(a[0], 1.0, 1e-15);
  EXPECT_NEAR(a[1], 0.0, 1e-15);
  const Vector b = m.parameter_velocity(point(kPi / 2, kPi / 4), params(0, 0, 0, 0), 3);
  EXPECT_NEAR(b[0], 0.0, 1e-15);
  EXPECT_NEAR(b[1], 0.5, 1e-15);
  const Vector c = m.parameter_velocity(point(0.0, 1.3), params(0, 0, 0, 0), 2);
  EXPECT_EQ(c.norm(), 0.0);
}

TEST(BakerParameterVelocity, MatchesFiniteDifferences) {
  BakerMap m;
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const Point x = random_interior_point(rng);
    const ParamVector s = random_params(rng, 0.2);
    for (int k = 0; k < 4; ++k) {
      const Vector fd = testing::fd_parameter_velocity(m, x, s, k, 1e-6);
      EXPECT_LT((m.parameter_velocity(x, s, k) - fd).norm(), 1e-7) << "k=" << k;
    }
  }
}

TEST(BakerMixedDerivative, Examples) {
  BakerMap m;
  EXPECT_LT(m.mixed_derivative(point(kPi / 2, kPi), params(0, 0, 0, 0), 0).norm(), 1e-15);
  EXPECT_LT(m.mixed_derivative(point(1.1, kPi / 4), params(0, 0, 0, 0), 3).norm(), 1e-15);
}

TEST(BakerMixedDerivative, MatchesFiniteDifferences) {
  BakerMap m;
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const Point x = random_interior_point(rng);
    const ParamVector s = random_params(rng, 0.2);
    for (int k = 0; k < 4; ++k) {
      const Matrix fd = testing::fd_mixed_derivative(m, x, s, k, 1e-5);
      EXPECT_LT((m.mixed_derivative(x, s, k) - fd).cwiseAbs().maxCoeff(), 1e-5) << "k=" << k;
    }
  }
}

TEST(BakerMap, RejectsBadParameterIndex) {
  BakerMap m;
  EXPECT_THROW(m.parameter_velocity(point(1, 1), params(0, 0, 0, 0), 4), ConfigError);
  EXPECT_THROW(m.mixed_derivative(point(1, 1), params(0, 0, 0, 0), -1), ConfigError);
}

TEST(BakerMap, DisplacementUsesMinimalImage) {
  BakerMap m;
  const Vector d = m.displacement(point(2 * kPi - 0.1, 0.05), point(0.1, 2 * kPi - 0.05));
  EXPECT_NEAR(d[0], 0.2, 1e-14);
  EXPECT_NEAR(d[1], -0.1, 1e-14);
}

TEST(MakeModel, KnownAndUnknownNames) {
  EXPECT_EQ(make_model("baker")->name(), "baker");
  EXPECT_THROW(make_model("henon"), ConfigError);
}

TEST(Trajectory, SinglePointEqualsSeededDraw) {
  BakerMap m;
  const Trajectory t = generate_trajectory(m, params(0, 0, 0, 0), 42, 0, 1);
  Rng rng(42);
  const Point x = m.sample_domain(rng);
  EXPECT_EQ(t.first_index(), 0);
  EXPECT_EQ(t.end_index(), 1);
  EXPECT_EQ(t.point(0), x);
}

TEST(Trajectory, FollowsTheMap) {
  BakerMap m;
  const ParamVector s = params(0.1, -0.05, 0.2, 0.15);
  const Trajectory t = generate_trajectory(m, s, 9, 20, 500);
  EXPECT_EQ(t.first_index(), -20);
  for (long n = t.first_index(); n + 1 < t.end_index(); ++n) {
    EXPECT_EQ(t.point(n + 1), m.apply(t.point(n), s));
  }
}

TEST(Trajectory, RegenerationIsBitIdentical) {
  BakerMap m;
  const ParamVector s = params(0.1, 0, 0.1, 0);
  const Trajectory a = generate_trajectory(m, s, 77, 50, 2000);
  const Trajectory b = generate_trajectory(m, s, 77, 50, 2000);
  for (long n = a.first_index(); n < a.end_index(); ++n) ASSERT_EQ(a.point(n), b.point(n));
  const Trajectory c = generate_trajectory(m, s, 78, 50, 2000);
  EXPECT_NE(a.point(0), c.point(0));
}

TEST(Trajectory, UnperturbedMeanOfObservableIsZero) {
  BakerMap m;
  CosineObservable J;
  const long N = 1000000;
  const Trajectory t = generate_trajectory(m, params(0, 0, 0, 0), 3, 100, N);
  BatchMeans bm(N);
  for (long n = 0; n < N; ++n) bm.add(J.value(t.point(n)));
  EXPECT_LT(std::abs(bm.mean()), 3.0 * bm.std_error() + 1e-12);
  EXPECT_GT(bm.std_error(), 0.0);
}

TEST(Trajectory, CsvHasHeaderAndRunup) {
  BakerMap m;
  const Trajectory t = generate_trajectory(m, params(0, 0, 0, 0), 1, 2, 3);
  std::ostringstream os;
  write_trajectory_csv(os, t);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "n,x1,x2");
  std::getline(is, line);
  EXPECT_EQ(line.substr(0, 3), "-2,");
  int rows = 1;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Histogram, SinglePointFillsOneBin) {
  BakerMap m;
  const Trajectory t = generate_trajectory(m, params(0, 0, 0, 0), 4, 0, 1);
  const Histogram2D h = srb_histogram(t, 10, 10);
  int nonzero = 0;
  for (double p : h.probability) nonzero += p > 0.0;
  EXPECT_EQ(nonzero, 1);
  EXPECT_DOUBLE_EQ(*std::max_element(h.probability.begin(), h.probability.end()), 1.0);
}

TEST(Histogram, UnperturbedIsUniform) {
  BakerMap m;
  const long N = 10000000;
  const Trajectory t = generate_trajectory(m, params(0, 0, 0, 0), 8, 100, N);
  const Histogram2D h = srb_histogram(t, 50, 50);
  const double p = 1.0 / 2500.0;
  const double tol = 5.0 * std::sqrt(p * (1 - p) / N);
  double sum = 0.0;
  for (int ix = 0; ix < 50; ++ix) {
    for (int iy = 0; iy < 50; ++iy) {
      EXPECT_NEAR(h.at(ix, iy), p, tol) << ix << "," << iy;
      sum += h.at(ix, iy);
    }
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Histogram, PerturbedSumsToOneAndWritesCsv) {
  BakerMap m;
  const Trajectory t = generate_trajectory(m, params(0, 0, 0.2, 0), 8, 100, 100000);
  const Histogram2D h = srb_histogram(t, 20, 20);
  double sum = 0.0;
  for (double p : h.probability) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  std::ostringstream os;
  write_histogram_csv(os, h);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "ix,iy,x1_lo,x2_lo,probability");
}

TEST(Observable, GradientMatchesFiniteDifferences) {
  Rng rng(10);
  for (const char* name : {"cos4x2", "cos2x2", "cos4x1", "constant"}) {
    const auto J = make_observable(name);
    const Point x = random_interior_point(rng);
    const Vector g = J->gradient(x);
    for (int i = 0; i < 2; ++i) {
      Point hi = x;
      Point lo = x;
      hi[i] += 1e-6;
      lo[i] -= 1e-6;
      EXPECT_NEAR(g[i], (J->value(hi) - J->value(lo)) / 2e-6, 1e-8) << name;
    }
  }
  EXPECT_THROW(make_observable("sin"), ConfigError);
}

TEST(Random, DerivedSeedsDifferAndUnitVectorsAreUnit) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(random_unit_vector(rng, 2).norm(), 1.0, 1e-15);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace spacesplit
