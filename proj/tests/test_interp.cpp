#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "edgemc/error.hpp"
#include "edgemc/interp.hpp"

using namespace edgemc;

TEST(Interp, RatioIsLinearFraction) {
  EXPECT_DOUBLE_EQ(interp_ratio(0.0, 100.0, 50.0), 0.5);
  EXPECT_DOUBLE_EQ(interp_ratio(0.0, 100.0, 20.0), 0.2);
  EXPECT_DOUBLE_EQ(interp_ratio(100.0, 0.0, 20.0), 0.8);
}

TEST(Interp, EqualEndsHaveNoCrossing) { EXPECT_THROW(interp_ratio(7.0, 7.0, 7.0), NoCrossingError); }

TEST(Interp, ThreeSegmentSnapsToThreeValues) {
  const InterpParams p;
  EXPECT_EQ(snap_three_segment(0.2, p), 0.25);
  EXPECT_EQ(snap_three_segment(0.5, p), 0.5);
  EXPECT_EQ(snap_three_segment(0.8, p), 0.75);
  EXPECT_EQ(snap_three_segment(0.0, p), 0.25);
  EXPECT_EQ(snap_three_segment(1.0, p), 0.75);
}

TEST(Interp, BandLimitsSnapToMiddle) {
  // The comparisons are strict, so the limits themselves belong to the middle band.
  const InterpParams p;
  EXPECT_EQ(snap_three_segment(0.3, p), 0.5);
  EXPECT_EQ(snap_three_segment(0.7, p), 0.5);
  EXPECT_EQ(snap_three_segment(std::nextafter(0.3, 0.0), p), 0.25);
  EXPECT_EQ(snap_three_segment(std::nextafter(0.7, 1.0), p), 0.75);
}

TEST(Interp, SignIsKept) {
  const InterpParams p;
  EXPECT_EQ(snap_three_segment(-0.2, p), -0.25);
  EXPECT_EQ(snap_three_segment(-0.9, p), -0.75);
  EXPECT_EQ(snap_three_segment(-0.0, p), 0.25);
}

TEST(Interp, RandomValidInputsLandOnTheThreeValues) {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> hu(0.0, 1000.0);
  const InterpMode mode = InterpMode::three_segment();
  int checked = 0;
  while (checked < 1000) {
    const double a = hu(rng);
    const double b = hu(rng);
    const double y = hu(rng);
    if (!crosses(a, b, y)) continue;
    const double k = edge_ratio(a, b, y, mode);
    EXPECT_TRUE(k == 0.25 || k == 0.5 || k == 0.75) << k;
    ++checked;
  }
}

TEST(Interp, ParamsValidation) {
  EXPECT_TRUE(InterpParams{}.valid());
  EXPECT_NO_THROW(InterpParams::make(0.2, 0.4, 0.6, 0.8));
  EXPECT_THROW(InterpParams::make(0.3, 0.2, 0.7, 0.7), std::invalid_argument);
  EXPECT_THROW(InterpParams::make(0.25, 0.3, 0.7, 0.8), std::invalid_argument);  // q + p != 1
  EXPECT_THROW(InterpParams::make(0.0, 0.3, 0.7, 1.0), std::invalid_argument);
}

TEST(Interp, ModesPlaceThePoint) {
  const Vec3 a{0, 0, 0};
  const Vec3 b{2, 0, 0};
  EXPECT_DOUBLE_EQ(edge_intersection(a, b, 0, 100, 20, InterpMode::linear()).x, 0.4);
  EXPECT_DOUBLE_EQ(edge_intersection(a, b, 0, 100, 20, InterpMode::midpoint()).x, 1.0);
  EXPECT_DOUBLE_EQ(edge_intersection(a, b, 0, 100, 20, InterpMode::three_segment()).x, 0.5);
}

TEST(Interp, InsideIsStrictlyAbove) {
  EXPECT_TRUE(is_inside(50.5, 50.0));
  EXPECT_FALSE(is_inside(50.0, 50.0));
  EXPECT_TRUE(crosses(50.0, 51.0, 50.0));
  EXPECT_FALSE(crosses(49.0, 50.0, 50.0));
}
