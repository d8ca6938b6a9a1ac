#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lfd/calibration.hpp"

namespace lfd {
namespace {

TEST(Calibration, ReferenceSyringePump) {
  // 200 steps/rev, 1/16 microstepping, BD 10 mL (14.5 mm ID), 8 mm lead.
  const auto r = microsteps_per_microliter({200, 16, 14.5, 8, 500, ""});
  EXPECT_NEAR(r.microsteps_per_microliter, 2.4223, 5e-4);
  EXPECT_EQ(r.source, CalibrationSource::geometric);
}

TEST(Calibration, UnitVolumePerRevolution) {
  // ID chosen so one revolution sweeps exactly 1 uL.
  const double id = 2.0 / std::sqrt(std::numbers::pi);
  const auto r = microsteps_per_microliter({200, 16, id, 1, 500, ""});
  EXPECT_NEAR(r.microsteps_per_microliter, 3200.0, 1e-9);
}

TEST(Calibration, DirectEvaluation) {
  const auto r = microsteps_per_microliter({400, 8, 10, 2, 500, ""});
  EXPECT_NEAR(r.microsteps_per_microliter, 3200.0 / (std::numbers::pi * 25.0 * 2.0), 1e-12);
  EXPECT_NEAR(r.microsteps_per_microliter, 20.3718, 1e-4);
}

TEST(Calibration, MicrosteppingDoublesExactly) {
  for (int m : {1, 2, 4, 8, 16}) {
    const auto a = microsteps_per_microliter({200, m, 14.5, 8, 500, ""});
    const auto b = microsteps_per_microliter({200, 2 * m, 14.5, 8, 500, ""});
    EXPECT_EQ(b.microsteps_per_microliter, 2.0 * a.microsteps_per_microliter);
  }
}

TEST(Calibration, InverseSquareInDiameter) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> id(1, 30), k(0.2, 5);
  for (int i = 0; i < 100; ++i) {
    const double d = id(rng), s = k(rng);
    const auto a = microsteps_per_microliter({200, 16, d, 8, 500, ""});
    const auto b = microsteps_per_microliter({200, 16, d * s, 8, 500, ""});
    EXPECT_NEAR(b.microsteps_per_microliter, a.microsteps_per_microliter / (s * s),
                1e-12 * a.microsteps_per_microliter / (s * s));
  }
}

TEST(Calibration, RejectsInvalidSpec) {
  EXPECT_THROW(microsteps_per_microliter({200, 3, 14.5, 8, 500, ""}), DomainError);
  EXPECT_THROW(microsteps_per_microliter({200, 16, -1, 8, 500, ""}), DomainError);
}

TEST(Gravimetric, RatioDefinition) {
  EXPECT_NEAR(gravimetric_calibration(2422.3, 1000, 1.0).microsteps_per_microliter, 2.4223, 1e-12);
  EXPECT_NEAR(gravimetric_calibration(3200, 1000, 1.0).microsteps_per_microliter, 3.2, 1e-12);
  EXPECT_NEAR(gravimetric_calibration(1000, 412.84, 0.998).microsteps_per_microliter,
              1000.0 / (412.84 / 0.998), 1e-12);
  EXPECT_NEAR(gravimetric_calibration(1000, 412.84, 0.998).microsteps_per_microliter, 2.4174, 1e-4);
  EXPECT_EQ(gravimetric_calibration(1, 1, 1).source, CalibrationSource::gravimetric);
}

TEST(Gravimetric, RejectsNonPositive) {
  EXPECT_THROW(gravimetric_calibration(0, 1, 1), DomainError);
  EXPECT_THROW(gravimetric_calibration(1, -1, 1), DomainError);
  EXPECT_THROW(gravimetric_calibration(1, 1, 0), DomainError);
}

TEST(Gravimetric, RoundTripsGeometricValue) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> vol(0.5, 5000), rho(0.5, 2.0);
  const auto geo = microsteps_per_microliter({200, 16, 14.5, 8, 500, ""});
  for (int i = 0; i < 200; ++i) {
    const double v = vol(rng), p = rho(rng);
    const auto g = gravimetric_calibration(geo.microsteps_per_microliter * v, v * p, p);
    EXPECT_NEAR(g.microsteps_per_microliter, geo.microsteps_per_microliter,
                1e-12 * geo.microsteps_per_microliter);
  }
}

}  // namespace
}  // namespace lfd
