#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "wbfv/eos.hpp"

using namespace wbfv;

namespace {

const Eos kIdeal{IdealGas{1.0, 1.4}};
const Eos kVdw{VanDerWaals{0.4, 0.001, 1.0, 1.0, 1.4}};
const Eos kRad{IdealRadiation{1.0, 5.0 / 3.0, 0.05}};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Eos, IdealTheta) {
  EXPECT_DOUBLE_EQ(theta(kIdeal, PressureTemperature{3.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(theta(kIdeal, DensityTemperature{3.0, 2.0}), 2.0);
}

TEST(Eos, VdwThetaHandValue) {
  // 1/0.999 - 0.4
  EXPECT_NEAR(theta(kVdw, DensityTemperature{1.0, 1.0}), 0.601001001001001, 1e-15);
  EXPECT_NEAR(pressure(kVdw, 1.0, 1.0), 0.601001001001001, 1e-15);
}

TEST(Eos, RadiationWithoutRadiationIsIdeal) {
  const Eos r(IdealRadiation{1.0, 1.4, 0.0});
  EXPECT_DOUBLE_EQ(theta(r, PressureTemperature{2.0, 1.7}), 1.7);
  EXPECT_DOUBLE_EQ(pressure(r, 2.0, 1.5), 3.0);
  EXPECT_DOUBLE_EQ(temperature(r, 1.0, 3.0), 3.0);
  EXPECT_DOUBLE_EQ(internal_energy(r, 1.0, 1.0), 2.5);
}

TEST(Eos, WrongThermoPairThrows) {
  EXPECT_THROW(theta(kVdw, PressureTemperature{1.0, 1.0}), InvalidThermoState);
  EXPECT_THROW(theta(kRad, DensityTemperature{1.0, 1.0}), InvalidThermoState);
}

TEST(Eos, PressureAndTemperatureExamples) {
  EXPECT_DOUBLE_EQ(pressure(kIdeal, 1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(temperature(kIdeal, 2.0, 4.0), 2.0);
  EXPECT_NEAR(temperature(kVdw, 1.0, 0.601001001001001), 1.0, 1e-14);
}

TEST(Eos, InternalEnergyExamples) {
  EXPECT_DOUBLE_EQ(internal_energy(kIdeal, 1.0, 1.0), 2.5);
  // rho Ru T / (M (gamma - 1)) - a (rho/M)^2
  EXPECT_NEAR(internal_energy(kVdw, 2.0, 1.5), 2.0 * 1.5 / 0.4 - 0.4 * 4.0, 1e-14);
}

TEST(Eos, SoundSpeedExamples) {
  EXPECT_NEAR(sound_speed(kIdeal, 1.0, 1.0), 1.1832159566199232, 1e-15);
  const double p = 0.601001001001001;
  EXPECT_NEAR(sound_speed(kVdw, 1.0, p), std::sqrt((1.4 * p + 0.4) / 0.999 - 0.8), 1e-14);
  const Eos plain(VanDerWaals{0.0, 0.0, 3.0, 1.0, 1.4});
  EXPECT_NEAR(sound_speed(plain, 2.0, 5.0), std::sqrt(1.4 * 5.0 / 2.0), 1e-14);
}

TEST(Eos, DomainErrors) {
  EXPECT_THROW(pressure(kIdeal, -1.0, 1.0), InvalidThermoState);
  EXPECT_THROW(pressure(kIdeal, 1.0, 0.0), InvalidThermoState);
  EXPECT_THROW(pressure(kVdw, 1000.0, 1.0), InvalidThermoState);  // rho b >= M
  EXPECT_THROW(Eos(IdealGas{1.0, 1.0}), InvalidThermoState);
  EXPECT_THROW(sound_speed(kVdw, 10.0, 0.01), HyperbolicityLoss);
}

TEST(EosProperty, TemperatureRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lr(-2.0, 2.0);
  for (const Eos* e : {&kIdeal, &kVdw, &kRad}) {
    for (int k = 0; k < 1000; ++k) {
      const double rho = std::pow(10.0, lr(rng)), T = std::pow(10.0, lr(rng));
      double p;
      try {
        p = pressure(*e, rho, T);
      } catch (const InvalidThermoState&) {
        continue;
      }
      if (!(p > 0.0)) continue;
      EXPECT_LE(rel(temperature(*e, rho, p), T), 1e-12) << e->name() << " rho=" << rho << " T=" << T;
    }
  }
}

TEST(EosProperty, EnergyRoundTrip) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> lr(-2.0, 2.0);
  for (const Eos* e : {&kIdeal, &kVdw, &kRad})
    for (int k = 0; k < 1000; ++k) {
      const double rho = std::pow(10.0, lr(rng) / 2), T = std::pow(10.0, lr(rng));
      const double re = internal_energy(*e, rho, T);
      if (!(re > 0.0) && e->name() != "vdw") continue;
      EXPECT_LE(rel(temperature_from_energy(*e, rho, re), T), 1e-12) << e->name();
    }
}

TEST(EosProperty, IdealLimits) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  const Eos vdw0(VanDerWaals{0.0, 0.0, 1.0, 1.0, 1.4});
  const Eos rad0(IdealRadiation{1.0, 1.4, 0.0});
  for (int k = 0; k < 1000; ++k) {
    const double rho = u(rng), T = u(rng), p = u(rng);
    for (const Eos* e : {&vdw0, &rad0}) {
      EXPECT_LE(rel(pressure(*e, rho, T), pressure(kIdeal, rho, T)), 1e-14);
      EXPECT_LE(rel(temperature(*e, rho, p), temperature(kIdeal, rho, p)), 1e-14);
      EXPECT_LE(rel(internal_energy(*e, rho, T), internal_energy(kIdeal, rho, T)), 1e-14);
      EXPECT_LE(rel(sound_speed(*e, rho, p), sound_speed(kIdeal, rho, p)), 1e-14);
    }
  }
}

TEST(EosProperty, ThetaConsistency) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int k = 0; k < 500; ++k) {
    const double rho = u(rng), T = u(rng);
    EXPECT_LE(rel(pressure(kIdeal, rho, T), rho * theta(kIdeal, DensityTemperature{rho, T})), 1e-14);
    // van der Waals pressure is a difference of two terms; measure against the larger
    const double scale = rho * T / (1.0 - 0.001 * rho) + 0.4 * rho * rho;
    EXPECT_LE(std::abs(pressure(kVdw, rho, T) - rho * theta(kVdw, DensityTemperature{rho, T})), 1e-15 * scale);
    const double p = pressure(kRad, rho, T);
    EXPECT_LE(rel(p, rho * theta(kRad, PressureTemperature{p, T})), 1e-14);
  }
}

TEST(EosProperty, DensityInvertsPressure) {
  // states on the stable branch, dp/drho > 0 at fixed T
  for (const Eos* e : {&kIdeal, &kVdw, &kRad})
    for (double rho : {0.3, 1.0, 2.5})
      for (double T : {2.5, 3.0, 5.0}) {
        const double p = pressure(*e, rho, T);
        EXPECT_LE(rel(density(*e, p, T), rho), 1e-12) << e->name();
      }
}

TEST(EosProperty, AdiabaticSoundSpeedMatchesFiniteDifference) {
  // c^2 = dp/drho at fixed entropy; entropy is fixed along d(rho eps) = h drho with h = (rho eps + p)/rho.
  for (const Eos* e : {&kIdeal, &kVdw, &kRad}) {
    const double rho = 1.2, T = 1.3;
    const double p = pressure(*e, rho, T);
    const double re = internal_energy(*e, rho, T);
    const double h = (re + p) / rho, d = 1e-6;
    auto p_at = [&](double dr) {
      const double Tn = temperature_from_energy(*e, rho + dr, re + h * dr);
      return pressure(*e, rho + dr, Tn);
    };
    const double c2 = (p_at(d) - p_at(-d)) / (2 * d);
    EXPECT_NEAR(adiabatic_sound_speed(*e, rho, p), std::sqrt(c2), 1e-7) << e->name();
  }
}
