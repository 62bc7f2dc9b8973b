#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "vfso/atmosphere.hpp"

namespace atm = vfso::atmosphere;
using vfso::deg_to_rad;

namespace {

constexpr double kDeg45 = 0.78539816339744830962;
constexpr double kDeg90 = 1.57079632679489661923;

// Published attenuation table, dB/km: rows by wavelength, columns by
// visibility 50, 200, 500, 770, 1900 m.
struct TableRow {
    double wavelength_nm;
    double db_per_km[5];
};
constexpr double kTableVisibilityM[5] = {50, 200, 500, 770, 1900};
constexpr TableRow kTable[4] = {
    {650, {327.61, 80.19, 31.43, 20.16, 7.92}},
    {850, {309.21, 73.16, 27.75, 17.46, 6.52}},
    {1330, {280.77, 62.77, 22.54, 13.73, 4.71}},
    {1550, {271.66, 59.57, 20.99, 12.65, 4.22}},
};

}  // namespace

TEST(KruseExponent, Branches) {
    EXPECT_DOUBLE_EQ(atm::kruse_size_exponent(10.0), 1.3);
    EXPECT_DOUBLE_EQ(atm::kruse_size_exponent(60.0), 1.6);
    EXPECT_NEAR(atm::kruse_size_exponent(0.05), 0.21551, 1e-4);
}

TEST(KruseExponent, BoundariesBelongToMiddleBranch) {
    EXPECT_DOUBLE_EQ(atm::kruse_size_exponent(6.0), 1.3);
    EXPECT_DOUBLE_EQ(atm::kruse_size_exponent(50.0), 1.3);
    EXPECT_NEAR(atm::kruse_size_exponent(std::nextafter(6.0, 0.0)), 1.0630, 1e-3);
    EXPECT_DOUBLE_EQ(atm::kruse_size_exponent(std::nextafter(50.0, 100.0)), 1.6);
}

TEST(KruseExponent, RejectsNonPositiveVisibility) {
    EXPECT_THROW(atm::kruse_size_exponent(0.0), vfso::domain_error);
    EXPECT_THROW(atm::kruse_size_exponent(-1.0), vfso::domain_error);
}

TEST(MieAttenuation, ReproducesPublishedTableWithinHalfPercent) {
    for (const auto& row : kTable) {
        for (int i = 0; i < 5; ++i) {
            const double got = atm::mie_specific_attenuation(kTableVisibilityM[i] / 1000.0, row.wavelength_nm);
            const double want = row.db_per_km[i];
            EXPECT_LE(std::abs(got - want) / want, 0.005)
                << "V=" << kTableVisibilityM[i] << " m, lambda=" << row.wavelength_nm << " nm: " << got;
        }
    }
}

TEST(MieAttenuation, RejectsBadInputs) {
    EXPECT_THROW(atm::mie_specific_attenuation(0.0, 1550), vfso::domain_error);
    EXPECT_THROW(atm::mie_specific_attenuation(1.0, 0.0), vfso::domain_error);
}

TEST(MieAttenuation, StrictlyDecreasingInVisibilityAndWavelength) {
    double prev = atm::mie_specific_attenuation(0.01, 1550);
    for (double v = 0.02; v < 100.0; v *= 1.1) {
        const double cur = atm::mie_specific_attenuation(v, 1550);
        EXPECT_LT(cur, prev) << v;
        prev = cur;
    }
    for (double v : {0.05, 0.5, 2.0, 5.9}) {
        double p = atm::mie_specific_attenuation(v, 400);
        for (double lam = 450; lam <= 2000; lam += 50) {
            const double c = atm::mie_specific_attenuation(v, lam);
            EXPECT_LT(c, p);
            p = c;
        }
    }
}

TEST(FogAttenuation, Examples) {
    const atm::FogDescriptor dense{0.05, 50.0};
    EXPECT_NEAR(atm::fog_attenuation(dense, kDeg45, 1550), 19.1958, 1e-3);
    EXPECT_NEAR(atm::fog_attenuation(dense, kDeg90, 1550), 13.5735, 1e-3);
    EXPECT_DOUBLE_EQ(atm::fog_attenuation({0.05, 0.0}, kDeg45, 1550), 0.0);
}

TEST(FogAttenuation, RejectsHorizontalPath) {
    EXPECT_THROW(atm::fog_attenuation({0.05, 50.0}, 0.0, 1550), vfso::domain_error);
    EXPECT_THROW(atm::fog_attenuation({0.05, 50.0}, -0.1, 1550), vfso::domain_error);
}

TEST(RainAttenuation, Examples) {
    EXPECT_NEAR(atm::rain_attenuation({50.0, 1000.0}, kDeg45), 20.9236, 1e-3);
    EXPECT_NEAR(atm::rain_attenuation({50.0, 1000.0}, kDeg90), 14.7952, 1e-3);
    EXPECT_DOUBLE_EQ(atm::rain_attenuation({0.0, 1000.0}, kDeg45), 0.0);
    EXPECT_THROW(atm::rain_attenuation({-1.0, 1000.0}, kDeg45), vfso::domain_error);
}

TEST(RainAttenuation, PowerLawRatioIsExact) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> rate(0.1, 200.0);
    for (int i = 0; i < 200; ++i) {
        const double r = rate(rng);
        const double ratio = atm::rain_attenuation({2 * r, 1000.0}, kDeg45) /
                             atm::rain_attenuation({r, 1000.0}, kDeg45);
        EXPECT_NEAR(ratio, std::pow(2.0, 0.67), 1e-12);
    }
}

TEST(LayerAttenuation, LinearInThicknessAndInverseSine) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> thick(1.0, 2000.0);
    std::uniform_real_distribution<double> elev(0.05, kDeg90);
    for (int i = 0; i < 100; ++i) {
        const double t = thick(rng);
        const double phi = elev(rng);
        const double fog1 = atm::fog_attenuation({0.2, t}, phi, 1550);
        const double fog3 = atm::fog_attenuation({0.2, 3 * t}, phi, 1550);
        EXPECT_NEAR(fog3 / fog1, 3.0, 1e-12);
        const double vertical = atm::fog_attenuation({0.2, t}, kDeg90, 1550);
        EXPECT_NEAR(fog1 * std::sin(phi), vertical, 1e-12 * vertical);
        const double rain = atm::rain_attenuation({25.0, t}, phi);
        const double rain_v = atm::rain_attenuation({25.0, t}, kDeg90);
        EXPECT_NEAR(rain * std::sin(phi), rain_v, 1e-12 * rain_v);
    }
}

TEST(CloudVisibility, Examples) {
    EXPECT_NEAR(atm::cloud_visibility({0, 48, 1.0, 250.0}), 0.0280984, 1e-6);
    EXPECT_DOUBLE_EQ(atm::cloud_visibility({0, 48, 1.0, 1.0}), 1.002);
    EXPECT_NEAR(atm::cloud_visibility({0, 48, 1.0, 100.0}), 0.0508473, 1e-6);
}

TEST(CloudVisibility, DecreasesWithWaterContentAndDensity) {
    EXPECT_LT(atm::cloud_visibility({0, 48, 2.0, 250.0}), atm::cloud_visibility({0, 48, 1.0, 250.0}));
    EXPECT_LT(atm::cloud_visibility({0, 48, 1.0, 400.0}), atm::cloud_visibility({0, 48, 1.0, 250.0}));
    EXPECT_THROW(atm::cloud_visibility({0, 48, 0.0, 250.0}), vfso::domain_error);
    EXPECT_THROW(atm::cloud_visibility({0, 48, 1.0, 0.0}), vfso::domain_error);
}

TEST(CloudAttenuation, Examples) {
    const atm::CloudLayer cumulus{1000.0, 48.0, 1.0, 250.0};
    EXPECT_DOUBLE_EQ(atm::cloud_attenuation({}, 20000, kDeg45, 1550), 0.0);
    EXPECT_NEAR(atm::cloud_attenuation({cumulus}, 20000, kDeg45, 1550), 34.0969, 1e-3);
    EXPECT_DOUBLE_EQ(atm::cloud_attenuation({cumulus}, 500, kDeg45, 1550), 0.0);
}

TEST(CloudAttenuation, PartialLayerIsProRata) {
    const atm::CloudLayer layer{1000.0, 100.0, 0.5, 300.0};
    const double full = atm::cloud_attenuation({layer}, 5000, kDeg45, 1550);
    const double quarter = atm::cloud_attenuation({layer}, 1025, kDeg45, 1550);
    EXPECT_NEAR(quarter, full / 4.0, 1e-12 * full);
}

TEST(CloudAttenuation, AdditiveOverLayers) {
    const std::vector<atm::CloudLayer> profile = {
        {500.0, 200.0, 0.05, 150.0}, {2000.0, 300.0, 0.3, 400.0}, {8000.0, 1000.0, 3.128e-4, 100.0}};
    const double together = atm::cloud_attenuation(profile, 8500, kDeg45, 1550);
    double separate = 0.0;
    for (const auto& l : profile) separate += atm::cloud_attenuation({l}, 8500, kDeg45, 1550);
    EXPECT_NEAR(together, separate, 1e-12 * together);
}

TEST(CloudAttenuation, RejectsOverlappingLayers) {
    const std::vector<atm::CloudLayer> overlap = {{1000.0, 500.0, 1.0, 250.0}, {1400.0, 100.0, 1.0, 250.0}};
    EXPECT_THROW(atm::cloud_attenuation(overlap, 20000, kDeg45, 1550), vfso::validation_error);
    const std::vector<atm::CloudLayer> touching = {{1000.0, 500.0, 1.0, 250.0}, {1500.0, 100.0, 1.0, 250.0}};
    EXPECT_NO_THROW(atm::cloud_attenuation(touching, 20000, kDeg45, 1550));
}

TEST(HufnagelValley, Examples) {
    const atm::TurbulenceDescriptor t{21.0, 1.7e-14, {}};
    EXPECT_NEAR(atm::refractive_index_structure(0.0, t), 1.727e-14, 1e-20);
    EXPECT_NEAR(atm::refractive_index_structure(20000.0, t) / 7.58854e-19, 1.0, 1e-5);
    EXPECT_NEAR(atm::refractive_index_structure(5000.0, t) / 1.19964e-17, 1.0, 1e-5);
}

TEST(HufnagelValley, MatchesIndependentTermwiseOracle) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> alt(0.0, 30000.0);
    std::uniform_real_distribution<double> wind(0.0, 40.0);
    for (int i = 0; i < 20; ++i) {
        const double h = alt(rng);
        const double v = wind(rng);
        const atm::TurbulenceDescriptor t{v, 1.7e-14, {}};
        const double high = 0.00594 * (v * v / 729.0) * std::pow(h / 1e5, 10) / std::exp(h / 1000.0);
        const double oracle = high + 2.7e-16 / std::exp(h / 1500.0) + 1.7e-14 / std::exp(h / 100.0);
        EXPECT_NEAR(atm::refractive_index_structure(h, t), oracle, 1e-12 * oracle) << h;
    }
    EXPECT_LT(atm::refractive_index_structure(2e6, {21.0, 1.7e-14, {}}), 1e-300);
}

TEST(Scintillation, Examples) {
    const atm::TurbulenceDescriptor t{21.0, 1.7e-14, {}};
    const double l20 = 20000.0 / std::sin(kDeg45);
    const double l5 = 5000.0 / std::sin(kDeg45);
    EXPECT_NEAR(atm::scintillation_loss(1550, atm::refractive_index_structure(20000, t), l20), 0.722326, 1e-5);
    EXPECT_NEAR(atm::scintillation_loss(1550, atm::refractive_index_structure(5000, t), l5), 0.805919, 1e-5);
    EXPECT_DOUBLE_EQ(atm::scintillation_loss(1550, 0.0, l20), 0.0);
}

TEST(TotalAtmosphericLoss, ClearSkyIsScintillationOnly) {
    atm::WeatherScenario clear;
    const vfso::geometry::LinkGeometry g{20000.0, kDeg45, 1e-3, 0.04};
    const auto loss = atm::total_atmospheric_loss(clear, g, 1550);
    EXPECT_DOUBLE_EQ(loss.fog_db, 0.0);
    EXPECT_DOUBLE_EQ(loss.rain_db, 0.0);
    EXPECT_DOUBLE_EQ(loss.cloud_db, 0.0);
    EXPECT_NEAR(loss.total_db(), 0.722326, 1e-5);
}

TEST(TotalAtmosphericLoss, DenseFogAddsToScintillation) {
    atm::WeatherScenario fog;
    fog.label = "fog";
    fog.fog = atm::FogDescriptor{0.05, 50.0};
    const vfso::geometry::LinkGeometry g{20000.0, kDeg45, 1e-3, 0.04};
    const auto loss = atm::total_atmospheric_loss(fog, g, 1550);
    EXPECT_NEAR(loss.total_db(), 19.1958 + 0.722326, 1e-3);
    EXPECT_DOUBLE_EQ(loss.total_db(), loss.rain_db + loss.fog_db + loss.cloud_db + loss.scintillation_db);
}

TEST(TotalAtmosphericLoss, VacuumPathIsZero) {
    atm::WeatherScenario vacuum;
    vacuum.turbulence = {0.0, 0.0, 1e7};  // C_n^2 underflows to 0
    const vfso::geometry::LinkGeometry g{20000.0, kDeg45, 1e-3, 0.04};
    EXPECT_DOUBLE_EQ(atm::total_atmospheric_loss(vacuum, g, 1550).total_db(), 0.0);
}

TEST(TotalAtmosphericLoss, ReferenceAltitudeOverride) {
    atm::WeatherScenario s;
    s.turbulence.reference_altitude_m = 5000.0;
    const vfso::geometry::LinkGeometry g{20000.0, kDeg45, 1e-3, 0.04};
    const double cn2 = atm::refractive_index_structure(5000.0, s.turbulence);
    EXPECT_DOUBLE_EQ(atm::total_atmospheric_loss(s, g, 1550).scintillation_db,
                     atm::scintillation_loss(1550, cn2, 20000.0 / std::sin(kDeg45)));
}

TEST(Attenuation, NonNegativeOverRandomInputs) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double v = 0.01 + 100 * u(rng);
        const double lam = 400 + 1600 * u(rng);
        const double phi = 0.01 + (kDeg90 - 0.01) * u(rng);
        EXPECT_GE(atm::mie_specific_attenuation(v, lam), 0.0);
        EXPECT_GE(atm::fog_attenuation({v, 500 * u(rng)}, phi, lam), 0.0);
        EXPECT_GE(atm::rain_attenuation({100 * u(rng), 2000 * u(rng)}, phi), 0.0);
        EXPECT_GE(atm::scintillation_loss(lam, 1e-14 * u(rng), 1 + 1e5 * u(rng)), 0.0);
    }
}
