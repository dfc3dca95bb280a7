#include "windmfc/turbine.hpp"
#include "windmfc/wind.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace windmfc;

TEST_CASE("harmonic frequencies") {
    CHECK(kWindFrequencies[0] == 0.1047);
    CHECK(kWindFrequencies[1] == 0.2674);
    CHECK(kWindFrequencies[2] == 1.309);
    CHECK(kWindFrequencies[3] == 3.696);
}

TEST_CASE("tabulated amplitude rows") {
    CHECK(amplitudes(7.0, AmplitudeRule::table) == Amplitudes{0.029, 0.286, 0.143, 0.029});
    CHECK(amplitudes(8.0, AmplitudeRule::table) == Amplitudes{0.025, 0.25, 0.125, 0.025});
    CHECK(amplitudes(9.0, AmplitudeRule::table) == Amplitudes{0.022, 0.222, 0.111, 0.022});
    CHECK(amplitudes(16.0, AmplitudeRule::table) == Amplitudes{0.0125, 0.125, 0.0625, 0.0125});
    CHECK(amplitudes(20.0, AmplitudeRule::table) == Amplitudes{0.01, 0.1, 0.05, 0.01});
}

TEST_CASE("reciprocal amplitude rule") {
    const Amplitudes a = amplitudes(10.0, AmplitudeRule::reciprocal);
    CHECK(a[0] == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(a[1] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(a[2] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(a[3] == doctest::Approx(0.02).epsilon(1e-15));
    // Off-table means fall back to the rule.
    CHECK(amplitudes(10.0, AmplitudeRule::table) == a);
    // Tabulated rows agree with the rule to the printed precision.
    for (double v : {7.0, 8.0, 9.0, 16.0, 20.0}) {
        const Amplitudes t = amplitudes(v, AmplitudeRule::table);
        const Amplitudes r = amplitudes(v, AmplitudeRule::reciprocal);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(t[k] - r[k]) <= 5e-4);
    }
    CHECK_THROWS_AS((void)amplitudes(0.0, AmplitudeRule::table), DomainError);
    CHECK_THROWS_AS((void)amplitudes(-3.0, AmplitudeRule::reciprocal), DomainError);
}

TEST_CASE("wind speed examples") {
    const WindProfile seven({{0.0, 7.0}});
    CHECK(seven.speed(0.0) == 7.0);
    // Frozen from a 40-digit evaluation of the four-sine sum.
    CHECK(std::abs(seven.speed(15.0051) - 6.2044059555570387) < 1e-13);
    CHECK(wind_speed(seven, 15.0051) == seven.speed(15.0051));
}

TEST_CASE("schedule lookup") {
    const WindProfile w({{0.0, 7.0}, {200.0, 8.0}, {400.0, 9.0}});
    CHECK(w.mean_speed(0.0) == 7.0);
    CHECK(w.mean_speed(199.99) == 7.0);
    CHECK(w.mean_speed(200.0) == 8.0);
    CHECK(w.mean_speed(250.0) == 8.0);
    CHECK(w.mean_speed(400.0) == 9.0);
    CHECK(w.mean_speed(1e6) == 9.0);
    // Phases run on absolute time: the value at 250 s uses the 8 m/s row with t = 250.
    double expect = 0.0;
    const Amplitudes a = amplitudes(8.0, AmplitudeRule::table);
    for (int k = 0; k < 4; ++k) expect += a[k] * std::sin(kWindFrequencies[k] * 250.0);
    CHECK(w.speed(250.0) == doctest::Approx(8.0 * (1.0 + expect)).epsilon(1e-15));
}

TEST_CASE("invalid schedules") {
    CHECK_THROWS_AS(WindProfile({}), DomainError);
    CHECK_THROWS_AS(WindProfile({{1.0, 7.0}}), DomainError);
    CHECK_THROWS_AS(WindProfile({{0.0, 7.0}, {0.0, 8.0}}), DomainError);
    CHECK_THROWS_AS(WindProfile({{0.0, 7.0}, {100.0, 8.0}, {50.0, 9.0}}), DomainError);
    CHECK_THROWS_AS(WindProfile({{0.0, -7.0}}), DomainError);
}

TEST_CASE("excursion is bounded by the amplitude sum") {
    for (double v : {7.0, 8.0, 9.0, 16.0, 20.0, 12.5}) {
        const WindProfile w({{0.0, v}});
        const Amplitudes a = amplitudes(v, AmplitudeRule::table);
        const double bound = a[0] + a[1] + a[2] + a[3];
        for (int i = 0; i <= 60000; ++i) {
            const double t = 0.01 * i;
            REQUIRE(std::abs(w.speed(t) / v - 1.0) <= bound + 1e-15);
        }
    }
    const Amplitudes a7 = amplitudes(7.0, AmplitudeRule::table);
    CHECK(a7[0] + a7[1] + a7[2] + a7[3] <= 0.487 + 1e-12);
}

TEST_CASE("time average over slow periods") {
    // Over m slow periods T the first harmonic averages out; the others leave
    // A_k (1 - cos(w_k T)) / (w_k T), which falls below 0.1% only after tens of periods.
    const double period = 2.0 * std::numbers::pi / kWindFrequencies[0];
    for (double v : {7.0, 16.0}) {
        const WindProfile w({{0.0, v}});
        const Amplitudes a = amplitudes(v, AmplitudeRule::table);
        for (int m : {1, 3, 40}) {
            const double T = m * period;
            const int n = 100000 * m;
            const double h = T / n;
            double acc = 0.5 * (w.speed(0.0) + w.speed(T));
            for (int i = 1; i < n; ++i) acc += w.speed(i * h);
            const double mean = acc * h / T;
            double expect = 1.0;
            for (int k = 0; k < 4; ++k)
                expect += a[k] * (1.0 - std::cos(kWindFrequencies[k] * T)) / (kWindFrequencies[k] * T);
            CAPTURE(m);
            CHECK(mean / v == doctest::Approx(expect).epsilon(1e-9));
            if (m == 40) CHECK(std::abs(mean / v - 1.0) <= 1e-3);
        }
    }
}

TEST_CASE("wind is deterministic") {
    const WindProfile a({{0.0, 16.0}, {300.0, 20.0}});
    const WindProfile b({{0.0, 16.0}, {300.0, 20.0}});
    for (double t : {0.0, 1.234, 299.99, 300.0, 512.5}) CHECK(a.speed(t) == b.speed(t));
}
