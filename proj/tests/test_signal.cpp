#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rampadc/signal.hpp"

using rampadc::Knot;
using rampadc::SignalSource;

TEST_CASE("evaluate: generator values") {
    CHECK(SignalSource::dc(0.0).evaluate(0.5) == 0.0);
    CHECK(SignalSource::sine(0.5, 0.5, 1.0).evaluate(0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(SignalSource::exponential().evaluate(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(SignalSource::exponential().evaluate(0.0) == 0.0);
}

TEST_CASE("evaluate and slope reject time outside the frame") {
    const auto s = SignalSource::sine();
    CHECK_THROWS_AS((void)s.evaluate(-1e-9), std::out_of_range);
    CHECK_THROWS_AS((void)s.evaluate(1.0 + 1e-9), std::out_of_range);
    CHECK_THROWS_AS((void)s.slope(1.5), std::out_of_range);
    CHECK_THROWS_AS((void)s.evaluate(std::nan("")), std::out_of_range);
}

TEST_CASE("generator parameters must keep the output in [0, 1]") {
    CHECK_THROWS_AS(SignalSource::dc(1.2), std::invalid_argument);
    CHECK_THROWS_AS(SignalSource::sine(0.5, 0.6, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SignalSource::sine(0.5, 0.5, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(SignalSource::synthetic_ecg(0), std::invalid_argument);
}

TEST_CASE("slope: analytic derivatives") {
    CHECK(SignalSource::dc(0.1).slope(0.3) == 0.0);
    CHECK(SignalSource::sine().slope(0.0) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(SignalSource::exponential().slope(0.0) == doctest::Approx(1.0 / (std::numbers::e - 1.0)).epsilon(1e-14));
    CHECK(SignalSource::exponential().slope(0.0) == doctest::Approx(0.58198).epsilon(1e-5));
}

TEST_CASE("generators stay in [0, 1] at random times") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const SignalSource sources[] = {SignalSource::dc(0.37), SignalSource::sine(), SignalSource::sine(0.3, 0.3, 7.5),
                                    SignalSource::exponential(), SignalSource::synthetic_ecg(1),
                                    SignalSource::synthetic_ecg(8)};
    for (const auto& s : sources) {
        for (int i = 0; i < 1000; ++i) {
            const double v = s.evaluate(u(rng));
            REQUIRE(std::isfinite(v));
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
    }
}

TEST_CASE("generator slope matches a central finite difference") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    constexpr double h = 1e-6;
    const SignalSource sources[] = {SignalSource::sine(), SignalSource::sine(0.5, 0.25, 3.0),
                                    SignalSource::exponential(), SignalSource::synthetic_ecg(3)};
    for (const auto& s : sources) {
        CAPTURE(s.name());
        for (int i = 0; i < 100; ++i) {
            const double t = u(rng);
            const double fd = (s.evaluate(t + h) - s.evaluate(t - h)) / (2 * h);
            const double an = s.slope(t);
            CAPTURE(t);
            CHECK(std::abs(an - fd) <= 1e-4 * std::max(std::abs(fd), 1.0));
        }
    }
}

TEST_CASE("evaluate is referentially transparent") {
    const auto ecg = SignalSource::synthetic_ecg(3);
    CHECK(ecg.evaluate(0.123) == ecg.evaluate(0.123));
    const auto again = SignalSource::synthetic_ecg(3);
    CHECK(again.evaluate(0.123) == ecg.evaluate(0.123));
    const auto s = SignalSource::sine();
    CHECK(s.evaluate(0.777) == s.evaluate(0.777));
}

TEST_CASE("synthetic ECG is normalized and periodic per beat") {
    SUBCASE("one beat spans exactly [0, 1]") {
        const auto ecg = SignalSource::synthetic_ecg(1);
        double lo = 1.0;
        double hi = 0.0;
        constexpr int n = 1 << 20;
        for (int i = 0; i <= n; ++i) {
            const double v = ecg.evaluate(static_cast<double>(i) / n);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(lo == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(lo >= 0.0);
        CHECK(hi == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("three beats repeat every third of a frame") {
        const auto ecg = SignalSource::synthetic_ecg(3);
        for (int i = 0; i < 200; ++i) {
            const double t = i / 600.0;
            CHECK(ecg.evaluate(t) == doctest::Approx(ecg.evaluate(t + 1.0 / 3.0)).epsilon(1e-9));
        }
    }
}

TEST_CASE("table: linear interpolation with endpoint clamping") {
    const auto s = SignalSource::table({{0.2, 0.0}, {0.4, 1.0}, {0.8, 0.5}});
    CHECK(s.evaluate(0.0) == 0.0);
    CHECK(s.evaluate(0.3) == doctest::Approx(0.5));
    CHECK(s.evaluate(0.6) == doctest::Approx(0.75));
    CHECK(s.evaluate(1.0) == 0.5);
    CHECK_FALSE(s.is_generator());
    CHECK_THROWS_AS(SignalSource::table({{0.5, 0.0}, {0.5, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SignalSource::table({}), std::invalid_argument);
}

TEST_CASE("table slope uses a one-clock finite difference") {
    const auto ramp = SignalSource::table({{0.0, 0.0}, {1.0, 0.5}});
    CHECK(ramp.slope(0.5) == doctest::Approx(0.5));
    CHECK(ramp.slope(0.0) == doctest::Approx(0.5));  // one-sided at the left edge
    CHECK(ramp.slope(1.0) == doctest::Approx(0.5));  // and at the right edge
    // A kink at 0.5 is smeared over +/- one clock.
    const auto kink = SignalSource::table({{0.0, 0.0}, {0.5, 0.5}, {1.0, 0.0}});
    CHECK(kink.slope(0.5, 1.0 / 1024) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(kink.slope(0.25, 1.0 / 1024) == doctest::Approx(1.0));
}

TEST_CASE("parse_table: normalization rules") {
    SUBCASE("constant input sits at midscale") {
        const auto s = rampadc::parse_table("0,2.0\n1,2.0\n");
        CHECK(s.evaluate(0.0) == 0.5);
        CHECK(s.evaluate(0.7) == 0.5);
    }
    SUBCASE("linear ramp maps to identity") {
        const auto s = rampadc::parse_table("0,0\n1,10\n");
        for (double t : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
            CHECK(s.evaluate(t) == doctest::Approx(t).epsilon(1e-15));
        }
    }
    SUBCASE("value-only lines are uniformly spaced; comments and blanks skipped") {
        const auto s = rampadc::parse_table("# header\n3\n\n5\n4 \n");
        CHECK(s.evaluate(0.0) == 0.0);
        CHECK(s.evaluate(0.5) == 1.0);
        CHECK(s.evaluate(1.0) == 0.5);
    }
    SUBCASE("timestamps are rescaled affinely") {
        const auto s = rampadc::parse_table("10,1\n20,3\n30,2\n");
        CHECK(s.evaluate(0.5) == 1.0);
        CHECK(s.evaluate(0.75) == doctest::Approx(0.75));
    }
}

TEST_CASE("parse_table: errors") {
    CHECK_THROWS_AS(rampadc::parse_table(""), std::runtime_error);
    CHECK_THROWS_AS(rampadc::parse_table("# only a comment\n"), std::runtime_error);
    CHECK_THROWS_AS(rampadc::parse_table("0,1\n1,abc\n"), std::runtime_error);
    CHECK_THROWS_AS(rampadc::parse_table("0,1\n0,2\n"), std::runtime_error);
    CHECK_THROWS_AS(rampadc::parse_table("1,1\n0.5,2\n"), std::runtime_error);
    CHECK_THROWS_AS(rampadc::parse_table("1\n0,2\n"), std::runtime_error);
    CHECK_THROWS_AS(rampadc::load_table("/nonexistent/ecg.txt"), std::runtime_error);
}

TEST_CASE("parse_table reproduces normalized knots exactly at knot times") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::uniform_int_distribution<int> count(2, 40);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = count(rng);
        std::vector<double> raw(n);
        std::string text;
        for (int i = 0; i < n; ++i) {
            raw[i] = val(rng);
            text += std::to_string(raw[i]) + "\n";
        }
        const auto s = rampadc::parse_table(text);
        const auto& knots = std::get<rampadc::TableParams>(s.params()).knots;
        REQUIRE(knots.size() == static_cast<std::size_t>(n));
        // Re-read the printed values the same way the parser does.
        std::vector<double> printed(n);
        for (int i = 0; i < n; ++i) {
            printed[i] = std::stod(std::to_string(raw[i]));
        }
        const double lo = *std::min_element(printed.begin(), printed.end());
        const double hi = *std::max_element(printed.begin(), printed.end());
        for (int i = 0; i < n; ++i) {
            CHECK(s.evaluate(knots[i].t) == (printed[i] - lo) / (hi - lo));
        }
    }
}
