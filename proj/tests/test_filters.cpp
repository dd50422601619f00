#include "graphon/filters.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace graphon;

TEST_CASE("filter evaluation matches a naive power-sum oracle") {
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const std::vector<double> num = {0.3, -1.2, 0.0, 2.5};
    const std::vector<double> den = {2.0, 0.1, 0.4};
    const FilterSpec poly = FilterSpec::polynomial(num);
    const FilterSpec rat = FilterSpec::rational(num, den);
    for (int it = 0; it < 100; ++it) {
        const double x = unif(rng);
        double pn = 0.0, pd = 0.0, xe = 1.0;
        for (std::size_t k = 0; k < num.size(); ++k, xe *= x) pn += num[k] * xe;
        xe = 1.0;
        for (std::size_t k = 0; k < den.size(); ++k, xe *= x) pd += den[k] * xe;
        CHECK_THAT(poly(x), Catch::Matchers::WithinAbs(pn, 1e-12 * std::max(1.0, std::abs(pn))));
        CHECK_THAT(rat(x), Catch::Matchers::WithinAbs(pn / pd, 1e-12 * std::max(1.0, std::abs(pn / pd))));
    }
}

TEST_CASE("filter grammar") {
    CHECK(FilterSpec::parse("id")(0.3) == 0.3);
    CHECK(FilterSpec::parse("sq")(0.5) == 0.25);
    CHECK_THAT(FilterSpec::parse("cube-minus-id")(2.0), Catch::Matchers::WithinAbs(6.0, 1e-14));
    CHECK_THAT(FilterSpec::parse("poly:1,0,2")(3.0), Catch::Matchers::WithinAbs(19.0, 1e-12));
    CHECK_THAT(FilterSpec::parse("rat:0,1/2,1")(2.0), Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK_THROWS_AS(FilterSpec::parse("nope"), FormatError);
    CHECK_THROWS_AS(FilterSpec::parse("rat:1,2"), FormatError);
    CHECK_THROWS_AS(FilterSpec::parse("poly:abc"), FormatError);

    CHECK(FilterSpec::parse("id").zero_at_zero());
    CHECK(!FilterSpec::parse("poly:1,1").zero_at_zero());
}

TEST_CASE("derivatives: analytic and central difference") {
    const FilterSpec poly = FilterSpec::polynomial({0.0, -1.0, 0.0, 1.0});
    CHECK_THAT(poly.derivative(2.0), Catch::Matchers::WithinAbs(11.0, 1e-12));

    const FilterSpec rat = FilterSpec::rational({0.0, 1.0}, {2.0, 1.0});
    // d/dx x/(2+x) = 2/(2+x)^2
    CHECK_THAT(rat.derivative(1.0), Catch::Matchers::WithinAbs(2.0 / 9.0, 1e-12));

    const FilterSpec tab = FilterSpec::tabulated([](double x) { return x * x; });
    CHECK_THAT(tab.derivative(0.7), Catch::Matchers::WithinAbs(1.4, 1e-9));

    const FilterSpec rough =
        FilterSpec::tabulated([](double x) { return std::abs(x); }, nullptr, 1.0, false);
    CHECK_THROWS_AS(rough.derivative(0.0), RegularityError);
    CHECK_THROWS_AS(PeriodicExtension(rough), RegularityError);
}

TEST_CASE("periodic extension reproduces the filter and is C1 at the seam") {
    const FilterSpec h = FilterSpec::parse("id");  // Gamma = 1, period 4
    const PeriodicExtension ext(h);
    CHECK_THAT(ext.period(), Catch::Matchers::WithinAbs(4.0, 1e-15));
    for (int i = 0; i <= 1000; ++i) {
        const double x = -1.0 + 2.0 * i / 1000.0;
        CHECK_THAT(ext(x), Catch::Matchers::WithinAbs(h(x), 1e-12));
    }
    // value continuity across the seam at +Gamma and derivative agreement by
    // two-sided finite differences
    const double fd = 1e-6;
    CHECK_THAT(ext(1.0 + fd) - ext(1.0), Catch::Matchers::WithinAbs(fd * 1.0, 1e-9));
    CHECK_THAT(ext(-1.0) - ext(-1.0 - fd), Catch::Matchers::WithinAbs(fd * 1.0, 1e-9));
    // periodicity
    CHECK_THAT(ext(0.3 + 4.0), Catch::Matchers::WithinAbs(ext(0.3), 1e-12));

    const PeriodicExtension zero(FilterSpec::polynomial({0.0}));
    for (int i = 0; i <= 100; ++i)
        CHECK(std::abs(zero(-2.0 + 4.0 * i / 100.0)) == 0.0);

    // even filter gives an even extension with real coefficients
    const PeriodicExtension sq(FilterSpec::parse("sq"));
    for (int i = 0; i <= 100; ++i) {
        const double t = 2.0 * i / 100.0;
        CHECK_THAT(sq(-t), Catch::Matchers::WithinAbs(sq(t), 1e-12));
    }
    const FourierCoefficients fc = fourier_coefficients(sq, 64);
    for (int n = -64; n <= 64; ++n) CHECK(std::abs(fc(n).imag()) < 1e-12);
}

TEST_CASE("fourier coefficients of closed-form periodic functions") {
    const double gamma = 4.0;
    const FourierCoefficients cosc = fourier_coefficients(
        [gamma](double t) { return std::cos(2.0 * M_PI * t / gamma); }, gamma, 16);
    CHECK_THAT(std::abs(cosc(1)), Catch::Matchers::WithinAbs(0.5, 1e-10));
    CHECK_THAT(std::abs(cosc(-1)), Catch::Matchers::WithinAbs(0.5, 1e-10));
    for (int n = -16; n <= 16; ++n)
        if (std::abs(n) != 1) CHECK(std::abs(cosc(n)) < 1e-10);

    const FourierCoefficients constc =
        fourier_coefficients([](double) { return 0.7; }, gamma, 8);
    CHECK_THAT(std::abs(constc(0)), Catch::Matchers::WithinAbs(0.7, 1e-12));
    for (int n = 1; n <= 8; ++n) {
        CHECK(std::abs(constc(n)) < 1e-12);
        CHECK(std::abs(constc(-n)) < 1e-12);
    }

    CHECK_THROWS_AS(fourier_coefficients([](double) { return 0.0; }, 1.0, 8, 100),
                    ParameterError);
    CHECK_THROWS_AS(fourier_coefficients([](double) { return 0.0; }, 1.0, 9000, 1 << 14),
                    ParameterError);
}

TEST_CASE("parseval check for the extended square filter") {
    const PeriodicExtension ext(FilterSpec::parse("sq"));
    const FourierCoefficients fc = fourier_coefficients(ext, 4096);
    double series = 0.0;
    for (int n = -4096; n <= 4096; ++n) series += std::norm(fc(n));
    // quadrature of the squared extension over one period
    const int grid = 1 << 15;
    double quad = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double t = -0.5 * ext.period() + ext.period() * (i + 0.5) / grid;
        quad += ext(t) * ext(t);
    }
    quad /= grid;
    CHECK_THAT(series, Catch::Matchers::WithinAbs(quad, 1e-8));
}

TEST_CASE("stability constants") {
    const StabilityConstant zero = stability_constant(FilterSpec::polynomial({0.0}));
    CHECK(zero.coeff_sum == 0.0);
    CHECK_THAT(zero.lemma_constant, Catch::Matchers::WithinAbs(2.0, 1e-15));

    // single harmonic with unit coefficient sum: C = 1, constant 2 + 2 pi / gamma
    const double gamma = 4.0;
    const StabilityConstant harm = stability_from_coefficients(fourier_coefficients(
        [gamma](double t) { return std::cos(2.0 * M_PI * t / gamma); }, gamma, 64));
    CHECK_THAT(harm.coeff_sum, Catch::Matchers::WithinAbs(1.0, 1e-9));
    CHECK_THAT(harm.lemma_constant,
               Catch::Matchers::WithinAbs(2.0 + 2.0 * M_PI / gamma, 1e-8));

    // truncation doubling
    const FilterSpec sq = FilterSpec::parse("sq");
    const double c1 = stability_constant(sq, 1024).coeff_sum;
    const double c2 = stability_constant(sq, 2048).coeff_sum;
    CHECK(std::abs(c1 - c2) / c1 < 1e-4);

    CHECK_THROWS_AS(stability_constant(FilterSpec::polynomial({1.0, 1.0})),
                    RegularityError);
}

TEST_CASE("coefficient sum is monotone in the truncation order") {
    const PeriodicExtension ext(FilterSpec::parse("cube-minus-id"));
    const FourierCoefficients fc = fourier_coefficients(ext, 512);
    double prev = 0.0;
    for (int cap : {8, 32, 128, 512}) {
        double c = 0.0;
        for (int n = -cap; n <= cap; ++n) c += std::abs(fc(n)) * std::abs(n);
        CHECK(c >= prev - 1e-15);
        prev = c;
    }
}

TEST_CASE("lipschitz estimates") {
    CHECK_THAT(lipschitz_estimate(FilterSpec::parse("id"), -1.0, 1.0),
               Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(lipschitz_estimate(FilterSpec::parse("sq"), -1.0, 1.0),
               Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK(lipschitz_estimate(FilterSpec::polynomial({3.0}), -1.0, 1.0) == 0.0);
}

TEST_CASE("jackson gaps") {
    const double gamma = 4.0;
    const auto harmonic = [gamma](double t) { return std::cos(2.0 * M_PI * t / gamma); };
    CHECK(jackson_gap(harmonic, gamma, 2) < 1e-10);
    CHECK(jackson_gap([](double) { return 1.5; }, gamma, 4) < 1e-10);
    CHECK_THROWS_AS(jackson_gap(harmonic, gamma, 1), ParameterError);

    // decay trend for the extended square filter
    const PeriodicExtension ext(FilterSpec::parse("sq"));
    for (const int n : {8, 16, 32}) {
        const double g1 = jackson_gap(ext, n);
        const double g2 = jackson_gap(ext, 2 * n);
        const double allowed =
            (std::log(2.0 * n) / std::log(double(n))) * 0.25 * 1.5;
        CHECK(g2 / g1 <= allowed);
    }
}
