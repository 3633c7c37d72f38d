#include <chanspa/maximize.hpp>
#include <chanspa/quadrature.hpp>

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

using namespace chanspa;

TEST(Quadrature, PolynomialIsExact)
{
    auto r = integrate([](double x) { return x * x * x - 2 * x; }, 0.0, 2.0);
    EXPECT_NEAR(r.value, 0.0, 1e-14);
    EXPECT_EQ(r.intervals, 1u);
}

TEST(Quadrature, ComplexOscillatory)
{
    const double q = 40.0;
    auto r = integrate([&](double x) { return std::polar(std::exp(-x), q * x); }, 0.0,
                       3.0, {1e-13, 1e-13, 4000});
    std::complex<double> s(-1.0, q);
    std::complex<double> exact = (std::exp(3.0 * s) - 1.0) / s;
    EXPECT_LT(std::abs(r.value - exact), 1e-12);
}

TEST(Quadrature, EndpointSingularityNeedsRefinement)
{
    auto r = integrate([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0,
                       {1e-9, 1e-12, 4000});
    EXPECT_NEAR(r.value, 2.0, 1e-8);
    EXPECT_GT(r.intervals, 10u);
}

TEST(Quadrature, BudgetExhaustionReportsSubintervals)
{
    try
    {
        integrate([](double x) { return std::sin(1 / x); }, 1e-6, 1.0, {1e-15, 0, 5});
        FAIL() << "expected ConvergenceError";
    }
    catch (ConvergenceError const& e)
    {
        EXPECT_NE(std::string(e.what()).find("worst"), std::string::npos);
    }
}

TEST(Maximize, GoldenSectionFindsPeak)
{
    auto r = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0,
                                     1, 1e-8);
    EXPECT_NEAR(r.x, 0.3, 1e-7);
}

TEST(Maximize, BracketFlagsBoundary)
{
    std::vector<double> g{0.1, 0.2, 0.3, 0.4};
    auto r = bracketed_maximize([](double x) { return x; }, g, 1e-6);
    EXPECT_TRUE(r.at_boundary);
    std::vector<double> h{0.2, 0.4, 0.6, 0.8};
    auto s = bracketed_maximize([](double x) { return std::sin(3 * x); }, h, 1e-7);
    EXPECT_FALSE(s.at_boundary);
    EXPECT_NEAR(s.x, M_PI / 6, 1e-6);
}
