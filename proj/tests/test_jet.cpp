#include <chanspa/jet.hpp>

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

using chanspa::Jet;

TEST(Jet, ProductWithExponential)
{
    // f = z e^{-z}: f^(k) = (-1)^k (z - k) e^{-z}
    const double z0 = 2.0;
    auto z = Jet<double, 5>::variable(z0);
    auto f = z * exp(-z);
    for (int k = 0; k <= 5; ++k)
    {
        double expect = (k % 2 ? -1 : 1) * (z0 - k) * std::exp(-z0);
        EXPECT_NEAR(f.derivative(k), expect, 1e-14) << "k=" << k;
    }
}

TEST(Jet, SqrtAndDivision)
{
    // f = 1/sqrt(z^2 + c): f' = -z (z^2+c)^(-3/2), f'' = (2z^2 - c)(z^2+c)^(-5/2)
    const double z0 = 0.7, c = 1.3;
    auto z = Jet<double, 2>::variable(z0);
    auto f = 1.0 / sqrt(z * z + c);
    double s = z0 * z0 + c;
    EXPECT_NEAR(f.derivative(0), std::pow(s, -0.5), 1e-15);
    EXPECT_NEAR(f.derivative(1), -z0 * std::pow(s, -1.5), 1e-15);
    EXPECT_NEAR(f.derivative(2), (2 * z0 * z0 - c) * std::pow(s, -2.5), 1e-14);
}

TEST(Jet, IntegerPower)
{
    auto z = Jet<double, 3>::variable(1.5);
    auto f = pow(z, -3);
    EXPECT_NEAR(f.derivative(1), -3 * std::pow(1.5, -4), 1e-14);
    EXPECT_NEAR(f.derivative(3), -60 * std::pow(1.5, -6), 1e-12);
}

TEST(Jet, ComplexArgument)
{
    using C = std::complex<double>;
    // f = exp(i q z): f^(k) = (i q)^k f
    const double q = 0.9, z0 = 0.4;
    auto z = Jet<C, 4>::variable(C(z0));
    auto f = exp(C(0, q) * z);
    C base = std::exp(C(0, q * z0));
    for (int k = 0; k <= 4; ++k)
        EXPECT_LT(std::abs(f.derivative(k) - std::pow(C(0, q), k) * base), 1e-14);
}

TEST(Jet, PromotionKeepsCoefficients)
{
    auto z = Jet<double, 2>::variable(3.0);
    auto c = chanspa::to_complex(z * z);
    EXPECT_EQ(c[0], std::complex<double>(9.0));
    EXPECT_EQ(c[1], std::complex<double>(6.0));
    EXPECT_EQ(c[2], std::complex<double>(1.0));
}
