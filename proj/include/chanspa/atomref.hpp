#pragma once

/**
 * @file atomref.hpp
 * @brief Free-atom references for one-photon annihilation on the K shell,
 *        and the exponential fit of dsigma_max(gamma).
 */

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "constants.hpp"
#include "error.hpp"

namespace chanspa
{
/*!
 * Exact-Coulomb-normalized reference for both K electrons at rest,
 * lowest order in Z alpha:
 *
 *   dsigma/dOmega = Z^5 alpha^4 r_e^2 beta sin^2 T
 *       [gamma (gamma + 1)(gamma + 2)(1 - beta cos T) - 2]
 *       / (gamma^3 (gamma + 1)^3 (1 - beta cos T)^4)
 *
 * Integrates to the classic total cross-section
 * 4 pi Z^5 alpha^4 r_e^2 / ((gamma+1)^2 sqrt(gamma^2-1)) [gamma^2 + 2 gamma/3
 * + 4/3 - (gamma+2)/sqrt(gamma^2-1) ln(gamma + sqrt(gamma^2-1))].
 * Result in barn/sr.
 */
inline double dsigma1(double gamma, double Theta, int Z)
{
    if (!(gamma > 1))
        throw DomainError("dsigma1: gamma must exceed 1");
    if (Z < 1)
        throw PreconditionError("dsigma1: Z must be >= 1");
    using namespace constants;
    const double beta = std::sqrt(1 - 1 / (gamma * gamma));
    const double u = 1 - beta * std::cos(Theta);
    const double s = std::sin(Theta);
    const double g1 = gamma + 1;
    const double a2 = fine_structure * fine_structure;
    double pref = std::pow(Z, 5) * a2 * a2 * electron_radius * electron_radius;
    double num = beta * s * s * (gamma * g1 * (gamma + 2) * u - 2);
    double den = gamma * gamma * gamma * g1 * g1 * g1 * u * u * u * u;
    return pref * num / den * barn_per_angstrom2;
}

/*!
 * Born approximation
 *   32 pi a_B^3 alpha c (gamma^2-1) m Z^5 hbar^7 sin^2 T / (gamma D^4),
 *   D = -2 a_B^2 c^2 (gamma+1) sqrt(gamma^2-1) m^2 cos T
 *       + 2 a_B^2 c^2 gamma (gamma+1) m^2 + Z^2 hbar^2,
 * evaluated after dividing D by hbar^2 (a_B m c / hbar = 1/alpha), barn/sr.
 */
inline double dsigmaB(double gamma, double Theta, int Z)
{
    if (!(gamma > 1))
        throw DomainError("dsigmaB: gamma must exceed 1");
    using namespace constants;
    const double p = std::sqrt(gamma * gamma - 1);
    const double ia2 = 1 / (fine_structure * fine_structure);
    const double D = -2 * ia2 * (gamma + 1) * p * std::cos(Theta)
                     + 2 * ia2 * gamma * (gamma + 1) + double(Z) * Z;
    const double s = std::sin(Theta);
    double v = 32 * pi * bohr_radius * bohr_radius * (gamma * gamma - 1)
               * std::pow(Z, 5) * s * s / (gamma * D * D * D * D);
    return v * barn_per_angstrom2;
}

//---------------------------------------------------------------------------//
struct FitResult
{
    double sigma0 = 0; // barn/sr
    double eta = 0;    // dsigma = sigma0 exp(-eta gamma)
    double max_relative_error = 0;
};

//! Least squares of ln y = ln sigma0 - eta gamma over (gamma, y) points.
inline FitResult fit_exponential(std::vector<std::pair<double, double>> const& pts)
{
    if (pts.size() < 2)
        throw PreconditionError("fit_exponential needs at least 2 points");
    double sx = 0, sy = 0;
    for (auto const& [g, y] : pts)
    {
        if (!(y > 0))
            throw DomainError("fit_exponential: nonpositive dsigma_max");
        sx += g;
        sy += std::log(y);
    }
    const double n = static_cast<double>(pts.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (auto const& [g, y] : pts)
    {
        sxx += (g - mx) * (g - mx);
        sxy += (g - mx) * (std::log(y) - my);
    }
    if (!(sxx > 0))
        throw PreconditionError("fit_exponential: need two distinct gamma values");
    const double slope = sxy / sxx;

    FitResult r;
    r.eta = -slope;
    r.sigma0 = std::exp(my - slope * mx);
    for (auto const& [g, y] : pts)
    {
        double fit = r.sigma0 * std::exp(-r.eta * g);
        r.max_relative_error = std::max(r.max_relative_error, std::abs(fit / y - 1));
    }
    return r;
}
} // namespace chanspa
