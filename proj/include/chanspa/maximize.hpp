#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "error.hpp"

namespace chanspa
{
struct MaximumResult
{
    double x = 0;
    double value = 0;
    //! Coarse maximum sat on the first or last grid point.
    bool at_boundary = false;
};

//! Golden-section search for the maximum of a unimodal f on [lo, hi].
template<class F>
MaximumResult golden_section_maximize(F&& f, double lo, double hi, double tol)
{
    constexpr double invphi = 0.6180339887498948482; // (sqrt 5 - 1) / 2
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol)
    {
        if (fc >= fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? MaximumResult{c, fc, false} : MaximumResult{d, fd, false};
}

/*!
 * Coarse scan over an increasing grid, then golden-section refinement
 * between the neighbours of the best grid point.
 */
template<class F>
MaximumResult
bracketed_maximize(F&& f, std::vector<double> const& grid, double tol)
{
    if (grid.size() < 3)
        throw PreconditionError("bracketed_maximize needs at least 3 grid points");
    std::size_t best = 0;
    double fbest = f(grid[0]);
    for (std::size_t j = 1; j < grid.size(); ++j)
    {
        double v = f(grid[j]);
        if (v > fbest)
        {
            fbest = v;
            best = j;
        }
    }
    bool edge = (best == 0 || best + 1 == grid.size());
    double lo = grid[best == 0 ? 0 : best - 1];
    double hi = grid[best + 1 == grid.size() ? best : best + 1];
    MaximumResult r = golden_section_maximize(f, lo, hi, tol);
    if (r.value < fbest)
        r = MaximumResult{grid[best], fbest, false};
    r.at_boundary = edge;
    return r;
}
} // namespace chanspa
