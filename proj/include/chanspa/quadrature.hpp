#pragma once

/**
 * @file quadrature.hpp
 * @brief Globally adaptive Gauss-Kronrod (7/15) integration of real or
 *        complex valued functions over a finite interval.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <sstream>
#include <type_traits>
#include <vector>

#include "error.hpp"

namespace chanspa
{
struct QuadratureOptions
{
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    std::size_t max_intervals = 4000;
};

template<class R>
struct QuadratureResult
{
    R value{};
    double error = 0;
    std::size_t intervals = 0;
};

namespace detail
{
inline constexpr double gk15_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
// Gauss weights for the odd Kronrod nodes 1, 3, 5, 7
inline constexpr double g7_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template<class R>
struct Segment
{
    double a, b;
    R value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template<class F>
auto gk15(F& f, double a, double b)
{
    using R = std::decay_t<decltype(f(a))>;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    R fc = f(c);
    R kron = fc * gk15_wk[7];
    R gauss = fc * g7_w[3];
    for (int j = 0; j < 7; ++j)
    {
        double dx = h * gk15_x[j];
        R sum = f(c - dx) + f(c + dx);
        kron += sum * gk15_wk[j];
        if (j % 2 == 1)
            gauss += sum * g7_w[j / 2];
    }
    return Segment<R>{a, b, kron * h, std::abs((kron - gauss) * h)};
}
} // namespace detail

/*!
 * Integrate f over [a, b], bisecting the worst subinterval until the summed
 * error estimate drops below max(abs_tol, rel_tol * |I|).
 *
 * Throws ConvergenceError listing the worst remaining subintervals when the
 * interval budget is exhausted.
 */
template<class F>
auto integrate(F&& f, double a, double b, QuadratureOptions const& opts = {})
{
    using R = std::decay_t<decltype(f(a))>;
    using Seg = detail::Segment<R>;

    QuadratureResult<R> result;
    if (a == b)
        return result;

    std::priority_queue<Seg> heap;
    Seg first = detail::gk15(f, a, b);
    R total = first.value;
    double err = first.error;
    heap.push(first);

    auto tol = [&] {
        return std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    };

    while (err > tol())
    {
        if (heap.size() >= opts.max_intervals)
        {
            std::ostringstream os;
            os << "adaptive quadrature on [" << a << ", " << b
               << "] did not converge: error " << err << " > tolerance "
               << tol() << " after " << heap.size() << " subintervals;"
               << " worst:";
            for (int k = 0; k < 3 && !heap.empty(); ++k)
            {
                const Seg& s = heap.top();
                os << " [" << s.a << ", " << s.b << "] err " << s.error
                   << (k < 2 ? ";" : "");
                heap.pop();
            }
            throw ConvergenceError(os.str());
        }
        Seg worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Seg left = detail::gk15(f, worst.a, mid);
        Seg right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the leaves to drop accumulated update rounding
    result.intervals = heap.size();
    R sum{};
    double esum = 0;
    std::vector<Seg> leaves;
    leaves.reserve(heap.size());
    while (!heap.empty())
    {
        leaves.push_back(heap.top());
        heap.pop();
    }
    std::sort(leaves.begin(), leaves.end(), [](Seg const& l, Seg const& r) {
        return l.a < r.a;
    });
    for (auto const& s : leaves)
    {
        sum += s.value;
        esum += s.error;
    }
    result.value = sum;
    result.error = esum;
    return result;
}
} // namespace chanspa
