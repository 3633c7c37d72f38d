#pragma once

/**
 * @file integrals.hpp
 * @brief Slab Fourier integrals of the Slater K-shell function.
 *
 * After the (y, z) integration of exp(-zeta r) exp(i q . r) the remaining
 * x-integrand is exp(i q_x x) DI_p(x), with
 *   DI_p(x) = d^p/dzeta^p [zeta (x a + 1) exp(-x a) / a^3],
 *   a = sqrt(q_yz^2 + zeta^2).
 * The zeta-derivatives are taken with Taylor jets; the x-integral over the
 * slab [0, d] is done by adaptive quadrature, or in closed form.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "bands.hpp"
#include "constants.hpp"
#include "error.hpp"
#include "jet.hpp"
#include "kshell.hpp"
#include "quadrature.hpp"

namespace chanspa
{
//---------------------------------------------------------------------------//
struct QVector
{
    double qx = 0, qy = 0, qz = 0;
    double qyz = 0;
};

inline QVector make_qvector(double qx, double qy, double qz)
{
    return QVector{qx, qy, qz, std::hypot(qy, qz)};
}

inline constexpr int max_di_order = 6;

enum class IdiMethod
{
    quadrature,
    closed_form
};

namespace detail
{
template<class T, std::size_t N>
T di_jet(double qyz, double zeta, T x)
{
    using J = Jet<T, N>;
    J z = J::variable(T(zeta));
    J a = sqrt(z * z + T(qyz * qyz));
    J xa = a * x;
    J f = z * (xa + T(1)) * exp(-xa) / (a * a * a);
    return f.derivative(N);
}

// Dispatch the runtime derivative order to a jet of exactly that order
template<class T>
T di_eval(int p, double qyz, double zeta, T x)
{
    switch (p)
    {
        case 0: return di_jet<T, 0>(qyz, zeta, x);
        case 1: return di_jet<T, 1>(qyz, zeta, x);
        case 2: return di_jet<T, 2>(qyz, zeta, x);
        case 3: return di_jet<T, 3>(qyz, zeta, x);
        case 4: return di_jet<T, 4>(qyz, zeta, x);
        case 5: return di_jet<T, 5>(qyz, zeta, x);
        case 6: return di_jet<T, 6>(qyz, zeta, x);
    }
    throw PreconditionError("DI derivative order " + std::to_string(p)
                            + " unsupported (max 6)");
}

template<std::size_t N>
cplx idi_closed_jet(double qx, double qyz, double zeta, double d)
{
    using J = Jet<cplx, N>;
    const cplx i(0, 1);
    J z = J::variable(cplx(zeta));
    J a = sqrt(z * z + cplx(qyz * qyz));
    J s = a - i * qx;
    J e = exp(-d * s);
    J f = z / (a * a * a)
          * (a * (cplx(1) - e * (cplx(1) + d * s)) / (s * s)
             + (cplx(1) - e) / s);
    return f.derivative(N);
}

inline void check_idi_args(int p, double zeta, double d)
{
    if (p < 0 || p > max_di_order)
        throw PreconditionError("DI derivative order " + std::to_string(p)
                                + " unsupported (max 6)");
    if (!(zeta > 0) || !(d > 0))
        throw PreconditionError("IDI: need zeta > 0 and d > 0");
}
} // namespace detail

//---------------------------------------------------------------------------//
//! p-th zeta derivative of the slab kernel, real x >= 0.
inline double di_kernel(int p, double qyz, double zeta, double x)
{
    if (p < 0 || p > max_di_order)
        throw PreconditionError("DI derivative order " + std::to_string(p)
                                + " unsupported (max 6)");
    if (!(zeta > 0) || x < 0)
        throw PreconditionError("di_kernel: need zeta > 0 and x >= 0");
    return detail::di_eval<double>(p, qyz, zeta, x);
}

/*!
 * IDI = int_0^d exp(i q_x x) DI_p(x) dx in closed form: the x-antiderivative
 *   F = zeta/a^3 [a (1 - E (1 + s d)) / s^2 + (1 - E) / s],
 *   s = a - i q_x, E = exp(-s d),
 * differentiated p times in zeta with complex jets.
 */
inline cplx idi_closed_form(int p, double qx, double qyz, double zeta, double d)
{
    detail::check_idi_args(p, zeta, d);
    switch (p)
    {
        case 0: return detail::idi_closed_jet<0>(qx, qyz, zeta, d);
        case 1: return detail::idi_closed_jet<1>(qx, qyz, zeta, d);
        case 2: return detail::idi_closed_jet<2>(qx, qyz, zeta, d);
        case 3: return detail::idi_closed_jet<3>(qx, qyz, zeta, d);
        case 4: return detail::idi_closed_jet<4>(qx, qyz, zeta, d);
        case 5: return detail::idi_closed_jet<5>(qx, qyz, zeta, d);
        default: return detail::idi_closed_jet<6>(qx, qyz, zeta, d);
    }
}

/*!
 * IDI by adaptive Gauss-Kronrod quadrature.
 *
 * When the phase oscillates faster than the kernel decays (|q_x| > a) the
 * real segment is replaced by two vertical rays in the half plane where
 * exp(i q_x x) decays,
 *   int_0^d = int_{0}^{i s inf} - int_{d}^{d + i s inf},  s = sign q_x,
 * which is exact because the integrand is entire.
 */
inline cplx idi_integral(int p, double qx, double qyz, double zeta, double d)
{
    detail::check_idi_args(p, zeta, d);
    const double a = std::sqrt(qyz * qyz + zeta * zeta);
    const cplx i(0, 1);

    QuadratureOptions opts;
    opts.rel_tol = 1e-12;

    auto di = [&](cplx x) { return detail::di_eval<cplx>(p, qyz, zeta, x); };

    try
    {
        if (std::abs(qx) <= a)
        {
            auto f = [&](double x) {
                return std::polar(1.0, qx * x) * detail::di_eval<double>(p, qyz, zeta, x);
            };
            double scale = 0;
            for (double x : {0.0, 0.5 / a, 1.0 / a, 2.0 / a, d})
                scale = std::max(scale, std::abs(f(std::min(x, d))));
            opts.abs_tol = 1e-10 * scale * std::min(d, 1 / a);
            return integrate(f, 0.0, d, opts).value;
        }

        const double w = 1 / std::abs(qx);
        const cplx dir = (qx > 0 ? 1.0 : -1.0) * w * i;
        const cplx phase_d = std::polar(1.0, qx * d);
        auto g = [&](double t) {
            cplx x = dir * t;
            return dir * std::exp(-t) * (di(x) - phase_d * di(d + x));
        };
        double scale = 0;
        for (double t : {0.0, 1.0, 2.0, 4.0})
            scale = std::max(scale, std::abs(g(t)));
        opts.abs_tol = 1e-10 * scale;
        const double t_max = 50.0 + 4.0 * p;
        return integrate(g, 0.0, t_max, opts).value;
    }
    catch (ConvergenceError const& e)
    {
        throw ConvergenceError("IDI(p=" + std::to_string(p) + ", q_x="
                               + std::to_string(qx) + ", q_yz=" + std::to_string(qyz)
                               + ", zeta=" + std::to_string(zeta) + "): " + e.what());
    }
}

inline cplx idi(IdiMethod method, int p, double qx, double qyz, double zeta, double d)
{
    return method == IdiMethod::closed_form ? idi_closed_form(p, qx, qyz, zeta, d)
                                            : idi_integral(p, qx, qyz, zeta, d);
}

//---------------------------------------------------------------------------//
/*!
 * Slab Fourier transform of the K-shell function:
 *   Io = int_{0<x<d} Psi_K(r) exp(i q . r) d^3r
 *      = 2 pi Y00 sum_p N_p C_p (-2 zeta_p)^(n_p - 1) IDI_{n_p - 1}.
 */
inline cplx io_value(SlaterOrbital const& orb, double qx, double qyz, double d,
                     IdiMethod method = IdiMethod::quadrature)
{
    const double y00 = 1 / std::sqrt(4 * constants::pi);
    cplx sum{};
    for (auto const& t : orb.terms())
    {
        double w = SlaterOrbital::term_norm(t) * t.c * std::pow(-2 * t.zeta, t.n - 1);
        sum += w * idi(method, t.n - 1, qx, qyz, t.zeta, d);
    }
    return 2 * constants::pi * y00 * sum;
}

//! Io_{m,i_n} at fixed photon kinematics, for a subset of subbands.
struct IoTable
{
    int M = 0;
    int n_sub = 0;
    double qyz = 0;
    double kappa_x = 0;
    std::vector<cplx> values;   // [i_n * (2M+1) + m + M]
    std::vector<char> present;  // per subband

    cplx operator()(int m, int i_n) const
    {
        if (i_n < 0 || i_n >= n_sub || !present[i_n] || m < -M || m > M)
            throw ConsistencyError("IoTable: entry (m=" + std::to_string(m)
                                   + ", i_n=" + std::to_string(i_n)
                                   + ") not computed");
        return values[static_cast<std::size_t>(i_n) * (2 * M + 1) + m + M];
    }
};

inline IoTable io_assemble(SlaterOrbital const& orb, double qyz, double kappa_x,
                           BandStructure const& bs, std::vector<int> const& subbands,
                           IdiMethod method = IdiMethod::quadrature)
{
    IoTable t;
    t.M = bs.M;
    t.n_sub = bs.n_sub;
    t.qyz = qyz;
    t.kappa_x = kappa_x;
    const int w = 2 * bs.M + 1;
    t.values.assign(static_cast<std::size_t>(w) * bs.n_sub, cplx{});
    t.present.assign(bs.n_sub, 0);
    for (int n : subbands)
    {
        if (n < 0 || n >= bs.n_sub)
            throw ConsistencyError("io_assemble: subband out of range");
        for (int m = -bs.M; m <= bs.M; ++m)
        {
            cplx v = io_value(orb, bs.g_vector(m, n) - kappa_x, qyz, bs.d, method);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw ConvergenceError("io_assemble: non-finite Io at m="
                                       + std::to_string(m) + ", i_n=" + std::to_string(n));
            t.values[static_cast<std::size_t>(n) * w + m + bs.M] = v;
        }
        t.present[n] = 1;
    }
    return t;
}

//! All subbands of bs.
inline IoTable io_assemble(SlaterOrbital const& orb, QVector const& q,
                           double kappa_x, BandStructure const& bs,
                           IdiMethod method = IdiMethod::quadrature)
{
    std::vector<int> all(bs.n_sub);
    for (int n = 0; n < bs.n_sub; ++n)
        all[n] = n;
    return io_assemble(orb, q.qyz, kappa_x, bs, all, method);
}
} // namespace chanspa
