#pragma once

/**
 * @file bands.hpp
 * @brief Transverse Bloch states of a positron with relativistic mass
 *        gamma m in the periodic planar potential.
 *
 * For quasimomentum k the state is psi(x) = d^(-1/2) sum_m X_m
 * exp(i (k + 2 pi m / d) x), m = -M..M, normalized over one period. The
 * sampled quasimomenta are k_n = pi n / (n_sub d), n = 0..n_sub-1, which
 * covers [0, pi/d); negative k follow by time reversal, X(-k)_m = conj X(k)_-m.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "constants.hpp"
#include "crystal.hpp"
#include "error.hpp"

namespace chanspa
{
using cplx = std::complex<double>;

//---------------------------------------------------------------------------//
struct BlochState
{
    int band = 0;       // i
    int subband = 0;    // i_n
    double k = 0;       // quasimomentum, 1/Angstrom
    double energy = 0;  // E_perp, eV
    int M = 0;
    Eigen::VectorXcd coeffs; // X_m at index m + M

    cplx coeff(int m) const
    {
        return (m < -M || m > M) ? cplx{} : coeffs[m + M];
    }
};

struct BandStructure
{
    double gamma = 0;
    double d = 0;
    int n_sub = 0;
    int M = 0;
    int n_bands = 0;
    double barrier_top = 0; // eV
    std::vector<BlochState> states; // subband-major: [i_n * n_bands + i]

    BlochState const& state(int i, int i_n) const
    {
        if (i < 0 || i >= n_bands || i_n < 0 || i_n >= n_sub)
            throw ConsistencyError("BandStructure::state: (" + std::to_string(i)
                                   + ", " + std::to_string(i_n)
                                   + ") out of range");
        return states[static_cast<std::size_t>(i_n) * n_bands + i];
    }

    double quasimomentum(int i_n) const
    {
        return constants::pi * i_n / (n_sub * d);
    }

    //! G_{m,i_n} = 2 pi m / d + k_{i_n}
    double g_vector(int m, int i_n) const
    {
        return 2 * constants::pi * m / d + quasimomentum(i_n);
    }

    double band_max(int i) const
    {
        double e = state(i, 0).energy;
        for (int n = 1; n < n_sub; ++n)
            e = std::max(e, state(i, n).energy);
        return e;
    }

    bool is_subbarrier(int i) const { return band_max(i) < barrier_top; }
};

//---------------------------------------------------------------------------//
//! hbar^2 / (2 gamma m) in eV Angstrom^2.
inline double kinetic_prefactor(double gamma)
{
    return constants::hbar_c * constants::hbar_c
           / (2 * gamma * constants::electron_mass_c2);
}

/*!
 * Central-equation matrix H_mm' = hbar^2 (k + 2 pi m/d)^2 / (2 gamma m_e)
 * delta_mm' + V_{m-m'} in the plane-wave basis m = -M..M.
 */
inline Eigen::MatrixXcd central_equation_matrix(PlanarPotential const& v,
                                                double gamma, double k, int M)
{
    const int n = 2 * M + 1;
    const double c = kinetic_prefactor(gamma);
    const double d = v.d();
    Eigen::MatrixXcd h(n, n);
    for (int r = 0; r < n; ++r)
    {
        for (int s = 0; s < n; ++s)
            h(r, s) = v.coeff(r - s);
        double q = k + 2 * constants::pi * (r - M) / d;
        h(r, r) += c * q * q;
    }
    return h;
}

namespace detail
{
// Rotate so the largest-magnitude coefficient is real and positive. Ties are
// broken toward the lowest index for reproducibility.
inline void fix_gauge(Eigen::Ref<Eigen::VectorXcd> x)
{
    Eigen::Index best = 0;
    double amax = -1;
    for (Eigen::Index j = 0; j < x.size(); ++j)
    {
        double a = std::abs(x[j]);
        if (a > amax * (1 + 1e-12))
        {
            amax = a;
            best = j;
        }
    }
    cplx phase = std::conj(x[best]) / std::abs(x[best]);
    x *= phase;
    x[best] = cplx(std::abs(x[best]), 0.0);
}
} // namespace detail

/*!
 * Diagonalize the central equation at every sampled quasimomentum and keep
 * the lowest n_bands levels (ascending). n_bands < 0 keeps all 2M+1.
 */
inline BandStructure solve_bands(PlanarPotential const& v, double gamma,
                                 int n_sub = 10, int M = 20, int n_bands = -1)
{
    if (!(gamma > 1))
        throw DomainError("solve_bands: gamma must exceed 1");
    if (M < 1 || n_sub < 1)
        throw PreconditionError("solve_bands: need M >= 1 and n_sub >= 1");
    const int dim = 2 * M + 1;
    if (n_bands < 0)
        n_bands = dim;
    if (n_bands > dim)
        throw PreconditionError("solve_bands: n_bands = " + std::to_string(n_bands)
                                + " exceeds the basis size 2M+1 = "
                                + std::to_string(dim));

    BandStructure bs;
    bs.gamma = gamma;
    bs.d = v.d();
    bs.n_sub = n_sub;
    bs.M = M;
    bs.n_bands = n_bands;
    bs.barrier_top = v.v_max();
    bs.states.reserve(static_cast<std::size_t>(n_sub) * n_bands);

    for (int i_n = 0; i_n < n_sub; ++i_n)
    {
        const double k = bs.quasimomentum(i_n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            central_equation_matrix(v, gamma, k, M));
        if (es.info() != Eigen::Success)
            throw ConvergenceError("solve_bands: eigensolver failed at subband "
                                   + std::to_string(i_n));
        for (int i = 0; i < n_bands; ++i)
        {
            BlochState s;
            s.band = i;
            s.subband = i_n;
            s.k = k;
            s.energy = es.eigenvalues()[i];
            s.M = M;
            s.coeffs = es.eigenvectors().col(i);
            detail::fix_gauge(s.coeffs);
            bs.states.push_back(std::move(s));
        }
    }
    return bs;
}

//! Bands lying entirely below the barrier top (bands are ordered, so this
//! is the index of the first band that reaches it).
inline int count_subbarrier_bands(BandStructure const& bs)
{
    int count = 0;
    for (int i = 0; i < bs.n_bands; ++i)
    {
        if (!bs.is_subbarrier(i))
            break;
        ++count;
    }
    return count;
}

//! CSV band diagram: i,i_n,k_inv_angstrom,E_perp_eV,subbarrier_flag
inline void write_band_csv(std::ostream& os, BandStructure const& bs)
{
    os << "i,i_n,k_inv_angstrom,E_perp_eV,subbarrier_flag\n";
    char buf[128];
    for (int i = 0; i < bs.n_bands; ++i)
    {
        int flag = bs.is_subbarrier(i) ? 1 : 0;
        for (int n = 0; n < bs.n_sub; ++n)
        {
            auto const& s = bs.state(i, n);
            std::snprintf(buf, sizeof buf, "%d,%d,%.12g,%.12g,%d\n", i, n, s.k,
                          s.energy, flag);
            os << buf;
        }
    }
}

//---------------------------------------------------------------------------//
/*!
 * Entry-angle populations. The incident plane wave exp(i k_perp x) is
 * matched to the nearest sampled quasimomentum (after folding into the
 * first zone and, for the negative half, time reversal); band i then gets
 * |X_{i, n*, m*}|^2 at that subband and zero elsewhere.
 */
struct PopulationTable
{
    double theta = 0;
    double k_perp = 0;     // 1/Angstrom
    int subband = 0;       // n*
    int harmonic = 0;      // m* in the stored (+k) state
    bool reflected = false; // matched through time reversal
    bool over_barrier = false; // theta beyond the critical angle
    int n_bands = 0;
    int n_sub = 0;
    std::vector<double> p; // [i * n_sub + i_n]
    std::vector<bool> subbarrier;

    double operator()(int i, int i_n) const
    {
        return p[static_cast<std::size_t>(i) * n_sub + i_n];
    }

    double band_total(int i) const
    {
        double s = 0;
        for (int n = 0; n < n_sub; ++n)
            s += (*this)(i, n);
        return s;
    }

    double subbarrier_total() const
    {
        double s = 0;
        for (int i = 0; i < n_bands; ++i)
            if (subbarrier[i])
                s += band_total(i);
        return s;
    }

    //! Weight carried by above-barrier states (discarded downstream).
    double remainder() const { return 1 - subbarrier_total(); }
};

//! Transverse wavevector of a beam entering at angle theta [1/Angstrom].
inline double transverse_wavevector(double theta, double gamma)
{
    double pc = constants::electron_mass_c2 * std::sqrt(gamma * gamma - 1);
    return pc * theta / constants::hbar_c;
}

inline PopulationTable populations(BandStructure const& bs, double theta,
                                   double gamma, double theta_c = -1)
{
    const double pi = constants::pi;
    const double zone = 2 * pi / bs.d;
    const double kperp = transverse_wavevector(theta, gamma);

    PopulationTable t;
    t.theta = theta;
    t.k_perp = kperp;
    t.n_bands = bs.n_bands;
    t.n_sub = bs.n_sub;
    t.over_barrier = theta_c >= 0 && theta > theta_c;

    // Fold into [0, 2 pi/d); the half above pi/d is the time-reversed image
    // of a state with quasimomentum 2 pi/d - k.
    double kf = kperp - zone * std::floor(kperp / zone);
    double target = kperp;
    if (kf > pi / bs.d)
    {
        t.reflected = true;
        kf = zone - kf;
        target = -kperp;
    }
    int n = static_cast<int>(std::lround(kf * bs.n_sub * bs.d / pi));
    t.subband = std::clamp(n, 0, bs.n_sub - 1);
    t.harmonic = static_cast<int>(
        std::lround((target - bs.quasimomentum(t.subband)) / zone));

    t.p.assign(static_cast<std::size_t>(bs.n_bands) * bs.n_sub, 0.0);
    t.subbarrier.resize(bs.n_bands);
    for (int i = 0; i < bs.n_bands; ++i)
    {
        t.subbarrier[i] = bs.is_subbarrier(i);
        // reflected: X(-k)_{-m'} = conj X(k)_{m'}, so the magnitude is read at m'
        t.p[static_cast<std::size_t>(i) * bs.n_sub + t.subband]
            = std::norm(bs.state(i, t.subband).coeff(t.harmonic));
    }
    return t;
}
} // namespace chanspa
