#pragma once

/**
 * @file xsection.hpp
 * @brief Differential cross-section of one-photon annihilation of a
 *        channeled positron on a K-shell electron.
 *
 * The beam moves along z with p_y = 0; the photon leaves along
 * n = (sin T cos F, sin T sin F, cos T). With the band sums
 *   g = sum_m G_m X_m Io_m,   s = sum_m X_m Io_m,
 * the current vector is L ~ (g, (p_y/hbar) s, (p_z/hbar) s) and the
 * polarization-summed matrix element is proportional to |L x n|^2.
 */

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "bands.hpp"
#include "constants.hpp"
#include "error.hpp"
#include "integrals.hpp"
#include "kshell.hpp"
#include "maximize.hpp"

namespace chanspa
{
//---------------------------------------------------------------------------//
struct PositronBeam
{
    double E_par = 0; // longitudinal total energy, MeV
    double gamma = 0;
    double beta = 0;
    double p_z = 0;   // eV/c
    double p_y = 0;   // eV/c
    double theta = 0; // entry angle to the plane, rad

    double energy_ev() const { return E_par * constants::ev_per_mev; }
};

inline PositronBeam make_beam(double E_par_mev, double theta = 0)
{
    const double mc2 = constants::electron_mass_c2;
    PositronBeam b;
    b.E_par = E_par_mev;
    b.gamma = E_par_mev * constants::ev_per_mev / mc2;
    if (!(b.gamma > 1))
        throw DomainError("make_beam: energy must exceed the positron rest energy");
    b.beta = std::sqrt(1 - 1 / (b.gamma * b.gamma));
    b.p_z = b.gamma * mc2 * b.beta;
    b.theta = theta;
    return b;
}

struct PhotonKinematics
{
    double Theta = 0;
    double Phi = 0;
    double homega = 0; // eV
    std::array<double, 3> n{};
    std::array<double, 3> kappa{}; // 1/Angstrom
};

inline PhotonKinematics make_photon(double Theta, double Phi, double homega_ev)
{
    PhotonKinematics k;
    k.Theta = Theta;
    k.Phi = Phi;
    k.homega = homega_ev;
    k.n = {std::sin(Theta) * std::cos(Phi), std::sin(Theta) * std::sin(Phi),
           std::cos(Theta)};
    const double kap = homega_ev / constants::hbar_c;
    for (int j = 0; j < 3; ++j)
        k.kappa[j] = kap * k.n[j];
    return k;
}

//! hbar omega = E_par + E_perp + m c^2 - binding, all in eV.
inline double photon_energy(PositronBeam const& beam, double E_perp, double binding)
{
    if (binding < 0)
        throw PreconditionError("photon_energy: binding must be >= 0");
    return beam.energy_ev() + E_perp + constants::electron_mass_c2 - binding;
}

struct XsOptions
{
    double binding = constants::si_k_binding; // eV
    IdiMethod method = IdiMethod::quadrature;
};

//---------------------------------------------------------------------------//
struct BandSums
{
    cplx g; // sum G X Io, Angstrom^(1/2)
    cplx s; // sum X Io, Angstrom^(3/2)
};

inline BandSums band_sums(BandStructure const& bs, IoTable const& io, int i, int i_n)
{
    if (io.M != bs.M || io.n_sub != bs.n_sub)
        throw ConsistencyError("Io table was built for a different band structure");
    BlochState const& st = bs.state(i, i_n);
    BandSums r{};
    for (int m = -bs.M; m <= bs.M; ++m)
    {
        cplx xi = st.coeff(m) * io(m, i_n);
        r.g += bs.g_vector(m, i_n) * xi;
        r.s += xi;
    }
    return r;
}

/*!
 * Polarization-summed bracket |L x n|^2 [Angstrom] written out term by term:
 *   |cos T g - P cos F sin T s|^2 + |g|^2 sin^2 T sin^2 F
 *     + (P sin T sin F)^2 |s|^2,     P = p_z / hbar.
 */
inline double matrix_element_bracket(PositronBeam const& beam,
                                     PhotonKinematics const& ph,
                                     BandStructure const& bs, IoTable const& io,
                                     int i, int i_n)
{
    if (beam.p_y != 0)
        throw PreconditionError("matrix element assumes p_y = 0");
    BandSums b = band_sums(bs, io, i, i_n);
    const double P = beam.p_z / constants::hbar_c;
    const double ct = std::cos(ph.Theta), st = std::sin(ph.Theta);
    const double cf = std::cos(ph.Phi), sf = std::sin(ph.Phi);
    double t1 = std::norm(ct * b.g - P * cf * st * b.s);
    double t2 = std::norm(b.g) * st * st * sf * sf;
    double t3 = (P * st * sf) * (P * st * sf) * std::norm(b.s);
    return t1 + t2 + t3;
}

/*!
 * |M|^2 L^5 in eV^2 Angstrom^5. The normalization length L of the photon
 * and positron plane waves enters |M|^2 as L^-5 and is never given a
 * value; the transverse Bloch function carries 1/sqrt(d).
 */
inline double matrix_element_sq(PositronBeam const& beam, PhotonKinematics const& ph,
                                 BandStructure const& bs, IoTable const& io,
                                 int i, int i_n)
{
    const double hc = constants::hbar_c;
    const double E = beam.energy_ev();
    const double mc2 = constants::electron_mass_c2;
    double spinor_photon = 2 * constants::pi * hc * hc / (E * (E + mc2) * ph.homega * bs.d);
    return constants::e_squared * hc * hc * spinor_photon
           * matrix_element_bracket(beam, ph, bs, io, i, i_n);
}

/*!
 * Golden rule with photon phase space L^3 d^3 kappa / (2 pi)^3 and flux
 * v / (L^2 d): dsigma/dOmega = (2 pi / hbar) |M|^2 L^5 omega^2 d
 * / ((2 pi)^3 hbar c^3 v), in Angstrom^2.
 */
inline double dsigma_from_msq(double msq_l5, double homega, double beta, double d)
{
    const double hc = constants::hbar_c;
    const double two_pi = 2 * constants::pi;
    return two_pi / (beta * hc) * msq_l5 * homega * homega
           / (two_pi * two_pi * two_pi * hc * hc * hc) * d;
}

//---------------------------------------------------------------------------//
struct CrossSectionPoint
{
    double Theta = 0, Phi = 0;
    int band = 0;
    int subband = 0;
    double dsigma_domega = 0; // barn/sr
    double homega = 0;        // MeV
    bool zero_population = false;
};

inline CrossSectionPoint dsigma_domega(PositronBeam const& beam, double Theta,
                                       double Phi, BandStructure const& bs,
                                       SlaterOrbital const& orb, int i, int i_n,
                                       XsOptions const& opt = {})
{
    if (!(Theta >= 0 && Theta <= constants::pi))
        throw PreconditionError("dsigma_domega: Theta outside [0, pi]");
    BlochState const& st = bs.state(i, i_n);
    const double hw = photon_energy(beam, st.energy, opt.binding);
    PhotonKinematics ph = make_photon(Theta, Phi, hw);
    QVector q = make_qvector(0.0, beam.p_y / constants::hbar_c - ph.kappa[1],
                             beam.p_z / constants::hbar_c - ph.kappa[2]);
    IoTable io = io_assemble(orb, q.qyz, ph.kappa[0], bs, {i_n}, opt.method);
    double msq = matrix_element_sq(beam, ph, bs, io, i, i_n);

    CrossSectionPoint p;
    p.Theta = Theta;
    p.Phi = Phi;
    p.band = i;
    p.subband = i_n;
    p.homega = hw / constants::ev_per_mev;
    p.dsigma_domega = dsigma_from_msq(msq, hw, beam.beta, bs.d)
                      * constants::barn_per_angstrom2;
    return p;
}

//! Band populations below this total are treated as empty.
inline constexpr double zero_population_threshold = 1e-12;

/*!
 * Population-weighted mean over the subbands of band i. An empty band
 * returns 0 with zero_population set.
 */
inline CrossSectionPoint dsigma_averaged(PositronBeam const& beam, double Theta,
                                         double Phi, BandStructure const& bs,
                                         SlaterOrbital const& orb,
                                         PopulationTable const& pops, int i,
                                         XsOptions const& opt = {})
{
    if (pops.n_bands != bs.n_bands || pops.n_sub != bs.n_sub)
        throw ConsistencyError("populations were built for a different band structure");
    CrossSectionPoint out;
    out.Theta = Theta;
    out.Phi = Phi;
    out.band = i;
    out.subband = pops.subband;

    double wsum = 0, acc = 0, hw = 0;
    for (int n = 0; n < bs.n_sub; ++n)
    {
        double w = pops(i, n);
        if (w <= 0)
            continue;
        CrossSectionPoint p = dsigma_domega(beam, Theta, Phi, bs, orb, i, n, opt);
        wsum += w;
        acc += w * p.dsigma_domega;
        hw += w * p.homega;
    }
    if (wsum < zero_population_threshold)
    {
        out.zero_population = true;
        out.homega = photon_energy(beam, bs.state(i, pops.subband).energy, opt.binding)
                     / constants::ev_per_mev;
        return out;
    }
    out.dsigma_domega = acc / wsum;
    out.homega = hw / wsum;
    return out;
}

//---------------------------------------------------------------------------//
struct ThetaMax
{
    double theta = 0;        // rad
    double dsigma = 0;       // barn/sr
    bool at_boundary = false;
    //! Band i is not populated at this entry angle; the maximum is that of
    //! the matched subband's distribution (shape only, weight zero).
    bool zero_population = false;
};

//! Coarse grid for the Theta scan: 200 interior points of (0, pi/2).
inline std::vector<double> theta_scan_grid(int n = 200)
{
    std::vector<double> g(n);
    for (int j = 0; j < n; ++j)
        g[j] = (j + 1) * (constants::pi / 2) / (n + 1);
    return g;
}

/*!
 * Angular distribution of band i as used for plotting and maximization:
 * the population average, or, for an empty band, the distribution of the
 * matched subband with zero_population set.
 */
inline CrossSectionPoint dsigma_band(PositronBeam const& beam, double Theta, double Phi,
                                     BandStructure const& bs, SlaterOrbital const& orb,
                                     PopulationTable const& pops, int i,
                                     XsOptions const& opt = {})
{
    if (pops.band_total(i) < zero_population_threshold)
    {
        CrossSectionPoint p
            = dsigma_domega(beam, Theta, Phi, bs, orb, i, pops.subband, opt);
        p.zero_population = true;
        return p;
    }
    return dsigma_averaged(beam, Theta, Phi, bs, orb, pops, i, opt);
}

inline ThetaMax find_theta_max(PositronBeam const& beam, BandStructure const& bs,
                               SlaterOrbital const& orb, PopulationTable const& pops,
                               int i, double Phi = 0, XsOptions const& opt = {},
                               double tol = 1e-5)
{
    ThetaMax r;
    r.zero_population = pops.band_total(i) < zero_population_threshold;
    auto f = [&](double Theta) {
        return dsigma_band(beam, Theta, Phi, bs, orb, pops, i, opt).dsigma_domega;
    };
    MaximumResult m = bracketed_maximize(f, theta_scan_grid(), tol);
    r.theta = m.x;
    r.dsigma = m.value;
    r.at_boundary = m.at_boundary;
    return r;
}
} // namespace chanspa
