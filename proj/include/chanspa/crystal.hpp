#pragma once

/**
 * @file crystal.hpp
 * @brief Si(110) planar geometry and the continuum planar potential seen by a
 *        positron.
 *
 * The plane sits at x = 0 and the channel centre at x = d/2. The potential is
 * a Moliere screened potential summed over neighbouring planes; the static
 * lattice is assumed (no thermal smearing).
 */

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "constants.hpp"
#include "error.hpp"
#include "quadrature.hpp"

namespace chanspa
{
//---------------------------------------------------------------------------//
struct CrystalPlane
{
    double lattice_constant;    // Angstrom
    double d;                   // interplanar distance, Angstrom
    int Z;
    double planar_atom_density; // 1/Angstrom^2
    double screening_radius;    // Thomas-Fermi a_TF, Angstrom
    int plane_images = 5;       // neighbouring planes on each side
};

//! Thomas-Fermi screening radius 0.8853 a_B Z^(-1/3).
inline double thomas_fermi_radius(int Z)
{
    return 0.8853 * constants::bohr_radius * std::cbrt(1.0 / Z);
}

//! (110) planes of a diamond-structure crystal with cubic constant a.
inline CrystalPlane diamond110_plane(double a, int Z, int plane_images = 5)
{
    if (!(a > 0) || Z < 1 || plane_images < 0)
        throw PreconditionError("diamond110_plane: need a > 0, Z >= 1, images >= 0");
    CrystalPlane p;
    p.lattice_constant = a;
    p.d = a / (2 * std::sqrt(2.0));
    p.Z = Z;
    p.planar_atom_density = 8 * p.d / (a * a * a);
    p.screening_radius = thomas_fermi_radius(Z);
    p.plane_images = plane_images;
    return p;
}

inline CrystalPlane si110_preset()
{
    return diamond110_plane(5.431, 14);
}

//---------------------------------------------------------------------------//
namespace detail
{
inline constexpr std::array<double, 3> moliere_alpha{0.1, 0.55, 0.35};
inline constexpr std::array<double, 3> moliere_beta{6.0, 1.2, 0.3};

// Single plane at the origin, unit positron charge
inline double moliere_single_plane(CrystalPlane const& p, double u)
{
    const double a = p.screening_radius;
    double s = 0;
    for (int i = 0; i < 3; ++i)
        s += moliere_alpha[i] / moliere_beta[i]
             * std::exp(-moliere_beta[i] * std::abs(u) / a);
    return 2 * constants::pi * p.Z * constants::e_squared
           * p.planar_atom_density * a * s;
}
} // namespace detail

/*!
 * Continuum planar potential [eV] at transverse coordinate x [Angstrom].
 *
 * x is first folded into [0, d); the planes at 0 and d then carry the same
 * number of images on the outside, so V(x) = V(d - x) and V(x + d) = V(x)
 * hold to rounding.
 */
inline double moliere_potential(CrystalPlane const& p, double x)
{
    double u = std::fmod(x, p.d);
    if (u < 0)
        u += p.d;
    double v = 0;
    // planes at j*d, j = -n .. n+1: symmetric about the channel centre
    for (int j = -p.plane_images; j <= p.plane_images + 1; ++j)
        v += detail::moliere_single_plane(p, u - j * p.d);
    return v;
}

//---------------------------------------------------------------------------//
/*!
 * Even periodic potential stored by its real Fourier coefficients V_m,
 * m = -M_pot .. M_pot, plus the real-space extrema used downstream.
 */
class PlanarPotential
{
  public:
    PlanarPotential() = default;

    //! Coefficients indexed m = 0..M_pot; extrema from direct evaluation.
    PlanarPotential(double d, std::vector<double> v_nonneg, double v_max,
                    double v_min)
        : d_(d), v_(std::move(v_nonneg)), v_max_(v_max), v_min_(v_min)
    {
        if (!(d > 0) || v_.empty())
            throw PreconditionError("PlanarPotential: need d > 0 and V_0");
    }

    double d() const { return d_; }
    int max_order() const { return static_cast<int>(v_.size()) - 1; }

    //! V_m; zero beyond the stored cutoff.
    double coeff(int m) const
    {
        int a = m < 0 ? -m : m;
        return a < static_cast<int>(v_.size()) ? v_[a] : 0.0;
    }

    //! Absolute maximum of V(x) (at the plane).
    double v_max() const { return v_max_; }
    //! Minimum of V(x) (channel centre).
    double v_min() const { return v_min_; }
    //! Depth of the transverse well, v_max - v_min.
    double well_depth() const { return v_max_ - v_min_; }

    //! Truncated Fourier sum at x.
    double reconstruct(double x) const
    {
        double s = v_[0];
        for (int m = 1; m <= max_order(); ++m)
            s += 2 * v_[m] * std::cos(2 * constants::pi * m * x / d_);
        return s;
    }

  private:
    double d_ = 1;
    std::vector<double> v_{0.0};
    double v_max_ = 0;
    double v_min_ = 0;
};

//! Free-particle case: V = 0 everywhere.
inline PlanarPotential zero_potential(double d, int M_pot)
{
    return PlanarPotential(d, std::vector<double>(M_pot + 1, 0.0), 0.0, 0.0);
}

/*!
 * Fourier coefficients V_m = (1/d) int_0^d V(x) exp(-2 pi i m x/d) dx by
 * adaptive quadrature (the integrand is smooth inside the period; the cusps
 * sit on the end points).
 */
inline PlanarPotential fourier_coefficients(CrystalPlane const& p, int M_pot,
                                            double abs_tol = 1e-6)
{
    if (M_pot < 10)
        throw PreconditionError("fourier_coefficients: M_pot must be >= 10");
    const double d = p.d;
    const double vmax = moliere_potential(p, 0.0);
    const double vmin = moliere_potential(p, 0.5 * d);

    QuadratureOptions opts;
    // far tighter than requested so the imaginary part is a clean zero test
    opts.abs_tol = std::min(abs_tol, 1e-12 * vmax) * d;
    opts.rel_tol = 1e-14;

    std::vector<double> v(M_pot + 1);
    for (int m = 0; m <= M_pot; ++m)
    {
        const double g = 2 * constants::pi * m / d;
        auto f = [&](double x) {
            return moliere_potential(p, x) * std::polar(1.0, -g * x);
        };
        std::complex<double> vm;
        try
        {
            vm = integrate(f, 0.0, d, opts).value / d;
        }
        catch (ConvergenceError const& e)
        {
            throw ConvergenceError("fourier_coefficients: V_" + std::to_string(m)
                                   + ": " + e.what());
        }
        if (std::abs(vm.imag()) > 1e-10)
            throw ConsistencyError("fourier_coefficients: Im V_" + std::to_string(m)
                                   + " = " + std::to_string(vm.imag())
                                   + " eV exceeds 1e-10 eV");
        v[m] = vm.real();
    }
    return PlanarPotential(d, std::move(v), vmax, vmin);
}

//---------------------------------------------------------------------------//
//! Lindhard angle sqrt(2 U / (gamma m c^2 beta^2)) for a well of depth U [eV].
inline double critical_angle(double well_depth, double gamma)
{
    if (!(gamma > 1))
        throw DomainError("critical_angle: gamma must exceed 1");
    double beta2 = 1 - 1 / (gamma * gamma);
    return std::sqrt(2 * well_depth / (gamma * constants::electron_mass_c2 * beta2));
}

inline double critical_angle(CrystalPlane const& p, double gamma)
{
    return critical_angle(moliere_potential(p, 0.0)
                              - moliere_potential(p, 0.5 * p.d),
                          gamma);
}

inline double critical_angle(PlanarPotential const& v, double gamma)
{
    return critical_angle(v.well_depth(), gamma);
}
} // namespace chanspa
