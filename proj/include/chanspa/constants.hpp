#pragma once

// Internal unit system: energies in eV, lengths in Angstrom, angles in rad.
// Cross-sections leave the library in barn/sr.

#include <numbers>

namespace chanspa::constants
{
inline constexpr double pi = std::numbers::pi;

inline constexpr double hbar_c = 1973.269804;         // eV * Angstrom
inline constexpr double electron_mass_c2 = 510998.95; // eV
inline constexpr double fine_structure = 7.2973525693e-3;
inline constexpr double bohr_radius = 0.529177210903; // Angstrom

//! e^2 in Gaussian units, eV * Angstrom
inline constexpr double e_squared = fine_structure * hbar_c;

//! classical electron radius, Angstrom
inline constexpr double electron_radius = e_squared / electron_mass_c2;

inline constexpr double barn_per_angstrom2 = 1.0e8;
inline constexpr double ev_per_mev = 1.0e6;

//! default Si K-shell binding energy, eV
inline constexpr double si_k_binding = 1839.0;
} // namespace chanspa::constants
