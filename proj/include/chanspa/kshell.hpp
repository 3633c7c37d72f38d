#pragma once

/**
 * @file kshell.hpp
 * @brief K-shell wavefunction as a sum of Slater-type terms.
 *
 * Parameter file format, one term per line, whitespace separated:
 * @verbatim
   # comment
   Z 14
   C_p  nlambda_p  zeta_p_per_bohr
 @endverbatim
 * The optional "Z" line sets the atomic number (default 0 = unknown).
 */

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "constants.hpp"
#include "error.hpp"

namespace chanspa
{
struct SlaterTerm
{
    double c;    // expansion coefficient
    int n;       // principal exponent nlambda
    double zeta; // 1/Angstrom
};

//! Exact n! for n <= 20.
constexpr std::uint64_t factorial(int n)
{
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i)
        f *= static_cast<std::uint64_t>(i);
    return f;
}

class SlaterOrbital
{
  public:
    static constexpr int max_n = 7;

    SlaterOrbital() = default;
    SlaterOrbital(std::vector<SlaterTerm> terms, int Z)
        : terms_(std::move(terms)), Z_(Z)
    {
        if (terms_.empty())
            throw PreconditionError("SlaterOrbital: no terms");
        for (auto const& t : terms_)
        {
            if (!(t.zeta > 0) || t.n < 1 || t.n > max_n)
                throw PreconditionError("SlaterOrbital: need zeta > 0 and 1 <= n <= 7");
        }
    }

    std::vector<SlaterTerm> const& terms() const { return terms_; }
    int Z() const { return Z_; }

    //! Normalization constant (2 zeta)^(3/2) / sqrt((2n)!) of one term.
    static double term_norm(SlaterTerm const& t)
    {
        return std::pow(2 * t.zeta, 1.5)
               / std::sqrt(static_cast<double>(factorial(2 * t.n)));
    }

    /*!
     * Radial sum R(r) = sum_p (2 zeta)^(3/2) e^(-zeta r) (2 zeta r)^(n-1)
     * C / sqrt((2n)!), r in Angstrom, result in Angstrom^(-3/2).
     */
    double radial(double r) const
    {
        double s = 0;
        for (auto const& t : terms_)
            s += term_norm(t) * t.c * std::exp(-t.zeta * r)
                 * std::pow(2 * t.zeta * r, t.n - 1);
        return s;
    }

    //! Full 1s amplitude R(r) Y_00.
    double psi(double r) const
    {
        return radial(r) / std::sqrt(4 * constants::pi);
    }

    /*!
     * int_0^inf R^2 r^2 dr in closed form, using
     * int_0^inf r^k e^(-s r) dr = k! / s^(k+1) for each pair of terms.
     */
    double normalization() const
    {
        double s = 0;
        for (auto const& a : terms_)
        {
            for (auto const& b : terms_)
            {
                int nn = a.n + b.n;
                double z = a.zeta + b.zeta;
                s += a.c * b.c * term_norm(a) * term_norm(b)
                     * std::pow(2 * a.zeta, a.n - 1) * std::pow(2 * b.zeta, b.n - 1)
                     * static_cast<double>(factorial(nn)) / std::pow(z, nn + 1);
            }
        }
        return s;
    }

  private:
    std::vector<SlaterTerm> terms_;
    int Z_ = 0;
};

inline double psi_K(SlaterOrbital const& orb, double r)
{
    if (r < 0)
        throw PreconditionError("psi_K: r must be >= 0");
    return orb.psi(r);
}

//---------------------------------------------------------------------------//
/*!
 * Parse Slater parameters, zeta given per Bohr radius. Throws ParseError
 * with a line number for malformed input, DataError when the resulting
 * orbital norm falls outside [0.99, 1.01].
 */
inline SlaterOrbital parse_slater_params(std::istream& in)
{
    std::vector<SlaterTerm> terms;
    int Z = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first))
            continue;
        if (first == "Z")
        {
            if (!(ls >> Z) || Z < 1)
                throw ParseError("bad atomic number", lineno);
        }
        else
        {
            SlaterTerm t;
            std::size_t used = 0;
            try
            {
                t.c = std::stod(first, &used);
            }
            catch (std::exception const&)
            {
                used = 0;
            }
            if (used != first.size())
                throw ParseError("expected coefficient, got '" + first + "'", lineno);
            double zeta_bohr;
            if (!(ls >> t.n >> zeta_bohr))
                throw ParseError("expected 'C nlambda zeta'", lineno);
            if (t.n < 1 || t.n > SlaterOrbital::max_n)
                throw ParseError("nlambda out of range 1..7", lineno);
            if (!(zeta_bohr > 0))
                throw ParseError("zeta must be positive", lineno);
            t.zeta = zeta_bohr / constants::bohr_radius;
            terms.push_back(t);
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError("trailing text '" + extra + "'", lineno);
    }
    if (terms.empty())
        throw ParseError("no Slater terms found", lineno);

    SlaterOrbital orb(std::move(terms), Z);
    double norm = orb.normalization();
    if (!(norm >= 0.99 && norm <= 1.01))
        throw DataError("Slater orbital normalization " + std::to_string(norm)
                        + " outside [0.99, 1.01]");
    return orb;
}

inline SlaterOrbital load_slater_params(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open Slater parameter file '" + path + "'", 0);
    try
    {
        return parse_slater_params(in);
    }
    catch (ParseError const& e)
    {
        throw ParseError(path + ": " + e.message(), e.line());
    }
}
} // namespace chanspa
