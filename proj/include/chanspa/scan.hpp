#pragma once

/**
 * @file scan.hpp
 * @brief Resolved scan configuration and the figure-data drivers behind the
 *        command-line tool.
 *
 * Every CSV starts with a '#' line holding the full resolved configuration.
 * Output is a pure function of that configuration: grid points are computed
 * independently and stored by index, so the thread count never changes a
 * byte of the data.
 */

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "atomref.hpp"
#include "bands.hpp"
#include "config.hpp"
#include "crystal.hpp"
#include "kshell.hpp"
#include "maximize.hpp"
#include "parallel.hpp"
#include "xsection.hpp"

#ifndef CHANSPA_DATA_DIR
#    define CHANSPA_DATA_DIR "data"
#endif

namespace chanspa
{
//---------------------------------------------------------------------------//
//! Environment variable naming a default config file.
inline constexpr char const* config_env_var = "CHANSPA_CONFIG";

inline std::string default_slater_file()
{
    return std::string(CHANSPA_DATA_DIR) + "/si_1s_bbb1993.txt";
}

/*!
 * Defaults per subcommand. The scans cover 50-100 MeV and eight entry
 * angles 0..0.825 theta_C; single-point commands default to 60 MeV,
 * theta = 0.5 theta_C, band 1.
 */
inline Config default_config(std::string const& command)
{
    Config c;
    c.set("E_par_mev", "50:100:6");
    c.set("k", "0:0.825:8");
    c.set("bands", "1");
    c.set("Phi", "0");
    c.set("Theta_grid", "0:0.3:61");
    c.set("Phi_grid", "0:6.283185307179586:37");
    c.set("gamma_grid", "100:200:11");
    c.set("n_sub", "10");
    c.set("M", "20");
    c.set("M_pot", "40");
    c.set("lattice_constant_angstrom", "5.431");
    c.set("Z", "14");
    c.set("plane_images", "5");
    c.set("binding_ev", "1839");
    c.set("slater_file", default_slater_file());
    c.set("idi_method", "quadrature");
    c.set("output_dir", ".");
    c.set("threads", "1");
    c.set("json", "false");
    if (command == "angular" || command == "bands")
    {
        c.set("E_par_mev", "60");
        c.set("k", "0.5");
    }
    return c;
}

struct ScanConfig
{
    std::string command;
    std::vector<double> E_par_mev;
    std::vector<double> k;
    std::vector<int> bands;
    double Phi = 0;
    std::vector<double> Theta_grid;
    std::vector<double> Phi_grid;
    std::vector<double> gamma_grid;
    int n_sub = 10, M = 20, M_pot = 40;
    double lattice_constant = 5.431;
    int Z = 14;
    int plane_images = 5;
    double binding = constants::si_k_binding;
    std::string slater_file;
    IdiMethod method = IdiMethod::quadrature;
    std::string output_dir;
    int threads = 1;
    bool json = false;
    Config::Map resolved;

    XsOptions xs_options() const { return XsOptions{binding, method}; }
    CrystalPlane crystal() const
    {
        return diamond110_plane(lattice_constant, Z, plane_images);
    }
};

inline ScanConfig resolve_config(std::string const& command, Config const& cfg)
{
    static const std::set<std::string> known = [] {
        std::set<std::string> s;
        const Config defaults = default_config("");
        for (auto const& [k, v] : defaults.values())
            s.insert(k);
        return s;
    }();
    for (auto const& [key, val] : cfg.values())
        if (!known.count(key))
            throw UsageError("unknown configuration key '" + key + "'");

    ScanConfig s;
    s.command = command;
    s.resolved = cfg.values();
    s.E_par_mev = parse_grid("E_par_mev", cfg.get("E_par_mev"));
    s.k = parse_grid("k", cfg.get("k"));
    s.bands = parse_int_list("bands", cfg.get("bands"));
    s.Phi = parse_double("Phi", cfg.get("Phi"));
    s.Theta_grid = parse_grid("Theta_grid", cfg.get("Theta_grid"));
    s.Phi_grid = parse_grid("Phi_grid", cfg.get("Phi_grid"));
    s.gamma_grid = parse_grid("gamma_grid", cfg.get("gamma_grid"));
    s.n_sub = parse_int("n_sub", cfg.get("n_sub"));
    s.M = parse_int("M", cfg.get("M"));
    s.M_pot = parse_int("M_pot", cfg.get("M_pot"));
    s.lattice_constant = parse_double("lattice_constant_angstrom",
                                      cfg.get("lattice_constant_angstrom"));
    s.Z = parse_int("Z", cfg.get("Z"));
    s.plane_images = parse_int("plane_images", cfg.get("plane_images"));
    s.binding = parse_double("binding_ev", cfg.get("binding_ev"));
    s.slater_file = cfg.get("slater_file");
    s.output_dir = cfg.get("output_dir");
    s.threads = parse_int("threads", cfg.get("threads"));
    s.json = parse_bool("json", cfg.get("json"));
    std::string m = cfg.get("idi_method");
    if (m == "quadrature")
        s.method = IdiMethod::quadrature;
    else if (m == "closed_form")
        s.method = IdiMethod::closed_form;
    else
        throw UsageError("idi_method must be 'quadrature' or 'closed_form'");

    for (double e : s.E_par_mev)
        if (!(e * constants::ev_per_mev > constants::electron_mass_c2))
            throw UsageError("E_par_mev values must exceed the rest energy");
    for (double k : s.k)
        if (!(k >= 0))
            throw UsageError("k values must be >= 0");
    for (int b : s.bands)
        if (b < 0)
            throw UsageError("band indices must be >= 0");
    for (double g : s.gamma_grid)
        if (!(g > 1))
            throw UsageError("gamma_grid values must exceed 1");
    if (s.n_sub < 1 || s.M < 1 || s.M_pot < 10 || s.Z < 1 || s.plane_images < 0
        || s.threads < 1 || !(s.lattice_constant > 0) || s.binding < 0)
        throw UsageError("need n_sub >= 1, M >= 1, M_pot >= 10, Z >= 1, "
                         "plane_images >= 0, threads >= 1, lattice constant > 0, "
                         "binding >= 0");
    return s;
}

//---------------------------------------------------------------------------//
//! A CSV table with '#' header lines, optionally mirrored as JSON.
struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes; // extra '#' lines after the config line
};

inline std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string config_comment(ScanConfig const& s)
{
    std::string line = "# chanspa " + s.command;
    for (auto const& [k, v] : s.resolved)
        line += " " + k + "=" + v;
    return line;
}

inline std::string write_table(ScanConfig const& s, std::string const& name,
                               Table const& t)
{
    namespace fs = std::filesystem;
    fs::create_directories(s.output_dir);
    fs::path path = fs::path(s.output_dir) / (name + ".csv");
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    os << config_comment(s) << '\n';
    for (auto const& n : t.notes)
        os << "# " << n << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (auto const& r : t.rows)
    {
        for (std::size_t c = 0; c < r.size(); ++c)
            os << (c ? "," : "") << format_number(r[c]);
        os << '\n';
    }
    if (!os)
        throw std::runtime_error("write failed for '" + path.string() + "'");

    if (s.json)
    {
        nlohmann::ordered_json j;
        j["command"] = s.command;
        j["config"] = s.resolved;
        j["notes"] = t.notes;
        j["columns"] = t.columns;
        j["rows"] = t.rows;
        fs::path jp = fs::path(s.output_dir) / (name + ".json");
        std::ofstream js(jp, std::ios::binary);
        js << j.dump(1) << '\n';
        if (!js)
            throw std::runtime_error("write failed for '" + jp.string() + "'");
    }
    return path.string();
}

//---------------------------------------------------------------------------//
//! Everything that depends on the beam energy only.
struct EnergyPoint
{
    PositronBeam beam;
    BandStructure bands;
    double theta_c = 0;
    int n_subbarrier = 0;
};

inline EnergyPoint prepare_energy(ScanConfig const& s, PlanarPotential const& v,
                                  double E_par_mev)
{
    EnergyPoint e;
    e.beam = make_beam(E_par_mev);
    e.bands = solve_bands(v, e.beam.gamma, s.n_sub, s.M);
    e.theta_c = critical_angle(v, e.beam.gamma);
    e.n_subbarrier = count_subbarrier_bands(e.bands);
    return e;
}

inline void require_single(ScanConfig const& s)
{
    if (s.E_par_mev.size() != 1 || s.k.size() != 1 || s.bands.size() != 1)
        throw UsageError(s.command + " needs a single E_par_mev, k and bands value");
}

inline void check_band(ScanConfig const& s, BandStructure const& bs, int i)
{
    if (i >= bs.n_bands)
        throw UsageError(s.command + ": band " + std::to_string(i)
                         + " exceeds the basis size " + std::to_string(bs.n_bands));
}

//---------------------------------------------------------------------------//
/*!
 * angular.csv over the (Theta, Phi) grid and screen.csv, the projection on
 * a plane normal to z at distance 5 (x = 5 tan T cos F, y = 5 tan T sin F;
 * points with T >= pi/2 are omitted from the screen).
 */
inline std::vector<std::string> run_angular_distribution(ScanConfig const& s)
{
    require_single(s);
    for (double t : s.Theta_grid)
        if (!(t >= 0 && t <= constants::pi))
            throw UsageError("Theta_grid values must lie in [0, pi]");

    PlanarPotential v = fourier_coefficients(s.crystal(), s.M_pot);
    SlaterOrbital orb = load_slater_params(s.slater_file);
    EnergyPoint ep = prepare_energy(s, v, s.E_par_mev[0]);
    const int band = s.bands[0];
    check_band(s, ep.bands, band);
    double theta = s.k[0] * ep.theta_c;
    ep.beam.theta = theta;
    PopulationTable pops = populations(ep.bands, theta, ep.beam.gamma, ep.theta_c);
    XsOptions xo = s.xs_options();

    const std::size_t nt = s.Theta_grid.size(), nphi = s.Phi_grid.size();
    std::vector<CrossSectionPoint> pts(nt * nphi);
    parallel_for(pts.size(), s.threads, [&](std::size_t j) {
        pts[j] = dsigma_band(ep.beam, s.Theta_grid[j / nphi], s.Phi_grid[j % nphi],
                             ep.bands, orb, pops, band, xo);
    });

    std::vector<std::string> notes{
        "theta_c_rad=" + format_number(ep.theta_c) + " entry_angle_rad="
        + format_number(theta) + " subband=" + std::to_string(pops.subband)
        + " band_population=" + format_number(pops.band_total(band))
        + " over_barrier_remainder=" + format_number(pops.remainder())
        + " n_subbarrier_bands=" + std::to_string(ep.n_subbarrier)};
    if (pops.band_total(band) < zero_population_threshold)
        notes.push_back("zero_population: band " + std::to_string(band)
                        + " is empty at this entry angle; values are the matched "
                          "subband distribution");

    Table ang{{"theta_rad", "phi_rad", "dsigma_barn_sr", "homega_mev"}, {}, notes};
    Table scr{{"x_rel", "y_rel", "dsigma_barn_sr"}, {}, notes};
    for (auto const& p : pts)
    {
        ang.rows.push_back({p.Theta, p.Phi, p.dsigma_domega, p.homega});
        if (p.Theta < constants::pi / 2)
        {
            double r = 5 * std::tan(p.Theta);
            scr.rows.push_back({r * std::cos(p.Phi), r * std::sin(p.Phi), p.dsigma_domega});
        }
    }
    return {write_table(s, "angular", ang), write_table(s, "screen", scr)};
}

//---------------------------------------------------------------------------//
struct SigmaMaxRow
{
    double E_par_mev, k;
    int band;
    ThetaMax tm;
    int n_subbarrier;
};

inline std::vector<SigmaMaxRow> sigma_max_rows(ScanConfig const& s)
{
    PlanarPotential v = fourier_coefficients(s.crystal(), s.M_pot);
    SlaterOrbital orb = load_slater_params(s.slater_file);
    std::vector<EnergyPoint> eps;
    for (double E : s.E_par_mev)
    {
        eps.push_back(prepare_energy(s, v, E));
        for (int b : s.bands)
            check_band(s, eps.back().bands, b);
    }
    const std::size_t nk = s.k.size(), nb = s.bands.size();
    std::vector<SigmaMaxRow> rows(eps.size() * nk * nb);
    XsOptions xo = s.xs_options();
    parallel_for(rows.size(), s.threads, [&](std::size_t j) {
        std::size_t ie = j / (nk * nb), ik = (j / nb) % nk, ib = j % nb;
        EnergyPoint const& ep = eps[ie];
        PositronBeam beam = ep.beam;
        beam.theta = s.k[ik] * ep.theta_c;
        PopulationTable pops = populations(ep.bands, beam.theta, beam.gamma, ep.theta_c);
        rows[j] = SigmaMaxRow{s.E_par_mev[ie], s.k[ik], s.bands[ib],
                              find_theta_max(beam, ep.bands, orb, pops, s.bands[ib],
                                             s.Phi, xo),
                              ep.n_subbarrier};
    });
    return rows;
}

/*!
 * sigma_max.csv, one row per (E, k, band), and fit.csv with the exponential
 * fit dsigma_max = sigma0 exp(-eta gamma) of each (k, band) curve.
 */
inline std::vector<std::string> run_sigma_max_scan(ScanConfig const& s)
{
    std::vector<SigmaMaxRow> rows = sigma_max_rows(s);

    Table t{{"E_par_mev", "k", "band_i", "theta_max_rad", "dsigma_max_barn_sr",
             "n_subbarrier_bands"},
            {},
            {}};
    for (auto const& r : rows)
    {
        t.rows.push_back({r.E_par_mev, r.k, double(r.band), r.tm.theta, r.tm.dsigma,
                          double(r.n_subbarrier)});
        if (r.tm.zero_population)
            t.notes.push_back("zero_population E_par_mev=" + format_number(r.E_par_mev)
                              + " k=" + format_number(r.k) + " band_i="
                              + std::to_string(r.band)
                              + " (matched-subband distribution reported)");
        if (r.tm.at_boundary)
            t.notes.push_back("boundary_maximum E_par_mev=" + format_number(r.E_par_mev)
                              + " k=" + format_number(r.k) + " band_i="
                              + std::to_string(r.band));
    }

    Table f{{"k", "band_i", "sigma0_barn_sr", "eta", "max_relative_error", "n_points"},
            {},
            {"model: dsigma_max = sigma0 * exp(-eta * gamma), gamma = E_par / m_e c^2"}};
    const std::size_t nk = s.k.size(), nb = s.bands.size();
    for (std::size_t ik = 0; ik < nk; ++ik)
    {
        for (std::size_t ib = 0; ib < nb; ++ib)
        {
            std::vector<std::pair<double, double>> pts;
            for (std::size_t ie = 0; ie < s.E_par_mev.size(); ++ie)
            {
                auto const& r = rows[(ie * nk + ik) * nb + ib];
                if (r.tm.dsigma > 0)
                    pts.emplace_back(r.E_par_mev * constants::ev_per_mev
                                         / constants::electron_mass_c2,
                                     r.tm.dsigma);
            }
            if (pts.size() < 2)
                continue;
            FitResult fr = fit_exponential(pts);
            f.rows.push_back({s.k[ik], double(s.bands[ib]), fr.sigma0, fr.eta,
                              fr.max_relative_error, double(pts.size())});
        }
    }
    return {write_table(s, "sigma_max", t), write_table(s, "fit", f)};
}

//---------------------------------------------------------------------------//
//! Log-spaced Theta grid for the free-atom maxima, which sit near 1/gamma.
inline std::vector<double> atom_theta_grid(int n = 400)
{
    std::vector<double> g(n);
    const double lo = 1e-5, hi = constants::pi - 1e-5;
    for (int j = 0; j < n; ++j)
        g[j] = lo * std::pow(hi / lo, double(j) / (n - 1));
    return g;
}

struct AtomRow
{
    double gamma;
    MaximumResult one;
    MaximumResult born;
};

inline std::vector<AtomRow> atom_reference_rows(ScanConfig const& s)
{
    std::vector<AtomRow> rows(s.gamma_grid.size());
    const auto grid = atom_theta_grid();
    parallel_for(rows.size(), s.threads, [&](std::size_t j) {
        double g = s.gamma_grid[j];
        rows[j].gamma = g;
        rows[j].one = bracketed_maximize([&](double t) { return dsigma1(g, t, s.Z); },
                                         grid, 1e-9);
        rows[j].born = bracketed_maximize([&](double t) { return dsigmaB(g, t, s.Z); },
                                          grid, 1e-9);
    });
    return rows;
}

//! atom_ref.csv; theta_max_rad is the argmax of dsigma1.
inline std::vector<std::string> run_atom_reference(ScanConfig const& s)
{
    Table t{{"gamma", "theta_max_rad", "dsigma1_max_barn_sr", "dsigmaB_max_barn_sr"},
            {},
            {"Z=" + std::to_string(s.Z)}};
    for (auto const& r : atom_reference_rows(s))
        t.rows.push_back({r.gamma, r.one.x, r.one.value, r.born.value});
    return {write_table(s, "atom_ref", t)};
}

//---------------------------------------------------------------------------//
//! bands.csv for each requested energy (suffix _<E>MeV when more than one).
inline std::vector<std::string> run_bands_dump(ScanConfig const& s)
{
    PlanarPotential v = fourier_coefficients(s.crystal(), s.M_pot);
    std::vector<std::string> out;
    for (double E : s.E_par_mev)
    {
        EnergyPoint ep = prepare_energy(s, v, E);
        Table t{{"i", "i_n", "k_inv_angstrom", "E_perp_eV", "subbarrier_flag"},
                {},
                {"E_par_mev=" + format_number(E) + " barrier_top_eV="
                 + format_number(ep.bands.barrier_top)
                 + " n_subbarrier_bands=" + std::to_string(ep.n_subbarrier)}};
        for (int i = 0; i < ep.bands.n_bands; ++i)
        {
            double flag = ep.bands.is_subbarrier(i) ? 1 : 0;
            for (int n = 0; n < ep.bands.n_sub; ++n)
            {
                auto const& st = ep.bands.state(i, n);
                t.rows.push_back({double(i), double(n), st.k, st.energy, flag});
            }
        }
        std::string name = "bands";
        if (s.E_par_mev.size() > 1)
            name += "_" + format_number(E) + "MeV";
        out.push_back(write_table(s, name, t));
    }
    return out;
}
} // namespace chanspa
