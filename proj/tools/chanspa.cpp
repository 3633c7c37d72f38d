// Command-line driver for the channeled-positron annihilation scans.
//
//   chanspa angular   [--config F] [--key=value ...]
//   chanspa sigma-max [--config F] [--threads N] [--json] [--key=value ...]
//   chanspa atom-ref  ...
//   chanspa bands     ...
//
// Configuration precedence: subcommand defaults < $CHANSPA_CONFIG < --config
// < --key=value flags. Failures print one line
//   chanspa: error kind=<kind> message="<text>"
// on stderr and exit nonzero.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <chanspa/scan.hpp>

namespace
{
using namespace chanspa;

int fail(char const* kind, std::string msg, int code)
{
    for (auto& c : msg)
        if (c == '\n' || c == '"')
            c = (c == '"') ? '\'' : ' ';
    std::cerr << "chanspa: error kind=" << kind << " message=\"" << msg << "\"\n";
    return code;
}

void apply_overrides(Config& cfg, std::vector<std::string> const& extras)
{
    for (std::size_t j = 0; j < extras.size(); ++j)
    {
        std::string const& a = extras[j];
        if (a.rfind("--", 0) != 0)
            throw UsageError("unexpected argument '" + a + "'");
        std::string body = a.substr(2);
        auto eq = body.find('=');
        if (eq != std::string::npos)
        {
            cfg.set(body.substr(0, eq), body.substr(eq + 1));
        }
        else if (j + 1 < extras.size() && extras[j + 1].rfind("--", 0) != 0)
        {
            cfg.set(body, extras[++j]);
        }
        else
        {
            throw UsageError("option '" + a + "' needs a value (--key=value)");
        }
    }
}

int run(std::string const& command, std::string const& config_path,
        std::vector<std::string> const& extras, int threads, bool json,
        std::string const& output_dir)
{
    Config cfg = default_config(command);
    if (char const* env = std::getenv(config_env_var); env && *env)
        cfg.read_file(env);
    if (!config_path.empty())
        cfg.read_file(config_path);
    apply_overrides(cfg, extras);
    if (threads > 0)
        cfg.set("threads", std::to_string(threads));
    if (json)
        cfg.set("json", "true");
    if (!output_dir.empty())
        cfg.set("output_dir", output_dir);

    ScanConfig s = resolve_config(command, cfg);
    std::vector<std::string> files;
    if (command == "angular")
        files = run_angular_distribution(s);
    else if (command == "sigma-max")
        files = run_sigma_max_scan(s);
    else if (command == "atom-ref")
        files = run_atom_reference(s);
    else
        files = run_bands_dump(s);
    for (auto const& f : files)
        std::cout << f << '\n';
    return 0;
}
} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Single-photon annihilation of planar-channeled positrons on "
                 "K-shell electrons"};
    app.require_subcommand(1);

    std::string config_path, output_dir;
    int threads = 0;
    bool json = false;

    struct Sub
    {
        char const* name;
        char const* help;
    };
    const Sub subs[] = {
        {"angular", "angular distribution (angular.csv, screen.csv)"},
        {"sigma-max", "dsigma_max scan over energy, entry angle, band"},
        {"atom-ref", "free-atom reference maxima (atom_ref.csv)"},
        {"bands", "band diagram dump (bands.csv)"},
    };
    std::vector<CLI::App*> cmds;
    for (auto const& s : subs)
    {
        CLI::App* c = app.add_subcommand(s.name, s.help);
        c->allow_extras();
        c->add_option("--config", config_path, "key-value config file");
        c->add_option("--threads", threads, "worker threads");
        c->add_flag("--json", json, "also write JSON mirrors");
        c->add_option("--output-dir", output_dir, "output directory");
        c->footer("Any configuration key can be overridden with --key=value.");
        cmds.push_back(c);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::CallForAllHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        return fail("usage", e.what(), 2);
    }

    try
    {
        for (CLI::App* c : cmds)
            if (c->parsed())
                return run(c->get_name(), config_path, c->remaining(), threads, json,
                           output_dir);
        return fail("usage", "no subcommand", 2);
    }
    catch (UsageError const& e)
    {
        return fail("usage", e.what(), 2);
    }
    catch (PreconditionError const& e)
    {
        return fail("usage", e.what(), 2);
    }
    catch (ParseError const& e)
    {
        return fail("parse", e.what(), 3);
    }
    catch (DataError const& e)
    {
        return fail("data", e.what(), 4);
    }
    catch (ConvergenceError const& e)
    {
        return fail("convergence", e.what(), 5);
    }
    catch (std::exception const& e)
    {
        return fail("runtime", e.what(), 1);
    }
}
