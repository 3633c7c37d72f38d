#pragma once

/**
 * @file config.hpp
 * @brief Key-value configuration text and the value grammar used by scans.
 *
 * File format: one "key = value" per line, '#' starts a comment. Values
 * that describe grids accept either a comma list "50,60,70" or an inclusive
 * range "min:max:steps".
 */

#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "error.hpp"

namespace chanspa
{
//! Invalid configuration value or combination; reported as a usage error.
class UsageError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

namespace detail
{
inline std::string trim(std::string s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
} // namespace detail

class Config
{
  public:
    using Map = std::map<std::string, std::string>;

    void set(std::string const& key, std::string const& value)
    {
        values_[key] = value;
    }

    bool has(std::string const& key) const { return values_.count(key) != 0; }

    std::string const& get(std::string const& key) const
    {
        auto it = values_.find(key);
        if (it == values_.end())
            throw UsageError("missing configuration key '" + key + "'");
        return it->second;
    }

    Map const& values() const { return values_; }

    //! Merge "key = value" lines; later assignments win.
    void read(std::istream& in)
    {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            line = detail::trim(line);
            if (line.empty())
                continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected 'key = value'", lineno);
            std::string key = detail::trim(line.substr(0, eq));
            std::string val = detail::trim(line.substr(eq + 1));
            if (key.empty())
                throw ParseError("empty key", lineno);
            values_[key] = val;
        }
    }

    void read_file(std::string const& path)
    {
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open config file '" + path + "'", 0);
        try
        {
            read(in);
        }
        catch (ParseError const& e)
        {
            throw ParseError(path + ": " + e.message(), e.line());
        }
    }

  private:
    Map values_;
};

//---------------------------------------------------------------------------//
inline double parse_double(std::string const& key, std::string const& s)
{
    try
    {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (detail::trim(s.substr(used)).empty())
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw UsageError("key '" + key + "': expected a number, got '" + s + "'");
}

inline int parse_int(std::string const& key, std::string const& s)
{
    try
    {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (detail::trim(s.substr(used)).empty())
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw UsageError("key '" + key + "': expected an integer, got '" + s + "'");
}

inline bool parse_bool(std::string const& key, std::string const& s)
{
    if (s == "1" || s == "true" || s == "yes" || s == "on")
        return true;
    if (s == "0" || s == "false" || s == "no" || s == "off")
        return false;
    throw UsageError("key '" + key + "': expected a boolean, got '" + s + "'");
}

//! Inclusive range "min:max:steps", steps >= 2 (or 1 when min == max).
inline std::vector<double> parse_range(std::string const& key, std::string const& s)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(detail::trim(item));
    if (parts.size() != 3)
        throw UsageError("key '" + key + "': expected 'min:max:steps', got '" + s + "'");
    double lo = parse_double(key, parts[0]);
    double hi = parse_double(key, parts[1]);
    int n = parse_int(key, parts[2]);
    if (n < 1 || (n < 2 && lo != hi) || hi < lo)
        throw UsageError("key '" + key + "': range needs max >= min and steps >= 2");
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j)
        v[j] = (n == 1) ? lo : lo + (hi - lo) * j / (n - 1);
    return v;
}

//! Comma list or range; empty input is an error.
inline std::vector<double> parse_grid(std::string const& key, std::string const& s)
{
    if (detail::trim(s).empty())
        throw UsageError("key '" + key + "': empty grid");
    if (s.find(':') != std::string::npos)
        return parse_range(key, s);
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        v.push_back(parse_double(key, detail::trim(item)));
    return v;
}

inline std::vector<int> parse_int_list(std::string const& key, std::string const& s)
{
    if (detail::trim(s).empty())
        throw UsageError("key '" + key + "': empty list");
    std::vector<int> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        v.push_back(parse_int(key, detail::trim(item)));
    return v;
}
} // namespace chanspa
