#ifndef GENDECOMP_CLI_CONFIG_HPP
#define GENDECOMP_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gendecomp/kernel.hpp"
#include "gendecomp/recipes/pca.hpp"

namespace gendecomp::cli {

enum class Command { Geigen, Gsvd, Gplssvd, Pca, Mds, Wmds, Ca, Mca, Rmca, Pls, Rrr, Cca, Plsca };

inline constexpr std::pair<Command, const char*> kCommandNames[] = {
    {Command::Geigen, "geigen"}, {Command::Gsvd, "gsvd"}, {Command::Gplssvd, "gplssvd"}, {Command::Pca, "pca"},
    {Command::Mds, "mds"},       {Command::Wmds, "wmds"}, {Command::Ca, "ca"},           {Command::Mca, "mca"},
    {Command::Rmca, "rmca"},     {Command::Pls, "pls"},   {Command::Rrr, "rrr"},         {Command::Cca, "cca"},
    {Command::Plsca, "plsca"},
};

inline const char* describe(Command c)
{
    switch (c) {
    case Command::Geigen: return "generalized eigendecomposition of a square matrix";
    case Command::Gsvd: return "generalized SVD under row and column constraints";
    case Command::Gplssvd: return "generalized PLS SVD of two tables";
    case Command::Pca: return "principal component analysis";
    case Command::Mds: return "classical multidimensional scaling of a distance matrix";
    case Command::Wmds: return "row-weighted multidimensional scaling";
    case Command::Ca: return "correspondence analysis of a contingency table";
    case Command::Mca: return "multiple correspondence analysis of categorical data";
    case Command::Rmca: return "ridge-regularized MCA over an omega grid";
    case Command::Pls: return "partial least squares correlation";
    case Command::Rrr: return "reduced rank regression";
    case Command::Cca: return "canonical correlation analysis";
    case Command::Plsca: return "PLS correspondence analysis of two categorical tables";
    }
    return "";
}

inline std::string to_string(Command c)
{
    for (const auto& [cmd, name] : kCommandNames) {
        if (cmd == c) {
            return name;
        }
    }
    return "?";
}

struct RunConfig {
    Command command = Command::Gsvd;
    std::string x;
    std::string y;
    // constraint files, named after the decomposition arguments
    std::optional<std::string> w, lw, rw, xlw, xrw, ylw, yrw;
    std::optional<std::string> weights; // wmds row weights
    Index k = 0;
    std::optional<TolerancePolicy> tol; // unset: the method's default
    bool center = false;
    bool scale = false;
    PcaRoute route = PcaRoute::TripletScaledData;
    std::vector<double> omegas{0.0};
    std::string out = "out";
    bool plot = false;
    bool header = false;
    bool rownames = false;
    std::string command_line;
    bool help = false;
    std::string help_text;
};

inline TolerancePolicy parse_tolerance(const std::string& text)
{
    if (text == "off" || text == "NA" || text == "none") {
        return TolerancePolicy::disabled();
    }
    double value = 0.0;
    std::size_t used = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw Error(ErrorKind::UsageError, "--tol expects a number or 'off', got '" + text + "'");
    }
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::UsageError, "--tol must be a finite nonnegative number");
    }
    return TolerancePolicy::threshold(value);
}

inline PcaRoute parse_route(const std::string& text)
{
    if (text == "cov") {
        return PcaRoute::EigenOfCov;
    }
    if (text == "cor") {
        return PcaRoute::EigenOfCor;
    }
    if (text == "scaled") {
        return PcaRoute::TripletScaledData;
    }
    if (text == "metric") {
        return PcaRoute::TripletMetricColumns;
    }
    throw Error(ErrorKind::UsageError, "--route must be one of cov, cor, scaled, metric");
}

inline bool needs_y(Command c)
{
    return c == Command::Gplssvd || c == Command::Pls || c == Command::Rrr || c == Command::Cca ||
           c == Command::Plsca;
}

//
// Strict parse: one subcommand, only the flags that subcommand accepts.
// Every problem surfaces as Error(UsageError).
//
inline RunConfig parse_config(const std::vector<std::string>& args)
{
    RunConfig cfg;
    for (std::size_t i = 0; i < args.size(); ++i) {
        cfg.command_line += (i ? " " : "") + args[i];
    }

    CLI::App app{"Generalized eigen, singular value and PLS decompositions", "gsvd_cli"};
    app.require_subcommand(1, 1);
    app.allow_extras(false);

    std::string tol_text;
    std::string route_text;
    std::string omega_text;

    for (const auto& [cmd, name] : kCommandNames) {
        CLI::App* sub = app.add_subcommand(name, describe(cmd));
        sub->allow_extras(false);
        sub->add_option("--x", cfg.x, "input CSV")->required();
        if (needs_y(cmd)) {
            sub->add_option("--y", cfg.y, "second input CSV")->required();
        }
        switch (cmd) {
        case Command::Geigen:
            sub->add_option("--w", cfg.w, "constraint W (vector or matrix CSV)");
            break;
        case Command::Gsvd:
            sub->add_option("--lw", cfg.lw, "left (row) constraint");
            sub->add_option("--rw", cfg.rw, "right (column) constraint");
            break;
        case Command::Gplssvd:
            sub->add_option("--xlw", cfg.xlw, "row constraint of x");
            sub->add_option("--xrw", cfg.xrw, "column constraint of x");
            sub->add_option("--ylw", cfg.ylw, "row constraint of y");
            sub->add_option("--yrw", cfg.yrw, "column constraint of y");
            break;
        case Command::Wmds:
            sub->add_option("--weights", cfg.weights, "row weights CSV")->required();
            break;
        case Command::Pca:
            sub->add_flag("--center", cfg.center, "center columns (triplet routes)");
            sub->add_flag("--scale", cfg.scale, "scale columns (triplet routes)");
            sub->add_option("--route", route_text, "cov, cor, scaled or metric");
            break;
        case Command::Pls:
        case Command::Rrr:
        case Command::Cca:
            sub->add_flag("--center", cfg.center, "center columns of x and y");
            sub->add_flag("--scale", cfg.scale, "scale columns of x and y");
            break;
        case Command::Rmca:
            sub->add_option("--omega", omega_text, "comma-separated ridge values");
            break;
        default:
            break;
        }
        sub->add_option("--k", cfg.k, "components to return (0 = all)")->check(CLI::NonNegativeNumber);
        if (cmd != Command::Wmds) {
            sub->add_option("--tol", tol_text, "tolerance, or 'off'");
        }
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_flag("--plot", cfg.plot, "write SVG plots");
        sub->add_flag("--header", cfg.header, "first line holds column labels");
        sub->add_flag("--rownames", cfg.rownames, "first field of each line is a row label");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        cfg.help = true;
        cfg.help_text = app.help();
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorKind::UsageError, e.what());
    }

    for (const auto& [cmd, name] : kCommandNames) {
        if (app.got_subcommand(name)) {
            cfg.command = cmd;
        }
    }
    if (!tol_text.empty()) {
        cfg.tol = parse_tolerance(tol_text);
    }
    if (!route_text.empty()) {
        cfg.route = parse_route(route_text);
    }
    if (cfg.command == Command::Pca && cfg.route == PcaRoute::TripletMetricColumns) {
        cfg.center = true;
    }
    if (cfg.command == Command::Pca && route_text.empty() && !cfg.center && !cfg.scale) {
        // plain `pca` means correlation PCA
        cfg.center = true;
        cfg.scale = true;
    }
    if (!omega_text.empty()) {
        cfg.omegas.clear();
        std::stringstream ss(omega_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != item.size() || !(value >= 0.0) || !std::isfinite(value)) {
                throw Error(ErrorKind::UsageError, "--omega expects nonnegative numbers, got '" + item + "'");
            }
            cfg.omegas.push_back(value);
        }
        if (cfg.omegas.empty()) {
            throw Error(ErrorKind::UsageError, "--omega is empty");
        }
    }
    return cfg;
}

inline RunConfig parse_config(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return parse_config(args);
}

} // namespace gendecomp::cli

#endif // GENDECOMP_CLI_CONFIG_HPP
