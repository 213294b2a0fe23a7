#ifndef GENDECOMP_CLI_RUN_HPP
#define GENDECOMP_CLI_RUN_HPP

#include <filesystem>
#include <iostream>
#include <string>

#include "gendecomp/cli/config.hpp"
#include "gendecomp/io/csv.hpp"
#include "gendecomp/io/result_writer.hpp"
#include "gendecomp/io/svg.hpp"
#include "gendecomp/recipes.hpp"

namespace gendecomp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

inline int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::UsageError:
        return kExitUsage;
    case ErrorKind::NoConvergence:
    case ErrorKind::ComplexOrNegativeEigenvalue:
    case ErrorKind::ComplexOrNegativeSingularValue:
        return kExitNumerical;
    default:
        return kExitData;
    }
}

namespace detail {

inline ConstraintInput load_slot(const std::optional<std::string>& path)
{
    if (!path) {
        return {};
    }
    return io::load_constraint_csv(*path);
}

inline void emit(const DecompositionResult& r, const std::filesystem::path& dir, const io::ResultLabels& labels,
                 const RunConfig& cfg, std::ostream& out)
{
    io::write_result(r, dir, labels, cfg.command_line);
    if (cfg.plot) {
        io::emit_plots(r, dir, labels);
    }
    out << to_string(r.method) << ": Number of components = " << r.n_total_components
        << ", Number of retained components = " << r.n_retained << " -> " << dir.string() << '\n';
    if (r.notice) {
        out << "note: " << *r.notice << '\n';
    }
}

template <class Tol>
TolerancePolicy tol_or(const RunConfig& cfg, Tol fallback)
{
    return cfg.tol.value_or(fallback);
}

inline std::string omega_dir_name(double omega)
{
    return "omega_" + io::format_double(omega);
}

} // namespace detail

//
// Executes one configured command and writes its outputs under cfg.out.
// Throws gendecomp::Error; run() is the exit-code wrapper.
//
inline void execute(const RunConfig& cfg, std::ostream& out)
{
    const std::filesystem::path dir(cfg.out);
    const auto eig_tol = detail::tol_or(cfg, TolerancePolicy::eigen_default());
    const auto svd_tol = detail::tol_or(cfg, TolerancePolicy::svd_default());

    const auto numeric = [&](const std::string& path) { return io::load_matrix_csv(path, cfg.header, cfg.rownames); };
    const auto categorical = [&](const std::string& path) {
        return io::load_categorical_csv(path, cfg.header, cfg.rownames);
    };

    switch (cfg.command) {
    case Command::Geigen: {
        const auto x = numeric(cfg.x);
        auto r = geigen(x.values, detail::load_slot(cfg.w), cfg.k, eig_tol);
        detail::emit(r, dir, {{}, x.row_labels, {}}, cfg, out);
        return;
    }
    case Command::Gsvd: {
        const auto x = numeric(cfg.x);
        auto r = gsvd(x.values, detail::load_slot(cfg.lw), detail::load_slot(cfg.rw), cfg.k, svd_tol);
        detail::emit(r, dir, {x.row_labels, x.col_labels, {}}, cfg, out);
        return;
    }
    case Command::Gplssvd: {
        const auto x = numeric(cfg.x);
        const auto y = numeric(cfg.y);
        auto r = gplssvd(x.values, y.values, detail::load_slot(cfg.xlw), detail::load_slot(cfg.ylw),
                         detail::load_slot(cfg.xrw), detail::load_slot(cfg.yrw), cfg.k, svd_tol);
        detail::emit(r, dir, {x.col_labels, y.col_labels, x.row_labels}, cfg, out);
        return;
    }
    case Command::Pca: {
        const auto x = numeric(cfg.x);
        PcaSpec spec;
        spec.center = cfg.center;
        spec.scale = cfg.scale;
        spec.route = cfg.route;
        auto r = pca(x.values, spec, cfg.k, cfg.tol);
        const bool eigen_route = cfg.route == PcaRoute::EigenOfCov || cfg.route == PcaRoute::EigenOfCor;
        if (eigen_route) {
            detail::emit(r, dir, {{}, x.col_labels, {}}, cfg, out);
        } else {
            detail::emit(r, dir, {x.row_labels, x.col_labels, {}}, cfg, out);
        }
        return;
    }
    case Command::Mds: {
        const auto x = numeric(cfg.x);
        auto r = mds(x.values, cfg.k, eig_tol);
        detail::emit(r, dir, {{}, x.row_labels, {}}, cfg, out);
        return;
    }
    case Command::Wmds: {
        const auto x = numeric(cfg.x);
        const auto w = io::load_constraint_csv(*cfg.weights);
        if (!std::holds_alternative<Vector>(w)) {
            throw Error(ErrorKind::DimensionMismatch, "--weights must be a single column");
        }
        auto res = weighted_mds(x.values, std::get<Vector>(w), cfg.k);
        const io::ResultLabels labels{{}, x.row_labels, {}};
        detail::emit(res.decomposition, dir, labels, cfg, out);
        const auto rows = io::detail::labels_or_numbered(x.row_labels, res.vector_scores.rows());
        const auto cols = io::detail::numbered(res.vector_scores.cols(), "C");
        for (const auto& [name, m] : {std::pair<std::string, const Matrix*>{"vector_scores", &res.vector_scores},
                                      {"generalized_scores", &res.generalized_scores}}) {
            const auto path = dir / (name + ".csv");
            auto file = io::detail::open_for_write(path);
            io::write_matrix_csv(file, *m, rows, cols);
            io::detail::finish(file, path);
        }
        return;
    }
    case Command::Ca: {
        const auto x = numeric(cfg.x);
        auto r = ca(x.values, cfg.k, svd_tol);
        detail::emit(r, dir, {x.row_labels, x.col_labels, {}}, cfg, out);
        return;
    }
    case Command::Mca: {
        const auto table = disjunctive_coding(categorical(cfg.x));
        auto r = mca(table, cfg.k, svd_tol);
        detail::emit(r, dir, {table.row_labels, table.level_labels, {}}, cfg, out);
        return;
    }
    case Command::Rmca: {
        const auto table = disjunctive_coding(categorical(cfg.x));
        const auto runs = rmca_sweep(table, cfg.omegas, cfg.k, svd_tol);
        for (std::size_t i = 0; i < runs.size(); ++i) {
            detail::emit(runs[i], dir / detail::omega_dir_name(cfg.omegas[i]),
                         {table.row_labels, table.level_labels, {}}, cfg, out);
        }
        return;
    }
    case Command::Pls:
    case Command::Rrr:
    case Command::Cca: {
        const auto x = numeric(cfg.x);
        const auto y = numeric(cfg.y);
        const Preprocess pre{cfg.center, cfg.scale};
        DecompositionResult r;
        if (cfg.command == Command::Pls) {
            r = pls(x.values, y.values, pre, cfg.k, svd_tol);
        } else if (cfg.command == Command::Rrr) {
            r = rrr(x.values, y.values, pre, cfg.k, svd_tol);
        } else {
            r = cca(x.values, y.values, pre, cfg.k, svd_tol);
        }
        detail::emit(r, dir, {x.col_labels, y.col_labels, x.row_labels}, cfg, out);
        return;
    }
    case Command::Plsca: {
        const auto tx = disjunctive_coding(categorical(cfg.x));
        const auto ty = disjunctive_coding(categorical(cfg.y));
        auto r = plsca(tx, ty, cfg.k, svd_tol);
        detail::emit(r, dir, {tx.level_labels, ty.level_labels, tx.row_labels}, cfg, out);
        return;
    }
    }
}

/// Parse, execute, report. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    try {
        const auto cfg = parse_config(args);
        if (cfg.help) {
            out << cfg.help_text;
            return kExitOk;
        }
        execute(cfg, out);
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

} // namespace gendecomp::cli

#endif // GENDECOMP_CLI_RUN_HPP
