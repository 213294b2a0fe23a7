#ifndef GENDECOMP_IO_RESULT_WRITER_HPP
#define GENDECOMP_IO_RESULT_WRITER_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gendecomp/decompositions.hpp"
#include "gendecomp/io/csv.hpp"

namespace gendecomp::io {

//
// Row labels for the three kinds of result rows. For gsvd, `i` names the rows
// of x and `j` its columns; for gplssvd, `i` names the columns of x, `j` the
// columns of y and `obs` the shared rows; geigen only uses `j`. Missing labels
// are generated as "1", "2", ...
//
struct ResultLabels {
    std::vector<std::string> i;
    std::vector<std::string> j;
    std::vector<std::string> obs;
};

namespace detail {

inline std::vector<std::string> numbered(Index n, const std::string& prefix = "")
{
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Index k = 1; k <= n; ++k) {
        out.push_back(prefix + std::to_string(k));
    }
    return out;
}

inline std::vector<std::string> labels_or_numbered(const std::vector<std::string>& given, Index n)
{
    if (static_cast<Index>(given.size()) == n) {
        return given;
    }
    return numbered(n);
}

inline std::ofstream open_for_write(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
    }
    return out;
}

inline void finish(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out) {
        throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
    }
}

inline void ensure_directory(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorKind::IoError, "cannot create directory '" + dir.string() + "'");
    }
}

} // namespace detail

/// Names of the CSV files write_result() produces for `r`, in write order.
inline std::vector<std::string> result_field_names(const DecompositionResult& r)
{
    std::vector<std::string> names{"d", "d_full", "l", "l_full"};
    if (r.u) {
        names.push_back("u");
    }
    names.push_back("v");
    if (r.p) {
        names.push_back("p");
    }
    names.push_back("q");
    if (r.fi) {
        names.push_back("fi");
    }
    names.push_back("fj");
    if (r.lx) {
        names.push_back("lx");
    }
    if (r.ly) {
        names.push_back("ly");
    }
    return names;
}

inline nlohmann::ordered_json result_summary(const DecompositionResult& r, const std::string& command_line)
{
    nlohmann::ordered_json j;
    j["method"] = std::string(to_string(r.method));
    j["n_rows"] = r.n_rows;
    j["n_cols"] = r.n_cols;
    j["n_total_components"] = r.n_total_components;
    j["n_retained"] = r.n_retained;
    if (r.tol.active()) {
        j["tol"] = r.tol.value();
    } else {
        j["tol"] = "off";
    }
    j["command_line"] = command_line;
    if (r.notice) {
        j["notice"] = *r.notice;
    }
    return j;
}

//
// One CSV per populated field plus summary.json. Matrix files carry a header
// of component names (C1, C2, ...) and one labeled line per row.
//
inline void write_result(const DecompositionResult& r, const std::filesystem::path& dir,
                         const ResultLabels& labels = {}, const std::string& command_line = "")
{
    detail::ensure_directory(dir);

    const auto write_vec = [&](const std::string& name, const Vector& v) {
        const auto path = dir / (name + ".csv");
        auto out = detail::open_for_write(path);
        write_vector_csv(out, v, name);
        detail::finish(out, path);
    };
    const auto write_mat = [&](const std::string& name, const Matrix& m, const std::vector<std::string>& rows) {
        const auto path = dir / (name + ".csv");
        auto out = detail::open_for_write(path);
        write_matrix_csv(out, m, detail::labels_or_numbered(rows, m.rows()), detail::numbered(m.cols(), "C"));
        detail::finish(out, path);
    };

    write_vec("d", r.d);
    write_vec("d_full", r.d_full);
    write_vec("l", r.l);
    write_vec("l_full", r.l_full);
    if (r.u) {
        write_mat("u", *r.u, labels.i);
    }
    write_mat("v", r.v, labels.j);
    if (r.p) {
        write_mat("p", *r.p, labels.i);
    }
    write_mat("q", r.q, labels.j);
    if (r.fi) {
        write_mat("fi", *r.fi, labels.i);
    }
    write_mat("fj", r.fj, labels.j);
    if (r.lx) {
        write_mat("lx", *r.lx, labels.obs);
    }
    if (r.ly) {
        write_mat("ly", *r.ly, labels.obs);
    }

    const auto path = dir / "summary.json";
    auto out = detail::open_for_write(path);
    out << result_summary(r, command_line).dump(2) << '\n';
    detail::finish(out, path);
}

/// Reads a matrix file written by write_result() back in.
inline LabeledMatrix read_result_matrix(const std::filesystem::path& path)
{
    return load_matrix_csv(path.string(), true, true);
}

/// Reads a vector file written by write_result() back in.
inline Vector read_result_vector(const std::filesystem::path& path)
{
    auto m = load_matrix_csv(path.string(), true, false);
    if (m.values.cols() != 1) {
        throw Error(ErrorKind::ParseError, path.string() + ": expected a single column");
    }
    return m.values.col(0);
}

} // namespace gendecomp::io

#endif // GENDECOMP_IO_RESULT_WRITER_HPP
