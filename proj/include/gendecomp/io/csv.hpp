#ifndef GENDECOMP_IO_CSV_HPP
#define GENDECOMP_IO_CSV_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gendecomp/constraints.hpp"
#include "gendecomp/recipes/ca.hpp"

namespace gendecomp::io {

struct LabeledMatrix {
    Matrix values;
    std::vector<std::string> row_labels; // empty when the file had none
    std::vector<std::string> col_labels;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

/// Splits one CSV record; double-quoted fields may contain commas and "" escapes.
inline std::vector<std::string> split_record(std::string_view line)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.emplace_back(trim(cur));
    return fields;
}

struct Record {
    std::size_t line_no;
    std::vector<std::string> fields;
};

inline std::vector<Record> read_records(std::istream& in)
{
    std::vector<Record> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        out.push_back({line_no, split_record(line)});
    }
    return out;
}

inline bool parse_double(std::string_view s, double& out)
{
    s = trim(s);
    if (s.empty()) {
        return false;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool all_numeric(const std::vector<std::string>& fields, std::size_t from = 0)
{
    double dummy = 0.0;
    for (std::size_t i = from; i < fields.size(); ++i) {
        if (!parse_double(fields[i], dummy)) {
            return false;
        }
    }
    return true;
}

inline std::ifstream open_for_read(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
    }
    return in;
}

} // namespace detail

//
// Numeric CSV. With has_header the first record supplies column labels (its
// first cell is dropped when has_rownames); with has_rownames the first field
// of every data record is a row label. Every data record must have the same
// number of fields.
//
inline LabeledMatrix parse_matrix_csv(std::istream& in, bool has_header, bool has_rownames,
                                      const std::string& source = "<stream>")
{
    auto records = detail::read_records(in);
    LabeledMatrix out;
    std::size_t first = 0;
    if (has_header) {
        if (records.empty()) {
            throw Error(ErrorKind::ParseError, source + ": missing header line");
        }
        auto header = records.front().fields;
        if (has_rownames && !header.empty()) {
            header.erase(header.begin());
        }
        out.col_labels = std::move(header);
        first = 1;
    }
    const std::size_t n_rows = records.size() - first;
    if (n_rows == 0) {
        out.values.resize(0, static_cast<Index>(out.col_labels.size()));
        return out;
    }
    const std::size_t width = records[first].fields.size();
    const std::size_t skip = has_rownames ? 1 : 0;
    if (width <= skip && !has_header) {
        throw Error(ErrorKind::ParseError, source + ": line " + std::to_string(records[first].line_no) +
                                               " has no numeric fields");
    }
    const std::size_t n_cols = width - skip;
    if (has_header && out.col_labels.size() != n_cols) {
        throw Error(ErrorKind::RaggedRows, source + ": header has " + std::to_string(out.col_labels.size()) +
                                               " column labels but line " +
                                               std::to_string(records[first].line_no) + " has " +
                                               std::to_string(n_cols) + " values");
    }
    out.values.resize(static_cast<Index>(n_rows), static_cast<Index>(n_cols));
    for (std::size_t r = 0; r < n_rows; ++r) {
        const auto& rec = records[first + r];
        if (rec.fields.size() != width) {
            throw Error(ErrorKind::RaggedRows, source + ": line " + std::to_string(rec.line_no) + " has " +
                                                   std::to_string(rec.fields.size()) + " fields, expected " +
                                                   std::to_string(width));
        }
        if (has_rownames) {
            out.row_labels.push_back(rec.fields[0]);
        }
        for (std::size_t c = 0; c < n_cols; ++c) {
            double value = 0.0;
            if (!detail::parse_double(rec.fields[c + skip], value) || !std::isfinite(value)) {
                throw Error(ErrorKind::ParseError, source + ": line " + std::to_string(rec.line_no) +
                                                       ", column " + std::to_string(c + skip + 1) +
                                                       ": cannot parse '" + rec.fields[c + skip] +
                                                       "' as a finite number");
            }
            out.values(static_cast<Index>(r), static_cast<Index>(c)) = value;
        }
    }
    return out;
}

inline LabeledMatrix load_matrix_csv(const std::string& path, bool has_header, bool has_rownames)
{
    auto in = detail::open_for_read(path);
    return parse_matrix_csv(in, has_header, has_rownames, path);
}

//
// Constraint files: a single column is a vector of diagonal weights, anything
// else a square matrix. A header line and a row-label column are detected by
// the presence of non-numeric cells.
//
inline ConstraintInput parse_constraint_csv(std::istream& in, const std::string& source = "<stream>")
{
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::istringstream probe(text);
    const auto records = detail::read_records(probe);
    if (records.empty()) {
        throw Error(ErrorKind::ParseError, source + ": empty constraint file");
    }
    const bool header = !detail::all_numeric(records.front().fields);
    bool rownames = false;
    if (records.size() > (header ? 1u : 0u)) {
        const auto& first_data = records[header ? 1 : 0].fields;
        rownames = !detail::all_numeric(first_data) && detail::all_numeric(first_data, 1);
    }
    std::istringstream again(text);
    auto m = parse_matrix_csv(again, header, rownames, source);
    if (m.values.cols() == 1) {
        return Vector(m.values.col(0));
    }
    return m.values;
}

inline ConstraintInput load_constraint_csv(const std::string& path)
{
    auto in = detail::open_for_read(path);
    return parse_constraint_csv(in, path);
}

/// Text table of categorical values; one variable per column.
inline CategoricalTable parse_categorical_csv(std::istream& in, bool has_header, bool has_rownames,
                                              const std::string& source = "<stream>")
{
    auto records = detail::read_records(in);
    CategoricalTable out;
    std::size_t first = 0;
    const std::size_t skip = has_rownames ? 1 : 0;
    if (has_header) {
        if (records.empty()) {
            throw Error(ErrorKind::ParseError, source + ": missing header line");
        }
        auto header = records.front().fields;
        if (has_rownames && !header.empty()) {
            header.erase(header.begin());
        }
        out.variable_names = std::move(header);
        first = 1;
    }
    if (records.size() <= first) {
        throw Error(ErrorKind::ParseError, source + ": no data lines");
    }
    const std::size_t width = records[first].fields.size();
    if (width <= skip) {
        throw Error(ErrorKind::ParseError, source + ": no categorical fields");
    }
    if (!has_header) {
        for (std::size_t v = 0; v < width - skip; ++v) {
            out.variable_names.push_back("V" + std::to_string(v + 1));
        }
    }
    if (out.variable_names.size() != width - skip) {
        throw Error(ErrorKind::RaggedRows, source + ": header and data widths differ");
    }
    for (std::size_t r = first; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != width) {
            throw Error(ErrorKind::RaggedRows, source + ": line " + std::to_string(rec.line_no) + " has " +
                                                   std::to_string(rec.fields.size()) + " fields, expected " +
                                                   std::to_string(width));
        }
        if (has_rownames) {
            out.row_labels.push_back(rec.fields[0]);
        }
        out.rows.emplace_back(rec.fields.begin() + static_cast<std::ptrdiff_t>(skip), rec.fields.end());
    }
    return out;
}

inline CategoricalTable load_categorical_csv(const std::string& path, bool has_header, bool has_rownames)
{
    auto in = detail::open_for_read(path);
    return parse_categorical_csv(in, has_header, has_rownames, path);
}

/// Shortest decimal text that parses back to exactly `x`.
inline std::string format_double(double x)
{
    if (x == 0.0) {
        return "0"; // also folds -0
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw Error(ErrorKind::IoError, "number formatting failed");
    }
    return std::string(buf, ptr);
}

inline std::string quote_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += "\"\"";
        } else {
            out.push_back(ch);
        }
    }
    out += '"';
    return out;
}

/// Header row ("id" then column labels) followed by labeled rows.
inline void write_matrix_csv(std::ostream& out, const Matrix& m, const std::vector<std::string>& row_labels,
                             const std::vector<std::string>& col_labels)
{
    out << "id";
    for (Index j = 0; j < m.cols(); ++j) {
        out << ',' << quote_field(col_labels.at(static_cast<std::size_t>(j)));
    }
    out << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        out << quote_field(row_labels.at(static_cast<std::size_t>(i)));
        for (Index j = 0; j < m.cols(); ++j) {
            out << ',' << format_double(m(i, j));
        }
        out << '\n';
    }
}

/// A named single column: header line then one value per line.
inline void write_vector_csv(std::ostream& out, const Vector& v, const std::string& name)
{
    out << quote_field(name) << '\n';
    for (Index i = 0; i < v.size(); ++i) {
        out << format_double(v(i)) << '\n';
    }
}

} // namespace gendecomp::io

#endif // GENDECOMP_IO_CSV_HPP
