#ifndef GENDECOMP_IO_SVG_HPP
#define GENDECOMP_IO_SVG_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "gendecomp/decompositions.hpp"
#include "gendecomp/io/result_writer.hpp"

namespace gendecomp::io {

namespace svg {

inline constexpr double kWidth = 480.0;
inline constexpr double kHeight = 360.0;
inline constexpr double kMargin = 40.0;

/// Fixed three-decimal coordinates, independent of locale.
inline std::string num(double x)
{
    if (std::abs(x) < 5e-4) {
        return "0";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 3);
    return std::string(buf, res.ptr);
}

inline std::string escape(const std::string& s)
{
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(ch);
        }
    }
    return out;
}

inline void open_document(std::ostream& out, const std::string& title)
{
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(kWidth) << "\" height=\""
        << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n"
        << "<title>" << escape(title) << "</title>\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << num(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"14\">" << escape(title) << "</text>\n";
}

inline void close_document(std::ostream& out)
{
    out << "</svg>\n";
}

} // namespace svg

/// Bar chart of the eigenvalues (l_full). Negative values hang below the axis.
inline std::string scree_svg(const Vector& eigenvalues, const std::string& title = "Scree")
{
    std::ostringstream out;
    svg::open_document(out, title);
    const double plot_w = svg::kWidth - 2 * svg::kMargin;
    const double plot_h = svg::kHeight - 2 * svg::kMargin;
    double hi = 0.0;
    double lo = 0.0;
    for (Index i = 0; i < eigenvalues.size(); ++i) {
        hi = std::max(hi, eigenvalues(i));
        lo = std::min(lo, eigenvalues(i));
    }
    const double span = (hi - lo) > 0.0 ? hi - lo : 1.0;
    const double zero_y = svg::kMargin + plot_h * hi / span;
    out << "<line x1=\"" << svg::num(svg::kMargin) << "\" y1=\"" << svg::num(zero_y) << "\" x2=\""
        << svg::num(svg::kWidth - svg::kMargin) << "\" y2=\"" << svg::num(zero_y)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    const auto n = eigenvalues.size();
    if (n > 0) {
        const double slot = plot_w / static_cast<double>(n);
        for (Index i = 0; i < n; ++i) {
            const double h = plot_h * std::abs(eigenvalues(i)) / span;
            const double x = svg::kMargin + slot * static_cast<double>(i) + 0.1 * slot;
            const double y = eigenvalues(i) >= 0.0 ? zero_y - h : zero_y;
            out << "<rect x=\"" << svg::num(x) << "\" y=\"" << svg::num(y) << "\" width=\""
                << svg::num(0.8 * slot) << "\" height=\"" << svg::num(h) << "\" fill=\"steelblue\"/>\n";
            out << "<text x=\"" << svg::num(x + 0.4 * slot) << "\" y=\""
                << svg::num(svg::kHeight - svg::kMargin / 2) << "\" text-anchor=\"middle\""
                << " font-family=\"sans-serif\" font-size=\"10\">" << (i + 1) << "</text>\n";
        }
    }
    svg::close_document(out);
    return out.str();
}

/// Scatter of the first two score columns with one text label per point.
/// Both axes share one scale.
inline std::string scores_svg(const Matrix& scores, const std::vector<std::string>& labels,
                              const std::string& title)
{
    if (scores.cols() < 2) {
        throw Error(ErrorKind::InvalidInput, "a score plot needs two components");
    }
    std::ostringstream out;
    svg::open_document(out, title);
    double extent = 0.0;
    for (Index i = 0; i < scores.rows(); ++i) {
        extent = std::max({extent, std::abs(scores(i, 0)), std::abs(scores(i, 1))});
    }
    if (!(extent > 0.0)) {
        extent = 1.0;
    }
    const double half = std::min(svg::kWidth, svg::kHeight) / 2 - svg::kMargin;
    const double cx = svg::kWidth / 2;
    const double cy = svg::kHeight / 2;
    const double scale = half / extent;
    out << "<line x1=\"" << svg::num(cx - half) << "\" y1=\"" << svg::num(cy) << "\" x2=\""
        << svg::num(cx + half) << "\" y2=\"" << svg::num(cy) << "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << svg::num(cx) << "\" y1=\"" << svg::num(cy - half) << "\" x2=\"" << svg::num(cx)
        << "\" y2=\"" << svg::num(cy + half) << "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << svg::num(cx + half) << "\" y=\"" << svg::num(cy - 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">C1</text>\n";
    out << "<text x=\"" << svg::num(cx + 4) << "\" y=\"" << svg::num(cy - half + 10)
        << "\" font-family=\"sans-serif\" font-size=\"10\">C2</text>\n";
    const auto names = detail::labels_or_numbered(labels, scores.rows());
    for (Index i = 0; i < scores.rows(); ++i) {
        const double x = cx + scale * scores(i, 0);
        const double y = cy - scale * scores(i, 1);
        out << "<circle cx=\"" << svg::num(x) << "\" cy=\"" << svg::num(y)
            << "\" r=\"3\" fill=\"firebrick\"/>\n";
        out << "<text x=\"" << svg::num(x + 4) << "\" y=\"" << svg::num(y - 4)
            << "\" font-family=\"sans-serif\" font-size=\"9\">" << svg::escape(names[static_cast<std::size_t>(i)])
            << "</text>\n";
    }
    svg::close_document(out);
    return out.str();
}

//
// scree.svg always; scores_fi.svg and scores_fj.svg only when at least two
// components are retained (scores_fi.svg only when fi exists).
//
inline void emit_plots(const DecompositionResult& r, const std::filesystem::path& dir,
                       const ResultLabels& labels = {})
{
    detail::ensure_directory(dir);
    const auto write = [&](const std::string& name, const std::string& body) {
        const auto path = dir / name;
        auto out = detail::open_for_write(path);
        out << body;
        detail::finish(out, path);
    };
    write("scree.svg", scree_svg(r.l_full));
    if (r.n_retained >= 2) {
        if (r.fi) {
            write("scores_fi.svg", scores_svg(*r.fi, labels.i, "Component scores fi"));
        }
        write("scores_fj.svg", scores_svg(r.fj, labels.j, "Component scores fj"));
    }
}

} // namespace gendecomp::io

#endif // GENDECOMP_IO_SVG_HPP
