#include "mixlab/report.hpp"

#include "mixlab/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mixlab {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

CsvTable::CsvTable(std::string config_comment, std::vector<std::string> header)
    : comment_(std::move(config_comment)), header_(std::move(header)) {
    if (comment_.find('\n') != std::string::npos) throw std::invalid_argument("config comment must be one line");
}

void CsvTable::add_row(std::vector<CsvField> row) {
    if (row.size() != header_.size()) throw std::invalid_argument("row width does not match the header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::ostringstream out;
    out << "# " << comment_ << '\n';
    for (std::size_t k = 0; k < header_.size(); ++k) out << (k ? "," : "") << csv_escape(header_[k]);
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out << ',';
            if (const auto* s = std::get_if<std::string>(&row[k])) {
                out << csv_escape(*s);
            } else if (const auto* d = std::get_if<double>(&row[k])) {
                out << format_number(*d);
            } else {
                out << std::get<long long>(row[k]);
            }
        }
        out << '\n';
    }
    return out.str();
}

void CsvTable::write(const std::string& path) const { write_text(path, str()); }

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string fixed(double v, int digits = 2) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_svg(const PlotSpec& plot) {
    if (plot.series.empty()) throw std::invalid_argument("plot has no series");
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : plot.series) {
        if (s.points.empty()) throw std::invalid_argument("series '" + s.label + "' has no points");
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) throw std::invalid_argument("plot coordinates must be finite");
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double W = 640, H = 420, left = 70, right = 20, top = 40, bottom = 60;
    const double pw = W - left - right, ph = H - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
      << W << ' ' << H << "\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << fixed(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"15\">" << xml_escape(plot.title) << "</text>\n";
    o << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw) << "\" height=\""
      << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 4.0;
        const double yv = ymin + (ymax - ymin) * k / 4.0;
        o << "<text x=\"" << fixed(sx(xv)) << "\" y=\"" << fixed(top + ph + 18)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << tick_label(xv)
          << "</text>\n";
        o << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(sy(yv) + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick_label(yv) << "</text>\n";
    }
    o << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(H - 16)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(plot.x_label)
      << "</text>\n";
    o << "<text x=\"16\" y=\"" << fixed(top + ph / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 16 " << fixed(top + ph / 2) << ")\">" << xml_escape(plot.y_label)
      << "</text>\n";
    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const char* color = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
        if (s.points.size() > 1) {
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t p = 0; p < s.points.size(); ++p) {
                o << (p ? " " : "") << fixed(sx(s.points[p].first)) << ',' << fixed(sy(s.points[p].second));
            }
            o << "\"/>\n";
        }
        for (const auto& [x, y] : s.points) {
            o << "<circle cx=\"" << fixed(sx(x)) << "\" cy=\"" << fixed(sy(y)) << "\" r=\"3\" fill=\"" << color
              << "\"/>\n";
        }
        o << "<text x=\"" << fixed(left + 10) << "\" y=\"" << fixed(top + 16 + 16 * k) << "\" fill=\"" << color
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void emit_svg(const PlotSpec& plot, const std::string& path) { write_text(path, render_svg(plot)); }

}  // namespace mixlab
